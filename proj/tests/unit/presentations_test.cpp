#include <doctest.h>

#include <set>

#include "../support/algebras.hpp"
#include "qtwist/presentations.hpp"

using namespace qtwist;

TEST_CASE("group data validation") {
  CHECK_NOTHROW(GroupData::make(7, {1, 1, 5}));
  CHECK_THROWS_AS(GroupData::make(7, {1, 1, 1}), ContractError);
  CHECK_THROWS_AS(GroupData::make(0, {0, 0, 0}), ContractError);
  const GroupData g = GroupData::make(5, {-1, 4, 2});
  CHECK(g.weights == std::array<int, 3>{4, 4, 2});
}

TEST_CASE("McKay quiver for n=3 has 3 vertices, 9 arrows, 9 relations") {
  const Presentation p = mckay_presentation(GroupData::make(3, {1, 1, 1}));
  CHECK(p.quiver.vertex_count() == 3);
  CHECK(p.quiver.arrow_count() == 9);
  CHECK(p.relations.size() == 9);
  CHECK(validate_presentation(p).valid);
}

TEST_CASE("McKay arrows follow k + w_j -> k") {
  const Presentation p = mckay_presentation(GroupData::make(7, {1, 1, 5}));
  REQUIRE(p.quiver.arrow_count() == 21);
  for (const Arrow& a : p.quiver.arrows()) {
    const int w = a.family == Family::z ? 5 : 1;
    CHECK(a.target == static_cast<std::size_t>(a.index));
    CHECK(a.source == static_cast<std::size_t>((a.index + w) % 7));
  }
}

TEST_CASE("McKay relations are commutators of parallel length-2 paths") {
  for (int n : {3, 5, 7, 9}) {
    const Presentation p = mckay_presentation(GroupData::make(n, {1, 1, n - 2}));
    CHECK(p.relations.size() == static_cast<std::size_t>(3 * n));
    std::set<std::vector<std::size_t>> seen;
    for (const Relation& r : p.relations) {
      REQUIRE(r.terms.size() == 2);
      CHECK(r.terms[0].coefficient == 1);
      CHECK(r.terms[1].coefficient == -1);
      CHECK(r.degree() == 2);
      const Path& a = r.terms[0].path;
      const Path& b = r.terms[1].path;
      CHECK(a.source == b.source);
      CHECK(a.target == b.target);
      // the two terms use the same pair of families in opposite order
      const auto fa = p.quiver.arrow(a.arrows[0]).family;
      const auto fb = p.quiver.arrow(a.arrows[1]).family;
      CHECK(fa != fb);
      CHECK(p.quiver.arrow(b.arrows[0]).family == fb);
      CHECK(p.quiver.arrow(b.arrows[1]).family == fa);
      CHECK(seen.insert(a.arrows).second);
    }
    CHECK(validate_presentation(p).valid);
  }
}

TEST_CASE("path composition checks endpoints") {
  const Presentation p = mckay_presentation(GroupData::make(3, {1, 1, 1}));
  const Path x0 = Path::of_arrow(p.quiver.arrow(0));  // 1 -> 0
  const Path x1 = Path::of_arrow(p.quiver.arrow(1));  // 2 -> 1
  const Path ok = compose_paths(x1, x0);
  CHECK(ok.source == 2);
  CHECK(ok.target == 0);
  CHECK(ok.length() == 2);
  try {
    compose_paths(x0, x0);
    FAIL("expected a contract error");
  } catch (const ContractError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("vertex 0") != std::string::npos);
    CHECK(msg.find("vertex 1") != std::string::npos);
  }
  CHECK(compose_paths(Path::idempotent(2), x1) == x1);
}

TEST_CASE("deleting vertex 2 at n=3 leaves the 3-Kronecker quiver") {
  const Presentation q = testing::mckay_quotient(3, {1, 1, 1}, {2});
  CHECK(q.quiver.vertex_labels() == std::vector<int>{0, 1});
  CHECK(q.quiver.arrow_count() == 3);
  for (const Arrow& a : q.quiver.arrows()) {
    CHECK(a.source == 1);
    CHECK(a.target == 0);
  }
  CHECK(q.relations.empty());
  CHECK(q.deleted == std::vector<int>{2});
}

TEST_CASE("vertex deletion contract") {
  const Presentation p = mckay_presentation(GroupData::make(3, {1, 1, 1}));
  CHECK_THROWS_AS(delete_vertices(p, std::vector<int>{0, 1, 2}), ContractError);
  CHECK_THROWS_AS(delete_vertices(p, std::vector<int>{5}), ContractError);
  const Presentation same = delete_vertices(p, std::vector<int>{});
  CHECK(same.quiver == p.quiver);
  CHECK(same.relations == p.relations);
}

TEST_CASE("deletion keeps labels and drops relation terms through deleted vertices") {
  const Presentation q = testing::mckay_quotient(7, {1, 1, 5}, {1, 5});
  CHECK(q.quiver.vertex_labels() == std::vector<int>{0, 2, 3, 4, 6});
  CHECK(validate_presentation(q).valid);
  for (const Arrow& a : q.quiver.arrows()) {
    CHECK(q.quiver.label(a.source) != 1);
    CHECK(q.quiver.label(a.target) != 5);
  }
  // successive deletions compose
  const Presentation twice = delete_vertices(testing::mckay_quotient(7, {1, 1, 5}, {1}), std::vector<int>{5});
  CHECK(twice == q);
}

TEST_CASE("validation reports malformed relations") {
  Presentation p = testing::kronecker3();
  CHECK(validate_presentation(p).valid);
  p.relations.push_back(Relation{{Term{1, Path{0, 0, {0}}}}});
  const ValidationReport rep = validate_presentation(p);
  CHECK_FALSE(rep.valid);
  CHECK_FALSE(rep.violations.empty());

  Presentation q = testing::three_cycle_rad3();
  q.relations.push_back(Relation{{Term{1, Path::from_arrows(q.quiver, {0, 1})},
                                  Term{1, Path::from_arrows(q.quiver, {0, 1, 2})}}});
  CHECK_FALSE(validate_presentation(q).valid);
}

TEST_CASE("DOT output has one node per vertex and one edge per arrow") {
  const Presentation p = mckay_presentation(GroupData::make(3, {1, 1, 1}));
  const std::string dot = to_dot(p);
  std::size_t edges = 0, pos = 0;
  while ((pos = dot.find("->", pos)) != std::string::npos) ++edges, pos += 2;
  CHECK(edges == 9);
  CHECK(dot.find("style=dotted") != std::string::npos);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("v2 [label=\"2\"]") != std::string::npos);
}
