#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "qtwist/eligibility.hpp"
#include "qtwist/field.hpp"

using namespace qtwist;
using Q = Rational;

namespace {

// Brute-force run scan, independent of longest_complement_run.
bool has_four_run(int n, const std::set<int>& v) {
  if (n < 4) return false;
  for (int s = 0; s < n; ++s) {
    bool all_out = true;
    for (int k = 0; k < 4; ++k) all_out = all_out && !v.count((s + k) % n);
    if (all_out) return true;
  }
  return false;
}

std::set<int> random_set(std::mt19937& rng, int n) {
  std::set<int> s;
  for (int i = 0; i < n; ++i)
    if (rng() % 3 == 0) s.insert(i);
  return s;
}

std::vector<int> as_vector(const std::set<int>& s) { return {s.begin(), s.end()}; }

GroupData family(int n) { return GroupData::make(n, {1, 1, n - 2}); }

}  // namespace

TEST_CASE("four_successive examples") {
  CHECK(four_successive(7, {1}));
  CHECK_FALSE(four_successive(7, {1, 5}));
  CHECK_FALSE(four_successive(7, {0, 1, 2, 3, 4, 5, 6}));
  CHECK(four_successive(7, {}));
  CHECK_FALSE(four_successive(3, {}));
  CHECK(longest_complement_run(VertexSet::make(7, {1})) == 6);
  CHECK(longest_complement_run(VertexSet::make(7, {1, 5})) == 3);
  CHECK(longest_complement_run(VertexSet::make(7, {})) == 7);
  CHECK_THROWS_AS(four_successive(0, {}), ContractError);
}

TEST_CASE("property: four_successive matches a brute-force window scan") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const auto v = random_set(rng, n);
    CHECK(four_successive(n, as_vector(v)) == has_four_run(n, v));
  }
}

TEST_CASE("property: canonical rotation is idempotent and rotation invariant") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const auto v = VertexSet::make(n, as_vector(random_set(rng, n)));
    const auto c = v.canonical();
    CHECK(c.canonical() == c);
    CHECK(v.rotated(static_cast<int>(rng() % 20)).canonical() == c);
    CHECK(c <= v);
    CHECK(four_successive(n, v.members()) == four_successive(n, c.members()));
  }
}

TEST_CASE("property: enlarging V never creates a four-run") {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);
    auto v = random_set(rng, n);
    auto w = v;
    w.insert(static_cast<int>(rng() % n));
    if (!four_successive(n, as_vector(v))) CHECK_FALSE(four_successive(n, as_vector(w)));
  }
}

TEST_CASE("VertexSet basics") {
  const auto v = VertexSet::make(7, {5, 1, 5});
  CHECK(v.members() == std::vector<int>{1, 5});
  CHECK(v.to_string() == "{1,5}");
  CHECK(v.complement().members() == std::vector<int>{0, 2, 3, 4, 6});
  CHECK(v.rotated(3).members() == std::vector<int>{1, 4});
  CHECK(v.canonical().members() == std::vector<int>{0, 3});
  CHECK(VertexSet::from_mask(5, 0b10010).members() == std::vector<int>{1, 4});
  CHECK_THROWS_AS(VertexSet::make(5, {5}), ContractError);
  CHECK_THROWS_AS(VertexSet::make(0, {}), ContractError);
}

TEST_CASE("criterion family gate") {
  CHECK(criterion_applies(family(5)));
  CHECK(criterion_applies(family(7)));
  CHECK(criterion_applies(GroupData::make(7, {5, 1, 1})));
  CHECK_FALSE(criterion_applies(GroupData::make(3, {1, 1, 1})));
  CHECK_FALSE(criterion_applies(GroupData::make(7, {1, 2, 4})));
  CHECK_FALSE(criterion_applies(GroupData::make(6, {1, 1, 4})));
}

TEST_CASE("kernel idempotency: n=3 V={2} cap 6 and n=7 V={1,5} cap 8") {
  const auto t3 = TruncatedAlgebra<Q>::build(GroupData::make(3, {1, 1, 1}), 6);
  const std::vector<std::size_t> kronecker{2, 3, 0};
  const auto k3 = kernel_idempotency(t3, VertexSet::make(3, {2}), &kronecker);
  CHECK(k3.holds_by_construction);
  CHECK(k3.verified);
  CHECK(k3.duality_ok);
  REQUIRE(k3.rows.size() == 7);
  // degree 1: the 6 arrows touching vertex 2
  CHECK(k3.rows[1].dim_ideal == 6);
  CHECK(k3.rows[1].dim_algebra - k3.rows[1].dim_ideal == 3);

  const auto t7 = TruncatedAlgebra<Q>::build(family(7), 8);
  const auto k7 = kernel_idempotency(t7, VertexSet::make(7, {1, 5}));
  CHECK(k7.verified);
  CHECK(k7.rows.size() == 9);
  const auto k0 = kernel_idempotency(t7, VertexSet::make(7, {}));
  CHECK(k0.verified);
  for (const auto& row : k0.rows) CHECK(row.dim_ideal == 0);
}

TEST_CASE("check_quotient: n=7 V={1,4,6} is eligible through finite global dimension") {
  const auto r = check_quotient<Q>(family(7), VertexSet::make(7, {1, 4, 6}));
  CHECK(r.eligible == Eligibility::eligible);
  CHECK(r.criterion == false);
  CHECK(r.criterion_agrees == true);
  CHECK(r.gldim_kind == GlobalDimensionKind::finite);
  CHECK(r.gldim_value <= 12);
  REQUIRE(r.cartan_determinant.has_value());
  CHECK((*r.cartan_determinant == "1" || *r.cartan_determinant == "-1"));
  CHECK(r.kernel.verified);
  CHECK(r.kernel.duality_ok);
  CHECK(r.canonical.members() == std::vector<int>{0, 2, 4});
  CHECK(r.prediction.find("RHom_A(ker p, -)") != std::string::npos);
  CHECK(r.prediction.find("A(e_1+e_4+e_6)A") != std::string::npos);
}

// Hand computation for n=5, V={0,1}: the quotient on 2,3,4 has arrows
// x,y: 4->3, 3->2 and z: 2->4 with xy = yx and every product with z zero.
// Omega S(2) = S(4), and P(3)^2 -> rad P(4) has kernel S(2) spanned by
// (y, -x), so Omega^3 S(2) = S(2).
TEST_CASE("a complement run of exactly three vertices gives a periodic resolution") {
  const auto r = check_quotient<Q>(family(5), VertexSet::make(5, {0, 1}));
  CHECK(r.criterion == false);
  CHECK(r.gldim_kind == GlobalDimensionKind::at_least);
  CHECK(r.periodic_certificate);
  CHECK(r.criterion_agrees == false);
  CHECK(r.eligible == Eligibility::not_eligible);

  const auto b = GradedBasis<Q>::build(delete_vertices(mckay_presentation(family(5)), std::vector<int>{0, 1}), 20);
  const auto alg = structure_constants(b);
  CHECK(alg.dimension() == 11);
  const std::size_t v2 = *alg.quiver().vertex_of_label(2);
  const std::size_t v3 = *alg.quiver().vertex_of_label(3);
  const std::size_t v4 = *alg.quiver().vertex_of_label(4);
  const auto res = minimal_resolution(alg, simple(alg, v2), ResolutionOptions{6, true, 400});
  CHECK(res.status == ResolutionStatus::truncated);
  auto only = [&](std::size_t v, std::size_t m) {
    std::vector<std::size_t> out(3, 0);
    out[v] = m;
    return out;
  };
  CHECK(res.betti(0) == only(v2, 1));
  CHECK(res.betti(1) == only(v4, 1));
  CHECK(res.betti(2) == only(v3, 2));
  CHECK(res.betti(3) == only(v2, 1));
  REQUIRE(res.period.has_value());
  CHECK(res.period->second - res.period->first == 3);
  CHECK(verify_resolution(alg, res).ok());
}

TEST_CASE("check_quotient: n=7 V={1} is not eligible") {
  const auto r = check_quotient<Q>(family(7), VertexSet::make(7, {1}));
  CHECK(r.eligible == Eligibility::not_eligible);
  CHECK(r.criterion == true);
  CHECK(r.criterion_agrees == true);
  CHECK(r.gldim_kind == GlobalDimensionKind::at_least);
  CHECK(r.gldim_value == 12);
  CHECK(r.self_injective == SelfInjectiveVerdict::not_self_injective);
  CHECK(r.dimension_status == DimensionStatus::finite);
  CHECK(r.total_dimension == 89);
}

TEST_CASE("check_quotient: n=3 V={2} is the eligible Kronecker quotient") {
  const auto r = check_quotient<Q>(GroupData::make(3, {1, 1, 1}), VertexSet::make(3, {2}));
  CHECK(r.eligible == Eligibility::eligible);
  CHECK_FALSE(r.criterion.has_value());
  CHECK(r.total_dimension == 5);
  CHECK(r.nilpotency_degree == 2u);
  CHECK(r.gldim_kind == GlobalDimensionKind::finite);
  CHECK(r.gldim_value == 1);
  CHECK(r.self_injective == SelfInjectiveVerdict::not_self_injective);
}

TEST_CASE("check_quotient contract errors") {
  const auto g = family(5);
  CHECK_THROWS_AS(check_quotient<Q>(g, VertexSet::make(5, {})), ContractError);
  CHECK_THROWS_AS(check_quotient<Q>(g, VertexSet::make(5, {0, 1, 2, 3, 4})), ContractError);
  CHECK_THROWS_AS(check_quotient<Q>(g, VertexSet::make(7, {1})), ContractError);
}

TEST_CASE("self-injective quotients report sigma and the permutation prediction") {
  // surviving vertices {6} only: the quotient is a single point
  const auto r = check_quotient<Q>(family(7), VertexSet::make(7, {0, 1, 2, 3, 4, 5}));
  CHECK(r.self_injective == SelfInjectiveVerdict::self_injective);
  CHECK(r.sigma == std::vector<std::pair<int, int>>{{6, 6}});
  CHECK(r.prediction.find("S_6 -> S_6[-2]") != std::string::npos);
}

TEST_CASE("enumerate n=3: engine-only mode classifies all 6 subsets") {
  const auto e = enumerate<Q>(GroupData::make(3, {1, 1, 1}), {}, false, 2);
  REQUIRE(e.reports.size() == 6);
  CHECK(e.inconclusive == 0);
  CHECK(e.eligible + e.ineligible == 6);
  for (const auto& r : e.reports) {
    CHECK_FALSE(r.criterion.has_value());
    CHECK(r.total_dimension <= 5);
  }
}

TEST_CASE("enumerate n=5: ordering is canonical and independent of the job count") {
  const auto one = enumerate<Q>(family(5), {}, false, 1);
  const auto four = enumerate<Q>(family(5), {}, false, 4);
  REQUIRE(one.reports.size() == 30);
  REQUIRE(four.reports.size() == 30);
  for (std::size_t i = 0; i < 30; ++i) {
    CHECK(one.reports[i].vertices == four.reports[i].vertices);
    CHECK(one.reports[i].eligible == four.reports[i].eligible);
    CHECK(one.reports[i].prediction == four.reports[i].prediction);
  }
  for (std::size_t i = 1; i < 30; ++i)
    CHECK(std::pair(one.reports[i - 1].canonical, one.reports[i - 1].vertices) <
          std::pair(one.reports[i].canonical, one.reports[i].vertices));
  CHECK(one.eligible + one.ineligible + one.inconclusive == 30);

  const auto classes = enumerate<Q>(family(5), {}, true, 2);
  CHECK(classes.reports.size() == 6);
  for (const auto& r : classes.reports) CHECK(r.vertices == r.canonical);
}

TEST_CASE("rotation invariance of report verdicts at n=7") {
  const auto e = enumerate<Q>(family(7), {}, false, 0);
  REQUIRE(e.reports.size() == 126);
  std::map<VertexSet, const EligibilityReport*> first;
  for (const auto& r : e.reports) {
    auto [it, fresh] = first.emplace(r.canonical, &r);
    if (fresh) continue;
    const auto& c = *it->second;
    CAPTURE(r.vertices.to_string());
    CHECK(r.eligible == c.eligible);
    CHECK(r.gldim_kind == c.gldim_kind);
    CHECK(r.gldim_value == c.gldim_value);
    CHECK(r.total_dimension == c.total_dimension);
    CHECK(r.self_injective == c.self_injective);
    CHECK(r.criterion == c.criterion);
  }
  CHECK(first.size() == 18);
}

TEST_CASE("ModP and Rational reports agree") {
  const auto v = VertexSet::make(5, {0, 2});
  const auto q = check_quotient<Q>(family(5), v);
  const auto p = check_quotient<ModP>(family(5), v);
  CHECK(q.eligible == p.eligible);
  CHECK(q.gldim_value == p.gldim_value);
  CHECK(q.total_dimension == p.total_dimension);
}
