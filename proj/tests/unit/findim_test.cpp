#include <doctest.h>

#include <random>

#include "../support/algebras.hpp"
#include "qtwist/field.hpp"
#include "qtwist/findim.hpp"

using namespace qtwist;
using Q = Rational;

namespace {

GradedAlgebra<Q> algebra(const Presentation& p, std::size_t cap = 30) {
  return structure_constants(GradedBasis<Q>::build(p, cap));
}

std::vector<std::size_t> dims(const Representation<Q>& m) { return m.dims(); }

// Betti vector of a step keyed by vertex label.
std::map<int, std::size_t> betti_by_label(const Resolution<Q>& r, std::size_t k) {
  std::map<int, std::size_t> out;
  const auto b = r.betti(k);
  for (std::size_t v = 0; v < b.size(); ++v)
    if (b[v]) out[r.module.quiver().label(v)] = b[v];
  return out;
}

// M with its basis changed by random invertible matrices at every vertex.
Representation<Q> scrambled(const Representation<Q>& m, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(-3, 3);
  std::vector<Matrix<Q>> change, inverse_change;
  for (std::size_t v = 0; v < m.dims().size(); ++v) {
    Matrix<Q> g;
    do {
      g = Matrix<Q>(m.dim(v), m.dim(v));
      for (std::size_t r = 0; r < m.dim(v); ++r)
        for (std::size_t c = 0; c < m.dim(v); ++c) g(r, c) = Q(pick(rng));
    } while (!g.is_invertible());
    // inverse by solving g x = e_c column by column
    Matrix<Q> inv(m.dim(v), m.dim(v));
    std::vector<SparseVec<Q>> cols;
    for (std::size_t c = 0; c < m.dim(v); ++c) cols.push_back(g.sparse_column(c));
    SpanSolver<Q> solver(cols, m.dim(v));
    for (std::size_t c = 0; c < m.dim(v); ++c) {
      const auto coords = solver.coordinates(sparse::unit<Q>(c));
      for (const auto& [r, x] : *coords) inv(r, c) = x;
    }
    change.push_back(g);
    inverse_change.push_back(inv);
  }
  std::vector<Matrix<Q>> actions;
  for (const Arrow& a : m.quiver().arrows())
    actions.push_back(change[a.target] * m.action(a.id) * inverse_change[a.source]);
  return Representation<Q>(m.quiver_ptr(), m.dims(), actions);
}

}  // namespace

TEST_CASE("3-cycle algebra: projectives, injectives, socles, radicals") {
  const auto alg = algebra(testing::three_cycle_rad3());
  CHECK(dims(projective(alg, 0)) == std::vector<std::size_t>{1, 1, 1});
  CHECK(dims(radical(projective(alg, 1)).module) == std::vector<std::size_t>{1, 0, 1});
  CHECK(dims(socle(projective(alg, 0)).module) == std::vector<std::size_t>{0, 0, 1});
  CHECK(dims(top(projective(alg, 0)).module) == std::vector<std::size_t>{1, 0, 0});
  CHECK(module_isomorphic(projective(alg, 0), injective(alg, 2)).verdict == IsoVerdict::isomorphic);
  const auto cartan = cartan_matrix(alg);
  for (const auto& row : cartan) CHECK(row[0] + row[1] + row[2] == 3);
}

TEST_CASE("3-cycle algebra is self-injective with sigma 0->2, 1->0, 2->1") {
  const auto alg = algebra(testing::three_cycle_rad3());
  const auto si = self_injectivity(alg);
  REQUIRE(si.verdict == SelfInjectiveVerdict::self_injective);
  CHECK(si.sigma == std::vector<std::size_t>{2, 0, 1});
  REQUIRE(si.witnesses.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(si.witnesses[i].commutes(projective(alg, i), injective(alg, si.sigma[i])));
    CHECK(si.witnesses[i].is_invertible());
  }
}

TEST_CASE("3-Kronecker modules") {
  const auto alg = algebra(testing::kronecker3());
  CHECK(dims(projective(alg, 0)) == std::vector<std::size_t>{1, 0});
  CHECK(dims(projective(alg, 1)) == std::vector<std::size_t>{3, 1});
  CHECK(dims(injective(alg, 0)) == std::vector<std::size_t>{1, 3});
  CHECK(dims(top(projective(alg, 1)).module) == std::vector<std::size_t>{0, 1});
  CHECK(dims(socle(projective(alg, 1)).module) == std::vector<std::size_t>{3, 0});
  CHECK(cartan_matrix(alg) == std::vector<std::vector<long>>{{1, 0}, {3, 1}});
  CHECK(integer_determinant(cartan_matrix(alg)) == 1);
  const auto gd = global_dimension(alg);
  CHECK(gd.kind == GlobalDimensionKind::finite);
  CHECK(gd.value == 1);
  const auto si = self_injectivity(alg);
  CHECK(si.verdict == SelfInjectiveVerdict::not_self_injective);
  CHECK(si.reason.find("not simple") != std::string::npos);
}

TEST_CASE("semisimple algebra") {
  const auto alg = algebra(testing::semisimple(3));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(module_isomorphic(projective(alg, i), simple(alg, i)).verdict == IsoVerdict::isomorphic);
    CHECK(module_isomorphic(injective(alg, i), simple(alg, i)).verdict == IsoVerdict::isomorphic);
    CHECK(radical(simple(alg, i)).module.is_zero());
    CHECK(top(simple(alg, i)).module.dims() == simple(alg, i).dims());
    CHECK(socle(simple(alg, i)).module.dims() == simple(alg, i).dims());
  }
  const auto gd = global_dimension(alg);
  CHECK(gd.kind == GlobalDimensionKind::finite);
  CHECK(gd.value == 0);
  const auto si = self_injectivity(alg);
  CHECK(si.verdict == SelfInjectiveVerdict::self_injective);
  CHECK(si.sigma == std::vector<std::size_t>{0, 1, 2});
  CHECK(cartan_matrix(alg) == std::vector<std::vector<long>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

TEST_CASE("isomorphism test basics") {
  const auto alg = algebra(testing::three_cycle_rad3());
  const auto m = projective(alg, 1);
  const auto same = module_isomorphic(m, m);
  CHECK(same.verdict == IsoVerdict::isomorphic);
  CHECK(same.witness->commutes(m, m));
  CHECK(module_isomorphic(simple(alg, 0), simple(alg, 1)).verdict == IsoVerdict::not_isomorphic);
  // same dimension vector, different modules: P(0) and S(0)+S(1)+S(2)
  const auto split = direct_sum(std::vector{simple(alg, 0), simple(alg, 1), simple(alg, 2)});
  CHECK(module_isomorphic(projective(alg, 0), split).verdict != IsoVerdict::isomorphic);
  const auto other = algebra(testing::kronecker3());
  CHECK_THROWS_AS(module_isomorphic(simple(alg, 0), simple(other, 0)), ContractError);
}

TEST_CASE("isomorphism survives random changes of basis") {
  std::mt19937 rng(7);
  const auto alg = algebra(testing::mckay_quotient(7, {1, 1, 5}, {3, 4, 6}));
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t v = rng() % alg.vertex_count();
    const auto m = (trial % 2) ? projective(alg, v) : injective(alg, v);
    const auto n = scrambled(m, rng);
    const auto r = module_isomorphic(m, n);
    REQUIRE(r.verdict == IsoVerdict::isomorphic);
    CHECK(r.witness->commutes(m, n));
    CHECK(r.witness->is_invertible());
  }
}

TEST_CASE("projective cover of rad P(6) at n=7, V={1,2} is P(5)^2 via x_5, y_5") {
  const auto alg = algebra(testing::mckay_quotient(7, {1, 1, 5}, {1, 2}));
  const std::size_t v6 = testing::local_vertex(alg.quiver(), 6);
  const std::size_t v5 = testing::local_vertex(alg.quiver(), 5);
  const auto p6 = projective(alg, v6);
  const auto rad = radical(p6);
  CHECK_FALSE(rad.module.is_zero());
  CHECK(top(p6).module.total_dimension() == 1);
  const auto cover = projective_cover(alg, rad.module);
  CHECK(cover.summands == std::vector<std::size_t>{v5, v5});
  CHECK(cover.surjection.commutes(cover.cover, rad.module));
  CHECK(cover.surjection.is_surjective());
  // the generators go to the arrows x_5 and y_5 inside P(6)
  std::vector<std::string> labels;
  for (const auto& img : cover.generator_images) {
    SparseVec<Q> in_p6;
    const std::size_t local = img.front().first - rad.module.offset(v5);
    const auto& inc = rad.inclusion.blocks[v5];
    for (std::size_t r = 0; r < inc.rows(); ++r)
      if (!inc(r, local).is_zero()) in_p6.emplace_back(r, inc(r, local));
    REQUIRE(in_p6.size() == 1);
    std::size_t count = 0;
    for (std::size_t b : alg.starting_at(v6)) {
      if (alg.basis().target(b) != v5) continue;
      if (count++ == in_p6.front().first) labels.push_back(alg.basis().path(b).to_string(alg.quiver()));
    }
  }
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::string>{"x5", "y5"});
}

TEST_CASE("projective modules resolve in one step") {
  const auto alg = algebra(testing::mckay_quotient(7, {1, 1, 5}, {1, 5}));
  for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
    const auto res = minimal_resolution(alg, projective(alg, v));
    CHECK(res.status == ResolutionStatus::complete);
    CHECK(res.projective_dimension == 0);
    CHECK(res.steps.size() == 1);
    CHECK(verify_resolution(alg, res).ok());
  }
  CHECK_THROWS_AS(projective_cover(alg, Representation<Q>(alg.quiver_ptr(), std::vector<std::size_t>(alg.vertex_count(), 0),
                                                           [&] {
                                                             std::vector<Matrix<Q>> a;
                                                             for (std::size_t i = 0; i < alg.quiver().arrow_count(); ++i)
                                                               a.emplace_back(0, 0);
                                                             return a;
                                                           }())),
                  ContractError);
}

TEST_CASE("simple S(i) resolves by its projective cover first") {
  const auto alg = algebra(testing::mckay_quotient(7, {1, 1, 5}, {1, 2}));
  const std::size_t v6 = testing::local_vertex(alg.quiver(), 6);
  const auto res = minimal_resolution(alg, simple(alg, v6));
  CHECK(betti_by_label(res, 0) == std::map<int, std::size_t>{{6, 1}});
  CHECK(betti_by_label(res, 1) == std::map<int, std::size_t>{{5, 2}});
  CHECK(res.status == ResolutionStatus::truncated);
  CHECK(verify_resolution(alg, res).ok());
}

TEST_CASE("n=7, V={1}: global dimension is at least the cap") {
  const auto alg = algebra(testing::mckay_quotient(7, {1, 1, 5}, {1}));
  for (std::size_t cap : {4, 6}) {
    const auto gd = global_dimension(alg, ResolutionOptions{cap, true, 400});
    CHECK(gd.kind == GlobalDimensionKind::at_least);
    CHECK(gd.value == cap);
  }
}

TEST_CASE("differentials are module maps with vanishing composites") {
  const auto alg = algebra(testing::mckay_quotient(5, {1, 1, 3}, {0}));
  for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
    const auto res = minimal_resolution(alg, simple(alg, v), ResolutionOptions{4, false, 0});
    for (std::size_t k = 0; k < res.steps.size(); ++k) {
      const auto d = differential(alg, res, k);
      const auto dom = step_module(alg, res, k);
      const auto cod = k == 0 ? res.module : step_module(alg, res, k - 1);
      CHECK(d.commutes(dom, cod));
      if (k > 0) {
        const auto below = differential(alg, res, k - 1);
        for (std::size_t u = 0; u < alg.vertex_count(); ++u) CHECK((below.blocks[u] * d.blocks[u]).is_zero());
      }
    }
  }
}

TEST_CASE("property: graded and ungraded engines agree, checks pass, Euler characteristic") {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = trial % 2 ? 7 : 5;
    std::vector<int> deleted;
    for (int v = 0; v < n; ++v)
      if (rng() % 3 == 0) deleted.push_back(v);
    if (deleted.empty()) deleted.push_back(static_cast<int>(rng() % n));
    if (static_cast<int>(deleted.size()) == n) deleted.pop_back();
    const auto alg = algebra(testing::mckay_quotient(n, {1, 1, n - 2}, deleted));
    for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
      const auto s = simple(alg, v);
      const Representation<Q> ungraded(s.quiver_ptr(), s.dims(), s.actions());
      const ResolutionOptions opt{5, false, 0};
      const auto graded_res = minimal_resolution(alg, s, opt);
      const auto plain_res = minimal_resolution(alg, ungraded, opt);
      CHECK(graded_res.graded);
      CHECK_FALSE(plain_res.graded);
      REQUIRE(graded_res.steps.size() == plain_res.steps.size());
      for (std::size_t k = 0; k < graded_res.steps.size(); ++k) CHECK(graded_res.betti(k) == plain_res.betti(k));
      CHECK(graded_res.status == plain_res.status);
      CHECK(verify_resolution(alg, graded_res).ok());
      CHECK(verify_resolution(alg, plain_res).ok());
      if (graded_res.status == ResolutionStatus::complete) {
        long euler = 0;
        for (std::size_t k = 0; k < graded_res.steps.size(); ++k) {
          long dim = 0;
          for (const auto& g : graded_res.steps[k].generators) dim += static_cast<long>(alg.starting_at(g.vertex).size());
          euler += (k % 2 ? -dim : dim);
        }
        CHECK(euler == 1);
      }
    }
  }
}

TEST_CASE("property: finite global dimension implies unimodular Cartan matrix") {
  std::mt19937 rng(99);
  int finite_seen = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 7;
    std::vector<int> deleted;
    for (int v = 0; v < n; ++v)
      if (rng() % 2 == 0) deleted.push_back(v);
    if (deleted.empty() || static_cast<int>(deleted.size()) == n) continue;
    const auto alg = algebra(testing::mckay_quotient(n, {1, 1, 5}, deleted));
    const auto gd = global_dimension(alg, ResolutionOptions{8, false, 0});
    if (gd.kind != GlobalDimensionKind::finite) continue;
    ++finite_seen;
    const mpz_class det = integer_determinant(cartan_matrix(alg));
    CHECK(abs(det) == 1);
  }
  CHECK(finite_seen > 0);
}

TEST_CASE("prime field engine matches the rational engine") {
  const auto p = testing::mckay_quotient(7, {1, 1, 5}, {0, 3});
  const auto a = algebra(p);
  const auto b = structure_constants(GradedBasis<ModP>::build(p, 30));
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    const auto ra = minimal_resolution(a, simple(a, v), ResolutionOptions{6, false, 0});
    const auto rb = minimal_resolution(b, simple(b, v), ResolutionOptions{6, false, 0});
    REQUIRE(ra.steps.size() == rb.steps.size());
    for (std::size_t k = 0; k < ra.steps.size(); ++k) CHECK(ra.betti(k) == rb.betti(k));
  }
}

TEST_CASE("a periodic syzygy is detected for n=7, V={3,4,6}") {
  const auto alg = algebra(testing::mckay_quotient(7, {1, 1, 5}, {3, 4, 6}));
  const auto res = minimal_resolution(alg, simple(alg, testing::local_vertex(alg.quiver(), 0)));
  CHECK(res.status == ResolutionStatus::truncated);
  REQUIRE(res.period.has_value());
  CHECK(res.period->first < res.period->second);
  CHECK(verify_resolution(alg, res).ok());
}
