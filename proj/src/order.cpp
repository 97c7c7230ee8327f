#include "qtwist/order.hpp"

#include <algorithm>
#include <set>

#include "qtwist/field.hpp"

namespace qtwist {

template <class F>
TruncatedAlgebra<F> TruncatedAlgebra<F>::build(const GroupData& group, std::size_t degree_cap) {
  const GroupData g = GroupData::make(group.n, group.weights);
  TruncatedAlgebra t(g, GradedBasis<F>::build(mckay_presentation(g), std::max<std::size_t>(degree_cap, 1)), degree_cap);
  if (t.basis_.degree_count() < degree_cap + 1)
    throw std::logic_error("McKay algebra stabilized below the truncation degree");
  for (std::size_t d = 0; d <= degree_cap; ++d)
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        const std::size_t got = t.pair_dimension(i, j, d);
        const std::size_t want = hilbert_row(g, i, j, d);
        if (got != want)
          throw std::logic_error("graded piece e_" + std::to_string(i) + " A_" + std::to_string(d) + " e_" +
                                 std::to_string(j) + " has dimension " + std::to_string(got) +
                                 " but the monomial count is " + std::to_string(want));
      }
  return t;
}

template <class F>
std::vector<std::size_t> TruncatedAlgebra<F>::dimensions() const {
  std::vector<std::size_t> out;
  for (std::size_t d = 0; d <= cap_; ++d) out.push_back(dimension(d));
  return out;
}

template <class F>
std::size_t TruncatedAlgebra<F>::pair_dimension(std::size_t i, std::size_t j, std::size_t d) const {
  std::size_t c = 0;
  for (std::size_t k : basis_.in_degree(d))
    if (basis_.source(k) == i && basis_.target(k) == j) ++c;
  return c;
}

namespace {

template <class F>
std::vector<SparseVec<F>> echelon_basis(const std::vector<SparseVec<F>>& spanning) {
  Echelon<F> e;
  for (const auto& v : spanning) e.insert(v);
  return e.rows();
}

template <class F>
Echelon<F> echelon_of(const std::vector<SparseVec<F>>& basis) {
  Echelon<F> e;
  for (const auto& v : basis) e.insert(v);
  return e;
}

template <class F>
SparseVec<F> arrow_times(const GradedBasis<F>& b, std::size_t arrow, const SparseVec<F>& u) {
  std::vector<std::pair<std::size_t, F>> terms;
  for (const auto& [i, c] : u)
    for (const auto& [k, x] : b.arrow_times(arrow, i)) terms.emplace_back(k, c * x);
  return sparse::collect(std::move(terms));
}

}  // namespace

template <class F>
GradedIdeal<F> graded_ideal(const TruncatedAlgebra<F>& trunc, const std::vector<int>& vertices) {
  const auto& b = trunc.basis();
  std::set<int> vs;
  for (int v : vertices) {
    if (v < 0 || static_cast<std::size_t>(v) >= trunc.vertex_count())
      throw ContractError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(trunc.group().n));
    vs.insert(v);
  }
  GradedIdeal<F> out;
  out.vertices.assign(vs.begin(), vs.end());
  std::vector<SparseVec<F>> k0;
  for (int v : out.vertices) k0.push_back(sparse::unit<F>(b.idempotent(static_cast<std::size_t>(v))));
  out.pieces.push_back(echelon_basis(k0));
  const Quiver& q = b.quiver();
  for (std::size_t d = 1; d <= trunc.degree_cap(); ++d) {
    Echelon<F> e;
    for (const auto& u : out.pieces[d - 1])
      for (const Arrow& a : q.arrows()) {
        e.insert(b.times_arrow(u, a.id));
        e.insert(arrow_times(b, a.id, u));
      }
    out.pieces.push_back(e.rows());
  }
  return out;
}

template <class F>
bool is_closed_under_arrows(const TruncatedAlgebra<F>& trunc, const GradedIdeal<F>& ideal) {
  const auto& b = trunc.basis();
  for (std::size_t d = 0; d < trunc.degree_cap(); ++d) {
    const Echelon<F> next = echelon_of(ideal.pieces[d + 1]);
    for (const auto& u : ideal.pieces[d])
      for (const Arrow& a : b.quiver().arrows()) {
        if (!next.contains(b.times_arrow(u, a.id))) return false;
        if (!next.contains(arrow_times(b, a.id, u))) return false;
      }
  }
  return true;
}

template <class F>
SquareReport ideal_square_test(const TruncatedAlgebra<F>& trunc, const std::vector<int>& vertices) {
  const auto& b = trunc.basis();
  const GradedIdeal<F> k = graded_ideal(trunc, vertices);
  const bool closed = is_closed_under_arrows(trunc, k);
  SquareReport rep;
  rep.cap = trunc.degree_cap();
  for (std::size_t d = 0; d <= trunc.degree_cap(); ++d) {
    SquareRow row;
    row.degree = d;
    row.dim_algebra = trunc.dimension(d);
    row.dim_ideal = k.dimension(d);
    row.contained = closed;
    const Echelon<F> kd = echelon_of(k.pieces[d]);
    Echelon<F> square;
    // K_0 K_d and K_d K_0 first, then the mixed products
    std::vector<std::size_t> order{0};
    if (d > 0) order.push_back(d);
    for (std::size_t a = 1; a < d; ++a) order.push_back(a);
    for (std::size_t a : order) {
      if (square.rank() == row.dim_ideal) break;
      for (const auto& u : k.pieces[a]) {
        if (square.rank() == row.dim_ideal) break;
        for (const auto& w : k.pieces[d - a]) {
          SparseVec<F> p = b.multiply(u, w);
          if (p.empty()) continue;
          if (!kd.contains(p)) row.contained = false;
          square.insert(std::move(p));
          if (square.rank() == row.dim_ideal) break;
        }
      }
    }
    row.dim_square = square.rank();
    row.equal = row.dim_square == row.dim_ideal && row.contained;
    rep.all_equal = rep.all_equal && row.equal;
    rep.all_contained = rep.all_contained && row.contained;
    rep.rows.push_back(row);
  }
  return rep;
}

template <class F>
std::vector<bool> ideal_quotient_duality(const TruncatedAlgebra<F>& trunc, const GradedIdeal<F>& ideal,
                                         const std::vector<std::size_t>& quotient_dims) {
  std::vector<bool> out;
  const std::size_t top = std::min(trunc.degree_cap() + 1, quotient_dims.size());
  for (std::size_t d = 0; d < top; ++d)
    out.push_back(ideal.dimension(d) + quotient_dims[d] == trunc.dimension(d));
  return out;
}

#define QTWIST_INSTANTIATE(F)                                                                               \
  template class TruncatedAlgebra<F>;                                                                       \
  template struct GradedIdeal<F>;                                                                           \
  template GradedIdeal<F> graded_ideal(const TruncatedAlgebra<F>&, const std::vector<int>&);                \
  template bool is_closed_under_arrows(const TruncatedAlgebra<F>&, const GradedIdeal<F>&);                  \
  template SquareReport ideal_square_test(const TruncatedAlgebra<F>&, const std::vector<int>&);             \
  template std::vector<bool> ideal_quotient_duality(const TruncatedAlgebra<F>&, const GradedIdeal<F>&,      \
                                                    const std::vector<std::size_t>&);

QTWIST_INSTANTIATE(Rational)
QTWIST_INSTANTIATE(ModP)

}  // namespace qtwist
