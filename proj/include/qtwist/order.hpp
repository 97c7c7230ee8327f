#pragma once

// Degree-truncated computations inside the infinite-dimensional algebra
// A = C[x,y,z] # Z_n: graded pieces, the two-sided ideal K generated by the
// idempotents e_v (v in V), and the comparison of K^2 with K degree by degree.

#include <cstddef>
#include <vector>

#include "qtwist/linalg.hpp"
#include "qtwist/normalform.hpp"
#include "qtwist/presentations.hpp"

namespace qtwist {

template <class F>
class TruncatedAlgebra {
 public:
  /// Graded pieces of the McKay presentation up to degree D. Every
  /// (source, target, degree) dimension is compared with hilbert_row; a
  /// mismatch throws std::logic_error.
  static TruncatedAlgebra build(const GroupData& group, std::size_t degree_cap);

  const GroupData& group() const { return group_; }
  const GradedBasis<F>& basis() const { return basis_; }
  std::size_t degree_cap() const { return cap_; }
  std::size_t vertex_count() const { return static_cast<std::size_t>(group_.n); }
  std::vector<std::size_t> dimensions() const;
  std::size_t dimension(std::size_t d) const { return basis_.in_degree(d).size(); }
  /// Number of degree-d basis paths from i to j.
  std::size_t pair_dimension(std::size_t i, std::size_t j, std::size_t d) const;

 private:
  TruncatedAlgebra(GroupData g, GradedBasis<F> b, std::size_t cap) : group_(g), basis_(std::move(b)), cap_(cap) {}

  GroupData group_;
  GradedBasis<F> basis_;
  std::size_t cap_;
};

/// Per-degree bases (reduced echelon, in basis coordinates of the truncated
/// algebra) of a graded two-sided ideal.
template <class F>
struct GradedIdeal {
  std::vector<int> vertices;
  std::vector<std::vector<SparseVec<F>>> pieces;

  std::size_t dimension(std::size_t d) const { return pieces.at(d).size(); }
};

/// K = A e_V A truncated at the cap: K_0 = span{e_v : v in V} and
/// K_d = K_{d-1} * arrows + arrows * K_{d-1}. Throws ContractError for
/// vertices out of range.
template <class F>
GradedIdeal<F> graded_ideal(const TruncatedAlgebra<F>& trunc, const std::vector<int>& vertices);

/// True when K_d * a and a * K_d lie in K_{d+1} for every arrow a, d < cap.
template <class F>
bool is_closed_under_arrows(const TruncatedAlgebra<F>& trunc, const GradedIdeal<F>& ideal);

struct SquareRow {
  std::size_t degree = 0;
  std::size_t dim_algebra = 0;
  std::size_t dim_ideal = 0;
  std::size_t dim_square = 0;
  bool equal = false;
  bool contained = false;
};

struct SquareReport {
  std::vector<SquareRow> rows;
  std::size_t cap = 0;
  bool all_equal = true;
  bool all_contained = true;
};

/// Compares (K^2)_d = sum_{a+b=d} K_a K_b with K_d for every d up to the cap.
/// Products are accumulated until they span K_d; each product is checked to
/// lie in K_d, and K is checked to be closed under the arrows, so the
/// containment verdict covers all of K^2.
template <class F>
SquareReport ideal_square_test(const TruncatedAlgebra<F>& trunc, const std::vector<int>& vertices);

/// dim K_d + dim B_d == dim A_d for d <= min(cap, last degree of B), where B
/// is the quotient by K given by its graded dimensions.
template <class F>
std::vector<bool> ideal_quotient_duality(const TruncatedAlgebra<F>& trunc, const GradedIdeal<F>& ideal,
                                         const std::vector<std::size_t>& quotient_dims);

}  // namespace qtwist
