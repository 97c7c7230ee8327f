#pragma once

// Degreewise standard-monomial bases of graded path algebras with
// homogeneous relations, and structure constants of the finite-dimensional
// ones.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "qtwist/linalg.hpp"
#include "qtwist/presentations.hpp"

namespace qtwist {

/// Basis of kQ/I degree by degree up to a cap. Degree d is computed as
/// (A_{d-1} * arrows) / (A_{d-k} * R_k), with candidate paths ordered
/// degree-lexicographically (arrow key: family, index, id) and the largest
/// path of each relation eliminated first; the surviving paths are the
/// standard monomials. Global basis indices are assigned degree by degree in
/// ascending path order.
template <class F>
class GradedBasis {
 public:
  /// Throws ContractError for cap < 1, an invalid presentation, or relations
  /// that are not homogeneous of degree >= 2.
  static GradedBasis build(const Presentation& pres, std::size_t degree_cap);

  const Presentation& presentation() const { return pres_; }
  const Quiver& quiver() const { return pres_.quiver; }
  std::size_t degree_cap() const { return cap_; }

  std::size_t size() const { return paths_.size(); }
  const Path& path(std::size_t i) const { return paths_.at(i); }
  std::size_t degree(std::size_t i) const { return paths_.at(i).length(); }
  std::size_t source(std::size_t i) const { return paths_.at(i).source; }
  std::size_t target(std::size_t i) const { return paths_.at(i).target; }

  /// Number of degree pieces stored (degrees 0 .. count-1).
  std::size_t degree_count() const { return by_degree_.size(); }
  const std::vector<std::size_t>& in_degree(std::size_t d) const { return by_degree_.at(d); }
  std::vector<std::size_t> dimensions() const;

  /// True when some degree <= cap has an empty basis (finite dimensional).
  bool stabilized() const { return stabilized_; }
  /// First degree with an empty basis, when stabilized.
  std::optional<std::size_t> nilpotency_degree() const;
  /// Dimension of everything computed (the whole algebra when stabilized).
  std::size_t total_dimension() const { return paths_.size(); }

  std::size_t idempotent(std::size_t v) const { return by_degree_.at(0).at(v); }
  std::optional<std::size_t> index_of(const Path& p) const;

  /// Normal form of b_i * arrow. Zero when the endpoints do not match or the
  /// product lies beyond a stabilized top degree; throws std::out_of_range
  /// when the product would exceed an unstabilized truncation.
  const SparseVec<F>& times_arrow(std::size_t i, std::size_t arrow) const;
  SparseVec<F> times_arrow(const SparseVec<F>& v, std::size_t arrow) const;
  /// Normal form of arrow * b_i.
  SparseVec<F> arrow_times(std::size_t arrow, std::size_t i) const;

  /// Normal form of an arbitrary path.
  SparseVec<F> reduce(const Path& p) const;
  /// Normal form of b_i * b_j.
  SparseVec<F> multiply(std::size_t i, std::size_t j) const;
  SparseVec<F> multiply(const SparseVec<F>& x, const SparseVec<F>& y) const;

 private:
  GradedBasis() = default;

  std::size_t add_element(Path p);

  Presentation pres_;
  std::size_t cap_ = 0;
  bool stabilized_ = false;
  std::vector<Path> paths_;
  std::vector<std::vector<std::size_t>> by_degree_;
  // per basis element: (arrow id, normal form of b_i * arrow)
  std::vector<std::vector<std::pair<std::size_t, SparseVec<F>>>> right_;
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> index_;
};

enum class DimensionStatus { finite, inconclusive };

struct FiniteDimensionality {
  DimensionStatus status = DimensionStatus::inconclusive;
  std::size_t total_dimension = 0;    ///< when finite
  std::size_t nilpotency_degree = 0;  ///< first empty degree, when finite
  std::size_t cap = 0;
  std::vector<std::size_t> dimensions;  ///< per degree, as far as computed
};

/// Never asserts infinite dimensionality: an unstabilized basis at the cap
/// yields `inconclusive`.
template <class F>
FiniteDimensionality is_finite_dimensional(const Presentation& pres, std::size_t degree_cap);

/// A finite-dimensional graded algebra with its multiplication table.
template <class F>
class GradedAlgebra {
 public:
  const GradedBasis<F>& basis() const { return basis_; }
  const Presentation& presentation() const { return basis_.presentation(); }
  const Quiver& quiver() const { return basis_.quiver(); }
  /// Shared copy of the quiver, handed to the representations built over it.
  const std::shared_ptr<const Quiver>& quiver_ptr() const { return quiver_ptr_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t vertex_count() const { return basis_.quiver().vertex_count(); }

  /// Basis indices with the given source (resp. target), ascending.
  const std::vector<std::size_t>& starting_at(std::size_t v) const { return from_.at(v); }
  const std::vector<std::size_t>& ending_at(std::size_t v) const { return to_.at(v); }
  /// Position of basis element i inside starting_at(source(i)).
  std::size_t position_from_source(std::size_t i) const { return pos_from_.at(i); }
  std::size_t position_from_target(std::size_t i) const { return pos_to_.at(i); }

  const SparseVec<F>& product(std::size_t i, std::size_t j) const;
  SparseVec<F> multiply(const SparseVec<F>& x, const SparseVec<F>& y) const;

  /// Number of stored nonzero products.
  std::size_t table_size() const { return table_.size(); }

  template <class G>
  friend GradedAlgebra<G> structure_constants(const GradedBasis<G>& basis);

 private:
  explicit GradedAlgebra(GradedBasis<F> b) : basis_(std::move(b)) {}

  GradedBasis<F> basis_;
  std::shared_ptr<const Quiver> quiver_ptr_;
  std::map<std::pair<std::size_t, std::size_t>, SparseVec<F>> table_;
  std::vector<std::vector<std::size_t>> from_, to_;
  std::vector<std::size_t> pos_from_, pos_to_;
};

/// Throws ContractError when the basis has not stabilized.
template <class F>
GradedAlgebra<F> structure_constants(const GradedBasis<F>& basis);

/// Number of monomials x^a y^b z^c of degree d with a*w1 + b*w2 + c*w3 = i - j
/// (mod n): the dimension of e_i (R#G)_d e_j, i.e. degree-d paths from i to j.
std::size_t hilbert_row(const GroupData& group, int i, int j, std::size_t d);

}  // namespace qtwist
