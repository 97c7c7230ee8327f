#pragma once

// Spherical-twist eligibility of idempotent quotients B = A/<e_V> of the
// McKay algebra A: the four-successive-vertices criterion, the hypothesis
// checks (finite dimension, finite global dimension or self-injectivity,
// idempotent kernel), and enumeration over vertex sets.

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtwist/findim.hpp"
#include "qtwist/normalform.hpp"
#include "qtwist/order.hpp"
#include "qtwist/presentations.hpp"

namespace qtwist {

/// Subset of Z_n, stored sorted without repeats.
class VertexSet {
 public:
  VertexSet() = default;
  /// Throws ContractError for n < 1 or a member outside [0, n).
  static VertexSet make(int n, std::vector<int> members);
  static VertexSet from_mask(int n, unsigned long mask);

  int n() const { return n_; }
  const std::vector<int>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(int v) const;

  VertexSet rotated(int k) const;
  /// Lexicographically least sorted rotation.
  VertexSet canonical() const;
  VertexSet complement() const;
  std::string to_string() const;  ///< "{1,5}"

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.members_ <=> b.members_;
  }

 private:
  int n_ = 1;
  std::vector<int> members_;
};

/// Length of the longest run of cyclically consecutive residues outside V
/// (n when V is empty).
std::size_t longest_complement_run(const VertexSet& v);

/// True iff Z_n \ V contains four distinct cyclically consecutive residues.
/// Throws ContractError for n < 1.
bool four_successive(int n, const std::vector<int>& v);

/// Weights are {1, 1, n-2} as a multiset with n odd and n > 3.
bool criterion_applies(const GroupData& group);

struct KernelIdempotency {
  bool holds_by_construction = true;  ///< ideals generated by idempotents
  bool verified = false;              ///< (K^2)_d = K_d for every d <= cap
  std::size_t cap = 0;
  std::vector<SquareRow> rows;
  std::vector<bool> duality;  ///< dim K_d + dim B_d = dim A_d, when B is known
  bool duality_ok = true;
};

/// Numerical check of ker p = (ker p)^2 inside the truncation. When quotient
/// dimensions are given, the ideal/quotient duality is checked as well.
template <class F>
KernelIdempotency kernel_idempotency(const TruncatedAlgebra<F>& trunc, const VertexSet& v,
                                     const std::vector<std::size_t>* quotient_dims = nullptr);

struct EligibilityCaps {
  std::size_t degree_cap = 0;  ///< normal-form cap; 0 means 3n+3
  std::size_t step_cap = 12;   ///< resolution steps
  std::size_t order_cap = 8;   ///< truncation degree for the kernel check
  bool seek_period = true;
  IsoOptions iso;

  std::size_t degree_cap_for(int n) const { return degree_cap ? degree_cap : static_cast<std::size_t>(3 * n + 3); }
};

enum class Eligibility { eligible, not_eligible, inconclusive };

std::string to_string(Eligibility e);

struct EligibilityReport {
  GroupData group;
  VertexSet vertices;
  VertexSet canonical;
  EligibilityCaps caps;

  DimensionStatus dimension_status = DimensionStatus::inconclusive;
  std::size_t total_dimension = 0;
  std::optional<std::size_t> nilpotency_degree;
  std::vector<std::size_t> graded_dimensions;

  /// four_successive(n, V) when the criterion applies; true predicts
  /// infinite global dimension.
  std::optional<bool> criterion;
  std::optional<bool> criterion_agrees;

  bool gldim_computed = false;
  GlobalDimensionKind gldim_kind = GlobalDimensionKind::at_least;
  std::size_t gldim_value = 0;
  /// Some simple has a repeated syzygy, so the global dimension is infinite.
  bool periodic_certificate = false;
  std::optional<std::string> cartan_determinant;

  std::optional<SelfInjectiveVerdict> self_injective;
  std::vector<std::pair<int, int>> sigma;  ///< label i -> label sigma(i)

  KernelIdempotency kernel;

  Eligibility eligible = Eligibility::inconclusive;
  std::string reason;
  std::string prediction;
};

/// Shares the McKay presentation and the truncated algebra between checks;
/// check() is safe to call concurrently.
template <class F>
class EligibilityChecker {
 public:
  EligibilityChecker(const GroupData& group, const EligibilityCaps& caps);

  /// Throws ContractError when V is empty, full, or for another n.
  EligibilityReport check(const VertexSet& v) const;

  const GroupData& group() const { return group_; }
  const EligibilityCaps& caps() const { return caps_; }

 private:
  GroupData group_;
  EligibilityCaps caps_;
  Presentation mckay_;
  TruncatedAlgebra<F> trunc_;
};

template <class F>
EligibilityReport check_quotient(const GroupData& group, const VertexSet& v, const EligibilityCaps& caps = {});

struct Enumeration {
  GroupData group;
  EligibilityCaps caps;
  bool up_to_rotation = false;
  std::vector<EligibilityReport> reports;  ///< sorted by (canonical V, V)
  std::size_t eligible = 0;
  std::size_t ineligible = 0;
  std::size_t inconclusive = 0;
  std::size_t disagreements = 0;
};

/// Reports for every proper nonempty V (or one per rotation class), computed
/// on up to `jobs` threads (0 means hardware concurrency).
template <class F>
Enumeration enumerate(const GroupData& group, const EligibilityCaps& caps, bool up_to_rotation, unsigned jobs = 0);

}  // namespace qtwist
