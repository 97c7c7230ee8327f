#pragma once

// Right modules over finite-dimensional graded quotients of path algebras:
// projectives, injectives, simples, radical/top/socle, projective covers,
// minimal projective resolutions, global dimension, Cartan matrices,
// isomorphism testing and self-injectivity.
//
// Conventions: P(i) = e_i A is spanned by the basis paths starting at i and
// an arrow acts by right concatenation followed by reduction. A module M is
// a family of spaces M_v with one matrix per arrow a: s -> t, of shape
// dim M_t x dim M_s, so a path "a_1 then a_2" acts by A(a_2) * A(a_1).

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qtwist/linalg.hpp"
#include "qtwist/normalform.hpp"
#include "qtwist/presentations.hpp"

namespace qtwist {

template <class F>
class Representation {
 public:
  Representation() = default;
  /// Throws ContractError when the number or shape of the matrices does not
  /// match the quiver and dimension vector.
  Representation(std::shared_ptr<const Quiver> quiver, std::vector<std::size_t> dims,
                 std::vector<Matrix<F>> actions, std::optional<std::vector<int>> grading = std::nullopt);

  const Quiver& quiver() const { return *quiver_; }
  const std::shared_ptr<const Quiver>& quiver_ptr() const { return quiver_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dim(std::size_t v) const { return dims_.at(v); }
  std::size_t total_dimension() const { return total_; }
  bool is_zero() const { return total_ == 0; }

  /// Global coordinates list the vertex spaces one after another.
  std::size_t offset(std::size_t v) const { return offsets_.at(v); }
  std::size_t vertex_of(std::size_t coord) const;

  const Matrix<F>& action(std::size_t arrow) const { return actions_.at(arrow); }
  const std::vector<Matrix<F>>& actions() const { return actions_; }
  /// Degree of each global coordinate, when the module is graded.
  const std::optional<std::vector<int>>& grading() const { return grading_; }

  /// Matrix of the path acting from M_source to M_target.
  Matrix<F> path_action(const Path& p) const;
  /// x * arrow for x in global coordinates.
  SparseVec<F> act(const SparseVec<F>& x, std::size_t arrow) const;

  bool satisfies(const std::vector<Relation>& relations) const;

 private:
  std::shared_ptr<const Quiver> quiver_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  std::vector<Matrix<F>> actions_;
  std::optional<std::vector<int>> grading_;
};

/// Per-vertex linear maps M_v -> N_v (blocks of shape dim N_v x dim M_v).
template <class F>
struct ModuleMap {
  std::vector<Matrix<F>> blocks;

  static ModuleMap zero(const Representation<F>& m, const Representation<F>& n);
  static ModuleMap identity(const Representation<F>& m);

  bool commutes(const Representation<F>& m, const Representation<F>& n) const;
  bool is_invertible() const;
  bool is_injective() const;
  bool is_surjective() const;
};

template <class F>
Representation<F> projective(const GradedAlgebra<F>& alg, std::size_t i);
template <class F>
Representation<F> injective(const GradedAlgebra<F>& alg, std::size_t i);
template <class F>
Representation<F> simple(const GradedAlgebra<F>& alg, std::size_t i);
template <class F>
Representation<F> direct_sum(const std::vector<Representation<F>>& parts);

template <class F>
struct Submodule {
  Representation<F> module;
  ModuleMap<F> inclusion;
};

template <class F>
struct QuotientModule {
  Representation<F> module;
  ModuleMap<F> projection;
};

/// M * J for J the arrow ideal, which is the radical for these algebras.
template <class F>
Submodule<F> radical(const Representation<F>& m);
/// M / rad M.
template <class F>
QuotientModule<F> top(const Representation<F>& m);
/// Elements killed by every arrow.
template <class F>
Submodule<F> socle(const Representation<F>& m);

/// Submodule spanned by the given vectors (global coordinates of m), which
/// must span a subspace closed under the arrow actions.
template <class F>
Submodule<F> submodule_from_vectors(const Representation<F>& m, const std::vector<SparseVec<F>>& spanning);

template <class F>
struct ProjectiveCover {
  Representation<F> cover;
  std::vector<std::size_t> summands;  ///< vertex of each indecomposable summand
  std::vector<SparseVec<F>> generator_images;  ///< image in M of each summand's e_v
  ModuleMap<F> surjection;
};

/// Throws ContractError for the zero module.
template <class F>
ProjectiveCover<F> projective_cover(const GradedAlgebra<F>& alg, const Representation<F>& m);

struct Generator {
  std::size_t vertex = 0;
  int shift = 0;  ///< internal degree of the generator (0 when ungraded)
  friend bool operator==(const Generator&, const Generator&) = default;
};

template <class F>
struct ResolutionStep {
  std::vector<Generator> generators;  ///< summands P(vertex) of this step
  /// Image of each generator: in the resolved module (step 0) or in the
  /// previous step's free module, whose coordinates list each summand's
  /// basis paths in ascending basis order.
  std::vector<SparseVec<F>> images;
};

enum class ResolutionStatus { complete, truncated };

struct ResolutionOptions {
  std::size_t step_cap = 12;
  bool seek_period = true;
  std::size_t period_dim_limit = 400;
};

template <class F>
struct Resolution {
  Representation<F> module;
  std::vector<ResolutionStep<F>> steps;
  ResolutionStatus status = ResolutionStatus::truncated;
  std::size_t projective_dimension = 0;  ///< when complete
  std::size_t cap = 0;
  bool graded = false;
  /// (j, k) with Omega^j isomorphic to Omega^k, j < k: a certificate that the
  /// resolution never ends.
  std::optional<std::pair<std::size_t, std::size_t>> period;

  /// Multiplicity of P(v) at step k, indexed by local vertex.
  std::vector<std::size_t> betti(std::size_t k) const;
};

/// Minimal projective resolution by iterated projective covers, computed
/// blockwise by (vertex, internal degree) when the module is graded.
/// Steps P_0 .. P_cap are computed; the status is complete when a syzygy
/// vanishes by then.
template <class F>
Resolution<F> minimal_resolution(const GradedAlgebra<F>& alg, const Representation<F>& m,
                                 const ResolutionOptions& options = {});

struct ResolutionCheck {
  bool square_zero = true;
  bool exact = true;
  bool minimal = true;
  std::vector<std::string> problems;
  bool ok() const { return square_zero && exact && minimal; }
};

/// Recomputes d^2 = 0, exactness by rank bookkeeping and minimality.
template <class F>
ResolutionCheck verify_resolution(const GradedAlgebra<F>& alg, const Resolution<F>& res);

/// The differential P_k -> P_{k-1} (or P_0 -> M for k = 0) as a module map
/// between explicit representations.
template <class F>
ModuleMap<F> differential(const GradedAlgebra<F>& alg, const Resolution<F>& res, std::size_t k);
template <class F>
Representation<F> step_module(const GradedAlgebra<F>& alg, const Resolution<F>& res, std::size_t k);

enum class GlobalDimensionKind { finite, at_least };

struct GlobalDimension {
  GlobalDimensionKind kind = GlobalDimensionKind::at_least;
  std::size_t value = 0;  ///< g when finite, the step cap otherwise
  std::vector<std::optional<std::size_t>> simple_pd;  ///< per local vertex, empty when truncated
  /// Some simple module has a periodic syzygy, so the global dimension is
  /// certainly infinite.
  bool periodic_certificate = false;
};

template <class F>
GlobalDimension global_dimension(const GradedAlgebra<F>& alg, const ResolutionOptions& options = {});

/// Entry (i, j) = number of basis paths from i to j = multiplicity of S(j)
/// in P(i).
template <class F>
std::vector<std::vector<long>> cartan_matrix(const GradedAlgebra<F>& alg);

mpz_class integer_determinant(const std::vector<std::vector<long>>& m);

enum class IsoVerdict { isomorphic, not_isomorphic, undecided };

struct IsoOptions {
  int grid = 2;                 ///< coordinates searched in {-grid .. grid}
  std::size_t budget = 20000;   ///< grid points tried before giving up
};

template <class F>
struct IsoResult {
  IsoVerdict verdict = IsoVerdict::undecided;
  std::optional<ModuleMap<F>> witness;
  std::string reason;
  std::size_t hom_dimension = 0;
};

/// Basis of Hom(M, N).
template <class F>
std::vector<ModuleMap<F>> hom_space(const Representation<F>& m, const Representation<F>& n);

/// Throws ContractError when the modules live over different quivers.
template <class F>
IsoResult<F> module_isomorphic(const Representation<F>& m, const Representation<F>& n,
                               const IsoOptions& options = {});

enum class SelfInjectiveVerdict { self_injective, not_self_injective, undecided };

template <class F>
struct SelfInjectivity {
  SelfInjectiveVerdict verdict = SelfInjectiveVerdict::undecided;
  std::vector<std::size_t> sigma;  ///< local vertices; soc P(i) = S(sigma[i])
  std::vector<ModuleMap<F>> witnesses;  ///< P(i) -> I(sigma[i])
  std::string reason;
};

template <class F>
SelfInjectivity<F> self_injectivity(const GradedAlgebra<F>& alg, const IsoOptions& options = {});

}  // namespace qtwist
