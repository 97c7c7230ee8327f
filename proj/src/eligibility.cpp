#include "qtwist/eligibility.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "qtwist/field.hpp"

namespace qtwist {

VertexSet VertexSet::make(int n, std::vector<int> members) {
  if (n < 1) throw ContractError("group order must be >= 1, got " + std::to_string(n));
  for (int v : members)
    if (v < 0 || v >= n)
      throw ContractError("vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  VertexSet s;
  s.n_ = n;
  s.members_ = std::move(members);
  return s;
}

VertexSet VertexSet::from_mask(int n, unsigned long mask) {
  std::vector<int> m;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1UL) m.push_back(i);
  return make(n, std::move(m));
}

bool VertexSet::contains(int v) const { return std::binary_search(members_.begin(), members_.end(), v); }

VertexSet VertexSet::rotated(int k) const {
  std::vector<int> m;
  for (int v : members_) m.push_back(((v + k) % n_ + n_) % n_);
  return make(n_, std::move(m));
}

VertexSet VertexSet::canonical() const {
  VertexSet best = *this;
  for (int k = 1; k < n_; ++k) best = std::min(best, rotated(k));
  return best;
}

VertexSet VertexSet::complement() const {
  std::vector<int> m;
  for (int i = 0; i < n_; ++i)
    if (!contains(i)) m.push_back(i);
  return make(n_, std::move(m));
}

std::string VertexSet::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) s += (i ? "," : "") + std::to_string(members_[i]);
  return s + "}";
}

std::size_t longest_complement_run(const VertexSet& v) {
  const int n = v.n();
  if (v.empty()) return static_cast<std::size_t>(n);
  std::size_t best = 0, run = 0;
  for (int k = 0; k < 2 * n; ++k) {
    run = v.contains(k % n) ? 0 : run + 1;
    best = std::max(best, run);
  }
  return std::min(best, static_cast<std::size_t>(n));
}

bool four_successive(int n, const std::vector<int>& v) {
  const VertexSet s = VertexSet::make(n, v);
  return n >= 4 && longest_complement_run(s) >= 4;
}

bool criterion_applies(const GroupData& group) {
  const int n = group.n;
  if (n <= 3 || n % 2 == 0) return false;
  auto w = group.weights;
  std::sort(w.begin(), w.end());
  return w == std::array<int, 3>{1, 1, n - 2};
}

std::string to_string(Eligibility e) {
  switch (e) {
    case Eligibility::eligible: return "yes";
    case Eligibility::not_eligible: return "no";
    case Eligibility::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

template <class F>
KernelIdempotency kernel_idempotency(const TruncatedAlgebra<F>& trunc, const VertexSet& v,
                                     const std::vector<std::size_t>* quotient_dims) {
  KernelIdempotency out;
  out.cap = trunc.degree_cap();
  const SquareReport rep = ideal_square_test(trunc, v.members());
  out.rows = rep.rows;
  out.verified = rep.all_equal && rep.all_contained;
  if (quotient_dims) {
    out.duality = ideal_quotient_duality(trunc, graded_ideal(trunc, v.members()), *quotient_dims);
    out.duality_ok = std::all_of(out.duality.begin(), out.duality.end(), [](bool b) { return b; });
  }
  return out;
}

namespace {

std::string ideal_text(const VertexSet& v) {
  std::string s = "A(";
  for (std::size_t i = 0; i < v.members().size(); ++i) s += (i ? "+e_" : "e_") + std::to_string(v.members()[i]);
  return s + ")A";
}

std::string prediction_text(const EligibilityReport& r) {
  if (r.eligible != Eligibility::eligible) return "no twist prediction: " + r.reason;
  std::string s = "twist T = RHom_A(ker p, -) with ker p = " + ideal_text(r.vertices) +
                  "; cotwist C = N_B[-4] (Nakayama functor of B shifted by -d-1, d = 3)";
  if (r.self_injective == SelfInjectiveVerdict::self_injective) {
    s += "; RHom_A(ker p, S_i) = S_{sigma^-1(i)}[-2]:";
    std::vector<std::pair<int, int>> inverse;
    for (auto [i, j] : r.sigma) inverse.emplace_back(j, i);
    std::sort(inverse.begin(), inverse.end());
    for (std::size_t k = 0; k < inverse.size(); ++k)
      s += std::string(k ? "," : "") + " S_" + std::to_string(inverse[k].first) + " -> S_" +
           std::to_string(inverse[k].second) + "[-2]";
  }
  return s;
}

}  // namespace

template <class F>
EligibilityChecker<F>::EligibilityChecker(const GroupData& group, const EligibilityCaps& caps)
    : group_(GroupData::make(group.n, group.weights)),
      caps_(caps),
      mckay_(mckay_presentation(group_)),
      trunc_(TruncatedAlgebra<F>::build(group_, caps.order_cap)) {
  if (caps.step_cap < 1) throw ContractError("resolution step cap must be >= 1");
}

template <class F>
EligibilityReport EligibilityChecker<F>::check(const VertexSet& v) const {
  if (v.n() != group_.n)
    throw ContractError("vertex set lives in Z_" + std::to_string(v.n()) + " but the group has n=" + std::to_string(group_.n));
  if (v.empty()) throw ContractError("V must be nonempty");
  if (v.size() == static_cast<std::size_t>(group_.n)) throw ContractError("V must not contain every vertex");

  EligibilityReport r;
  r.group = group_;
  r.vertices = v;
  r.canonical = v.canonical();
  r.caps = caps_;
  r.caps.degree_cap = caps_.degree_cap_for(group_.n);

  const auto basis = GradedBasis<F>::build(delete_vertices(mckay_, v.members()), r.caps.degree_cap);
  r.graded_dimensions = basis.dimensions();
  if (basis.stabilized()) {
    r.dimension_status = DimensionStatus::finite;
    r.total_dimension = basis.total_dimension();
    r.nilpotency_degree = basis.nilpotency_degree();
  }
  if (criterion_applies(group_)) r.criterion = four_successive(group_.n, v.members());

  r.kernel = kernel_idempotency(trunc_, v, basis.stabilized() ? &r.graded_dimensions : nullptr);

  if (basis.stabilized()) {
    const auto alg = structure_constants(basis);
    ResolutionOptions opts;
    opts.step_cap = caps_.step_cap;
    opts.seek_period = caps_.seek_period;
    const GlobalDimension gd = global_dimension(alg, opts);
    r.gldim_computed = true;
    r.gldim_kind = gd.kind;
    r.gldim_value = gd.value;
    r.periodic_certificate = gd.periodic_certificate;
    if (gd.kind == GlobalDimensionKind::finite) r.cartan_determinant = integer_determinant(cartan_matrix(alg)).get_str();
    const auto si = self_injectivity(alg, caps_.iso);
    r.self_injective = si.verdict;
    if (si.verdict == SelfInjectiveVerdict::self_injective)
      for (std::size_t i = 0; i < si.sigma.size(); ++i)
        r.sigma.emplace_back(alg.quiver().label(i), alg.quiver().label(si.sigma[i]));
    if (r.criterion) r.criterion_agrees = *r.criterion == (gd.kind == GlobalDimensionKind::at_least);
  }

  const bool finite_gldim = r.gldim_computed && r.gldim_kind == GlobalDimensionKind::finite;
  const bool infinite_gldim =
      r.gldim_computed && !finite_gldim && (r.periodic_certificate || r.criterion.value_or(false));
  if (r.dimension_status != DimensionStatus::finite) {
    r.eligible = Eligibility::inconclusive;
    r.reason = "quotient did not stabilize below degree " + std::to_string(r.caps.degree_cap);
  } else if (!r.kernel.verified) {
    r.eligible = Eligibility::not_eligible;
    r.reason = "(ker p)^2 differs from ker p within degree " + std::to_string(r.kernel.cap);
  } else if (finite_gldim) {
    r.eligible = Eligibility::eligible;
    r.reason = "finite global dimension " + std::to_string(r.gldim_value);
  } else if (r.self_injective == SelfInjectiveVerdict::self_injective) {
    r.eligible = Eligibility::eligible;
    r.reason = "self-injective";
  } else if (infinite_gldim && r.self_injective == SelfInjectiveVerdict::not_self_injective) {
    r.eligible = Eligibility::not_eligible;
    r.reason = std::string("infinite global dimension (") +
               (r.periodic_certificate ? "periodic syzygy" : "four successive vertices outside V") +
               ") and not self-injective";
  } else {
    r.eligible = Eligibility::inconclusive;
    r.reason = r.self_injective == SelfInjectiveVerdict::undecided
                   ? "self-injectivity undecided within the isomorphism search budget"
                   : "global dimension exceeds " + std::to_string(r.gldim_value) + " without a certificate";
  }
  r.prediction = prediction_text(r);
  return r;
}

template <class F>
EligibilityReport check_quotient(const GroupData& group, const VertexSet& v, const EligibilityCaps& caps) {
  return EligibilityChecker<F>(group, caps).check(v);
}

template <class F>
Enumeration enumerate(const GroupData& group, const EligibilityCaps& caps, bool up_to_rotation, unsigned jobs) {
  const EligibilityChecker<F> checker(group, caps);
  const int n = checker.group().n;
  if (n > 24) throw ContractError("enumeration supports n <= 24, got " + std::to_string(n));
  std::vector<VertexSet> sets;
  for (unsigned long mask = 1; mask + 1 < (1UL << n); ++mask) {
    VertexSet v = VertexSet::from_mask(n, mask);
    if (up_to_rotation && v.canonical() != v) continue;
    sets.push_back(std::move(v));
  }
  std::sort(sets.begin(), sets.end(), [](const VertexSet& a, const VertexSet& b) {
    return std::pair(a.canonical(), a) < std::pair(b.canonical(), b);
  });

  Enumeration out;
  out.group = checker.group();
  out.caps = caps;
  out.caps.degree_cap = caps.degree_cap_for(n);
  out.up_to_rotation = up_to_rotation;
  out.reports.resize(sets.size());

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(sets.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < sets.size(); i = next++) {
      try {
        out.reports[i] = checker.check(sets[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = sets.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (const auto& r : out.reports) {
    if (r.eligible == Eligibility::eligible) ++out.eligible;
    else if (r.eligible == Eligibility::not_eligible) ++out.ineligible;
    else ++out.inconclusive;
    if (r.criterion_agrees == false) ++out.disagreements;
  }
  return out;
}

#define QTWIST_INSTANTIATE(F)                                                                                       \
  template KernelIdempotency kernel_idempotency(const TruncatedAlgebra<F>&, const VertexSet&,                       \
                                                const std::vector<std::size_t>*);                                   \
  template class EligibilityChecker<F>;                                                                             \
  template EligibilityReport check_quotient<F>(const GroupData&, const VertexSet&, const EligibilityCaps&);          \
  template Enumeration enumerate<F>(const GroupData&, const EligibilityCaps&, bool, unsigned);

QTWIST_INSTANTIATE(Rational)
QTWIST_INSTANTIATE(ModP)

}  // namespace qtwist
