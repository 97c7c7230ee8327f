#include "qtwist/normalform.hpp"

#include <algorithm>

#include "qtwist/field.hpp"

namespace qtwist {

namespace {

// Monomial-order key of a path: the ranks of its arrows in (family, index, id)
// order. Paths of one degree compare lexicographically on these keys.
std::vector<std::size_t> order_key(const Path& p, const std::vector<std::size_t>& rank) {
  std::vector<std::size_t> key;
  key.reserve(p.arrows.size());
  for (std::size_t a : p.arrows) key.push_back(rank[a]);
  return key;
}

}  // namespace

template <class F>
std::size_t GradedBasis<F>::add_element(Path p) {
  const std::size_t id = paths_.size();
  index_.emplace(std::pair(p.source, p.arrows), id);
  paths_.push_back(std::move(p));
  right_.emplace_back();
  return id;
}

template <class F>
GradedBasis<F> GradedBasis<F>::build(const Presentation& pres, std::size_t degree_cap) {
  if (degree_cap < 1) throw ContractError("degree cap must be >= 1");
  const ValidationReport report = validate_presentation(pres);
  if (!report.valid) throw ContractError("invalid presentation: " + report.violations.front());
  for (std::size_t r = 0; r < pres.relations.size(); ++r) {
    if (pres.relations[r].degree() < 2)
      throw ContractError("relation " + std::to_string(r) + " has degree < 2; only relations in the square of the arrow ideal are supported");
  }

  GradedBasis b;
  b.pres_ = pres;
  b.cap_ = degree_cap;
  const Quiver& q = b.pres_.quiver;

  std::vector<std::size_t> rank(q.arrow_count());
  {
    const auto ordered = q.arrows_in_order();
    for (std::size_t r = 0; r < ordered.size(); ++r) rank[ordered[r]] = r;
  }
  std::vector<std::vector<std::size_t>> arrows_from(q.vertex_count());
  for (const Arrow& a : q.arrows()) arrows_from[a.source].push_back(a.id);

  std::map<std::size_t, std::vector<const Relation*>> relations_of_degree;
  for (const Relation& r : b.pres_.relations) relations_of_degree[r.degree()].push_back(&r);

  b.by_degree_.emplace_back();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) b.by_degree_[0].push_back(b.add_element(Path::idempotent(v)));
  if (q.vertex_count() == 0) {
    b.stabilized_ = true;
    return b;
  }

  for (std::size_t d = 1; d <= degree_cap; ++d) {
    // candidates b * a with b a standard monomial of degree d-1
    struct Candidate {
      std::size_t prefix;
      std::size_t arrow;
      std::vector<std::size_t> key;
    };
    std::vector<Candidate> cands;
    for (std::size_t i : b.by_degree_[d - 1]) {
      for (std::size_t a : arrows_from[b.paths_[i].target]) {
        Path p = b.paths_[i];
        p.arrows.push_back(a);
        cands.push_back(Candidate{i, a, order_key(p, rank)});
      }
    }
    // descending order: column 0 is the largest path
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) { return x.key > y.key; });
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> column;
    for (std::size_t c = 0; c < cands.size(); ++c) column.emplace(std::pair(cands[c].prefix, cands[c].arrow), c);

    Echelon<F> ech;
    sparse::Accumulator<F> acc(cands.size());
    for (const auto& [k, rels] : relations_of_degree) {
      if (k > d) break;
      for (std::size_t c : b.by_degree_[d - k]) {
        for (const Relation* rel : rels) {
          if (rel->terms.front().path.source != b.paths_[c].target) continue;
          for (const Term& t : rel->terms) {
            const F coef = F::from_fraction(t.coefficient);
            SparseVec<F> v = sparse::unit<F>(c);
            for (std::size_t s = 0; s + 1 < t.path.arrows.size(); ++s) v = b.times_arrow(v, t.path.arrows[s]);
            const std::size_t last = t.path.arrows.back();
            for (const auto& [j, x] : v) acc.add(column.at({j, last}), coef * x);
          }
          ech.insert(acc.take());
        }
      }
    }

    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < cands.size(); ++c)
      if (!ech.is_pivot(c)) free_cols.push_back(c);

    // ascending path order for global indices
    std::vector<std::size_t> global(cands.size(), SIZE_MAX);
    b.by_degree_.emplace_back();
    for (auto it = free_cols.rbegin(); it != free_cols.rend(); ++it) {
      Path p = b.paths_[cands[*it].prefix];
      p.arrows.push_back(cands[*it].arrow);
      p.target = q.arrow(cands[*it].arrow).target;
      global[*it] = b.add_element(std::move(p));
      b.by_degree_[d].push_back(global[*it]);
    }

    for (std::size_t c = 0; c < cands.size(); ++c) {
      SparseVec<F> nf;
      if (global[c] != SIZE_MAX) {
        nf = sparse::unit<F>(global[c]);
      } else {
        const auto& pivots = ech.pivots();
        const auto row = static_cast<std::size_t>(std::lower_bound(pivots.begin(), pivots.end(), c) - pivots.begin());
        for (const auto& [col, x] : ech.rows()[row]) {
          if (col == c) continue;
          nf.emplace_back(global[col], -x);
        }
        std::sort(nf.begin(), nf.end(), [](const auto& u, const auto& w) { return u.first < w.first; });
      }
      b.right_[cands[c].prefix].emplace_back(cands[c].arrow, std::move(nf));
    }

    if (b.by_degree_[d].empty()) {
      b.stabilized_ = true;
      break;
    }
  }
  return b;
}

template <class F>
std::vector<std::size_t> GradedBasis<F>::dimensions() const {
  std::vector<std::size_t> out;
  for (const auto& piece : by_degree_) out.push_back(piece.size());
  return out;
}

template <class F>
std::optional<std::size_t> GradedBasis<F>::nilpotency_degree() const {
  if (!stabilized_) return std::nullopt;
  return by_degree_.size() - 1;
}

template <class F>
std::optional<std::size_t> GradedBasis<F>::index_of(const Path& p) const {
  auto it = index_.find({p.source, p.arrows});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

template <class F>
const SparseVec<F>& GradedBasis<F>::times_arrow(std::size_t i, std::size_t arrow) const {
  static const SparseVec<F> zero;
  const Path& p = paths_.at(i);
  if (quiver().arrow(arrow).source != p.target) return zero;
  for (const auto& [a, nf] : right_[i])
    if (a == arrow) return nf;
  if (stabilized_) return zero;
  throw std::out_of_range("product exceeds the degree cap " + std::to_string(cap_) + " of an unstabilized basis");
}

template <class F>
SparseVec<F> GradedBasis<F>::times_arrow(const SparseVec<F>& v, std::size_t arrow) const {
  if (v.size() == 1) return sparse::scale(times_arrow(v.front().first, arrow), v.front().second);
  std::vector<std::pair<std::size_t, F>> terms;
  for (const auto& [i, c] : v)
    for (const auto& [k, x] : times_arrow(i, arrow)) terms.emplace_back(k, c * x);
  return sparse::collect(std::move(terms));
}

template <class F>
SparseVec<F> GradedBasis<F>::arrow_times(std::size_t arrow, std::size_t i) const {
  const Arrow& a = quiver().arrow(arrow);
  if (a.target != paths_.at(i).source) return {};
  SparseVec<F> v = times_arrow(idempotent(a.source), arrow);
  for (std::size_t b : paths_[i].arrows) v = times_arrow(v, b);
  return v;
}

template <class F>
SparseVec<F> GradedBasis<F>::reduce(const Path& p) const {
  SparseVec<F> v = sparse::unit<F>(idempotent(p.source));
  for (std::size_t a : p.arrows) v = times_arrow(v, a);
  return v;
}

template <class F>
SparseVec<F> GradedBasis<F>::multiply(std::size_t i, std::size_t j) const {
  if (paths_.at(i).target != paths_.at(j).source) return {};
  SparseVec<F> v = sparse::unit<F>(i);
  for (std::size_t a : paths_[j].arrows) v = times_arrow(v, a);
  return v;
}

template <class F>
SparseVec<F> GradedBasis<F>::multiply(const SparseVec<F>& x, const SparseVec<F>& y) const {
  std::vector<std::pair<std::size_t, F>> terms;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y)
      for (const auto& [k, c] : multiply(i, j)) terms.emplace_back(k, a * b * c);
  return sparse::collect(std::move(terms));
}

template <class F>
FiniteDimensionality is_finite_dimensional(const Presentation& pres, std::size_t degree_cap) {
  const auto basis = GradedBasis<F>::build(pres, degree_cap);
  FiniteDimensionality out;
  out.cap = degree_cap;
  out.dimensions = basis.dimensions();
  if (basis.stabilized()) {
    out.status = DimensionStatus::finite;
    out.total_dimension = basis.total_dimension();
    out.nilpotency_degree = *basis.nilpotency_degree();
  }
  return out;
}

template <class F>
const SparseVec<F>& GradedAlgebra<F>::product(std::size_t i, std::size_t j) const {
  static const SparseVec<F> zero;
  auto it = table_.find({i, j});
  return it == table_.end() ? zero : it->second;
}

template <class F>
SparseVec<F> GradedAlgebra<F>::multiply(const SparseVec<F>& x, const SparseVec<F>& y) const {
  sparse::Accumulator<F> acc(dimension());
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) acc.add(product(i, j), a * b);
  return acc.take();
}

template <class F>
GradedAlgebra<F> structure_constants(const GradedBasis<F>& basis) {
  if (!basis.stabilized())
    throw ContractError("structure constants need a finite-dimensional algebra; the basis did not stabilize below degree " +
                        std::to_string(basis.degree_cap()));
  GradedAlgebra<F> alg(basis);
  alg.quiver_ptr_ = std::make_shared<const Quiver>(basis.quiver());
  const std::size_t nv = basis.quiver().vertex_count();
  alg.from_.assign(nv, {});
  alg.to_.assign(nv, {});
  alg.pos_from_.assign(basis.size(), 0);
  alg.pos_to_.assign(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    alg.pos_from_[i] = alg.from_[basis.source(i)].size();
    alg.from_[basis.source(i)].push_back(i);
    alg.pos_to_[i] = alg.to_[basis.target(i)].size();
    alg.to_[basis.target(i)].push_back(i);
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j : alg.from_[basis.target(i)]) {
      SparseVec<F> p = basis.multiply(i, j);
      if (!p.empty()) alg.table_.emplace(std::pair(i, j), std::move(p));
    }
  return alg;
}

std::size_t hilbert_row(const GroupData& group, int i, int j, std::size_t d) {
  const int n = group.n;
  const auto& w = group.weights;
  auto mod = [n](long a) { return static_cast<int>(((a % n) + n) % n); };
  const int want = mod(static_cast<long>(i) - j);
  std::size_t count = 0;
  const long dd = static_cast<long>(d);
  for (long a = 0; a <= dd; ++a)
    for (long b = 0; a + b <= dd; ++b) {
      const long c = dd - a - b;
      if (mod(a * w[0] + b * w[1] + c * w[2]) == want) ++count;
    }
  return count;
}

template class GradedBasis<Rational>;
template class GradedBasis<ModP>;
template class GradedAlgebra<Rational>;
template class GradedAlgebra<ModP>;
template FiniteDimensionality is_finite_dimensional<Rational>(const Presentation&, std::size_t);
template FiniteDimensionality is_finite_dimensional<ModP>(const Presentation&, std::size_t);
template GradedAlgebra<Rational> structure_constants(const GradedBasis<Rational>&);
template GradedAlgebra<ModP> structure_constants(const GradedBasis<ModP>&);

}  // namespace qtwist
