#include <algorithm>
#include <random>
#include <set>

#include "qtwist/field.hpp"
#include "qtwist/findim.hpp"

namespace qtwist {

template <class F>
Representation<F>::Representation(std::shared_ptr<const Quiver> quiver, std::vector<std::size_t> dims,
                                  std::vector<Matrix<F>> actions, std::optional<std::vector<int>> grading)
    : quiver_(std::move(quiver)), dims_(std::move(dims)), actions_(std::move(actions)), grading_(std::move(grading)) {
  if (!quiver_) throw ContractError("representation without a quiver");
  if (dims_.size() != quiver_->vertex_count())
    throw ContractError("dimension vector has " + std::to_string(dims_.size()) + " entries for " +
                        std::to_string(quiver_->vertex_count()) + " vertices");
  if (actions_.size() != quiver_->arrow_count()) throw ContractError("one action matrix per arrow is required");
  for (const Arrow& a : quiver_->arrows()) {
    const Matrix<F>& m = actions_[a.id];
    if (m.rows() != dims_[a.target] || m.cols() != dims_[a.source])
      throw ContractError("action matrix of arrow " + a.label() + " has the wrong shape");
  }
  offsets_.resize(dims_.size());
  for (std::size_t v = 0; v < dims_.size(); ++v) {
    offsets_[v] = total_;
    total_ += dims_[v];
  }
  if (grading_ && grading_->size() != total_) throw ContractError("grading must list one degree per coordinate");
}

template <class F>
std::size_t Representation<F>::vertex_of(std::size_t coord) const {
  if (coord >= total_) throw std::out_of_range("coordinate out of range");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), coord);
  std::size_t v = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  while (dims_[v] == 0) --v;
  return v;
}

template <class F>
Matrix<F> Representation<F>::path_action(const Path& p) const {
  Matrix<F> m = Matrix<F>::identity(dims_.at(p.source));
  for (std::size_t a : p.arrows) m = actions_.at(a) * m;
  return m;
}

template <class F>
SparseVec<F> Representation<F>::act(const SparseVec<F>& x, std::size_t arrow) const {
  const Arrow& a = quiver_->arrow(arrow);
  const Matrix<F>& m = actions_[a.id];
  std::vector<F> out(dims_[a.target]);
  const std::size_t lo = offsets_[a.source], hi = lo + dims_[a.source];
  for (const auto& [coord, c] : x) {
    if (coord < lo || coord >= hi) continue;
    const std::size_t col = coord - lo;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m(r, col).is_zero()) out[r] += c * m(r, col);
  }
  SparseVec<F> v;
  for (std::size_t r = 0; r < out.size(); ++r)
    if (!out[r].is_zero()) v.emplace_back(offsets_[a.target] + r, out[r]);
  return v;
}

template <class F>
bool Representation<F>::satisfies(const std::vector<Relation>& relations) const {
  for (const Relation& rel : relations) {
    if (rel.terms.empty()) continue;
    const Path& first = rel.terms.front().path;
    Matrix<F> sum(dims_.at(first.target), dims_.at(first.source));
    for (const Term& t : rel.terms) sum = sum + path_action(t.path).scaled(F::from_fraction(t.coefficient));
    if (!sum.is_zero()) return false;
  }
  return true;
}

template <class F>
ModuleMap<F> ModuleMap<F>::zero(const Representation<F>& m, const Representation<F>& n) {
  ModuleMap f;
  for (std::size_t v = 0; v < m.dims().size(); ++v) f.blocks.emplace_back(n.dim(v), m.dim(v));
  return f;
}

template <class F>
ModuleMap<F> ModuleMap<F>::identity(const Representation<F>& m) {
  ModuleMap f;
  for (std::size_t v = 0; v < m.dims().size(); ++v) f.blocks.push_back(Matrix<F>::identity(m.dim(v)));
  return f;
}

template <class F>
bool ModuleMap<F>::commutes(const Representation<F>& m, const Representation<F>& n) const {
  if (blocks.size() != m.dims().size()) return false;
  for (std::size_t v = 0; v < blocks.size(); ++v)
    if (blocks[v].rows() != n.dim(v) || blocks[v].cols() != m.dim(v)) return false;
  for (const Arrow& a : m.quiver().arrows())
    if (!(blocks[a.target] * m.action(a.id) == n.action(a.id) * blocks[a.source])) return false;
  return true;
}

template <class F>
bool ModuleMap<F>::is_invertible() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const Matrix<F>& b) { return b.is_invertible(); });
}

template <class F>
bool ModuleMap<F>::is_injective() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const Matrix<F>& b) { return b.rank() == b.cols(); });
}

template <class F>
bool ModuleMap<F>::is_surjective() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const Matrix<F>& b) { return b.rank() == b.rows(); });
}

namespace {

template <class F>
void require_relations(const Representation<F>& m, const GradedAlgebra<F>& alg, const char* what) {
  if (!m.satisfies(alg.presentation().relations))
    throw std::logic_error(std::string(what) + " violates a relation of the algebra");
}

void require_vertex(std::size_t i, std::size_t count) {
  if (i >= count)
    throw ContractError("vertex " + std::to_string(i) + " out of range (algebra has " + std::to_string(count) +
                        " vertices)");
}

}  // namespace

template <class F>
Representation<F> projective(const GradedAlgebra<F>& alg, std::size_t i) {
  require_vertex(i, alg.vertex_count());
  const auto& b = alg.basis();
  const std::size_t nv = alg.vertex_count();
  std::vector<std::size_t> dims(nv, 0), local(b.size(), 0);
  std::vector<std::vector<std::size_t>> at(nv);
  for (std::size_t p : alg.starting_at(i)) {
    local[p] = dims[b.target(p)]++;
    at[b.target(p)].push_back(p);
  }
  std::vector<Matrix<F>> actions;
  for (const Arrow& a : alg.quiver().arrows()) {
    Matrix<F> m(dims[a.target], dims[a.source]);
    for (std::size_t p : at[a.source])
      for (const auto& [q, c] : b.times_arrow(p, a.id)) m(local[q], local[p]) = c;
    actions.push_back(std::move(m));
  }
  std::vector<int> grading;
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t p : at[v]) grading.push_back(static_cast<int>(b.degree(p)));
  Representation<F> rep(alg.quiver_ptr(), dims, std::move(actions), std::move(grading));
  require_relations(rep, alg, "projective module");
  return rep;
}

template <class F>
Representation<F> injective(const GradedAlgebra<F>& alg, std::size_t i) {
  require_vertex(i, alg.vertex_count());
  const auto& b = alg.basis();
  const std::size_t nv = alg.vertex_count();
  std::vector<std::size_t> dims(nv, 0), local(b.size(), 0);
  std::vector<std::vector<std::size_t>> at(nv);
  for (std::size_t p : alg.ending_at(i)) {
    local[p] = dims[b.source(p)]++;
    at[b.source(p)].push_back(p);
  }
  // (f * a)(q) = f(a q) for q a path from target(a) to i
  std::vector<Matrix<F>> actions;
  for (const Arrow& a : alg.quiver().arrows()) {
    Matrix<F> m(dims[a.target], dims[a.source]);
    for (std::size_t q : at[a.target])
      for (const auto& [p, c] : b.arrow_times(a.id, q)) m(local[q], local[p]) = c;
    actions.push_back(std::move(m));
  }
  std::vector<int> grading;
  for (std::size_t v = 0; v < nv; ++v)
    for (std::size_t p : at[v]) grading.push_back(-static_cast<int>(b.degree(p)));
  Representation<F> rep(alg.quiver_ptr(), dims, std::move(actions), std::move(grading));
  require_relations(rep, alg, "injective module");
  return rep;
}

template <class F>
Representation<F> simple(const GradedAlgebra<F>& alg, std::size_t i) {
  require_vertex(i, alg.vertex_count());
  std::vector<std::size_t> dims(alg.vertex_count(), 0);
  dims[i] = 1;
  std::vector<Matrix<F>> actions;
  for (const Arrow& a : alg.quiver().arrows()) actions.emplace_back(dims[a.target], dims[a.source]);
  return Representation<F>(alg.quiver_ptr(), dims, std::move(actions), std::vector<int>{0});
}

template <class F>
Representation<F> direct_sum(const std::vector<Representation<F>>& parts) {
  if (parts.empty()) throw ContractError("direct sum of no modules");
  const Quiver& q = parts.front().quiver();
  const std::size_t nv = q.vertex_count();
  std::vector<std::size_t> dims(nv, 0);
  bool graded = true;
  for (const auto& p : parts) {
    if (!(p.quiver() == q)) throw ContractError("direct sum of modules over different quivers");
    for (std::size_t v = 0; v < nv; ++v) dims[v] += p.dim(v);
    graded = graded && p.grading().has_value();
  }
  std::vector<Matrix<F>> actions;
  for (const Arrow& a : q.arrows()) {
    Matrix<F> m(dims[a.target], dims[a.source]);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& p : parts) {
      const Matrix<F>& pa = p.action(a.id);
      for (std::size_t r = 0; r < pa.rows(); ++r)
        for (std::size_t c = 0; c < pa.cols(); ++c) m(r0 + r, c0 + c) = pa(r, c);
      r0 += pa.rows();
      c0 += pa.cols();
    }
    actions.push_back(std::move(m));
  }
  std::optional<std::vector<int>> grading;
  if (graded) {
    grading.emplace();
    for (std::size_t v = 0; v < nv; ++v)
      for (const auto& p : parts)
        for (std::size_t k = 0; k < p.dim(v); ++k) grading->push_back((*p.grading())[p.offset(v) + k]);
  }
  return Representation<F>(parts.front().quiver_ptr(), dims, std::move(actions), std::move(grading));
}

namespace {

// Splits vectors of m into per-vertex components and returns, per vertex, a
// reduced echelon basis of their span (in global coordinates). When every
// component is homogeneous the basis is built grade by grade and `grades`
// receives the degree of each basis vector.
template <class F>
std::vector<std::vector<SparseVec<F>>> vertex_bases(const Representation<F>& m, const std::vector<SparseVec<F>>& spanning,
                                                    std::optional<std::vector<std::vector<int>>>& grades) {
  const std::size_t nv = m.dims().size();
  std::map<std::pair<std::size_t, int>, Echelon<F>> groups;
  std::vector<std::vector<SparseVec<F>>> parts(nv);
  bool homogeneous = m.grading().has_value();
  std::vector<std::pair<std::size_t, SparseVec<F>>> components;
  for (const auto& x : spanning) {
    std::map<std::size_t, SparseVec<F>> split;
    for (const auto& [coord, c] : x) split[m.vertex_of(coord)].emplace_back(coord, c);
    for (auto& [v, comp] : split) {
      if (homogeneous) {
        const int g = (*m.grading())[comp.front().first];
        for (const auto& [coord, c] : comp)
          if ((*m.grading())[coord] != g) homogeneous = false;
      }
      components.emplace_back(v, std::move(comp));
    }
  }
  for (auto& [v, comp] : components) {
    const int g = homogeneous ? (*m.grading())[comp.front().first] : 0;
    groups[{v, g}].insert(comp);
  }
  if (homogeneous) grades.emplace(nv);
  else grades.reset();
  for (const auto& [key, ech] : groups) {
    for (const auto& row : ech.rows()) {
      parts[key.first].push_back(row);
      if (grades) (*grades)[key.first].push_back(key.second);
    }
  }
  return parts;
}

// Coordinates of vectors inside the span of a per-vertex basis.
template <class F>
Matrix<F> coordinates_matrix(const std::vector<SparseVec<F>>& basis, const std::vector<SparseVec<F>>& vectors,
                             std::size_t ambient, const char* what) {
  Matrix<F> m(basis.size(), vectors.size());
  if (vectors.empty() || basis.empty()) {
    for (const auto& v : vectors)
      if (!v.empty()) throw ContractError(std::string(what) + ": subspace is not closed under the arrows");
    return m;
  }
  SpanSolver<F> solver(basis, ambient);
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    auto coords = solver.coordinates(vectors[c]);
    if (!coords) throw ContractError(std::string(what) + ": subspace is not closed under the arrows");
    for (const auto& [r, x] : *coords) m(r, c) = x;
  }
  return m;
}

template <class F>
Submodule<F> build_submodule(const Representation<F>& m, std::vector<std::vector<SparseVec<F>>> parts,
                             std::optional<std::vector<std::vector<int>>> grades) {
  const std::size_t nv = m.dims().size();
  std::vector<std::size_t> dims(nv);
  for (std::size_t v = 0; v < nv; ++v) dims[v] = parts[v].size();
  std::vector<Matrix<F>> actions;
  for (const Arrow& a : m.quiver().arrows()) {
    std::vector<SparseVec<F>> images;
    for (const auto& u : parts[a.source]) images.push_back(m.act(u, a.id));
    actions.push_back(coordinates_matrix(parts[a.target], images, m.total_dimension(), "submodule"));
  }
  std::optional<std::vector<int>> grading;
  if (grades) {
    grading.emplace();
    for (std::size_t v = 0; v < nv; ++v) grading->insert(grading->end(), (*grades)[v].begin(), (*grades)[v].end());
  }
  Submodule<F> out{Representation<F>(m.quiver_ptr(), dims, std::move(actions), std::move(grading)), {}};
  for (std::size_t v = 0; v < nv; ++v) {
    Matrix<F> inc(m.dim(v), dims[v]);
    for (std::size_t c = 0; c < dims[v]; ++c)
      for (const auto& [coord, x] : parts[v][c]) inc(coord - m.offset(v), c) = x;
    out.inclusion.blocks.push_back(std::move(inc));
  }
  return out;
}

template <class F>
std::vector<SparseVec<F>> radical_spanning_set(const Representation<F>& m) {
  std::vector<SparseVec<F>> spanning;
  for (const Arrow& a : m.quiver().arrows())
    for (std::size_t k = 0; k < m.dim(a.source); ++k) {
      SparseVec<F> img = m.act(sparse::unit<F>(m.offset(a.source) + k), a.id);
      if (!img.empty()) spanning.push_back(std::move(img));
    }
  return spanning;
}

}  // namespace

template <class F>
Submodule<F> submodule_from_vectors(const Representation<F>& m, const std::vector<SparseVec<F>>& spanning) {
  std::optional<std::vector<std::vector<int>>> grades;
  auto parts = vertex_bases(m, spanning, grades);
  return build_submodule(m, std::move(parts), std::move(grades));
}

template <class F>
Submodule<F> radical(const Representation<F>& m) {
  return submodule_from_vectors(m, radical_spanning_set(m));
}

template <class F>
Submodule<F> socle(const Representation<F>& m) {
  std::vector<SparseVec<F>> spanning;
  for (std::size_t s = 0; s < m.dims().size(); ++s) {
    // columns: coordinates at s, grouped by degree when graded
    std::map<int, std::vector<std::size_t>> by_grade;
    for (std::size_t k = 0; k < m.dim(s); ++k) {
      const std::size_t coord = m.offset(s) + k;
      by_grade[m.grading() ? (*m.grading())[coord] : 0].push_back(coord);
    }
    for (const auto& [g, coords] : by_grade) {
      std::vector<SparseVec<F>> images;
      for (std::size_t coord : coords) {
        SparseVec<F> img;
        for (const Arrow& a : m.quiver().arrows()) {
          if (a.source != s) continue;
          for (const auto& [c, x] : m.act(sparse::unit<F>(coord), a.id)) img.emplace_back(c + a.id * m.total_dimension(), x);
        }
        std::sort(img.begin(), img.end(), [](const auto& u, const auto& w) { return u.first < w.first; });
        images.push_back(std::move(img));
      }
      for (const auto& k : kernel_of_columns(images, m.total_dimension() * std::max<std::size_t>(1, m.quiver().arrow_count()))) {
        SparseVec<F> v;
        for (const auto& [local, x] : k) v.emplace_back(coords[local], x);
        spanning.push_back(std::move(v));
      }
    }
  }
  return submodule_from_vectors(m, spanning);
}

namespace {

// Unit coordinates of m completing a basis of rad m, per vertex and (when
// graded) per degree, in ascending coordinate order.
template <class F>
std::vector<std::size_t> top_coordinates(const Representation<F>& m) {
  std::map<std::pair<std::size_t, int>, Echelon<F>> groups;
  auto grade_of = [&](std::size_t coord) { return m.grading() ? (*m.grading())[coord] : 0; };
  for (const auto& x : radical_spanning_set(m)) {
    // split by vertex and degree; actions of graded modules are homogeneous
    std::map<std::pair<std::size_t, int>, SparseVec<F>> split;
    for (const auto& [coord, c] : x) split[{m.vertex_of(coord), grade_of(coord)}].emplace_back(coord, c);
    for (auto& [key, comp] : split) groups[key].insert(std::move(comp));
  }
  std::vector<std::size_t> chosen;
  for (std::size_t coord = 0; coord < m.total_dimension(); ++coord)
    if (groups[{m.vertex_of(coord), grade_of(coord)}].insert(sparse::unit<F>(coord))) chosen.push_back(coord);
  return chosen;
}

}  // namespace

template <class F>
QuotientModule<F> top(const Representation<F>& m) {
  const std::vector<std::size_t> chosen = top_coordinates(m);
  const Submodule<F> rad = radical(m);
  const std::size_t nv = m.dims().size();
  std::vector<std::size_t> dims(nv, 0);
  std::vector<std::vector<std::size_t>> at(nv);
  for (std::size_t coord : chosen) {
    at[m.vertex_of(coord)].push_back(coord);
    ++dims[m.vertex_of(coord)];
  }
  std::vector<Matrix<F>> actions;
  for (const Arrow& a : m.quiver().arrows()) actions.emplace_back(dims[a.target], dims[a.source]);
  std::optional<std::vector<int>> grading;
  if (m.grading()) {
    grading.emplace();
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t coord : at[v]) grading->push_back((*m.grading())[coord]);
  }
  QuotientModule<F> out{Representation<F>(m.quiver_ptr(), dims, std::move(actions), std::move(grading)), {}};
  for (std::size_t v = 0; v < nv; ++v) {
    // basis of M_v: radical vectors first, then the chosen units
    std::vector<SparseVec<F>> basis;
    const Matrix<F>& inc = rad.inclusion.blocks[v];
    for (std::size_t c = 0; c < inc.cols(); ++c) {
      SparseVec<F> col;
      for (std::size_t r = 0; r < inc.rows(); ++r)
        if (!inc(r, c).is_zero()) col.emplace_back(r, inc(r, c));
      basis.push_back(std::move(col));
    }
    for (std::size_t coord : at[v]) basis.push_back(sparse::unit<F>(coord - m.offset(v)));
    Matrix<F> proj(dims[v], m.dim(v));
    if (m.dim(v) > 0) {
      SpanSolver<F> solver(basis, m.dim(v));
      for (std::size_t k = 0; k < m.dim(v); ++k) {
        const auto coords = solver.coordinates(sparse::unit<F>(k));
        for (const auto& [idx, x] : *coords)
          if (idx >= inc.cols()) proj(idx - inc.cols(), k) = x;
      }
    }
    out.projection.blocks.push_back(std::move(proj));
  }
  return out;
}

template <class F>
ProjectiveCover<F> projective_cover(const GradedAlgebra<F>& alg, const Representation<F>& m) {
  if (m.is_zero()) throw ContractError("the zero module has no projective cover");
  if (!(m.quiver() == alg.quiver())) throw ContractError("module and algebra have different quivers");
  ProjectiveCover<F> out;
  std::vector<Representation<F>> parts;
  for (std::size_t coord : top_coordinates(m)) {
    const std::size_t v = m.vertex_of(coord);
    out.summands.push_back(v);
    out.generator_images.push_back(sparse::unit<F>(coord));
    parts.push_back(projective(alg, v));
  }
  out.cover = direct_sum(parts);
  const auto& b = alg.basis();
  const std::size_t nv = alg.vertex_count();
  for (std::size_t t = 0; t < nv; ++t) out.surjection.blocks.emplace_back(m.dim(t), out.cover.dim(t));
  std::vector<std::size_t> column(nv, 0);
  for (std::size_t t = 0; t < nv; ++t) {
    for (std::size_t g = 0; g < out.summands.size(); ++g) {
      const std::size_t v = out.summands[g];
      const std::size_t coord = out.generator_images[g].front().first - m.offset(v);
      for (std::size_t p : alg.starting_at(v)) {
        if (b.target(p) != t) continue;
        const Matrix<F> act = m.path_action(b.path(p));
        for (std::size_t r = 0; r < act.rows(); ++r) out.surjection.blocks[t](r, column[t]) = act(r, coord);
        ++column[t];
      }
    }
  }
  return out;
}

template <class F>
std::vector<std::vector<long>> cartan_matrix(const GradedAlgebra<F>& alg) {
  const std::size_t nv = alg.vertex_count();
  std::vector<std::vector<long>> c(nv, std::vector<long>(nv, 0));
  for (std::size_t p = 0; p < alg.dimension(); ++p) ++c[alg.basis().source(p)][alg.basis().target(p)];
  return c;
}

mpz_class integer_determinant(const std::vector<std::vector<long>>& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw ContractError("determinant of a non-square matrix");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const mpq_class f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
    }
  }
  return det.get_num();
}

template <class F>
std::vector<ModuleMap<F>> hom_space(const Representation<F>& m, const Representation<F>& n) {
  const std::size_t nv = m.dims().size();
  std::vector<std::size_t> base(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) base[v + 1] = base[v] + n.dim(v) * m.dim(v);
  auto unknown = [&](std::size_t v, std::size_t r, std::size_t c) { return base[v] + r * m.dim(v) + c; };

  // equation e: entry (r, c) of f_t A^M_a - A^N_a f_s for arrow a: s -> t
  std::vector<SparseVec<F>> columns(base[nv]);
  std::size_t eq = 0;
  for (const Arrow& a : m.quiver().arrows()) {
    const Matrix<F>& am = m.action(a.id);
    const Matrix<F>& an = n.action(a.id);
    const std::size_t s = a.source, t = a.target;
    for (std::size_t r = 0; r < n.dim(t); ++r)
      for (std::size_t c = 0; c < m.dim(s); ++c, ++eq) {
        for (std::size_t k = 0; k < m.dim(t); ++k)
          if (!am(k, c).is_zero()) columns[unknown(t, r, k)].emplace_back(eq, am(k, c));
        for (std::size_t k = 0; k < n.dim(s); ++k)
          if (!an(r, k).is_zero()) columns[unknown(s, k, c)].emplace_back(eq, -an(r, k));
      }
  }
  // an unknown may have collected two entries for the same equation
  for (auto& col : columns) {
    std::sort(col.begin(), col.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVec<F> merged;
    for (auto& [i, x] : col) {
      if (!merged.empty() && merged.back().first == i) merged.back().second += x;
      else merged.emplace_back(i, x);
    }
    std::erase_if(merged, [](const auto& p) { return p.second.is_zero(); });
    col = std::move(merged);
  }
  std::vector<ModuleMap<F>> out;
  for (const auto& k : kernel_of_columns(columns, eq)) {
    ModuleMap<F> f = ModuleMap<F>::zero(m, n);
    for (const auto& [idx, x] : k) {
      const std::size_t v = static_cast<std::size_t>(std::upper_bound(base.begin(), base.end(), idx) - base.begin()) - 1;
      const std::size_t off = idx - base[v];
      f.blocks[v](off / m.dim(v), off % m.dim(v)) = x;
    }
    out.push_back(std::move(f));
  }
  return out;
}

template <class F>
IsoResult<F> module_isomorphic(const Representation<F>& m, const Representation<F>& n, const IsoOptions& options) {
  if (!(m.quiver() == n.quiver())) throw ContractError("modules over different quivers cannot be compared");
  IsoResult<F> out;
  if (m.dims() != n.dims()) {
    out.verdict = IsoVerdict::not_isomorphic;
    out.reason = "dimension vectors differ";
    return out;
  }
  if (m.is_zero()) {
    out.verdict = IsoVerdict::isomorphic;
    out.witness = ModuleMap<F>::zero(m, n);
    return out;
  }
  const std::vector<ModuleMap<F>> hom = hom_space(m, n);
  out.hom_dimension = hom.size();
  if (hom.empty()) {
    out.verdict = IsoVerdict::not_isomorphic;
    out.reason = "Hom(M, N) is zero";
    return out;
  }
  auto combine = [&](const std::vector<int>& coeffs) {
    ModuleMap<F> f = ModuleMap<F>::zero(m, n);
    for (std::size_t i = 0; i < hom.size(); ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t v = 0; v < f.blocks.size(); ++v)
        f.blocks[v] = f.blocks[v] + hom[i].blocks[v].scaled(F(coeffs[i]));
    }
    return f;
  };
  std::size_t tried = 0;
  auto attempt = [&](const std::vector<int>& coeffs) {
    ++tried;
    ModuleMap<F> f = combine(coeffs);
    if (!f.is_invertible()) return false;
    out.verdict = IsoVerdict::isomorphic;
    out.witness = std::move(f);
    return true;
  };

  const std::size_t h = hom.size();
  std::vector<int> coeffs(h, 0);
  for (std::size_t i = 0; i < h; ++i) {
    coeffs.assign(h, 0);
    coeffs[i] = 1;
    if (attempt(coeffs)) return out;
  }
  coeffs.assign(h, 1);
  if (attempt(coeffs)) return out;

  const int width = 2 * options.grid + 1;
  double points = 1;
  for (std::size_t i = 0; i < h && points <= static_cast<double>(options.budget); ++i) points *= width;
  if (points <= static_cast<double>(options.budget)) {
    coeffs.assign(h, -options.grid);
    while (true) {
      if (attempt(coeffs)) return out;
      std::size_t i = 0;
      while (i < h && coeffs[i] == options.grid) coeffs[i++] = -options.grid;
      if (i == h) break;
      ++coeffs[i];
    }
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(-options.grid, options.grid);
    while (tried < options.budget) {
      for (auto& c : coeffs) c = pick(rng);
      if (attempt(coeffs)) return out;
    }
  }
  out.verdict = IsoVerdict::undecided;
  out.reason = "no invertible map among " + std::to_string(tried) + " grid points of a " + std::to_string(h) +
               "-dimensional Hom space";
  return out;
}

template <class F>
SelfInjectivity<F> self_injectivity(const GradedAlgebra<F>& alg, const IsoOptions& options) {
  SelfInjectivity<F> out;
  const std::size_t nv = alg.vertex_count();
  std::vector<bool> hit(nv, false);
  for (std::size_t i = 0; i < nv; ++i) {
    const Submodule<F> soc = socle(projective(alg, i));
    if (soc.module.total_dimension() != 1) {
      out.verdict = SelfInjectiveVerdict::not_self_injective;
      out.reason = "soc P(" + std::to_string(alg.quiver().label(i)) + ") is not simple (dimension " +
                   std::to_string(soc.module.total_dimension()) + ")";
      out.sigma.clear();
      return out;
    }
    std::size_t v = 0;
    while (soc.module.dim(v) == 0) ++v;
    out.sigma.push_back(v);
    if (hit[v]) {
      out.verdict = SelfInjectiveVerdict::not_self_injective;
      out.reason = "socles of two indecomposable projectives coincide at vertex " +
                   std::to_string(alg.quiver().label(v)) + "; no Nakayama permutation";
      out.sigma.clear();
      return out;
    }
    hit[v] = true;
  }
  for (std::size_t i = 0; i < nv; ++i) {
    const auto iso = module_isomorphic(projective(alg, i), injective(alg, out.sigma[i]), options);
    if (iso.verdict == IsoVerdict::not_isomorphic) {
      out.verdict = SelfInjectiveVerdict::not_self_injective;
      out.reason = "P(" + std::to_string(alg.quiver().label(i)) + ") is not isomorphic to I(" +
                   std::to_string(alg.quiver().label(out.sigma[i])) + "): " + iso.reason;
      out.witnesses.clear();
      return out;
    }
    if (iso.verdict == IsoVerdict::undecided) {
      out.verdict = SelfInjectiveVerdict::undecided;
      out.reason = "isomorphism P(" + std::to_string(alg.quiver().label(i)) + ") = I(" +
                   std::to_string(alg.quiver().label(out.sigma[i])) + ") undecided: " + iso.reason;
      out.witnesses.clear();
      return out;
    }
    out.witnesses.push_back(*iso.witness);
  }
  out.verdict = SelfInjectiveVerdict::self_injective;
  return out;
}

#define QTWIST_INSTANTIATE(F)                                                                                   \
  template class Representation<F>;                                                                             \
  template struct ModuleMap<F>;                                                                                 \
  template Representation<F> projective(const GradedAlgebra<F>&, std::size_t);                                 \
  template Representation<F> injective(const GradedAlgebra<F>&, std::size_t);                                   \
  template Representation<F> simple(const GradedAlgebra<F>&, std::size_t);                                      \
  template Representation<F> direct_sum(const std::vector<Representation<F>>&);                                 \
  template Submodule<F> submodule_from_vectors(const Representation<F>&, const std::vector<SparseVec<F>>&);      \
  template Submodule<F> radical(const Representation<F>&);                                                      \
  template Submodule<F> socle(const Representation<F>&);                                                        \
  template QuotientModule<F> top(const Representation<F>&);                                                     \
  template ProjectiveCover<F> projective_cover(const GradedAlgebra<F>&, const Representation<F>&);              \
  template std::vector<std::vector<long>> cartan_matrix(const GradedAlgebra<F>&);                               \
  template std::vector<ModuleMap<F>> hom_space(const Representation<F>&, const Representation<F>&);             \
  template IsoResult<F> module_isomorphic(const Representation<F>&, const Representation<F>&, const IsoOptions&); \
  template SelfInjectivity<F> self_injectivity(const GradedAlgebra<F>&, const IsoOptions&);

QTWIST_INSTANTIATE(Rational)
QTWIST_INSTANTIATE(ModP)

}  // namespace qtwist
