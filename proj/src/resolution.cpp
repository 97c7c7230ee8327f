#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "qtwist/field.hpp"
#include "qtwist/findim.hpp"

namespace qtwist {

namespace {

using BlockKey = std::pair<int, std::size_t>;  // (internal degree, vertex)

template <class F>
using Blocks = std::map<BlockKey, std::vector<SparseVec<F>>>;

template <class F>
using ActFn = std::function<SparseVec<F>(const SparseVec<F>&, std::size_t)>;

// Free module with one summand P(v)[shift] per generator. Coordinates list
// the summands one after another, each by its basis paths in ascending order.
template <class F>
class FreeModule {
 public:
  FreeModule(const GradedAlgebra<F>& alg, std::vector<Generator> gens, bool graded)
      : alg_(&alg), gens_(std::move(gens)), graded_(graded) {
    for (const Generator& g : gens_) {
      offsets_.push_back(dim_);
      dim_ += alg.starting_at(g.vertex).size();
    }
  }

  std::size_t dimension() const { return dim_; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t offset(std::size_t g) const { return offsets_[g]; }

  std::size_t generator_of(std::size_t coord) const {
    return static_cast<std::size_t>(std::upper_bound(offsets_.begin(), offsets_.end(), coord) - offsets_.begin()) - 1;
  }
  std::size_t basis_element(std::size_t coord) const {
    const std::size_t g = generator_of(coord);
    return alg_->starting_at(gens_[g].vertex)[coord - offsets_[g]];
  }
  std::size_t coordinate(std::size_t g, std::size_t b) const { return offsets_[g] + alg_->position_from_source(b); }

  BlockKey block(std::size_t coord) const {
    const std::size_t g = generator_of(coord);
    const std::size_t b = alg_->starting_at(gens_[g].vertex)[coord - offsets_[g]];
    const int d = graded_ ? gens_[g].shift + static_cast<int>(alg_->basis().degree(b)) : 0;
    return {d, alg_->basis().target(b)};
  }

  SparseVec<F> act(const SparseVec<F>& x, std::size_t arrow) const {
    sparse::Accumulator<F> acc(dim_);
    for (const auto& [coord, c] : x) {
      const std::size_t g = generator_of(coord);
      const std::size_t b = alg_->starting_at(gens_[g].vertex)[coord - offsets_[g]];
      for (const auto& [q, y] : alg_->basis().times_arrow(b, arrow)) acc.add(coordinate(g, q), c * y);
    }
    return acc.take();
  }

 private:
  const GradedAlgebra<F>* alg_;
  std::vector<Generator> gens_;
  bool graded_;
  std::vector<std::size_t> offsets_;
  std::size_t dim_ = 0;
};

// Image of every coordinate of P under the map sending generator g to
// images[g]; basis paths are handled prefix first.
template <class F>
std::vector<SparseVec<F>> coordinate_images(const GradedAlgebra<F>& alg, const FreeModule<F>& p,
                                            const std::vector<SparseVec<F>>& images, const ActFn<F>& act) {
  const auto& basis = alg.basis();
  std::vector<SparseVec<F>> out(p.dimension());
  for (std::size_t g = 0; g < p.generators().size(); ++g) {
    for (std::size_t b : alg.starting_at(p.generators()[g].vertex)) {
      const Path& path = basis.path(b);
      if (path.arrows.empty()) {
        out[p.coordinate(g, b)] = images[g];
        continue;
      }
      Path prefix = path;
      prefix.arrows.pop_back();
      prefix.target = prefix.arrows.empty() ? prefix.source : alg.quiver().arrow(prefix.arrows.back()).target;
      const std::size_t pre = *basis.index_of(prefix);
      out[p.coordinate(g, b)] = act(out[p.coordinate(g, pre)], path.arrows.back());
    }
  }
  return out;
}

template <class F>
std::map<BlockKey, std::vector<std::size_t>> coordinate_blocks(const FreeModule<F>& p) {
  std::map<BlockKey, std::vector<std::size_t>> out;
  for (std::size_t c = 0; c < p.dimension(); ++c) out[p.block(c)].push_back(c);
  return out;
}

template <class F>
Blocks<F> kernel_blocks(const FreeModule<F>& p, const std::vector<SparseVec<F>>& images, std::size_t target_dim) {
  Blocks<F> out;
  for (const auto& [key, coords] : coordinate_blocks(p)) {
    std::vector<SparseVec<F>> cols;
    cols.reserve(coords.size());
    for (std::size_t c : coords) cols.push_back(images[c]);
    for (const auto& k : kernel_of_columns(cols, target_dim)) {
      SparseVec<F> v;
      v.reserve(k.size());
      for (const auto& [local, x] : k) v.emplace_back(coords[local], x);
      out[key].push_back(std::move(v));
    }
  }
  return out;
}

template <class F>
std::size_t rank_by_blocks(const FreeModule<F>& p, const std::vector<SparseVec<F>>& images) {
  std::size_t r = 0;
  for (const auto& [key, coords] : coordinate_blocks(p)) {
    Echelon<F> e;
    for (std::size_t c : coords) e.insert(images[c]);
    r += e.rank();
  }
  return r;
}

// Minimal generators of the submodule with blockwise basis k: in each block,
// the vectors not in the span of the arrow images of the blocks below it.
template <class F>
std::vector<std::pair<Generator, SparseVec<F>>> minimal_generators(const Quiver& q, const Blocks<F>& k, const ActFn<F>& act,
                                                                    bool graded) {
  std::vector<std::pair<Generator, SparseVec<F>>> out;
  for (const auto& [key, vecs] : k) {
    const auto [d, t] = key;
    Echelon<F> e;
    for (const Arrow& a : q.arrows()) {
      if (a.target != t) continue;
      auto it = k.find({graded ? d - 1 : 0, a.source});
      if (it == k.end()) continue;
      for (const auto& u : it->second) e.insert(act(u, a.id));
    }
    for (const auto& u : vecs)
      if (e.insert(u)) out.emplace_back(Generator{t, graded ? d : 0}, u);
  }
  return out;
}

template <class F>
Blocks<F> module_blocks(const Representation<F>& m) {
  Blocks<F> out;
  for (std::size_t c = 0; c < m.total_dimension(); ++c) {
    const int d = m.grading() ? (*m.grading())[c] : 0;
    out[{d, m.vertex_of(c)}].push_back(sparse::unit<F>(c));
  }
  return out;
}

template <class F>
std::size_t blocks_dimension(const Blocks<F>& k) {
  std::size_t n = 0;
  for (const auto& [key, v] : k) n += v.size();
  return n;
}

// A syzygy as an explicit (ungraded) representation.
template <class F>
Representation<F> blocks_module(const std::shared_ptr<const Quiver>& q, const Blocks<F>& k, const ActFn<F>& act,
                                std::size_t ambient) {
  const std::size_t nv = q->vertex_count();
  std::vector<std::vector<SparseVec<F>>> basis(nv);
  for (const auto& [key, vecs] : k) basis[key.second].insert(basis[key.second].end(), vecs.begin(), vecs.end());
  std::vector<std::size_t> dims(nv);
  for (std::size_t v = 0; v < nv; ++v) dims[v] = basis[v].size();
  std::vector<Matrix<F>> actions;
  for (const Arrow& a : q->arrows()) {
    Matrix<F> m(dims[a.target], dims[a.source]);
    if (dims[a.source] > 0 && dims[a.target] > 0) {
      SpanSolver<F> solver(basis[a.target], ambient);
      for (std::size_t c = 0; c < dims[a.source]; ++c) {
        auto coords = solver.coordinates(act(basis[a.source][c], a.id));
        if (!coords) throw std::logic_error("syzygy is not closed under the arrow actions");
        for (const auto& [r, x] : *coords) m(r, c) = x;
      }
    }
    actions.push_back(std::move(m));
  }
  return Representation<F>(q, dims, std::move(actions));
}

template <class F>
std::vector<std::size_t> betti_of(const std::vector<Generator>& gens, std::size_t nv) {
  std::vector<std::size_t> b(nv, 0);
  for (const Generator& g : gens) ++b[g.vertex];
  return b;
}

template <class F>
ActFn<F> module_act(const Representation<F>& m) {
  return [&m](const SparseVec<F>& x, std::size_t a) { return m.act(x, a); };
}

template <class F>
ActFn<F> free_act(const FreeModule<F>& p) {
  return [&p](const SparseVec<F>& x, std::size_t a) { return p.act(x, a); };
}

}  // namespace

template <class F>
std::vector<std::size_t> Resolution<F>::betti(std::size_t k) const {
  return betti_of<F>(steps.at(k).generators, module.quiver().vertex_count());
}

template <class F>
Resolution<F> minimal_resolution(const GradedAlgebra<F>& alg, const Representation<F>& m,
                                 const ResolutionOptions& options) {
  if (!(m.quiver() == alg.quiver())) throw ContractError("module and algebra have different quivers");
  if (m.is_zero()) throw ContractError("cannot resolve the zero module");
  if (!m.satisfies(alg.presentation().relations)) throw ContractError("module violates a relation of the algebra");

  Resolution<F> res;
  res.module = m;
  res.cap = options.step_cap;
  res.graded = m.grading().has_value();
  const Quiver& q = alg.quiver();

  struct Syzygy {
    Blocks<F> blocks;
    ActFn<F> act;
    std::size_t ambient;
  };
  std::deque<FreeModule<F>> frees;  // stable addresses for the act closures
  std::map<std::size_t, Syzygy> kept;

  Blocks<F> k = module_blocks(m);
  ActFn<F> act = module_act(res.module);
  std::size_t ambient = m.total_dimension();
  if (options.seek_period && m.total_dimension() <= options.period_dim_limit) kept.emplace(0, Syzygy{k, act, ambient});

  for (std::size_t step = 0;; ++step) {
    ResolutionStep<F> rs;
    for (auto& [gen, image] : minimal_generators(q, k, act, res.graded)) {
      rs.generators.push_back(gen);
      rs.images.push_back(std::move(image));
    }
    frees.emplace_back(alg, rs.generators, res.graded);
    const FreeModule<F>& p = frees.back();
    const std::size_t dim_k = blocks_dimension(k);
    const std::vector<SparseVec<F>> images = rs.images;
    res.steps.push_back(std::move(rs));

    if (p.dimension() == dim_k) {
      res.status = ResolutionStatus::complete;
      res.projective_dimension = step;
      break;
    }
    if (step == options.step_cap) {
      res.status = ResolutionStatus::truncated;
      break;
    }
    const auto coord_images = coordinate_images(alg, p, images, act);
    k = kernel_blocks(p, coord_images, ambient);
    act = free_act(p);
    ambient = p.dimension();
    if (options.seek_period && blocks_dimension(k) <= options.period_dim_limit)
      kept.emplace(step + 1, Syzygy{k, act, ambient});
  }

  if (res.status == ResolutionStatus::truncated && options.seek_period) {
    const std::size_t nv = q.vertex_count();
    std::map<std::size_t, Representation<F>> built;
    auto module_of = [&](std::size_t j) -> const Representation<F>& {
      auto it = built.find(j);
      if (it == built.end()) {
        const Syzygy& s = kept.at(j);
        it = built.emplace(j, blocks_module(alg.quiver_ptr(), s.blocks, s.act, s.ambient)).first;
      }
      return it->second;
    };
    for (auto hi = kept.begin(); hi != kept.end() && !res.period; ++hi) {
      for (auto lo = kept.begin(); lo != hi; ++lo) {
        if (res.betti(lo->first) != res.betti(hi->first)) continue;
        if (blocks_dimension(lo->second.blocks) != blocks_dimension(hi->second.blocks)) continue;
        std::vector<std::size_t> dl(nv, 0), dh(nv, 0);
        for (const auto& [key, v] : lo->second.blocks) dl[key.second] += v.size();
        for (const auto& [key, v] : hi->second.blocks) dh[key.second] += v.size();
        if (dl != dh) continue;
        const auto iso = module_isomorphic(module_of(lo->first), module_of(hi->first));
        if (iso.verdict == IsoVerdict::isomorphic) {
          res.period = std::pair(lo->first, hi->first);
          break;
        }
      }
    }
  }
  return res;
}

template <class F>
ResolutionCheck verify_resolution(const GradedAlgebra<F>& alg, const Resolution<F>& res) {
  ResolutionCheck chk;
  auto problem = [&](bool& flag, std::string msg) {
    flag = false;
    chk.problems.push_back(std::move(msg));
  };
  const Representation<F>& m = res.module;
  std::deque<FreeModule<F>> frees;
  std::vector<std::size_t> ranks;
  std::vector<SparseVec<F>> prev_images;  // coordinate images of the previous step
  ActFn<F> act = module_act(m);
  std::size_t ambient = m.total_dimension();
  std::size_t below = 0;  // dimension of the space prev_images live in

  for (std::size_t k = 0; k < res.steps.size(); ++k) {
    const ResolutionStep<F>& st = res.steps[k];
    frees.emplace_back(alg, st.generators, res.graded);
    const FreeModule<F>& p = frees.back();
    const std::string at = "step " + std::to_string(k) + ": ";

    if (k == 0) {
      // generators must map to a basis of M / rad M
      Echelon<F> e;
      for (const Arrow& a : m.quiver().arrows())
        for (std::size_t c = 0; c < m.dim(a.source); ++c) e.insert(m.act(sparse::unit<F>(m.offset(a.source) + c), a.id));
      const std::size_t rad_dim = e.rank();
      for (const auto& img : st.images)
        if (!e.insert(img)) problem(chk.minimal, at + "generator images are dependent modulo the radical");
      if (st.images.size() != m.total_dimension() - rad_dim)
        problem(chk.minimal, at + "number of generators differs from dim top M");
    } else {
      const FreeModule<F>& prev = frees[k - 1];
      for (std::size_t g = 0; g < st.images.size(); ++g) {
        sparse::Accumulator<F> acc(below);
        for (const auto& [coord, c] : st.images[g]) {
          if (alg.basis().degree(prev.basis_element(coord)) == 0)
            problem(chk.minimal, at + "generator " + std::to_string(g) + " has an idempotent coefficient");
          acc.add(prev_images[coord], c);
        }
        if (!acc.take().empty()) problem(chk.square_zero, at + "composite of consecutive differentials is nonzero");
      }
    }

    std::vector<SparseVec<F>> images = coordinate_images(alg, p, st.images, act);
    const std::size_t rank = rank_by_blocks(p, images);
    if (k == 0) {
      if (rank != m.total_dimension()) problem(chk.exact, at + "P_0 does not cover the module");
    } else {
      const std::size_t kernel = frees[k - 1].dimension() - ranks[k - 1];
      if (rank != kernel)
        problem(chk.exact, at + "image has dimension " + std::to_string(rank) + " but the kernel below has dimension " +
                               std::to_string(kernel));
    }
    ranks.push_back(rank);
    const bool last = k + 1 == res.steps.size();
    if (last) {
      const bool injective = rank == p.dimension();
      if (res.status == ResolutionStatus::complete && !injective)
        problem(chk.exact, at + "last differential is not injective but the resolution claims completion");
      if (res.status == ResolutionStatus::truncated && injective)
        problem(chk.exact, at + "last differential is injective but the resolution claims truncation");
    }
    prev_images = std::move(images);
    act = free_act(p);
    below = ambient;
    ambient = p.dimension();
  }
  return chk;
}

namespace {

// Position of each free-module coordinate inside the vertex space of the
// direct sum of its summands: (vertex, index within that vertex).
template <class F>
std::vector<std::pair<std::size_t, std::size_t>> direct_sum_positions(const GradedAlgebra<F>& alg,
                                                                      const FreeModule<F>& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out(p.dimension());
  std::vector<std::size_t> used(alg.vertex_count(), 0);
  for (std::size_t g = 0; g < p.generators().size(); ++g)
    for (std::size_t b : alg.starting_at(p.generators()[g].vertex)) {
      const std::size_t t = alg.basis().target(b);
      out[p.coordinate(g, b)] = {t, used[t]++};
    }
  return out;
}

}  // namespace

template <class F>
Representation<F> step_module(const GradedAlgebra<F>& alg, const Resolution<F>& res, std::size_t k) {
  std::vector<Representation<F>> parts;
  for (const Generator& g : res.steps.at(k).generators) parts.push_back(projective(alg, g.vertex));
  return direct_sum(parts);
}

template <class F>
ModuleMap<F> differential(const GradedAlgebra<F>& alg, const Resolution<F>& res, std::size_t k) {
  const FreeModule<F> p(alg, res.steps.at(k).generators, res.graded);
  const Representation<F> dom = step_module(alg, res, k);
  std::vector<SparseVec<F>> images;
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  Representation<F> cod;
  std::optional<FreeModule<F>> prev;
  if (k == 0) {
    cod = res.module;
    images = coordinate_images(alg, p, res.steps[0].images, module_act(res.module));
    for (std::size_t c = 0; c < cod.total_dimension(); ++c) rows.emplace_back(cod.vertex_of(c), c - cod.offset(cod.vertex_of(c)));
  } else {
    prev.emplace(alg, res.steps[k - 1].generators, res.graded);
    cod = step_module(alg, res, k - 1);
    images = coordinate_images(alg, p, res.steps[k].images, free_act(*prev));
    rows = direct_sum_positions(alg, *prev);
  }
  ModuleMap<F> f = ModuleMap<F>::zero(dom, cod);
  const auto cols = direct_sum_positions(alg, p);
  for (std::size_t c = 0; c < images.size(); ++c)
    for (const auto& [r, x] : images[c]) {
      if (rows[r].first != cols[c].first) throw std::logic_error("differential does not preserve vertices");
      f.blocks[cols[c].first](rows[r].second, cols[c].second) = x;
    }
  return f;
}

template <class F>
GlobalDimension global_dimension(const GradedAlgebra<F>& alg, const ResolutionOptions& options) {
  GlobalDimension out;
  out.kind = GlobalDimensionKind::finite;
  for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
    const Resolution<F> res = minimal_resolution(alg, simple(alg, v), options);
    if (res.status == ResolutionStatus::complete) {
      out.simple_pd.emplace_back(res.projective_dimension);
      out.value = std::max(out.value, res.projective_dimension);
    } else {
      out.simple_pd.emplace_back(std::nullopt);
      out.kind = GlobalDimensionKind::at_least;
      if (res.period) out.periodic_certificate = true;
    }
  }
  if (out.kind == GlobalDimensionKind::at_least) out.value = options.step_cap;
  return out;
}

#define QTWIST_INSTANTIATE(F)                                                                                \
  template struct Resolution<F>;                                                                             \
  template Resolution<F> minimal_resolution(const GradedAlgebra<F>&, const Representation<F>&,               \
                                            const ResolutionOptions&);                                       \
  template ResolutionCheck verify_resolution(const GradedAlgebra<F>&, const Resolution<F>&);                 \
  template Representation<F> step_module(const GradedAlgebra<F>&, const Resolution<F>&, std::size_t);        \
  template ModuleMap<F> differential(const GradedAlgebra<F>&, const Resolution<F>&, std::size_t);            \
  template GlobalDimension global_dimension(const GradedAlgebra<F>&, const ResolutionOptions&);

QTWIST_INSTANTIATE(Rational)
QTWIST_INSTANTIATE(ModP)

}  // namespace qtwist
