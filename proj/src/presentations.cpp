#include "qtwist/presentations.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace qtwist {

namespace {

int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

GroupData GroupData::make(int n, std::array<int, 3> weights) {
  if (n < 1) throw ContractError("group order n must be >= 1, got " + std::to_string(n));
  GroupData g;
  g.n = n;
  for (int j = 0; j < 3; ++j) g.weights[j] = mod(weights[j], n);
  if (mod(g.weights[0] + g.weights[1] + g.weights[2], n) != 0) {
    throw ContractError("weights (" + std::to_string(weights[0]) + "," + std::to_string(weights[1]) +
                        "," + std::to_string(weights[2]) + ") do not sum to 0 mod " +
                        std::to_string(n) + "; the action is not in SL(3)");
  }
  return g;
}

char family_char(Family f) { return "xyz"[static_cast<int>(f)]; }

Family family_from_char(char c) {
  switch (c) {
    case 'x': return Family::x;
    case 'y': return Family::y;
    case 'z': return Family::z;
  }
  throw ContractError(std::string("unknown arrow family '") + c + "'");
}

std::string Arrow::label() const { return std::string(1, family_char(family)) + std::to_string(index); }

std::optional<std::size_t> Quiver::vertex_of_label(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Quiver::add_arrow(std::size_t source, std::size_t target, Family family, int index) {
  if (source >= vertex_count() || target >= vertex_count())
    throw ContractError("arrow endpoint out of range");
  const std::size_t id = arrows_.size();
  arrows_.push_back(Arrow{id, source, target, family, index});
  return id;
}

std::vector<std::size_t> Quiver::arrows_in_order() const {
  std::vector<std::size_t> ids(arrows_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    const Arrow& x = arrows_[a];
    const Arrow& y = arrows_[b];
    return std::tuple(x.family, x.index, x.id) < std::tuple(y.family, y.index, y.id);
  });
  return ids;
}

Path Path::from_arrows(const Quiver& q, std::vector<std::size_t> arrows) {
  if (arrows.empty()) throw ContractError("use Path::idempotent for the empty path");
  Path p = of_arrow(q.arrow(arrows.front()));
  for (std::size_t i = 1; i < arrows.size(); ++i) p = compose_paths(p, of_arrow(q.arrow(arrows[i])));
  return p;
}

std::string Path::to_string(const Quiver& q) const {
  if (arrows.empty()) return "e" + std::to_string(q.label(source));
  std::string s;
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (i) s += ' ';
    s += q.arrow(arrows[i]).label();
  }
  return s;
}

Path compose_paths(const Path& p, const Path& q) {
  if (p.target != q.source) {
    throw ContractError("cannot compose: first path ends at vertex " + std::to_string(p.target) +
                        " but second starts at vertex " + std::to_string(q.source));
  }
  Path out{p.source, q.target, p.arrows};
  out.arrows.insert(out.arrows.end(), q.arrows.begin(), q.arrows.end());
  return out;
}

Presentation mckay_presentation(const GroupData& g) {
  const GroupData group = GroupData::make(g.n, g.weights);
  const int n = group.n;
  std::vector<int> labels(n);
  for (int k = 0; k < n; ++k) labels[k] = k;
  Presentation pres;
  pres.quiver = Quiver(labels);
  pres.group = group;

  // arrow id of a^(j)_k is j*n + k
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < n; ++k)
      pres.quiver.add_arrow(static_cast<std::size_t>(mod(k + group.weights[j], n)), static_cast<std::size_t>(k),
                            static_cast<Family>(j), k);
  auto arrow_id = [n](int j, int k) { return static_cast<std::size_t>(j * n + mod(k, n)); };

  for (int t = 0; t < n; ++t)
    for (int j = 0; j < 3; ++j)
      for (int l = j + 1; l < 3; ++l) {
        const Quiver& q = pres.quiver;
        Path first = Path::from_arrows(q, {arrow_id(j, t + group.weights[l]), arrow_id(l, t)});
        Path second = Path::from_arrows(q, {arrow_id(l, t + group.weights[j]), arrow_id(j, t)});
        pres.relations.push_back(Relation{{Term{1, std::move(first)}, Term{-1, std::move(second)}}});
      }
  return pres;
}

Presentation delete_vertices(const Presentation& pres, std::span<const int> deleted) {
  const Quiver& q = pres.quiver;
  std::set<std::size_t> gone;
  for (int label : deleted) {
    auto v = q.vertex_of_label(label);
    if (!v) throw ContractError("vertex " + std::to_string(label) + " is not in the quiver");
    gone.insert(*v);
  }
  if (gone.size() == q.vertex_count() && q.vertex_count() > 0)
    throw ContractError("cannot delete every vertex: the quotient would be the zero algebra");

  std::vector<std::size_t> new_vertex(q.vertex_count(), SIZE_MAX);
  std::vector<int> labels;
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    if (gone.count(v)) continue;
    new_vertex[v] = labels.size();
    labels.push_back(q.label(v));
  }

  Presentation out;
  out.quiver = Quiver(labels);
  out.group = pres.group;
  std::vector<std::size_t> new_arrow(q.arrow_count(), SIZE_MAX);
  for (const Arrow& a : q.arrows()) {
    if (gone.count(a.source) || gone.count(a.target)) continue;
    new_arrow[a.id] = out.quiver.add_arrow(new_vertex[a.source], new_vertex[a.target], a.family, a.index);
  }

  for (const Relation& r : pres.relations) {
    Relation kept;
    for (const Term& t : r.terms) {
      if (gone.count(t.path.source) || gone.count(t.path.target)) continue;
      bool survives = true;
      std::vector<std::size_t> arrows;
      for (std::size_t a : t.path.arrows) {
        if (new_arrow[a] == SIZE_MAX) { survives = false; break; }
        arrows.push_back(new_arrow[a]);
      }
      if (!survives) continue;
      Path p = arrows.empty() ? Path::idempotent(new_vertex[t.path.source])
                              : Path::from_arrows(out.quiver, std::move(arrows));
      kept.terms.push_back(Term{t.coefficient, std::move(p)});
    }
    if (!kept.terms.empty()) out.relations.push_back(std::move(kept));
  }

  std::set<int> all(pres.deleted.begin(), pres.deleted.end());
  all.insert(deleted.begin(), deleted.end());
  out.deleted.assign(all.begin(), all.end());
  return out;
}

ValidationReport validate_presentation(const Presentation& pres) {
  ValidationReport rep;
  const Quiver& q = pres.quiver;
  auto violate = [&](std::string msg) {
    rep.valid = false;
    rep.violations.push_back(std::move(msg));
  };
  for (std::size_t i = 0; i < q.arrow_count(); ++i) {
    const Arrow& a = q.arrow(i);
    if (a.id != i) violate("arrow " + std::to_string(i) + ": id " + std::to_string(a.id) + " is not dense");
    if (a.source >= q.vertex_count() || a.target >= q.vertex_count())
      violate("arrow " + std::to_string(i) + ": endpoint out of range");
  }
  for (std::size_t r = 0; r < pres.relations.size(); ++r) {
    const Relation& rel = pres.relations[r];
    const std::string where = "relation " + std::to_string(r) + ": ";
    if (rel.terms.empty()) {
      violate(where + "no terms");
      continue;
    }
    const Path& first = rel.terms.front().path;
    for (const Term& t : rel.terms) {
      if (t.coefficient == 0) violate(where + "zero coefficient");
      bool chained = t.path.source < q.vertex_count() && t.path.target < q.vertex_count();
      std::size_t at = t.path.source;
      for (std::size_t a : t.path.arrows) {
        if (a >= q.arrow_count() || q.arrow(a).source != at) {
          chained = false;
          break;
        }
        at = q.arrow(a).target;
      }
      if (!chained || at != t.path.target) {
        violate(where + "path is not endpoint-chained");
        continue;
      }
      if (t.path.source != first.source || t.path.target != first.target)
        violate(where + "terms are not parallel");
      if (t.path.length() != first.length()) violate(where + "terms are not homogeneous");
    }
  }
  return rep;
}

std::string to_dot(const Presentation& pres) {
  const Quiver& q = pres.quiver;
  std::ostringstream os;
  os << "digraph quiver {\n";
  for (std::size_t v = 0; v < q.vertex_count(); ++v) os << "  v" << q.label(v) << " [label=\"" << q.label(v) << "\"];\n";
  for (const Arrow& a : q.arrows()) {
    static constexpr const char* style[] = {"solid", "dotted", "dashed"};
    os << "  v" << q.label(a.source) << " -> v" << q.label(a.target) << " [label=\"" << a.label()
       << "\", style=" << style[static_cast<int>(a.family)] << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace qtwist
