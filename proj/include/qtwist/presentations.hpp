#pragma once

// Quivers, paths, relations, and McKay-quiver presentations of skew group
// algebras C[x,y,z] # Z_n for cyclic subgroups of SL(3, C).

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qtwist {

/// Raised when an input violates an operation's contract (bad weights,
/// non-composable paths, vertex sets out of range, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cyclic group Z_n acting diagonally on C^3 with characters
/// g -> eps^w1, eps^w2, eps^w3.
struct GroupData {
  int n = 1;
  std::array<int, 3> weights{0, 0, 0};

  /// Validates n >= 1 and w1 + w2 + w3 = 0 mod n; weights are reduced mod n.
  static GroupData make(int n, std::array<int, 3> weights);

  friend bool operator==(const GroupData&, const GroupData&) = default;
};

enum class Family : unsigned char { x = 0, y = 1, z = 2 };

char family_char(Family f);
Family family_from_char(char c);

struct Arrow {
  std::size_t id = 0;
  std::size_t source = 0;
  std::size_t target = 0;
  Family family = Family::x;
  int index = 0;  ///< the k in x_k, y_k, z_k

  std::string label() const;
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite quiver with dense vertex and arrow ids. Vertices carry an integer
/// label (the McKay vertex they came from after deletions).
class Quiver {
 public:
  Quiver() = default;
  explicit Quiver(std::vector<int> vertex_labels) : labels_(std::move(vertex_labels)) {}

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<int>& vertex_labels() const { return labels_; }
  int label(std::size_t v) const { return labels_.at(v); }
  std::optional<std::size_t> vertex_of_label(int label) const;

  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(std::size_t id) const { return arrows_.at(id); }

  /// Appends an arrow; its id is the next dense index.
  std::size_t add_arrow(std::size_t source, std::size_t target, Family family, int index);

  /// Arrow ids ordered by the monomial order key (family, index, id).
  std::vector<std::size_t> arrows_in_order() const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::vector<int> labels_;
  std::vector<Arrow> arrows_;
};

/// A path "a_1 then a_2 then ... a_k"; the empty path at v is e_v.
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  static Path idempotent(std::size_t v) { return Path{v, v, {}}; }
  static Path of_arrow(const Arrow& a) { return Path{a.source, a.target, {a.id}}; }
  static Path from_arrows(const Quiver& q, std::vector<std::size_t> arrows);

  std::size_t length() const { return arrows.size(); }
  bool is_idempotent() const { return arrows.empty(); }
  std::string to_string(const Quiver& q) const;

  friend bool operator==(const Path&, const Path&) = default;
};

/// "p then q". Throws ContractError when target(p) != source(q).
Path compose_paths(const Path& p, const Path& q);

struct Term {
  mpq_class coefficient;
  Path path;

  friend bool operator==(const Term& a, const Term& b) {
    return a.coefficient == b.coefficient && a.path == b.path;
  }
};

struct Relation {
  std::vector<Term> terms;

  std::size_t degree() const { return terms.empty() ? 0 : terms.front().path.length(); }
  friend bool operator==(const Relation&, const Relation&) = default;
};

/// Quiver with relations; `group` and `deleted` record where it came from.
struct Presentation {
  Quiver quiver;
  std::vector<Relation> relations;
  std::optional<GroupData> group;
  std::vector<int> deleted;  ///< deleted McKay vertices, sorted

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Path algebra of the McKay quiver of the group with its commutation
/// relations: arrows a^(j)_k : k + w_j -> k, and for each target t and
/// family pair j < l the relation a^(j)_{t+w_l} a^(l)_t - a^(l)_{t+w_j} a^(j)_t.
Presentation mckay_presentation(const GroupData& group);

/// Presentation of the quotient by the two-sided ideal generated by the
/// vertex idempotents of the labels in `deleted`: the vertices and all arrows
/// touching them are removed, and relation terms through removed vertices are
/// dropped. Throws ContractError when every vertex would be removed or a
/// label does not exist.
Presentation delete_vertices(const Presentation& pres, std::span<const int> deleted);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

ValidationReport validate_presentation(const Presentation& pres);

/// Quiver diagram in Graphviz DOT; edge style encodes the arrow family.
std::string to_dot(const Presentation& pres);

}  // namespace qtwist
