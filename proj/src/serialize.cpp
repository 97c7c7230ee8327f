#include "qtwist/serialize.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "qtwist/field.hpp"

namespace qtwist {

Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

Json rational_json(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return Json::array({integer_json(c.get_num()), integer_json(c.get_den())});
}

namespace {

Json group_json(const GroupData& g) {
  return Json{{"n", g.n}, {"weights", Json::array({g.weights[0], g.weights[1], g.weights[2]})}};
}

template <class F>
Json sparse_json(const SparseVec<F>& v) {
  Json out = Json::array();
  for (const auto& [i, c] : v) {
    Json entry = rational_json(c.to_mpq());
    entry.insert(entry.begin(), i);
    out.push_back(std::move(entry));
  }
  return out;
}

[[noreturn]] void malformed(const std::string& field, const std::string& what) {
  throw ContractError("presentation JSON: field '" + field + "' " + what);
}

const Json& member(const Json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) malformed(key, "is missing");
  return j.at(key);
}

mpz_class integer_from(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) malformed(field, "is not an integer");
    return z;
  }
  malformed(field, "is not an integer");
}

}  // namespace

Json presentation_to_json(const Presentation& pres) {
  const Quiver& q = pres.quiver;
  Json j;
  j["version"] = kSchemaVersion;
  if (pres.group) {
    j["n"] = pres.group->n;
    j["weights"] = Json::array({pres.group->weights[0], pres.group->weights[1], pres.group->weights[2]});
  } else {
    j["n"] = nullptr;
    j["weights"] = nullptr;
  }
  j["vertices"] = q.vertex_labels();
  Json arrows = Json::array();
  for (const Arrow& a : q.arrows())
    arrows.push_back(Json{{"id", a.id},
                          {"src", a.source},
                          {"tgt", a.target},
                          {"family", std::string(1, family_char(a.family))},
                          {"index", a.index},
                          {"label", a.label()}});
  j["arrows"] = std::move(arrows);
  Json rels = Json::array();
  for (const Relation& r : pres.relations) {
    Json terms = Json::array();
    for (const Term& t : r.terms) {
      Json term = rational_json(t.coefficient);
      term.push_back(t.path.arrows);
      terms.push_back(std::move(term));
    }
    rels.push_back(std::move(terms));
  }
  j["relations"] = std::move(rels);
  j["deleted"] = pres.deleted;
  return j;
}

Presentation presentation_from_json(const Json& j) {
  if (!j.is_object()) throw ContractError("presentation JSON: top level is not an object");
  const Json& version = member(j, "version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    malformed("version", "must be " + std::to_string(kSchemaVersion));

  Presentation pres;
  const Json& n = member(j, "n");
  const Json& w = member(j, "weights");
  if (!n.is_null() || !w.is_null()) {
    if (!n.is_number_integer()) malformed("n", "is not an integer");
    if (!w.is_array() || w.size() != 3) malformed("weights", "must be three integers");
    std::array<int, 3> ws{};
    for (int k = 0; k < 3; ++k) {
      if (!w[k].is_number_integer()) malformed("weights", "must be three integers");
      ws[k] = w[k].get<int>();
    }
    pres.group = GroupData::make(n.get<int>(), ws);
  }

  const Json& vertices = member(j, "vertices");
  if (!vertices.is_array()) malformed("vertices", "is not an array");
  std::vector<int> labels;
  for (const Json& v : vertices) {
    if (!v.is_number_integer()) malformed("vertices", "must hold integer labels");
    labels.push_back(v.get<int>());
  }
  pres.quiver = Quiver(labels);

  const Json& arrows = member(j, "arrows");
  if (!arrows.is_array()) malformed("arrows", "is not an array");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const Json& a = arrows[i];
    const std::string where = "arrows[" + std::to_string(i) + "]";
    for (const char* key : {"id", "src", "tgt", "index"})
      if (!a.contains(key) || !a.at(key).is_number_integer()) malformed(where + "." + key, "is not an integer");
    if (a.at("id").get<long>() != static_cast<long>(i)) malformed(where + ".id", "must equal its position");
    const long src = a.at("src").get<long>();
    const long tgt = a.at("tgt").get<long>();
    if (src < 0 || tgt < 0 || static_cast<std::size_t>(src) >= labels.size() ||
        static_cast<std::size_t>(tgt) >= labels.size())
      malformed(where, "has an endpoint outside the vertex list");
    if (!a.contains("family") || !a.at("family").is_string() || a.at("family").get<std::string>().size() != 1)
      malformed(where + ".family", "must be one of x, y, z");
    pres.quiver.add_arrow(static_cast<std::size_t>(src), static_cast<std::size_t>(tgt),
                          family_from_char(a.at("family").get<std::string>()[0]), a.at("index").get<int>());
  }

  const Json& rels = member(j, "relations");
  if (!rels.is_array()) malformed("relations", "is not an array");
  for (std::size_t r = 0; r < rels.size(); ++r) {
    const std::string where = "relations[" + std::to_string(r) + "]";
    if (!rels[r].is_array() || rels[r].empty()) malformed(where, "must be a nonempty list of terms");
    Relation rel;
    for (const Json& t : rels[r]) {
      if (!t.is_array() || t.size() != 3 || !t[2].is_array() || t[2].empty())
        malformed(where, "terms must be [num, den, [arrow ids]]");
      const mpz_class num = integer_from(t[0], where);
      const mpz_class den = integer_from(t[1], where);
      if (den == 0) malformed(where, "has a zero denominator");
      std::vector<std::size_t> ids;
      for (const Json& id : t[2]) {
        if (!id.is_number_integer() || id.get<long>() < 0 ||
            static_cast<std::size_t>(id.get<long>()) >= pres.quiver.arrow_count())
          malformed(where, "refers to an unknown arrow id");
        ids.push_back(static_cast<std::size_t>(id.get<long>()));
      }
      mpq_class c(num, den);
      c.canonicalize();
      try {
        rel.terms.push_back(Term{c, Path::from_arrows(pres.quiver, std::move(ids))});
      } catch (const ContractError& e) {
        malformed(where, std::string("has a broken path: ") + e.what());
      }
    }
    pres.relations.push_back(std::move(rel));
  }

  if (j.contains("deleted")) {
    const Json& d = j.at("deleted");
    if (!d.is_array()) malformed("deleted", "is not an array");
    for (const Json& v : d) {
      if (!v.is_number_integer()) malformed("deleted", "must hold integer labels");
      pres.deleted.push_back(v.get<int>());
    }
  }
  const ValidationReport rep = validate_presentation(pres);
  if (!rep.valid) throw ContractError("presentation JSON: " + rep.violations.front());
  return pres;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ContractError("cannot open presentation file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ContractError("presentation file '" + path + "' is not valid JSON: " + e.what());
  }
  return presentation_from_json(j);
}

template <class F>
Json graded_algebra_to_json(const GradedAlgebra<F>& alg) {
  const auto& b = alg.basis();
  Json j;
  j["version"] = kSchemaVersion;
  j["dimension"] = alg.dimension();
  j["vertices"] = alg.quiver().vertex_labels();
  j["degrees"] = b.dimensions();
  Json basis = Json::array();
  for (std::size_t i = 0; i < b.size(); ++i)
    basis.push_back(Json{{"index", i},
                         {"source", b.source(i)},
                         {"target", b.target(i)},
                         {"arrows", b.path(i).arrows},
                         {"word", b.path(i).to_string(alg.quiver())}});
  j["basis"] = std::move(basis);
  Json products = Json::array();
  for (std::size_t i = 0; i < alg.dimension(); ++i)
    for (std::size_t k = 0; k < alg.dimension(); ++k) {
      const auto& p = alg.product(i, k);
      if (!p.empty()) products.push_back(Json::array({i, k, sparse_json(p)}));
    }
  j["products"] = std::move(products);
  return j;
}

Json dimensions_to_json(const FiniteDimensionality& fd) {
  Json j;
  j["status"] = fd.status == DimensionStatus::finite ? "finite" : "inconclusive";
  j["cap"] = fd.cap;
  j["graded"] = fd.dimensions;
  if (fd.status == DimensionStatus::finite) {
    j["total"] = fd.total_dimension;
    j["nilpotency"] = fd.nilpotency_degree;
  } else {
    j["total"] = nullptr;
    j["nilpotency"] = nullptr;
  }
  return j;
}

namespace {

template <class F>
std::vector<std::pair<int, std::size_t>> labelled_betti(const GradedAlgebra<F>& alg, const Resolution<F>& res,
                                                        std::size_t k) {
  std::vector<std::pair<int, std::size_t>> out;
  const auto b = res.betti(k);
  for (std::size_t v = 0; v < b.size(); ++v)
    if (b[v]) out.emplace_back(alg.quiver().label(v), b[v]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

template <class F>
Json resolution_to_json(const GradedAlgebra<F>& alg, const Resolution<F>& res, const std::string& module_name,
                        bool with_differentials) {
  Json j;
  j["version"] = kSchemaVersion;
  j["module"] = module_name;
  j["status"] = res.status == ResolutionStatus::complete ? "complete" : "truncated";
  j["projective_dimension"] = res.status == ResolutionStatus::complete ? Json(res.projective_dimension) : Json(nullptr);
  j["cap"] = res.cap;
  j["graded"] = res.graded;
  j["period"] = res.period ? Json::array({res.period->first, res.period->second}) : Json(nullptr);
  Json steps = Json::array();
  for (std::size_t k = 0; k < res.steps.size(); ++k) {
    Json step;
    step["step"] = k;
    Json betti = Json::array();
    for (auto [label, m] : labelled_betti(alg, res, k)) betti.push_back(Json::array({label, m}));
    step["betti"] = std::move(betti);
    if (with_differentials) {
      Json gens = Json::array();
      for (std::size_t g = 0; g < res.steps[k].generators.size(); ++g) {
        const auto& gen = res.steps[k].generators[g];
        gens.push_back(Json{{"vertex", alg.quiver().label(gen.vertex)},
                            {"shift", gen.shift},
                            {"image", sparse_json(res.steps[k].images[g])}});
      }
      step["generators"] = std::move(gens);
    }
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  j["display"] = resolution_display(alg, res, module_name);
  return j;
}

template <class F>
std::string resolution_display(const GradedAlgebra<F>& alg, const Resolution<F>& res, const std::string& module_name) {
  std::vector<std::string> terms;
  for (std::size_t k = 0; k < res.steps.size(); ++k) {
    const auto betti = labelled_betti(alg, res, k);
    if (betti.empty()) continue;
    std::string t;
    for (std::size_t s = 0; s < betti.size(); ++s) {
      if (s) t += " ⊕ ";
      t += "P(" + std::to_string(betti[s].first) + ")";
      if (betti[s].second > 1) t += "^{⊕" + std::to_string(betti[s].second) + "}";
    }
    terms.push_back(std::move(t));
  }
  std::string out = res.status == ResolutionStatus::complete ? "0" : "⋯";
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) out += " → " + *it;
  return out + " → " + module_name + " → 0";
}

std::string to_string(GlobalDimensionKind k) { return k == GlobalDimensionKind::finite ? "finite" : "at_least"; }

std::string to_string(SelfInjectiveVerdict v) {
  switch (v) {
    case SelfInjectiveVerdict::self_injective: return "self_injective";
    case SelfInjectiveVerdict::not_self_injective: return "not_self_injective";
    case SelfInjectiveVerdict::undecided: return "undecided";
  }
  return "undecided";
}

template <class F>
Json global_dimension_to_json(const GradedAlgebra<F>& alg, const GlobalDimension& gd) {
  Json j;
  j["version"] = kSchemaVersion;
  j["kind"] = to_string(gd.kind);
  j["value"] = gd.value;
  j["periodic_certificate"] = gd.periodic_certificate;
  Json pd = Json::array();
  for (std::size_t v = 0; v < gd.simple_pd.size(); ++v)
    pd.push_back(Json::array({alg.quiver().label(v), gd.simple_pd[v] ? Json(*gd.simple_pd[v]) : Json(nullptr)}));
  j["simple_pd"] = std::move(pd);
  if (gd.kind == GlobalDimensionKind::finite)
    j["cartan_determinant"] = integer_json(integer_determinant(cartan_matrix(alg)));
  j["cartan_matrix"] = cartan_matrix(alg);
  return j;
}

template <class F>
Json self_injectivity_to_json(const GradedAlgebra<F>& alg, const SelfInjectivity<F>& si) {
  Json j;
  j["version"] = kSchemaVersion;
  j["verdict"] = to_string(si.verdict);
  Json sigma = Json::array();
  for (std::size_t i = 0; i < si.sigma.size(); ++i)
    sigma.push_back(Json::array({alg.quiver().label(i), alg.quiver().label(si.sigma[i])}));
  j["sigma"] = std::move(sigma);
  bool verified = si.verdict == SelfInjectiveVerdict::self_injective;
  for (std::size_t i = 0; verified && i < si.witnesses.size(); ++i)
    verified = si.witnesses[i].commutes(projective(alg, i), injective(alg, si.sigma[i])) &&
               si.witnesses[i].is_invertible();
  j["witnesses_verified"] = verified;
  j["reason"] = si.reason;
  return j;
}

Json square_report_to_json(const GroupData& group, const VertexSet& v, const SquareReport& rep) {
  Json j;
  j["version"] = kSchemaVersion;
  j["group"] = group_json(group);
  j["V"] = v.members();
  j["cap"] = rep.cap;
  j["all_equal"] = rep.all_equal;
  j["all_contained"] = rep.all_contained;
  j["verdict"] = rep.all_equal ? "verified at truncation" : "fails at truncation";
  Json table = Json::object();
  for (const auto& row : rep.rows)
    table[std::to_string(row.degree)] = Json{{"dimA", row.dim_algebra},
                                             {"dimK", row.dim_ideal},
                                             {"dimK2", row.dim_square},
                                             {"equal", row.equal},
                                             {"contained", row.contained}};
  j["table"] = std::move(table);
  return j;
}

Json report_to_json(const EligibilityReport& r) {
  Json j;
  j["version"] = kSchemaVersion;
  j["group"] = group_json(r.group);
  j["V"] = r.vertices.members();
  j["canonical_V"] = r.canonical.members();
  j["caps"] = Json{{"degree_cap", r.caps.degree_cap}, {"step_cap", r.caps.step_cap}, {"order_cap", r.caps.order_cap}};
  Json dims;
  dims["status"] = r.dimension_status == DimensionStatus::finite ? "finite" : "inconclusive";
  dims["total"] = r.dimension_status == DimensionStatus::finite ? Json(r.total_dimension) : Json(nullptr);
  dims["nilpotency"] = r.nilpotency_degree ? Json(*r.nilpotency_degree) : Json(nullptr);
  dims["graded"] = r.graded_dimensions;
  j["dims"] = std::move(dims);
  if (r.criterion) {
    j["criterion"] = Json{{"four_successive", *r.criterion},
                          {"predicts", *r.criterion ? "infinite" : "finite"},
                          {"agrees", r.criterion_agrees ? Json(*r.criterion_agrees) : Json(nullptr)}};
  } else {
    j["criterion"] = nullptr;
  }
  if (r.gldim_computed) {
    j["gldim"] = Json{{"kind", to_string(r.gldim_kind)},
                      {"value", r.gldim_value},
                      {"periodic_certificate", r.periodic_certificate},
                      {"cartan_determinant", r.cartan_determinant ? Json(*r.cartan_determinant) : Json(nullptr)}};
  } else {
    j["gldim"] = nullptr;
  }
  Json sigma = Json::array();
  for (auto [a, b] : r.sigma) sigma.push_back(Json::array({a, b}));
  j["self_injective"] = Json{{"verdict", r.self_injective ? Json(to_string(*r.self_injective)) : Json(nullptr)},
                             {"sigma", std::move(sigma)}};
  j["kernel_idempotent"] = r.kernel.verified;
  Json table = Json::object();
  for (const auto& row : r.kernel.rows)
    table[std::to_string(row.degree)] = Json{{"dimA", row.dim_algebra},
                                             {"dimK", row.dim_ideal},
                                             {"dimK2", row.dim_square},
                                             {"equal", row.equal}};
  j["kernel_check"] = Json{{"holds_by_construction", r.kernel.holds_by_construction},
                           {"cap", r.kernel.cap},
                           {"duality_ok", r.kernel.duality_ok},
                           {"table", std::move(table)}};
  j["eligible"] = to_string(r.eligible);
  j["reason"] = r.reason;
  j["prediction"] = r.prediction;
  return j;
}

Json enumeration_to_json(const Enumeration& e) {
  Json j;
  j["version"] = kSchemaVersion;
  j["group"] = group_json(e.group);
  j["up_to_rotation"] = e.up_to_rotation;
  j["caps"] = Json{{"degree_cap", e.caps.degree_cap}, {"step_cap", e.caps.step_cap}, {"order_cap", e.caps.order_cap}};
  j["summary"] = Json{{"total", e.reports.size()},
                      {"eligible", e.eligible},
                      {"ineligible", e.ineligible},
                      {"inconclusive", e.inconclusive},
                      {"disagreements", e.disagreements}};
  Json reports = Json::array();
  for (const auto& r : e.reports) reports.push_back(report_to_json(r));
  j["reports"] = std::move(reports);
  return j;
}

namespace {

std::string gldim_cell(const EligibilityReport& r) {
  if (!r.gldim_computed) return "-";
  if (r.gldim_kind == GlobalDimensionKind::finite) return std::to_string(r.gldim_value);
  return std::string("≥ ") + std::to_string(r.gldim_value) + (r.periodic_certificate ? " (periodic)" : "");
}

std::string criterion_cell(const EligibilityReport& r) {
  if (!r.criterion) return "n/a";
  std::string s = *r.criterion ? "infinite" : "finite";
  if (r.criterion_agrees == false) s += " (disagrees)";
  return s;
}

std::string si_cell(const EligibilityReport& r) {
  if (!r.self_injective) return "-";
  if (*r.self_injective != SelfInjectiveVerdict::self_injective) return to_string(*r.self_injective) == "undecided" ? "undecided" : "no";
  std::string s = "yes, σ = (";
  for (std::size_t k = 0; k < r.sigma.size(); ++k)
    s += (k ? ", " : "") + std::to_string(r.sigma[k].first) + "↦" + std::to_string(r.sigma[k].second);
  return s + ")";
}

std::string table_row(const EligibilityReport& r) {
  std::ostringstream os;
  os << "| " << r.vertices.to_string() << " | " << r.vertices.complement().to_string() << " | "
     << longest_complement_run(r.vertices) << " | "
     << (r.dimension_status == DimensionStatus::finite ? std::to_string(r.total_dimension) : "?") << " | "
     << gldim_cell(r) << " | " << si_cell(r) << " | " << criterion_cell(r) << " | "
     << (r.kernel.verified ? "yes" : "no") << " | " << to_string(r.eligible) << " |\n";
  return os.str();
}

const char* kTableHeader =
    "| V | surviving vertices | longest run outside V | dim B | gldim B | self-injective | criterion | "
    "(ker p)² = ker p | eligible |\n"
    "|---|---|---|---|---|---|---|---|---|\n";

std::string group_title(const GroupData& g) {
  return "n = " + std::to_string(g.n) + ", weights (" + std::to_string(g.weights[0]) + "," +
         std::to_string(g.weights[1]) + "," + std::to_string(g.weights[2]) + ")";
}

}  // namespace

std::string enumeration_to_markdown(const Enumeration& e) {
  std::ostringstream os;
  os << "# Idempotent quotients, " << group_title(e.group) << "\n\n";
  os << (e.up_to_rotation ? "One row per rotation class of V.\n\n" : "One row per vertex set V.\n\n");
  os << "Caps: normal forms to degree " << e.caps.degree_cap << ", " << e.caps.step_cap
     << " resolution steps, kernel check to degree " << e.caps.order_cap << ".\n\n";
  os << kTableHeader;
  for (const auto& r : e.reports) os << table_row(r);
  os << "\n**Summary:** " << e.reports.size() << " sets, " << e.eligible << " eligible, " << e.ineligible
     << " ineligible, " << e.inconclusive << " inconclusive, " << e.disagreements
     << " disagreements between the four-successive criterion and the resolution engine.\n";
  return os.str();
}

std::string report_to_markdown(const EligibilityReport& r) {
  std::ostringstream os;
  os << "# Quotient by V = " << r.vertices.to_string() << ", " << group_title(r.group) << "\n\n";
  os << kTableHeader << table_row(r) << "\n";
  os << "**Reason:** " << r.reason << "\n\n**Prediction:** " << r.prediction << "\n";
  return os.str();
}

std::string square_report_to_markdown(const GroupData& group, const VertexSet& v, const SquareReport& rep) {
  std::ostringstream os;
  os << "# (K²)_d against K_d for K = ⟨e_V⟩, V = " << v.to_string() << ", " << group_title(group) << "\n\n";
  os << "| d | dim A_d | dim K_d | dim (K²)_d | equal |\n|---|---|---|---|---|\n";
  for (const auto& row : rep.rows)
    os << "| " << row.degree << " | " << row.dim_algebra << " | " << row.dim_ideal << " | " << row.dim_square << " | "
       << (row.equal ? "yes" : "no") << " |\n";
  os << "\n" << (rep.all_equal ? "Verified at truncation" : "Fails at truncation") << " (degree cap " << rep.cap
     << ").\n";
  return os.str();
}

#define QTWIST_INSTANTIATE(F)                                                                                  \
  template Json graded_algebra_to_json(const GradedAlgebra<F>&);                                               \
  template Json resolution_to_json(const GradedAlgebra<F>&, const Resolution<F>&, const std::string&, bool);    \
  template std::string resolution_display(const GradedAlgebra<F>&, const Resolution<F>&, const std::string&);  \
  template Json global_dimension_to_json(const GradedAlgebra<F>&, const GlobalDimension&);                     \
  template Json self_injectivity_to_json(const GradedAlgebra<F>&, const SelfInjectivity<F>&);

QTWIST_INSTANTIATE(Rational)
QTWIST_INSTANTIATE(ModP)

}  // namespace qtwist
