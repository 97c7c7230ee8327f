// qtwist: command-line front end for the McKay quotient pipeline.

#include <gmp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtwist/eligibility.hpp"
#include "qtwist/field.hpp"
#include "qtwist/findim.hpp"
#include "qtwist/normalform.hpp"
#include "qtwist/order.hpp"
#include "qtwist/presentations.hpp"
#include "qtwist/serialize.hpp"

namespace {

using namespace qtwist;

constexpr int kExitContract = 2;
constexpr int kExitDisagreement = 3;
constexpr int kExitInternal = 1;

/// A contract violation tied to a command-line flag.
struct FlagError : ContractError {
  FlagError(const std::string& flag, const std::string& what) : ContractError(flag + ": " + what) {}
};

struct RunConfig {
  std::string command;
  std::optional<int> n;
  std::string weights;
  std::string presentation;
  std::optional<std::string> deleted;
  std::optional<std::size_t> degree_cap;
  std::size_t step_cap = 12;
  std::size_t order_cap = 8;
  std::optional<int> simple;
  bool differentials = false;
  bool up_to_rotation = false;
  unsigned jobs = 0;
  std::string format = "json";
  std::string output;
  std::string field;
};

std::vector<int> parse_int_list(const std::string& flag, const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size())
      throw FlagError(flag, "expected comma-separated integers, got '" + text + "'");
    out.push_back(v);
  }
  return out;
}

GroupData group_from(const RunConfig& cfg) {
  if (!cfg.n) throw FlagError("--n", "required for '" + cfg.command + "'");
  if (cfg.weights.empty()) throw FlagError("--weights", "required for '" + cfg.command + "'");
  const auto w = parse_int_list("--weights", cfg.weights);
  if (w.size() != 3) throw FlagError("--weights", "expected three comma-separated integers, got '" + cfg.weights + "'");
  if (*cfg.n < 1) throw FlagError("--n", "group order must be >= 1, got " + std::to_string(*cfg.n));
  try {
    return GroupData::make(*cfg.n, {w[0], w[1], w[2]});
  } catch (const ContractError& e) {
    throw FlagError("--weights", e.what());
  }
}

VertexSet vertex_set_from(const RunConfig& cfg, int n) {
  if (!cfg.deleted) throw FlagError("--delete", "required for '" + cfg.command + "'");
  const auto members = parse_int_list("--delete", *cfg.deleted);
  for (int v : members)
    if (v < 0 || v >= n) throw FlagError("--delete", "vertex " + std::to_string(v) + " out of range for n=" + std::to_string(n));
  return VertexSet::make(n, members);
}

/// The algebra a command works on: a presentation file or a McKay
/// presentation, with the --delete vertices removed.
Presentation presentation_from(const RunConfig& cfg) {
  Presentation pres;
  if (!cfg.presentation.empty()) {
    if (cfg.n || !cfg.weights.empty()) throw FlagError("--presentation", "cannot be combined with --n/--weights");
    try {
      pres = load_presentation(cfg.presentation);
    } catch (const ContractError& e) {
      throw FlagError("--presentation", e.what());
    }
  } else {
    pres = mckay_presentation(group_from(cfg));
  }
  if (cfg.deleted) {
    const auto labels = parse_int_list("--delete", *cfg.deleted);
    for (int v : labels)
      if (!pres.quiver.vertex_of_label(v)) throw FlagError("--delete", "no vertex labelled " + std::to_string(v));
    try {
      pres = delete_vertices(pres, labels);
    } catch (const ContractError& e) {
      throw FlagError("--delete", e.what());
    }
  }
  return pres;
}

std::size_t default_degree_cap(const Presentation& pres) {
  const std::size_t n = pres.group ? static_cast<std::size_t>(pres.group->n) : pres.quiver.vertex_count();
  return 3 * std::max<std::size_t>(n, 1) + 3;
}

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (cfg.format == f) return;
  std::string list;
  for (const char* f : allowed) list += (list.empty() ? "" : ", ") + std::string(f);
  throw FlagError("--format", "'" + cfg.format + "' is not available for '" + cfg.command + "' (use " + list + ")");
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

template <class F>
GradedAlgebra<F> finite_algebra(const RunConfig& cfg, const Presentation& pres) {
  const std::size_t cap = cfg.degree_cap.value_or(default_degree_cap(pres));
  const auto basis = GradedBasis<F>::build(pres, cap);
  if (!basis.stabilized())
    throw FlagError("--degree-cap", "the algebra did not stabilize below degree " + std::to_string(cap) +
                                        " (infinite dimensional or cap too small); pass --delete or raise the cap");
  return structure_constants(basis);
}

std::string presentation_markdown(const Presentation& pres) {
  std::ostringstream os;
  os << "# Quiver with relations\n\n";
  if (pres.group)
    os << "n = " << pres.group->n << ", weights (" << pres.group->weights[0] << "," << pres.group->weights[1] << ","
       << pres.group->weights[2] << ")\n\n";
  os << "- vertices: " << pres.quiver.vertex_count() << "\n- arrows: " << pres.quiver.arrow_count()
     << "\n- relations: " << pres.relations.size() << "\n\n| arrow | source | target |\n|---|---|---|\n";
  for (const Arrow& a : pres.quiver.arrows())
    os << "| " << a.label() << " | " << pres.quiver.label(a.source) << " | " << pres.quiver.label(a.target) << " |\n";
  return os.str();
}

struct Outcome {
  std::string text;
  int status = 0;
};

template <class F>
Outcome run(const RunConfig& cfg) {
  const std::string& cmd = cfg.command;
  if (cmd == "mckay") {
    require_format(cfg, {"json", "dot", "md"});
    if (!cfg.presentation.empty()) throw FlagError("--presentation", "'mckay' builds the presentation from --n/--weights");
    const auto pres = mckay_presentation(group_from(cfg));
    if (cfg.format == "dot") return {to_dot(pres)};
    if (cfg.format == "md") return {presentation_markdown(pres)};
    return {json_text(presentation_to_json(pres))};
  }
  if (cmd == "quotient") {
    require_format(cfg, {"json", "dot", "md"});
    if (!cfg.deleted) throw FlagError("--delete", "required for 'quotient'");
    const auto pres = presentation_from(cfg);
    const std::size_t cap = cfg.degree_cap.value_or(default_degree_cap(pres));
    const auto fd = is_finite_dimensional<F>(pres, cap);
    if (cfg.format == "dot") return {to_dot(pres)};
    if (cfg.format == "md") {
      std::ostringstream os;
      os << presentation_markdown(pres) << "\nGraded dimensions:";
      for (std::size_t d : fd.dimensions) os << " " << d;
      os << "\n\n"
         << (fd.status == DimensionStatus::finite ? "Finite dimensional, total " + std::to_string(fd.total_dimension)
                                                  : "Not stabilized below degree " + std::to_string(cap))
         << "\n";
      return {os.str()};
    }
    Json j;
    j["version"] = kSchemaVersion;
    j["presentation"] = presentation_to_json(pres);
    j["dimensions"] = dimensions_to_json(fd);
    return {json_text(j)};
  }
  if (cmd == "resolve") {
    require_format(cfg, {"json", "md"});
    const auto pres = presentation_from(cfg);
    const auto alg = finite_algebra<F>(cfg, pres);
    const auto v = alg.quiver().vertex_of_label(*cfg.simple);
    if (!v) throw FlagError("--simple", "no vertex labelled " + std::to_string(*cfg.simple) + " in the algebra");
    ResolutionOptions opts;
    opts.step_cap = cfg.step_cap;
    const auto res = minimal_resolution(alg, simple(alg, *v), opts);
    const std::string name = "S(" + std::to_string(*cfg.simple) + ")";
    const auto check = verify_resolution(alg, res);
    if (!check.ok()) throw std::logic_error("resolution failed verification: " + check.problems.front());
    if (cfg.format == "md") {
      std::ostringstream os;
      os << "# Minimal projective resolution of " << name << "\n\n" << resolution_display(alg, res, name) << "\n\n";
      if (res.status == ResolutionStatus::complete)
        os << "Projective dimension " << res.projective_dimension << ".\n";
      else
        os << "Projective dimension > " << res.cap << (res.period ? " (periodic syzygy found)" : "") << ".\n";
      return {os.str()};
    }
    Json j = resolution_to_json(alg, res, name, cfg.differentials);
    j["verified"] = true;
    return {json_text(j)};
  }
  if (cmd == "gldim") {
    require_format(cfg, {"json", "md"});
    const auto alg = finite_algebra<F>(cfg, presentation_from(cfg));
    ResolutionOptions opts;
    opts.step_cap = cfg.step_cap;
    const auto gd = global_dimension(alg, opts);
    if (cfg.format == "md") {
      std::ostringstream os;
      os << "# Global dimension\n\n"
         << (gd.kind == GlobalDimensionKind::finite ? "Finite(" + std::to_string(gd.value) + ")"
                                                    : "AtLeast(" + std::to_string(gd.value) + ")")
         << (gd.periodic_certificate ? ", periodic syzygy found" : "") << "\n";
      return {os.str()};
    }
    return {json_text(global_dimension_to_json(alg, gd))};
  }
  if (cmd == "selfinj") {
    require_format(cfg, {"json", "md"});
    const auto alg = finite_algebra<F>(cfg, presentation_from(cfg));
    const auto si = self_injectivity(alg);
    if (cfg.format == "md") {
      std::ostringstream os;
      os << "# Self-injectivity\n\n" << to_string(si.verdict) << "\n";
      if (si.verdict == SelfInjectiveVerdict::self_injective) {
        os << "\nσ =";
        for (std::size_t i = 0; i < si.sigma.size(); ++i)
          os << (i ? ", " : " ") << alg.quiver().label(i) << "↦" << alg.quiver().label(si.sigma[i]);
        os << "\n";
      }
      return {os.str()};
    }
    return {json_text(self_injectivity_to_json(alg, si))};
  }

  EligibilityCaps caps;
  caps.degree_cap = cfg.degree_cap.value_or(0);
  caps.step_cap = cfg.step_cap;
  caps.order_cap = cfg.order_cap;
  if (cmd == "eligibility") {
    require_format(cfg, {"json", "md"});
    const GroupData g = group_from(cfg);
    const VertexSet v = vertex_set_from(cfg, g.n);
    if (v.empty() || v.size() == static_cast<std::size_t>(g.n))
      throw FlagError("--delete", "V must be a nonempty proper subset of the vertices");
    const auto r = check_quotient<F>(g, v, caps);
    const int status = r.criterion_agrees == false ? kExitDisagreement : 0;
    if (cfg.format == "md") return {report_to_markdown(r), status};
    return {json_text(report_to_json(r)), status};
  }
  if (cmd == "enumerate") {
    require_format(cfg, {"json", "md"});
    const auto e = enumerate<F>(group_from(cfg), caps, cfg.up_to_rotation, cfg.jobs);
    const int status = e.disagreements ? kExitDisagreement : 0;
    if (cfg.format == "md") return {enumeration_to_markdown(e), status};
    return {json_text(enumeration_to_json(e)), status};
  }
  if (cmd == "order-check") {
    require_format(cfg, {"json", "md"});
    const GroupData g = group_from(cfg);
    const VertexSet v = vertex_set_from(cfg, g.n);
    const auto trunc = TruncatedAlgebra<F>::build(g, cfg.degree_cap.value_or(8));
    const auto rep = ideal_square_test(trunc, v.members());
    if (cfg.format == "md") return {square_report_to_markdown(g, v, rep)};
    return {json_text(square_report_to_json(g, v, rep))};
  }
  throw std::logic_error("unknown command " + cmd);
}

/// "rational" or "fp:<prime>"; returns the prime for the latter.
std::optional<std::uint32_t> parse_field(const std::string& source, const std::string& text) {
  if (text == "rational") return std::nullopt;
  if (text.rfind("fp:", 0) == 0) {
    const std::string digits = text.substr(3);
    mpz_class p;
    if (digits.empty() || p.set_str(digits, 10) != 0 || p < 2 || p > 2147483647 ||
        mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
      throw FlagError(source, "'" + text + "' is not fp:<prime> with a prime below 2^31");
    return static_cast<std::uint32_t>(p.get_ui());
  }
  throw FlagError(source, "expected 'rational' or 'fp:<prime>', got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Idempotent quotients of McKay algebras: presentations, resolutions, eligibility"};
  app.name("qtwist");
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--n", cfg.n, "group order n of Z_n");
  app.add_option("--weights", cfg.weights, "weights a,b,c with a+b+c = 0 mod n");
  app.add_option("--presentation", cfg.presentation, "presentation JSON file instead of --n/--weights");
  app.add_option("--delete", cfg.deleted, "comma-separated vertices V to delete");
  app.add_option("--degree-cap", cfg.degree_cap,
                 "normal-form degree cap (default 3n+3); truncation degree for order-check (default 8)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.step_cap, "resolution step cap")->check(CLI::PositiveNumber);
  app.add_option("--order-cap", cfg.order_cap, "truncation degree of the kernel check")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "dot", "md"}));
  app.add_option("--output", cfg.output, "write to this file instead of stdout");
  app.add_option("--field", cfg.field, "rational or fp:<prime> (overrides QTWIST_FIELD)");

  bool dot = false;
  auto* mckay = app.add_subcommand("mckay", "McKay quiver with relations");
  mckay->add_flag("--dot", dot, "emit Graphviz DOT");
  app.add_subcommand("quotient", "quotient presentation and dimension summary");
  auto* resolve = app.add_subcommand("resolve", "minimal projective resolution of a simple module");
  resolve->add_option("--simple", cfg.simple, "vertex label i of S(i)")->required();
  resolve->add_flag("--differentials", cfg.differentials, "include generator images in JSON");
  app.add_subcommand("gldim", "global dimension verdict");
  app.add_subcommand("selfinj", "self-injectivity and Nakayama permutation");
  app.add_subcommand("eligibility", "spherical-twist eligibility of the quotient by --delete");
  auto* enumerate_cmd = app.add_subcommand("enumerate", "eligibility of every proper nonempty V");
  enumerate_cmd->add_flag("--up-to-rotation", cfg.up_to_rotation, "one V per rotation class");
  enumerate_cmd->add_option("--jobs", cfg.jobs, "worker threads (0 = all cores)");
  app.add_subcommand("order-check", "compare (K^2)_d with K_d in the truncated algebra");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qtwist: error: " << e.what() << "\n";
    return kExitContract;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (dot) cfg.format = "dot";

  try {
    std::optional<std::uint32_t> prime;
    if (!cfg.field.empty()) {
      prime = parse_field("--field", cfg.field);
    } else if (const char* env = std::getenv("QTWIST_FIELD"); env && *env) {
      prime = parse_field("QTWIST_FIELD", env);
    }
    Outcome out;
    if (prime) {
      ModP::set_modulus(*prime);
      out = run<ModP>(cfg);
    } else {
      out = run<Rational>(cfg);
    }
    if (cfg.output.empty()) {
      std::cout << out.text;
    } else {
      std::ofstream f(cfg.output, std::ios::binary);
      if (!f) throw FlagError("--output", "cannot write '" + cfg.output + "'");
      f << out.text;
    }
    if (out.status == kExitDisagreement)
      std::cerr << "qtwist: criterion and resolution engine disagree (see the report)\n";
    return out.status;
  } catch (const ContractError& e) {
    std::cerr << "qtwist: error: " << e.what() << "\n";
    return kExitContract;
  } catch (const std::exception& e) {
    std::cerr << "qtwist: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
