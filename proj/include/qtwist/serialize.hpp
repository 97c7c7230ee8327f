#pragma once

// JSON, markdown and text renderings of presentations, algebras,
// resolutions and eligibility reports. Objects use sorted keys and rationals
// are written as [num, den] in lowest terms, so equal inputs give
// byte-identical output.

#include <string>

#include <json.hpp>

#include "qtwist/eligibility.hpp"
#include "qtwist/findim.hpp"
#include "qtwist/normalform.hpp"
#include "qtwist/order.hpp"
#include "qtwist/presentations.hpp"

namespace qtwist {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Integer as a JSON number when it fits in 64 bits, else as a decimal string.
Json integer_json(const mpz_class& z);
Json rational_json(const mpq_class& q);  ///< [num, den]

Json presentation_to_json(const Presentation& pres);
/// Throws ContractError naming the offending field on malformed input or
/// when the result fails validate_presentation.
Presentation presentation_from_json(const Json& j);
Presentation load_presentation(const std::string& path);

template <class F>
Json graded_algebra_to_json(const GradedAlgebra<F>& alg);

Json dimensions_to_json(const FiniteDimensionality& fd);

template <class F>
Json resolution_to_json(const GradedAlgebra<F>& alg, const Resolution<F>& res, const std::string& module_name,
                        bool with_differentials = false);

/// "0 → P(1)^{⊕2} → P(2) → P(0) → S(0) → 0"; a truncated resolution starts
/// with "⋯ →" instead of "0 →".
template <class F>
std::string resolution_display(const GradedAlgebra<F>& alg, const Resolution<F>& res, const std::string& module_name);

template <class F>
Json global_dimension_to_json(const GradedAlgebra<F>& alg, const GlobalDimension& gd);

template <class F>
Json self_injectivity_to_json(const GradedAlgebra<F>& alg, const SelfInjectivity<F>& si);

std::string to_string(GlobalDimensionKind k);
std::string to_string(SelfInjectiveVerdict v);

Json square_report_to_json(const GroupData& group, const VertexSet& v, const SquareReport& rep);

Json report_to_json(const EligibilityReport& r);
Json enumeration_to_json(const Enumeration& e);
std::string enumeration_to_markdown(const Enumeration& e);
std::string report_to_markdown(const EligibilityReport& r);
std::string square_report_to_markdown(const GroupData& group, const VertexSet& v, const SquareReport& rep);

}  // namespace qtwist
