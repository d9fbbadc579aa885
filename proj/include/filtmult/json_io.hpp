#pragma once

#include "filtmult/filtration.hpp"
#include "filtmult/monomial_ideal.hpp"
#include "filtmult/multiplicity.hpp"
#include "filtmult/okounkov.hpp"
#include "filtmult/quadratic_irrational.hpp"
#include "filtmult/quasi_polynomial.hpp"
#include "filtmult/verifier.hpp"

#include <json.hpp>

namespace filtmult::json {

using Json = nlohmann::ordered_json;

// Parsing throws Error(ParseError) on malformed input; constructor errors
// (DimensionMismatch, EmptyGenerators, ...) propagate unchanged.

/// {"dim": d, "gens": [[e_1, ..., e_d], ...]}
MonomialIdeal parse_ideal(const Json& j);
/// An integer, a string "a/b", or {"p": "a/b", "q": "c/e", "s": n}.
QuadraticIrrational parse_quadratic(const Json& j);
Rational parse_rational_value(const Json& j);
/// {"kind": "power" | "shifted_power" | "diagonal" | "valuation" | "truncated" | "table", ...}
Filtration parse_filtration(const Json& j);
/// {"kind": "product" | "ceiling_norm" | "truncated_multi", ...}
MultiFiltration parse_multifiltration(const Json& j);

std::string rational_string(const Rational& q);

Json to_json(const MonomialIdeal& ideal);
Json to_json(const QuadraticIrrational& q);
Json to_json(const Filtration& f);
Json to_json(const MultiFiltration& f);
Json to_json(const LimitEstimate& estimate);
Json to_json(const MixedMultiplicityTable& table);
Json to_json(const TruncationConvergenceReport& report);
Json to_json(const QuasiPolynomial& q);
Json to_json(const VolumeLimitReport& report);
Json to_json(const InequalityReport& report);
Json to_json(const ReesReport& report);
Json to_json(const IntegralityReport& report);
Json to_json(const NonPolynomialReport& report);
Json to_json(const SuiteRecord& record);

}  // namespace filtmult::json
