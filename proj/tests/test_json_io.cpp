#include "doctest.h"

#include "filtmult/error.hpp"
#include "filtmult/json_io.hpp"

using namespace filtmult;
using filtmult::json::Json;

namespace {

MonomialIdeal ideal(int d, std::vector<Exponent> gens) { return MonomialIdeal(d, gens); }

ErrorCode parse_error_code(const std::string& text) {
  try {
    json::parse_filtration(Json::parse(text));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised for " << text);
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("rationals serialize as num/den strings") {
  CHECK(json::rational_string(Rational(3)) == "3/1");
  CHECK(json::rational_string(Rational(-7, 4)) == "-7/4");
  CHECK(json::parse_rational_value(Json(5)) == Rational(5));
  CHECK(json::parse_rational_value(Json("10/4")) == Rational(5, 2));
  CHECK_THROWS_AS(json::parse_rational_value(Json(1.5)), Error);
  CHECK_THROWS_AS(json::parse_rational_value(Json("x/2")), Error);
}

TEST_CASE("quadratic irrationals accept the three encodings") {
  CHECK(json::parse_quadratic(Json(3)) == QuadraticIrrational::rational(Rational(3)));
  CHECK(json::parse_quadratic(Json("1/2")) == QuadraticIrrational::rational(Rational(1, 2)));
  const auto q = json::parse_quadratic(Json::parse(R"({"p": "1", "q": "1", "s": 2})"));
  CHECK(q == QuadraticIrrational(Rational(1), Rational(1), 2));
  CHECK(json::parse_quadratic(json::to_json(q)) == q);
}

TEST_CASE("every filtration kind survives a round trip") {
  const auto I = ideal(2, {{2, 0}, {0, 1}});
  const std::vector<Filtration> fs{
      Filtration::power(I),
      Filtration::shifted_power(I, 2),
      Filtration::diagonal({QuadraticIrrational::sqrt(2)}),
      Filtration::valuation({QuadraticIrrational::rational(Rational(1)), QuadraticIrrational::sqrt(2)}),
      truncate(Filtration::diagonal({QuadraticIrrational::sqrt(2)}), 3),
      Filtration::table({ideal(2, {{1, 0}, {0, 1}}), ideal(2, {{2, 0}, {0, 2}})}),
  };
  for (const auto& f : fs) {
    const Json j = json::to_json(f);
    const auto g = json::parse_filtration(Json::parse(j.dump()));
    CHECK(json::to_json(g) == j);
    CHECK(g.kind() == f.kind());
    for (std::int64_t n = 0; n <= 6; ++n) {
      if (f.kind() == FiltrationKind::Table && n > 2) break;
      CHECK(g.ideal_at(n) == f.ideal_at(n));
    }
  }
}

TEST_CASE("multifiltrations survive a round trip") {
  const std::vector<MultiFiltration> fs{
      MultiFiltration::ceiling_norm({1, 1}),
      MultiFiltration::product({Filtration::power(ideal(2, {{1, 0}, {0, 1}})),
                                Filtration::power(ideal(2, {{2, 0}, {0, 1}}))}),
      MultiFiltration::truncated(MultiFiltration::ceiling_norm({1, 2}), 2),
  };
  for (const auto& f : fs) {
    const Json j = json::to_json(f);
    const auto g = json::parse_multifiltration(j);
    CHECK(json::to_json(g) == j);
    for (std::int64_t a = 0; a <= 3; ++a)
      for (std::int64_t b = 0; b <= 3; ++b) {
        const std::vector<std::int64_t> n{a, b};
        CHECK(g.ideal_at(n) == f.ideal_at(n));
      }
  }
}

TEST_CASE("malformed descriptors are rejected with a code") {
  CHECK(parse_error_code(R"({"kind": "bogus"})") == ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"ideal": {"dim": 1, "gens": [[1]]}})") == ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"kind": "power"})") == ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"kind": "power", "ideal": {"dim": 2, "gens": [[1, 1]]}})") == ErrorCode::NotMPrimary);
  CHECK(parse_error_code(R"({"kind": "power", "ideal": {"dim": 2, "gens": [[1]]}})") ==
        ErrorCode::DimensionMismatch);
  CHECK(parse_error_code(R"({"kind": "power", "ideal": {"dim": 1, "gens": []}})") == ErrorCode::EmptyGenerators);
  CHECK(parse_error_code(R"({"kind": "power", "ideal": {"dim": 1, "gens": [[-1]]}})") == ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"kind": "truncated", "base": {"kind": "diagonal", "rates": [1]}, "a": 0})") ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("reports carry exact values as strings and inexact ones as numbers") {
  LimitEstimate exact;
  exact.exact = true;
  exact.exact_value = Rational(7, 2);
  exact.value = 3.5;
  exact.strategy = "exact_noetherian";
  CHECK(json::to_json(exact)["value"] == "7/2");

  LimitEstimate approx;
  approx.value = 1.4142;
  approx.error_bound = 1e-4;
  approx.strategy = "numeric";
  approx.samples = {{4, Rational(3, 2)}};
  const Json j = json::to_json(approx);
  CHECK(j["value"].is_number_float());
  CHECK(j["error_bound"] == 1e-4);
  CHECK(j["samples"][0]["value"] == "3/2");
}
