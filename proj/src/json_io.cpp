#include "filtmult/json_io.hpp"

#include "filtmult/error.hpp"

namespace filtmult::json {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::ParseError, message); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail(std::string("expected an object with field '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing field '") + key + "'");
  return *it;
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) fail(std::string(what) + " must be an array");
  return j;
}

Json value_json(const std::optional<Rational>& exact, double value) {
  if (exact) return rational_string(*exact);
  return value;
}

Json estimate_value(const LimitEstimate& e) { return value_json(e.exact_value, e.value); }

std::string kind_string(MultiFiltrationKind kind) {
  switch (kind) {
    case MultiFiltrationKind::Product: return "product";
    case MultiFiltrationKind::CeilingNorm: return "ceiling_norm";
    case MultiFiltrationKind::TruncatedMulti: return "truncated_multi";
  }
  return "product";
}

}  // namespace

std::string rational_string(const Rational& q) { return to_fraction_string(q); }

MonomialIdeal parse_ideal(const Json& j) {
  const auto d = integer(field(j, "dim"), "dim");
  if (d < 1) fail("dim must be positive");
  std::vector<Exponent> gens;
  for (const auto& g : array(field(j, "gens"), "gens")) {
    Exponent e;
    for (const auto& v : array(g, "generator")) {
      const auto x = integer(v, "exponent");
      if (x < 0 || x > (1 << 28)) fail("exponents must lie in [0, 2^28]");
      e.push_back(static_cast<int>(x));
    }
    gens.push_back(std::move(e));
  }
  return MonomialIdeal(static_cast<int>(d), gens);
}

Rational parse_rational_value(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      fail("malformed rational '" + j.get<std::string>() + "'");
    }
  }
  fail("expected an integer or a \"num/den\" string");
}

QuadraticIrrational parse_quadratic(const Json& j) {
  if (j.is_object()) {
    const Rational p = j.contains("p") ? parse_rational_value(j["p"]) : Rational(0);
    const Rational q = j.contains("q") ? parse_rational_value(j["q"]) : Rational(0);
    const std::int64_t s = j.contains("s") ? integer(j["s"], "s") : 1;
    return QuadraticIrrational(p, q, s);
  }
  return QuadraticIrrational::rational(parse_rational_value(j));
}

Filtration parse_filtration(const Json& j) {
  const auto& kind_json = field(j, "kind");
  if (!kind_json.is_string()) fail("kind must be a string");
  const auto kind = kind_json.get<std::string>();
  auto rates = [&](const char* key) {
    std::vector<QuadraticIrrational> out;
    for (const auto& q : array(field(j, key), key)) out.push_back(parse_quadratic(q));
    return out;
  };
  if (kind == "power") return Filtration::power(parse_ideal(field(j, "ideal")));
  if (kind == "shifted_power")
    return Filtration::shifted_power(parse_ideal(field(j, "ideal")), static_cast<int>(integer(field(j, "shift"), "shift")));
  if (kind == "diagonal") return Filtration::diagonal(rates("rates"));
  if (kind == "valuation") return Filtration::valuation(rates("weights"));
  if (kind == "truncated")
    return truncate(parse_filtration(field(j, "base")), static_cast<int>(integer(field(j, "a"), "a")));
  if (kind == "table") {
    std::vector<MonomialIdeal> ideals;
    for (const auto& i : array(field(j, "ideals"), "ideals")) ideals.push_back(parse_ideal(i));
    return Filtration::table(std::move(ideals));
  }
  fail("unknown filtration kind '" + kind + "'");
}

MultiFiltration parse_multifiltration(const Json& j) {
  const auto& kind_json = field(j, "kind");
  if (!kind_json.is_string()) fail("kind must be a string");
  const auto kind = kind_json.get<std::string>();
  if (kind == "product") {
    std::vector<Filtration> factors;
    for (const auto& f : array(field(j, "factors"), "factors")) factors.push_back(parse_filtration(f));
    return MultiFiltration::product(std::move(factors));
  }
  if (kind == "ceiling_norm") {
    std::vector<std::int64_t> weights;
    for (const auto& w : array(field(j, "weights"), "weights")) weights.push_back(integer(w, "weight"));
    return MultiFiltration::ceiling_norm(std::move(weights));
  }
  if (kind == "truncated_multi")
    return MultiFiltration::truncated(parse_multifiltration(field(j, "base")), static_cast<int>(integer(field(j, "a"), "a")));
  fail("unknown multifiltration kind '" + kind + "'");
}

Json to_json(const MonomialIdeal& ideal) {
  Json gens = Json::array();
  for (const auto& g : ideal.generators()) gens.push_back(g);
  return Json{{"dim", ideal.dim()}, {"gens", gens}};
}

Json to_json(const QuadraticIrrational& q) {
  return Json{{"p", rational_string(q.p())}, {"q", rational_string(q.q())}, {"s", q.s()}};
}

Json to_json(const Filtration& f) {
  Json j{{"kind", to_string(f.kind())}};
  switch (f.kind()) {
    case FiltrationKind::Power:
      j["ideal"] = to_json(f.base_ideal());
      break;
    case FiltrationKind::ShiftedPower:
      j["ideal"] = to_json(f.base_ideal());
      j["shift"] = f.shift();
      break;
    case FiltrationKind::Diagonal:
    case FiltrationKind::Valuation: {
      Json r = Json::array();
      for (const auto& q : f.rates()) r.push_back(to_json(q));
      j[f.kind() == FiltrationKind::Diagonal ? "rates" : "weights"] = r;
      break;
    }
    case FiltrationKind::Truncated:
      j["base"] = to_json(f.base());
      j["a"] = f.truncation_level();
      break;
    case FiltrationKind::Table: {
      Json r = Json::array();
      for (const auto& i : f.table_ideals()) r.push_back(to_json(i));
      j["ideals"] = r;
      break;
    }
  }
  return j;
}

Json to_json(const MultiFiltration& f) {
  Json j{{"kind", kind_string(f.kind())}};
  switch (f.kind()) {
    case MultiFiltrationKind::Product: {
      Json r = Json::array();
      for (const auto& x : f.factors()) r.push_back(to_json(x));
      j["factors"] = r;
      break;
    }
    case MultiFiltrationKind::CeilingNorm:
      j["weights"] = f.norm_weights();
      break;
    case MultiFiltrationKind::TruncatedMulti:
      j["base"] = to_json(f.base());
      j["a"] = f.truncation_level();
      break;
  }
  return j;
}

Json to_json(const LimitEstimate& e) {
  Json samples = Json::array();
  for (const auto& [m, v] : e.samples) samples.push_back(Json{{"m", m}, {"value", rational_string(v)}});
  return Json{{"value", estimate_value(e)},
              {"approx", e.value},
              {"exact", e.exact},
              {"error_bound", e.error_bound},
              {"strategy", e.strategy},
              {"samples", samples}};
}

Json to_json(const MixedMultiplicityTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) {
    Json x{{"type", e.type}, {"value", value_json(e.exact_value, e.value)}, {"exact", e.exact_value.has_value()}};
    if (!e.exact_value) x["error_bound"] = e.error_bound;
    entries.push_back(std::move(x));
  }
  Json inverse = Json::array();
  for (const auto& row : t.witness.inverse) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_string(v));
    inverse.push_back(std::move(r));
  }
  return Json{{"d", t.d},         {"r", t.r},           {"exact", t.exact},
              {"strategy", t.strategy}, {"entries", entries}, {"points", t.witness.points},
              {"inverse", inverse}};
}

Json to_json(const TruncationConvergenceReport& r) {
  auto grid = [](const std::vector<std::vector<Rational>>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
      Json x = Json::array();
      for (const auto& v : row) x.push_back(rational_string(v));
      out.push_back(std::move(x));
    }
    return out;
  };
  return Json{{"schedule", r.schedule}, {"targets", r.targets}, {"values", grid(r.values)}, {"deltas", grid(r.deltas)}};
}

Json to_json(const QuasiPolynomial& q) {
  Json classes = Json::array();
  for (const auto& [residue, coeffs] : q.classes) {
    Json c = Json::array();
    for (const auto& v : coeffs) c.push_back(rational_string(v));
    classes.push_back(Json{{"residue", residue}, {"coefficients", c}});
  }
  return Json{{"arity", q.arity},         {"period", q.period},   {"degree", q.degree},
              {"monomials", q.monomials}, {"classes", classes}, {"threshold", q.threshold}};
}

Json to_json(const VolumeLimitReport& r) {
  Json j{{"beta", rational_string(r.beta)},
         {"m", r.m},
         {"vol_hat", rational_string(r.vol_hat)},
         {"vol_body", rational_string(r.vol_body)},
         {"difference", rational_string(r.difference)},
         {"limit", estimate_value(r.limit)},
         {"limit_exact", r.limit.exact},
         {"limit_error_bound", r.limit.error_bound},
         {"gap", r.exact_gap ? Json(rational_string(*r.exact_gap)) : Json(r.gap)},
         {"gap_approx", r.gap},
         {"relative_gap", r.relative_gap}};
  return j;
}

Json to_json(const InequalityReport& r) {
  Json records = Json::array();
  for (const auto& x : r.records) {
    Json rec{{"name", x.name}, {"left", x.left}, {"right", x.right}, {"slack", x.slack},
             {"exact", x.exact}, {"equality", x.equality}, {"pass", x.pass}};
    if (x.exact_slack) rec["exact_slack"] = rational_string(*x.exact_slack);
    records.push_back(std::move(rec));
  }
  Json mixed = Json::array();
  for (std::size_t i = 0; i < r.mixed.size(); ++i)
    mixed.push_back(r.exact ? Json(rational_string(r.mixed_exact[i])) : Json(r.mixed[i]));
  return Json{{"d", r.d},
              {"exact", r.exact},
              {"e1", value_json(r.e1_exact, r.e1)},
              {"e2", value_json(r.e2_exact, r.e2)},
              {"e12", value_json(r.e12_exact, r.e12)},
              {"mixed", mixed},
              {"records", records},
              {"pass", r.pass}};
}

Json to_json(const ReesReport& r) {
  Json drops = Json::array();
  for (const auto& d : r.drops)
    drops.push_back(Json{{"type", d.type}, {"full", d.full}, {"reduced", d.reduced}, {"pass", d.pass}});
  return Json{{"slot", r.slot},
              {"type", r.type},
              {"entry", value_json(r.entry_exact, r.entry)},
              {"single", value_json(r.single_exact, r.single)},
              {"concentrated_pass", r.concentrated_pass},
              {"drops", drops},
              {"pass", r.pass}};
}

Json to_json(const IntegralityReport& r) {
  return Json{{"ideal", to_json(r.ideal)},
              {"closure", to_json(r.closure)},
              {"e_ideal", rational_string(r.e_ideal)},
              {"e_closure", rational_string(r.e_closure)},
              {"pass", r.pass},
              {"converse",
               Json{{"e_power", rational_string(r.converse_e_power)},
                    {"e_shifted", rational_string(r.converse_e_shifted)},
                    {"filtrations_differ", r.converse_filtrations_differ}}}};
}

Json to_json(const NonPolynomialReport& r) {
  Json points = Json::array();
  for (const auto& p : r.points) {
    Json x{{"n", p.n},
           {"value", p.estimate.value},
           {"error_bound", p.estimate.error_bound},
           {"last_sample", rational_string(p.last_sample)},
           {"fitted", p.fitted},
           {"residual", p.residual}};
    if (p.sqrt_candidate) x["sqrt_candidate"] = *p.sqrt_candidate;
    if (p.ceiling_candidate) x["ceiling_candidate"] = p.ceiling_candidate->str();
    points.push_back(std::move(x));
  }
  return Json{{"degree", r.degree},
              {"monomials", r.monomials},
              {"coefficients", r.coefficients},
              {"points", points},
              {"max_residual", r.max_residual},
              {"threshold", r.threshold},
              {"non_polynomial", r.non_polynomial}};
}

Json to_json(const SuiteRecord& r) {
  Json j{{"seed", r.seed}, {"case", r.name}, {"pass", r.pass}, {"slacks", r.slacks}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

}  // namespace filtmult::json
