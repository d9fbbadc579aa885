#include "filtmult/error.hpp"
#include "filtmult/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace filtmult;
using filtmult::json::Json;

namespace {

enum Exit { kOk = 0, kEngine = 1, kValidation = 2, kSuiteFailure = 3 };

// Raised while the problem file is being read and validated; reported with exit 2.
struct ValidationError {
  std::string code;
  std::string message;
};

struct Report {
  Json body;
  std::vector<Json> lines;  // suite records, emitted one per line
  bool suite = false;
  bool suite_pass = true;
};

struct Settings {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
};

const std::vector<std::string> kTasks = {"colength", "multiplicity", "mixed",      "truncate-converge",
                                         "quasipoly", "okounkov",     "minkowski", "rees",
                                         "integrality", "multigraded-demo"};

template <typename Fn>
auto validating(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw ValidationError{std::string(to_string(e.code())), e.what()};
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError{"ParseError", e.what()};
  }
}

// Everything the engine needs, parsed up front so that malformed input never
// reaches dispatch.
struct Problem {
  std::string task;
  Json raw;
  std::vector<Filtration> filtrations;
  std::optional<MultiFiltration> multi;
  std::optional<MonomialIdeal> ideal;
  std::vector<std::int64_t> n;
  VerifierOptions options;
  std::uint64_t seed = 0;
  std::optional<Json> suite;
};

std::int64_t get_int(const Json& j, const char* key, std::int64_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) throw ValidationError{"ParseError", std::string(key) + " must be an integer"};
  return j[key].get<std::int64_t>();
}

Problem parse_problem(const std::string& task, const Json& raw, const Settings& settings) {
  Problem p;
  p.task = task;
  p.raw = raw;
  if (!raw.is_object()) throw ValidationError{"ParseError", "problem must be a JSON object"};
  if (raw.contains("task") && raw["task"] != task)
    throw ValidationError{"InvalidArgument", "problem file task does not match the command line"};
  validating([&] {
    if (raw.contains("filtration")) p.filtrations.push_back(json::parse_filtration(raw["filtration"]));
    if (raw.contains("filtrations")) {
      if (!raw["filtrations"].is_array()) throw Error(ErrorCode::ParseError, "filtrations must be an array");
      for (const auto& f : raw["filtrations"]) p.filtrations.push_back(json::parse_filtration(f));
    }
    if (raw.contains("multifiltration")) p.multi = json::parse_multifiltration(raw["multifiltration"]);
    if (raw.contains("ideal")) p.ideal = json::parse_ideal(raw["ideal"]);
    if (raw.contains("strategy")) {
      if (!raw["strategy"].is_string()) throw Error(ErrorCode::ParseError, "strategy must be a string");
      p.options.limit.strategy = parse_strategy(raw["strategy"].get<std::string>());
    }
    if (raw.contains("tolerance")) {
      if (!raw["tolerance"].is_number()) throw Error(ErrorCode::ParseError, "tolerance must be a number");
      p.options.numeric_tolerance = raw["tolerance"].get<double>();
    }
    return 0;
  });
  auto& limit = p.options.limit;
  limit.max_m = get_int(raw, "budget", limit.max_m);
  limit.m0 = get_int(raw, "m0", limit.m0);
  limit.hs_budget = static_cast<int>(get_int(raw, "hs_budget", limit.hs_budget));
  if (settings.budget) limit.max_m = *settings.budget;
  if (limit.max_m < 2 * limit.m0 || limit.m0 < 1)
    throw ValidationError{"InvalidArgument", "budget must be at least twice m0"};
  p.seed = static_cast<std::uint64_t>(get_int(raw, "seed", 0));
  if (settings.seed) p.seed = *settings.seed;
  if (raw.contains("suite")) {
    if (!raw["suite"].is_object()) throw ValidationError{"ParseError", "suite must be an object"};
    p.suite = raw["suite"];
  }
  if (raw.contains("n")) {
    if (!raw["n"].is_array()) throw ValidationError{"ParseError", "n must be an array"};
    for (const auto& v : raw["n"]) {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw ValidationError{"ParseError", "n entries must be non-negative integers"};
      p.n.push_back(v.get<std::int64_t>());
    }
  }

  const std::size_t r = p.multi ? static_cast<std::size_t>(p.multi->arity()) : p.filtrations.size();
  if (p.n.empty()) p.n.assign(r, 1);
  if (raw.contains("d")) {
    const auto d = get_int(raw, "d", 0);
    for (const auto& f : p.filtrations)
      if (f.dim() != d) throw ValidationError{"DimensionMismatch", "filtration dimension differs from d"};
    if (p.multi && p.multi->dim() != d) throw ValidationError{"DimensionMismatch", "multifiltration dimension differs from d"};
    if (p.ideal && p.ideal->dim() != d) throw ValidationError{"DimensionMismatch", "ideal dimension differs from d"};
  }

  auto need_filtrations = [&](std::size_t lo, std::size_t hi) {
    if (p.filtrations.size() < lo || p.filtrations.size() > hi)
      throw ValidationError{"InvalidArgument", task + " needs between " + std::to_string(lo) + " and " +
                                                   std::to_string(hi) + " filtrations"};
  };
  if (task == "colength") {
    if (!p.ideal) need_filtrations(1, 64);
  } else if (task == "multiplicity") {
    if (!p.multi) need_filtrations(1, 64);
  } else if (task == "mixed" || task == "truncate-converge" || task == "quasipoly") {
    need_filtrations(1, 64);
  } else if (task == "okounkov") {
    need_filtrations(1, 1);
  } else if (task == "minkowski") {
    if (!p.suite) need_filtrations(2, 2);
  } else if (task == "rees") {
    if (!p.suite) need_filtrations(2, 64);
  } else if (task == "integrality") {
    if (!p.suite && !p.ideal) throw ValidationError{"InvalidArgument", "integrality needs an ideal or a suite"};
  }
  if (!p.multi && (task == "colength" || task == "multiplicity") && !p.ideal && p.n.size() != p.filtrations.size())
    throw ValidationError{"ArityMismatch", "n must have one entry per filtration"};
  return p;
}

std::vector<int> int_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw ValidationError{"ParseError", std::string(key) + " must be an array"};
  std::vector<int> out;
  for (const auto& v : j[key]) {
    if (!v.is_number_integer()) throw ValidationError{"ParseError", std::string(key) + " entries must be integers"};
    out.push_back(v.get<int>());
  }
  return out;
}

Report suite_report(const std::string& name, const std::vector<SuiteRecord>& records) {
  Report rep;
  rep.suite = true;
  std::size_t passed = 0;
  for (const auto& r : records) {
    rep.lines.push_back(json::to_json(r));
    passed += r.pass ? 1 : 0;
  }
  rep.suite_pass = passed == records.size();
  rep.body = Json{{"suite", name}, {"count", records.size()}, {"passed", passed}, {"pass", rep.suite_pass}};
  return rep;
}

Report run_task(const Problem& p) {
  Report rep;
  Json& out = rep.body;
  out["task"] = p.task;
  const auto& limit = p.options.limit;
  const auto& raw = p.raw;

  if (p.task == "colength") {
    if (p.ideal) {
      out["ideal"] = json::to_json(*p.ideal);
      out["colength"] = colength(*p.ideal);
    } else {
      out["n"] = p.n;
      out["colength"] = product_colength(p.filtrations, p.n);
    }
  } else if (p.task == "multiplicity") {
    if (p.ideal && p.filtrations.empty() && !p.multi) {
      out["ideal"] = json::to_json(*p.ideal);
      out["multiplicity"] = hilbert_samuel_multiplicity(*p.ideal, limit.hs_budget).str();
    } else {
      out["n"] = p.n;
      out["limit"] = json::to_json(p.multi ? limit_normalized_colength(*p.multi, p.n, limit)
                                           : limit_normalized_colength(p.filtrations, p.n, limit));
    }
  } else if (p.task == "mixed") {
    out["table"] = json::to_json(mixed_multiplicity_table(p.filtrations, limit, p.seed));
  } else if (p.task == "truncate-converge") {
    const auto schedule = validating([&] { return int_list(raw, "schedule"); });
    std::vector<std::vector<int>> targets;
    if (raw.contains("targets")) {
      if (!raw["targets"].is_array()) throw ValidationError{"ParseError", "targets must be an array"};
      for (const auto& t : raw["targets"]) targets.push_back(int_list(Json{{"t", t}}, "t"));
    } else {
      targets = homogeneous_exponents(static_cast<int>(p.filtrations.size()), p.filtrations.front().dim());
    }
    out["report"] = json::to_json(truncation_convergence(p.filtrations, schedule, targets, limit));
  } else if (p.task == "quasipoly") {
    QuasiPolynomialOptions qo;
    qo.k_budget = static_cast<int>(get_int(raw, "k_budget", qo.k_budget));
    qo.window = static_cast<int>(get_int(raw, "window", qo.window));
    out["quasi_polynomial"] = json::to_json(fit_quasi_polynomial(p.filtrations, get_int(raw, "period", 1), qo));
  } else if (p.task == "okounkov") {
    const auto m = get_int(raw, "m", 64);
    if (m < 1) throw ValidationError{"InvalidArgument", "m must be positive"};
    out["report"] = json::to_json(volume_limit_check(p.filtrations.front(), m, limit));
  } else if (p.task == "minkowski") {
    if (p.suite) {
      const auto& s = *p.suite;
      return suite_report("minkowski", minkowski_suite(static_cast<int>(get_int(s, "count", 10)),
                                                        static_cast<int>(get_int(s, "d", 2)),
                                                        static_cast<int>(get_int(s, "max_exponent", 6)), p.seed,
                                                        p.options));
    }
    out["report"] = json::to_json(minkowski_report(p.filtrations[0], p.filtrations[1], p.options));
  } else if (p.task == "rees") {
    if (p.suite) {
      const auto& s = *p.suite;
      return suite_report("rees", rees_suite(static_cast<int>(get_int(s, "count", 10)),
                                             static_cast<int>(get_int(s, "d", 2)),
                                             static_cast<int>(get_int(s, "max_exponent", 6)), p.seed, p.options));
    }
    const auto slot = get_int(raw, "slot", 0);
    if (slot < 0 || static_cast<std::size_t>(slot) >= p.filtrations.size())
      throw ValidationError{"InvalidArgument", "slot must index a filtration"};
    out["report"] = json::to_json(rees_identity_check(p.filtrations, static_cast<std::size_t>(slot), p.options));
  } else if (p.task == "integrality") {
    if (p.suite) {
      const auto& s = *p.suite;
      return suite_report("integrality", integrality_suite(static_cast<int>(get_int(s, "count", 20)),
                                                           static_cast<int>(get_int(s, "max_dim", 3)),
                                                           static_cast<int>(get_int(s, "max_exponent", 6)), p.seed,
                                                           p.options));
    }
    out["report"] = json::to_json(integrality_check(*p.ideal, p.options));
  } else if (p.task == "multigraded-demo") {
    const auto mf = p.multi ? *p.multi : MultiFiltration::ceiling_norm({1, 1});
    auto points = standard_witness_points();
    if (raw.contains("points")) {
      points.clear();
      if (!raw["points"].is_array()) throw ValidationError{"ParseError", "points must be an array"};
      for (const auto& pt : raw["points"]) {
        std::vector<std::int64_t> x;
        for (const auto& v : int_list(Json{{"p", pt}}, "p")) x.push_back(v);
        points.push_back(std::move(x));
      }
    }
    VerifierOptions opts = p.options;
    if (!raw.contains("budget") && !raw.contains("strategy")) opts.limit.strategy = Strategy::Numeric;
    out["multifiltration"] = json::to_json(mf);
    out["report"] = json::to_json(non_polynomial_witness(mf, points, static_cast<int>(get_int(raw, "degree", 2)), opts));
  }
  return rep;
}

void render_text(const Json& j, std::ostream& os, const std::string& indent) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto& v = it.value();
    const std::string key = j.is_object() ? it.key() : "-";
    if (v.is_structured() && !(v.is_array() && !v.empty() && v.front().is_primitive())) {
      os << indent << key << ":\n";
      render_text(v, os, indent + "  ");
    } else if (v.is_string()) {
      os << indent << key << ": " << v.get<std::string>() << '\n';
    } else {
      os << indent << key << ": " << v.dump() << '\n';
    }
  }
}

std::string render(const Report& rep, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    for (const auto& line : rep.lines) os << line.dump() << '\n';
    os << (rep.suite ? rep.body.dump() : rep.body.dump(2)) << '\n';
  } else {
    for (const auto& line : rep.lines)
      os << (line["pass"].get<bool>() ? "PASS " : "FAIL ") << line["seed"] << ' ' << line["case"].get<std::string>()
         << '\n';
    render_text(rep.body, os, "");
  }
  return os.str();
}

void print_error(const std::string& code, const std::string& message, const std::string& format) {
  if (format == "json")
    std::cerr << Json{{"error", Json{{"code", code}, {"message", message}}}}.dump() << '\n';
  else
    std::cerr << "error [" << code << "]: " << message << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicities of monomial filtrations"};
  std::string task, input, output, format = "json";
  Settings settings;
  app.add_option("task", task, "Task to run")->required()->check(CLI::IsMember(kTasks));
  app.add_option("--input,-i", input, "Problem file (JSON); '-' reads stdin");
  app.add_option("--seed", settings.seed, "Seed for sample points and suites");
  app.add_option("--budget", settings.budget, "Largest m for numeric limits");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output,-o", output, "Write the report here instead of stdout");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  Problem problem;
  try {
    Json raw = Json::object();
    if (input == "-") {
      raw = Json::parse(std::cin);
    } else if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw ValidationError{"ParseError", "cannot open " + input};
      raw = Json::parse(in);
    } else if (task != "multigraded-demo") {
      throw ValidationError{"InvalidArgument", task + " needs --input"};
    }
    problem = parse_problem(task, raw, settings);
  } catch (const ValidationError& e) {
    print_error(e.code, e.message, format);
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    print_error("ParseError", e.what(), format);
    return kValidation;
  }

  Report report;
  try {
    report = run_task(problem);
  } catch (const ValidationError& e) {
    print_error(e.code, e.message, format);
    return kValidation;
  } catch (const Error& e) {
    print_error(std::string(to_string(e.code())), e.what(), format);
    return kEngine;
  } catch (const std::exception& e) {
    print_error("Internal", e.what(), format);
    return kEngine;
  }

  const auto text = render(report, format);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      print_error("InvalidArgument", "cannot write " + output, format);
      return kValidation;
    }
    out << text;
  }
  return report.suite && !report.suite_pass ? kSuiteFailure : kOk;
}
