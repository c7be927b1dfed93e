#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "unionbounds/borel_cantelli.hpp"
#include "unionbounds/harness.hpp"
#include "unionbounds/system_io.hpp"
#include "unionbounds/union_bounds.hpp"

namespace unionbounds::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string output;
  std::string format = "table";
  std::vector<double> a;
  std::vector<double> rho;
  std::vector<double> holder;
  bool clamp = false;
  std::string inject;

  std::uint64_t seed = 1;
  std::size_t events = 5;
  std::size_t atoms = 32;
  std::string profile = "dense";

  std::string model = "independent";
  double p = 0.5;
  long n = 100;
  long m = 1;

  std::size_t count = 200;
};

std::string number(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* text = std::getenv("UNION_BOUNDS_TOL")) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || text[used] != '\0' || !(value > 0.0) || !std::isfinite(value))
      throw ValidationError(std::string("UNION_BOUNDS_TOL must be a positive number, got '") +
                            text + "'");
    tol.inequality = value;
  }
  return tol;
}

std::vector<std::pair<double, double>> param_pairs(const Options& o) {
  std::vector<double> a = o.a;
  std::vector<double> rho = o.rho;
  if (a.empty()) a.push_back(1.0);
  if (rho.empty()) rho.push_back(1.0);
  if (a.size() != rho.size()) {
    if (a.size() == 1) a.resize(rho.size(), a[0]);
    else if (rho.size() == 1) rho.resize(a.size(), rho[0]);
    else
      throw ValidationError("--a and --rho must be given the same number of times (or once)");
  }
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0) || !(rho[i] > 0.0)) throw ValidationError("--a and --rho must be positive");
    pairs.emplace_back(a[i], rho[i]);
  }
  return pairs;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty()) out << text;
  else write_file_atomically(o.output, text);
}

// ---- bounds ---------------------------------------------------------------

struct Section {
  std::string title;
  std::optional<std::pair<double, double>> params;
  std::vector<BoundEntry> entries;
};

void corrupt(std::vector<Section>& sections, const std::string& name, const Rational& exact,
             const Tolerances& tol) {
  for (auto& s : sections) {
    for (auto& e : s.entries) {
      if (e.name != name) continue;
      const Rational shifted = e.kind == Direction::lower ? Rational(exact + 1) : Rational(exact - 1);
      e.error.reset();
      e.value = shifted.convert_to<double>();
      e.clamped = std::clamp(e.value, 0.0, 1.0);
      if (e.exact_value) e.exact_value = shifted;
      e.pass = sandwich_holds(e, exact, tol);
      return;
    }
  }
  throw ValidationError("--inject-violation: no bound named '" + name + "'");
}

ordered_json entry_json(const BoundEntry& e) {
  ordered_json j;
  j["name"] = e.name;
  j["kind"] = to_string(e.kind);
  j["value"] = e.error ? ordered_json(nullptr) : ordered_json(e.value);
  j["clamped"] = e.error ? ordered_json(nullptr) : ordered_json(e.clamped);
  j["exact"] = e.exact_value ? ordered_json(format_rational(*e.exact_value)) : ordered_json(nullptr);
  j["pass"] = e.pass;
  if (e.error) j["error"] = *e.error;
  return j;
}

std::string render_bounds(const Options& o, const Rational& exact,
                          const std::vector<Section>& sections, std::size_t violations) {
  std::ostringstream os;
  if (o.format == "json") {
    ordered_json doc;
    doc["exact"] = format_rational(exact);
    doc["exact_value"] = exact.convert_to<double>();
    doc["clamp"] = o.clamp;
    doc["sections"] = ordered_json::array();
    for (const auto& s : sections) {
      ordered_json js;
      js["title"] = s.title;
      if (s.params) {
        js["a"] = s.params->first;
        js["rho"] = s.params->second;
      }
      js["entries"] = ordered_json::array();
      for (const auto& e : s.entries) js["entries"].push_back(entry_json(e));
      doc["sections"].push_back(std::move(js));
    }
    doc["violations"] = violations;
    os << doc.dump(2) << "\n";
  } else if (o.format == "csv") {
    os << "name,kind,value,clamped,exact,pass\n";
    for (const auto& s : sections)
      for (const auto& e : s.entries)
        os << e.name << ',' << to_string(e.kind) << ',' << (e.error ? "" : number(e.value)) << ','
           << (e.error ? "" : number(e.clamped)) << ','
           << (e.exact_value ? format_rational(*e.exact_value) : "") << ','
           << (e.pass ? "true" : "false") << "\n";
  } else {
    os << "exact P(U) = " << format_rational(exact) << " (" << number(exact.convert_to<double>())
       << ")\n";
    for (const auto& s : sections) {
      os << "\n" << s.title << "\n";
      for (const auto& e : s.entries) {
        os << "  " << std::left << std::setw(36) << e.name << std::setw(7) << to_string(e.kind);
        if (e.error) {
          os << "error: " << *e.error << "\n";
          continue;
        }
        os << std::setw(16) << number(o.clamp ? e.clamped : e.value) << std::setw(16)
           << (e.exact_value ? format_rational(*e.exact_value) : "-")
           << (e.pass ? "ok" : "VIOLATION") << "\n";
      }
    }
    os << "\nviolations: " << violations << "\n";
  }
  return os.str();
}

int run_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty()) throw ValidationError("bounds needs --input");
  const Tolerances tol = tolerances_from_env();
  const auto pairs = param_pairs(o);
  const EventSystem sys = read_system_file(o.input);

  std::vector<Section> sections;
  CompareConfig config;
  config.tol = tol;
  config.params.clear();
  config.holder_p = o.holder;
  BoundReport head = compare_bounds(sys, config);
  const Rational exact = head.exact;
  sections.push_back({"comparators", std::nullopt, std::move(head.entries)});
  config.comparators = false;
  config.holder_p.clear();
  for (const auto& pair : pairs) {
    config.params = {pair};
    sections.push_back({params_label(pair.first, pair.second), pair,
                        compare_bounds(sys, config).entries});
  }
  if (!o.inject.empty()) corrupt(sections, o.inject, exact, tol);

  std::size_t violations = 0;
  for (const auto& s : sections)
    for (const auto& e : s.entries) {
      if (e.error) err << "warning: " << e.name << " not computed: " << *e.error << "\n";
      else if (!e.pass) ++violations;
    }
  emit(o, render_bounds(o, exact, sections, violations), out);
  if (violations > 0) {
    err << "error: " << violations << " bound(s) on the wrong side of P(U)\n";
    return violation;
  }
  return ok;
}

// ---- generate ---------------------------------------------------------------

int run_generate(const Options& o, std::ostream& out) {
  if (o.events < 1 || o.atoms < 1) throw ValidationError("--events and --atoms must be positive");
  const EventSystem sys = random_system(o.seed, o.events, o.atoms, parse_profile(o.profile));
  emit(o, dump_system(sys), out);
  return ok;
}

// ---- bc -----------------------------------------------------------------------

std::vector<long> horizon_grid(long n) {
  std::vector<long> grid;
  for (long scale = 1; scale <= n; scale *= 10) {
    for (long step : {1L, 2L, 5L}) {
      if (step * scale <= n) grid.push_back(step * scale);
    }
    if (scale > n / 10) break;
  }
  if (grid.empty() || grid.back() != n) grid.push_back(n);
  return grid;
}

int run_bc(const Options& o, bool n_given, std::ostream& out) {
  std::optional<EventSequenceModel> model;
  long n = o.n;
  if (o.model == "explicit") {
    if (o.input.empty()) throw ValidationError("--model explicit needs --input");
    model = EventSequenceModel::explicit_prefix(read_system_file(o.input));
    if (!n_given) n = model->horizon();
  } else if (o.model == "independent") {
    model = EventSequenceModel::identical(o.p, n);
  } else if (o.model == "geometric") {
    if (!(o.p >= 0.0 && o.p <= 1.0)) throw ValidationError("--p must lie in [0, 1]");
    const double base = o.p;
    model = EventSequenceModel::independent(
        [base](long k) { return std::pow(base, static_cast<double>(k)); }, n);
  } else {
    throw ValidationError("unknown model '" + o.model + "' (independent, geometric, explicit)");
  }
  if (n < 1) throw ValidationError("--n must be positive");
  if (o.m < 1) throw ValidationError("--m must be positive");

  ordered_json rows = ordered_json::array();
  for (long k : horizon_grid(n)) {
    ordered_json row;
    row["n"] = k;
    const BCEstimate lower = bc_lower_estimate(*model, k);
    row["lower"] = lower.value;
    row["lower_condition"] = lower.condition_value;
    if (o.m <= k) {
      const BCEstimate upper = bc_upper_estimate(*model, o.m, k);
      row["m"] = o.m;
      row["upper"] = upper.value;
      row["upper_condition"] = upper.condition_value;
      row["window_union_upper"] = *upper.window_union_upper;
    } else {
      row["m"] = o.m;
      row["upper"] = nullptr;
      row["upper_condition"] = nullptr;
      row["window_union_upper"] = nullptr;
    }
    try {
      row["ks_ratio"] = kochen_stone_ratio(*model, k);
    } catch (const DomainError&) {
      row["ks_ratio"] = nullptr;
    }
    rows.push_back(std::move(row));
  }

  static const char* columns[] = {"n",     "m",     "lower",           "lower_condition",
                                  "upper", "upper_condition", "window_union_upper", "ks_ratio"};
  const auto cell = [](const ordered_json& v) {
    if (v.is_null()) return std::string();
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    return number(v.get<double>());
  };
  std::ostringstream os;
  if (o.format == "json") {
    ordered_json doc;
    doc["model"] = o.model;
    if (o.model != "explicit") doc["p"] = o.p;
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << "\n";
  } else if (o.format == "csv") {
    for (std::size_t c = 0; c < std::size(columns); ++c) os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < std::size(columns); ++c) os << (c ? "," : "") << cell(row[columns[c]]);
      os << "\n";
    }
  } else {
    for (const char* c : columns) os << std::left << std::setw(20) << c;
    os << "\n";
    for (const auto& row : rows) {
      for (const char* c : columns) {
        const std::string text = cell(row[c]);
        os << std::left << std::setw(20) << (text.empty() ? "-" : text);
      }
      os << "\n";
    }
  }
  emit(o, os.str(), out);
  return ok;
}

// ---- selftest ---------------------------------------------------------------

int run_selftest(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances_from_env();
  const std::vector<std::pair<double, double>> params{{1, 1}, {2, 1}, {1, 2}, {0.5, 1.5}};
  const SuiteResult sandwich = sandwich_suite(o.seed, o.count, params, tol);
  const SuiteResult sharp = sharpness_suite(o.seed, o.count);

  std::ostringstream os;
  if (o.format == "json") {
    ordered_json doc;
    const auto suite = [](const SuiteResult& r) {
      ordered_json j;
      j["cases"] = r.cases;
      j["failures"] = r.failures;
      j["messages"] = r.messages;
      return j;
    };
    doc["sandwich"] = suite(sandwich);
    doc["sharpness"] = suite(sharp);
    os << doc.dump(2) << "\n";
  } else {
    os << "sandwich:  " << sandwich.cases << " checks over " << o.count << " systems, "
       << sandwich.failures << " violations\n";
    os << "sharpness: " << sharp.cases << " cases, " << sharp.failures << " failures\n";
    for (const auto& m : sandwich.messages) os << "  " << m << "\n";
    for (const auto& m : sharp.messages) os << "  " << m << "\n";
  }
  emit(o, os.str(), out);
  return sandwich.failures + sharp.failures == 0 ? ok : violation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Moment bounds for unions of events", "union_bounds"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"json", "csv", "table"});

  auto* bounds = app.add_subcommand("bounds", "compare every bound against the exact P(U)");
  bounds->add_option("--input", o.input, "event system JSON")->required();
  bounds->add_option("--output", o.output, "write here instead of stdout");
  bounds->add_option("--format", o.format)->check(formats)->capture_default_str();
  bounds->add_option("--a", o.a, "exponent a (repeatable)");
  bounds->add_option("--rho", o.rho, "exponent step rho (repeatable, paired with --a)");
  bounds->add_option("--holder", o.holder, "Holder comparator exponent p > 1 (repeatable)");
  bounds->add_flag("--clamp", o.clamp, "show values clamped into [0, 1]");
  bounds->add_option("--inject-violation", o.inject)->group("");

  auto* generate = app.add_subcommand("generate", "write a seeded random event system");
  generate->add_option("--seed", o.seed)->capture_default_str();
  generate->add_option("--events", o.events)->capture_default_str();
  generate->add_option("--atoms", o.atoms)->capture_default_str();
  generate->add_option("--profile", o.profile, "dense, sparse or disjoint-ish")->capture_default_str();
  generate->add_option("--output", o.output);

  auto* bc = app.add_subcommand("bc", "Borel-Cantelli estimates over a horizon grid");
  bc->add_option("--model", o.model, "independent, geometric (p_k = p^k) or explicit")
      ->capture_default_str();
  bc->add_option("--p", o.p)->capture_default_str();
  auto* n_option = bc->add_option("--n", o.n, "horizon")->capture_default_str();
  bc->add_option("--m", o.m, "window start for the upper estimate")->capture_default_str();
  bc->add_option("--input", o.input, "event system JSON for --model explicit");
  bc->add_option("--format", o.format)->check(formats)->capture_default_str();
  bc->add_option("--output", o.output);

  auto* selftest = app.add_subcommand("selftest", "run the sandwich and sharpness suites");
  selftest->add_option("--seed", o.seed)->capture_default_str();
  selftest->add_option("--count", o.count, "systems and sharpness cases")->capture_default_str();
  selftest->add_option("--format", o.format)->check(formats)->capture_default_str();
  selftest->add_option("--output", o.output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    if (bounds->parsed()) return run_bounds(o, out, err);
    if (generate->parsed()) return run_generate(o, out);
    if (bc->parsed()) return run_bc(o, n_option->count() > 0, out);
    if (selftest->parsed()) return run_selftest(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  }
  return input_error;
}

}  // namespace unionbounds::cli
