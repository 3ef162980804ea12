// torex: exact verification of shear-expansion bounds on the torus, the
// plane, and the mod-p shear graph. Subcommands: verify, sweep, discrete,
// plane. All machine output (CSV/JSON) uses exact "p/q" rationals; decimal
// values appear only in human text and are labeled approximate.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "torex/torex.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

constexpr int kSchemaVersion = 1;

std::string approx(const torex::Rational& r) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed << torex::to_double(r);
  return os.str();
}

std::string frac(const torex::Rational& r) {
  return torex::to_fraction_string(r);
}

/// Collects pass/fail lines, prints them as they come, and remembers the
/// JSON form and overall verdict.
struct CheckList {
  bool all_passed = true;
  int count = 0;
  nlohmann::json entries = nlohmann::json::array();

  void add(const std::string& name, bool ok, const std::string& detail) {
    all_passed = all_passed && ok;
    ++count;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << " — " << detail
              << "\n";
    entries.push_back(
        {{"name", name}, {"passed", ok}, {"detail", detail}});
  }

  void info(const std::string& name, const std::string& detail) {
    std::cout << "[info] " << name << " — " << detail << "\n";
    entries.push_back(
        {{"name", name}, {"passed", nullptr}, {"detail", detail}});
  }
};

void write_text_file(const std::string& path, const std::string& body,
                     const char* what) {
  std::ofstream out(path);
  if (!out) throw torex::DataError(std::string("cannot write ") + what +
                                   " file: " + path);
  out << body;
}

void write_json_file(const std::string& path, const nlohmann::json& doc) {
  write_text_file(path, doc.dump(2) + "\n", "JSON");
}

struct McOptions {
  unsigned long long samples = 1000000;
  std::uint64_t seed = 0;
  bool skip = false;
};

const char* verdict_name(torex::OracleVerdict v) {
  switch (v) {
    case torex::OracleVerdict::consistent: return "consistent";
    case torex::OracleVerdict::flagged: return "flagged";
    default: return "failed";
  }
}

/// Runs one oracle comparison, prints it, folds it into the checklist
/// (flagged counts as a pass), and returns its JSON record.
nlohmann::json run_oracle_check(const std::string& name,
                                const torex::Rational& exact,
                                const torex::ImplicitSet& set,
                                const McOptions& mc, CheckList& checks) {
  torex::EstimateResult est =
      torex::estimate_measure(set, mc.samples, mc.seed);
  torex::OracleCheck oc = torex::check_against_exact(exact, est);
  std::ostringstream detail;
  detail.precision(6);
  detail << std::fixed << "estimate " << est.estimate << " vs exact "
         << frac(exact) << " ≈ " << oc.exact_value << " (";
  detail.precision(2);
  detail << oc.sigmas << " sigma, n=" << est.sample_count << ")";
  bool ok = oc.verdict != torex::OracleVerdict::failed;
  checks.add("oracle: " + name,
             ok,
             detail.str() + (oc.verdict == torex::OracleVerdict::flagged
                                 ? " [flagged: between 3 and 4 sigma]"
                                 : ""));
  return nlohmann::json{{"name", name},
                        {"exact", frac(exact)},
                        {"exact_approx", oc.exact_value},
                        {"estimate", est.estimate},
                        {"std_error", est.std_error},
                        {"sigmas", oc.sigmas},
                        {"hits", est.hits},
                        {"samples", est.sample_count},
                        {"seed", est.seed},
                        {"verdict", verdict_name(oc.verdict)}};
}

std::vector<torex::ReportRow> report_rows(const torex::ExpansionReport& r) {
  auto row = [&](const char* construction, const char* generators,
                 const torex::Rational& m, const torex::Rational& u,
                 const torex::Rational& ratio, const torex::Rational& bound,
                 const torex::Rational& margin) {
    return torex::ReportRow{construction, generators, r.epsilon, m, u,
                            ratio,        bound,      margin,  margin > 0};
  };
  return {row("cross", "symmetric", r.cross_measure, r.cross_union,
              r.cross_ratio, r.cross_bound, r.cross_margin),
          row("cross-antidiag", "forward", r.antidiag_measure,
              r.antidiag_union, r.antidiag_ratio, r.antidiag_bound,
              r.antidiag_margin),
          row("cross-shifted", "symmetric", r.shifted_measure,
              r.shifted_union, r.shifted_ratio, r.shifted_bound,
              r.shifted_margin)};
}

void print_rows(const std::vector<torex::ReportRow>& rows) {
  std::cout << "  construction     generators  epsilon   measure     union     "
               "  ratio      bound       margin\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line << "  " << r.construction;
    for (std::size_t i = r.construction.size(); i < 17; ++i) line << ' ';
    line << r.generators;
    for (std::size_t i = r.generators.size(); i < 12; ++i) line << ' ';
    for (const auto* v : {&r.epsilon, &r.m_A, &r.m_union, &r.ratio, &r.bound,
                          &r.margin}) {
      std::string f = frac(*v);
      line << f;
      for (std::size_t i = f.size(); i < 12; ++i) line << ' ';
    }
    std::cout << line.str() << "\n";
  }
}

int cmd_verify(const std::string& eps_text, const McOptions& mc,
               const std::string& json_path, const std::string& csv_path) {
  auto eps_opt = torex::parse_rational(eps_text);
  if (!eps_opt) {
    std::cerr << "error: --epsilon must be a rational like 1/10\n";
    return kExitUsage;
  }
  if (*eps_opt <= 0 || *eps_opt > torex::Rational(1) / 8) {
    std::cerr << "error: epsilon " << eps_text
              << " is outside the validated range (0, 1/8]\n";
    return kExitUsage;
  }
  torex::Epsilon eps(*eps_opt);
  const torex::Rational& e = eps.value();

  torex::ExpansionReport rep = torex::closed_form_report(eps);
  std::cout << "exact verification at epsilon = " << frac(e) << "\n\n";
  std::vector<torex::ReportRow> rows = report_rows(rep);
  print_rows(rows);
  std::cout << "\n";

  CheckList checks;
  checks.add("cross measure equals closed form 4e-4e^2",
             rep.cross_measure == torex::cross_measure_form(e),
             frac(rep.cross_measure) + " (engine = form)");
  checks.add("cross-antidiag measure equals closed form 6e-9e^2",
             rep.antidiag_measure == torex::cross_antidiag_measure_form(e),
             frac(rep.antidiag_measure) + " (engine = form)");
  checks.add("cross union equals closed form 8e-16e^2",
             rep.cross_union == torex::four_strip_union_form(e),
             frac(rep.cross_union) + " (engine = form)");
  checks.add("cross-antidiag union equals closed form 8e-16e^2",
             rep.antidiag_union == torex::four_strip_union_form(e),
             frac(rep.antidiag_union) + " (engine = form)");
  checks.add("cross expansion beats the conjectured bound 2*m",
             rep.cross_margin > 0,
             "union " + frac(rep.cross_union) + " < bound " +
                 frac(rep.cross_bound) + " (margin " + frac(rep.cross_margin) +
                 " = 8e^2)");
  checks.add("cross-antidiag expansion beats the conjectured bound (4/3)*m",
             rep.antidiag_margin > 0,
             "union " + frac(rep.antidiag_union) + " < bound " +
                 frac(rep.antidiag_bound) + " (margin " +
                 frac(rep.antidiag_margin) + " = 4e^2)");
  checks.add("shifted cross keeps the cross measure",
             rep.shifted_measure == rep.cross_measure,
             frac(rep.shifted_measure) + " (translation invariance)");
  checks.add("shifted cross expansion ratio stays below 2",
             rep.shifted_ratio < 2,
             frac(rep.shifted_ratio) + " ≈ " + approx(rep.shifted_ratio) +
                 " (union " + frac(rep.shifted_union) + " = 8e-20e^2)");
  checks.add("shifted cross support clears the origin",
             torex::shifted_support_clears_origin(eps),
             "disjoint from the open sup-norm ball of radius 1/2-e = " +
                 frac(torex::Rational(1) / 2 - e));
  checks.add("forward images of cross-antidiag add the single other diagonal",
             torex::forward_images_add_single_diagonal(eps),
             "image set = cross + {dist(x-y,Z) <= e} (symmetric difference 0)");

  torex::MixedPairing mixed = torex::cross_antidiag_under_symmetric(eps);
  checks.info(
      "cross-antidiag under symmetric shears (reported, not asserted)",
      "union " + frac(mixed.union_measure) + " vs (4/3)*cross measure " +
          frac(mixed.bound) +
          (mixed.below_bound ? " — below bound" : " — exceeds bound"));

  nlohmann::json mc_json = nullptr;
  if (!mc.skip) {
    const torex::GeneratorSet sym = torex::GeneratorSet::symmetric_shears();
    const torex::GeneratorSet fwd = torex::GeneratorSet::forward_shears();
    const torex::ImplicitSet cross = torex::implicit_cross(e);
    const torex::ImplicitSet cd = torex::implicit_cross_antidiag(e);
    const torex::ImplicitSet shifted = torex::implicit_cross_shifted(e);
    nlohmann::json entries = nlohmann::json::array();
    entries.push_back(run_oracle_check("cross measure", rep.cross_measure,
                                       cross, mc, checks));
    entries.push_back(run_oracle_check(
        "cross union", rep.cross_union,
        torex::implicit_expansion_union(sym, cross), mc, checks));
    entries.push_back(run_oracle_check("cross-antidiag measure",
                                       rep.antidiag_measure, cd, mc, checks));
    entries.push_back(run_oracle_check(
        "cross-antidiag union", rep.antidiag_union,
        torex::implicit_expansion_union(fwd, cd), mc, checks));
    entries.push_back(run_oracle_check("shifted measure", rep.shifted_measure,
                                       shifted, mc, checks));
    entries.push_back(run_oracle_check(
        "shifted union", rep.shifted_union,
        torex::implicit_expansion_union(sym, shifted), mc, checks));
    mc_json = nlohmann::json{{"samples", mc.samples},
                             {"seed", mc.seed},
                             {"checks", entries}};
  }

  std::cout << "\nverify: " << (checks.all_passed ? "all " : "FAILURES among ")
            << checks.count << " checks"
            << (checks.all_passed ? " passed" : "") << "\n";

  if (!csv_path.empty()) {
    std::ostringstream os;
    torex::write_csv(rows, os);
    write_text_file(csv_path, os.str(), "CSV");
  }
  if (!json_path.empty()) {
    nlohmann::json doc{{"schema_version", kSchemaVersion},
                       {"command", "verify"},
                       {"epsilon", frac(e)},
                       {"rows", torex::rows_to_json(rows)},
                       {"checks", checks.entries},
                       {"mixed_pairing",
                        {{"union", frac(mixed.union_measure)},
                         {"bound", frac(mixed.bound)},
                         {"below_bound", mixed.below_bound}}},
                       {"monte_carlo", mc_json},
                       {"passed", checks.all_passed}};
    write_json_file(json_path, doc);
  }
  return checks.all_passed ? kExitSuccess : kExitCheckFailure;
}

int cmd_sweep(const std::string& eps_list, const std::string& start_text,
              int count, const std::string& json_path,
              const std::string& csv_path) {
  std::vector<torex::Rational> values;
  if (!eps_list.empty() && (count > 0 || !start_text.empty())) {
    std::cerr << "error: give either --epsilons or --start/--count, not both\n";
    return kExitUsage;
  }
  if (!eps_list.empty()) {
    std::stringstream ss(eps_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto r = torex::parse_rational(item);
      if (!r) {
        std::cerr << "error: bad rational '" << item << "' in --epsilons\n";
        return kExitUsage;
      }
      values.push_back(*r);
    }
  } else if (!start_text.empty()) {
    if (count < 1) {
      std::cerr << "error: --count must be at least 1\n";
      return kExitUsage;
    }
    auto r = torex::parse_rational(start_text);
    if (!r) {
      std::cerr << "error: --start must be a rational like 1/10\n";
      return kExitUsage;
    }
    torex::Rational v = *r;
    for (int i = 0; i < count; ++i, v /= 2) values.push_back(v);
  } else {
    std::cerr << "error: sweep needs --epsilons or --start/--count\n";
    return kExitUsage;
  }
  for (const auto& v : values) {
    if (v <= 0 || v > torex::Rational(1) / 8) {
      std::cerr << "error: epsilon " << frac(v)
                << " is outside the validated range (0, 1/8]\n";
      return kExitUsage;
    }
  }

  std::vector<torex::ReportRow> rows;
  for (const auto& v : values) {
    torex::ExpansionReport rep = torex::closed_form_report(torex::Epsilon(v));
    for (auto& row : report_rows(rep)) rows.push_back(std::move(row));
  }

  bool all_passed = true;
  for (const auto& r : rows) all_passed = all_passed && r.passed;

  if (!csv_path.empty()) {
    std::ostringstream os;
    torex::write_csv(rows, os);
    write_text_file(csv_path, os.str(), "CSV");
    std::cout << "sweep: wrote " << rows.size() << " rows to " << csv_path
              << "\n";
  } else {
    torex::write_csv(rows, std::cout);
  }
  if (!json_path.empty()) {
    write_json_file(json_path,
                    nlohmann::json{{"schema_version", kSchemaVersion},
                                   {"command", "sweep"},
                                   {"rows", torex::rows_to_json(rows)},
                                   {"passed", all_passed}});
  }
  return all_passed ? kExitSuccess : kExitCheckFailure;
}

int cmd_discrete(int p, const std::string& mode_text,
                 const std::string& set_choice, const std::string& set_file,
                 const std::string& json_path) {
  if (p < 3 || !torex::is_prime(p)) {
    std::cerr << "error: --p must be an odd prime (got " << p << ")\n";
    return kExitUsage;
  }
  torex::Mode mode = mode_text == "directed" ? torex::Mode::directed
                                             : torex::Mode::undirected;
  torex::ModularGraph g(p, mode);

  torex::VertexSet a = torex::build_cross_set(g);
  std::string set_name = "cross";
  bool named_expectation = mode == torex::Mode::undirected;
  torex::Rational bound =
      mode == torex::Mode::undirected ? torex::Rational(2)
                                      : torex::Rational(4) / 3;
  if (!set_file.empty()) {
    set_name = "custom:" + set_file;
    named_expectation = false;
    std::vector<torex::Vertex> members;
    for (const auto& [x, y] : torex::load_vertex_file(set_file)) {
      if (x < 0 || x >= p || y < 0 || y >= p)
        throw torex::DataError("vertex (" + std::to_string(x) + "," +
                               std::to_string(y) +
                               ") is not reduced mod " + std::to_string(p));
      if (x == 0 && y == 0)
        throw torex::DataError("the origin (0,0) is not a vertex");
      members.push_back({static_cast<int>(x), static_cast<int>(y)});
    }
    a = torex::VertexSet::from_members(p, members);
  } else if (set_choice == "cross-antidiag") {
    a = torex::set_union(a, torex::build_antidiag_set(g));
    set_name = "cross-antidiag";
    named_expectation = mode == torex::Mode::directed;
  }

  torex::VertexSet nbhd = torex::closed_neighborhood(g, a);
  torex::Rational ratio = torex::vertex_expansion_ratio(g, a);
  bool equality = ratio == bound;

  std::cout << "mod-" << p << " shear graph ("
            << (mode == torex::Mode::directed ? "directed" : "undirected")
            << "), set " << set_name << "\n";
  std::cout << "  |A|             = " << a.size() << "\n";
  std::cout << "  |A u N(A)|      = " << nbhd.size() << "\n";
  std::cout << "  expansion ratio = " << frac(ratio) << " ≈ " << approx(ratio)
            << "\n";
  std::cout << "  bound           = " << frac(bound) << " — "
            << (equality ? "equality"
                         : (ratio > bound ? "above bound" : "below bound"))
            << "\n";

  bool passed = true;
  if (named_expectation) {
    passed = equality;
    std::cout << (passed ? "[PASS] " : "[FAIL] ")
              << "named set meets its bound with equality\n";
  } else {
    std::cout << "[info] no equality expectation for this set/mode; "
                 "reported only\n";
  }

  if (!json_path.empty()) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& [x, y] : a.members())
      members.push_back(nlohmann::json::array({x, y}));
    write_json_file(
        json_path,
        nlohmann::json{{"schema_version", kSchemaVersion},
                       {"command", "discrete"},
                       {"p", p},
                       {"mode", mode_text},
                       {"set", set_name},
                       {"set_size", a.size()},
                       {"neighborhood_size", nbhd.size()},
                       {"ratio", frac(ratio)},
                       {"bound", frac(bound)},
                       {"equality", equality},
                       {"expectation_checked", named_expectation},
                       {"members", members},
                       {"passed", passed}});
  }
  return passed ? kExitSuccess : kExitCheckFailure;
}

int cmd_plane(const std::string& polygons_path,
              const std::string& generators_text,
              const std::string& json_path) {
  torex::RegionSet region = torex::load_polygon_file(polygons_path);
  torex::GeneratorSet gens = generators_text == "forward"
                                 ? torex::GeneratorSet::forward_shears()
                                 : torex::GeneratorSet::symmetric_shears();
  torex::Rational bound = generators_text == "forward"
                              ? torex::Rational(4) / 3
                              : torex::Rational(2);
  torex::Rational m = region.measure();
  torex::Rational ratio = torex::expansion_ratio_plane(gens, region);
  bool respected = ratio >= bound;

  std::cout << "plane expansion of " << polygons_path << " under "
            << gens.name() << " shears\n";
  std::cout << "  measure = " << frac(m) << ", union = "
            << frac(ratio * m) << ", ratio = " << frac(ratio) << " ≈ "
            << approx(ratio) << "\n";
  std::cout << "  bound " << frac(bound) << ": "
            << (respected ? "respected" : "VIOLATED") << "\n";
  if (!respected)
    std::cout << "ENGINE BUG: the plane bound is a theorem; a violation "
                 "means the geometry engine miscomputed, not a discovery\n";

  if (!json_path.empty()) {
    write_json_file(json_path,
                    nlohmann::json{{"schema_version", kSchemaVersion},
                                   {"command", "plane"},
                                   {"polygons", polygons_path},
                                   {"generators", gens.name()},
                                   {"measure", frac(m)},
                                   {"union", frac(ratio * m)},
                                   {"ratio", frac(ratio)},
                                   {"bound", frac(bound)},
                                   {"respected", respected}});
  }
  return respected ? kExitSuccess : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "torex — exact expansion checks for shear actions on the torus, the "
      "plane, and mod-p graphs"};
  app.require_subcommand(1);

  std::string eps_text, json_path, csv_path;
  McOptions mc;
  CLI::App* verify =
      app.add_subcommand("verify", "verify all bound checks at one epsilon");
  verify->add_option("--epsilon", eps_text, "strip half-width, rational in (0, 1/8]")
      ->required();
  verify->add_option("--json", json_path, "write a JSON report to this path");
  verify->add_option("--csv", csv_path, "write the report rows as CSV");
  verify->add_option("--mc-samples", mc.samples,
                     "Monte Carlo sample count (default 1000000)");
  verify->add_option("--mc-seed", mc.seed, "Monte Carlo seed (default 0)");
  verify->add_flag("--no-mc", mc.skip, "skip the Monte Carlo oracle");

  std::string sweep_eps_list, sweep_start;
  int sweep_count = 0;
  std::string sweep_json, sweep_csv;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "emit report rows for a list or halving range of epsilons");
  sweep->add_option("--epsilons", sweep_eps_list,
                    "comma-separated rationals, e.g. 1/10,1/20,1/50");
  sweep->add_option("--start", sweep_start,
                    "first epsilon of a halving range");
  sweep->add_option("--count", sweep_count,
                    "number of halvings from --start (including it)");
  sweep->add_option("--json", sweep_json, "write a JSON report to this path");
  sweep->add_option("--csv", sweep_csv,
                    "write CSV to this path instead of stdout");

  int p = 0;
  std::string mode_text = "undirected", set_choice = "cross", set_file;
  std::string discrete_json;
  CLI::App* discrete = app.add_subcommand(
      "discrete", "vertex expansion on the mod-p shear graph");
  discrete->add_option("--p", p, "odd prime modulus")->required();
  discrete->add_option("--mode", mode_text, "undirected (default) or directed")
      ->check(CLI::IsMember({"undirected", "directed"}));
  auto* set_opt = discrete->add_option(
      "--set", set_choice, "named vertex set: cross or cross-antidiag");
  set_opt->check(CLI::IsMember({"cross", "cross-antidiag"}));
  discrete->add_option("--set-file", set_file,
                       "custom vertex set file (lines of 'x y')")
      ->excludes(set_opt);
  discrete->add_option("--json", discrete_json,
                       "write a JSON report to this path");

  std::string polygons_path, generators_text = "symmetric", plane_json;
  CLI::App* plane = app.add_subcommand(
      "plane", "plane expansion ratio of a polygon file (no wrap-around)");
  plane->add_option("--polygons", polygons_path, "polygon file")->required();
  plane->add_option("--generators", generators_text,
                    "symmetric (default) or forward")
      ->check(CLI::IsMember({"symmetric", "forward"}));
  plane->add_option("--json", plane_json, "write a JSON report to this path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (verify->parsed())
      return cmd_verify(eps_text, mc, json_path, csv_path);
    if (sweep->parsed())
      return cmd_sweep(sweep_eps_list, sweep_start, sweep_count, sweep_json,
                       sweep_csv);
    if (discrete->parsed())
      return cmd_discrete(p, mode_text, set_choice, set_file, discrete_json);
    if (plane->parsed())
      return cmd_plane(polygons_path, generators_text, plane_json);
  } catch (const torex::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::logic_error& e) {
    std::cerr << "ENGINE BUG: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
