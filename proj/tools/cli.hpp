#pragma once

// Command-line front end. Kept in a header so the test suite can drive it
// in-process; tools/main.cpp only forwards argv.
//
// Exit codes: 0 success, 1 verification failure (mc-check), 2 invalid input
// or any library error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zador/a15.hpp"
#include "zador/io.hpp"
#include "zador/mc_oracle.hpp"
#include "zador/merit.hpp"
#include "zador/optimize.hpp"

namespace zador::cli {

enum class Format { Table, Json, Csv };

struct Request {
  std::string command;
  std::string preset;
  std::string file;
  std::optional<double> alpha;
  std::string merit = "variable";
  std::optional<double> lo, hi;
  double tol = 1e-8;
  long long samples = 1000000;
  double z_max = 4.0;
  std::uint64_t seed = 1;
  Format format = Format::Table;
};

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInvalid = 2;

namespace detail {

inline StructureDoc cubic_doc(int n) {
  StructureDoc doc;
  doc.dimension = n;
  doc.basis.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) doc.basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  doc.classes = {{"z", {std::vector<double>(static_cast<std::size_t>(n), 0.0)}}};
  return doc;
}

inline StructureDoc resolve_structure(const Request& req) {
  if (req.preset.empty() == req.file.empty())
    throw Error(ErrorKind::InvalidInput, "give exactly one of --preset or --file");
  if (!req.file.empty()) {
    std::ifstream in(req.file);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + req.file);
    ordered_json j;
    try {
      j = ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::InvalidInput, std::string("cannot parse ") + req.file + ": " + e.what());
    }
    StructureDoc doc = structure_doc_from_json(j);
    if (req.alpha) {
      if (!doc.parameter) throw Error(ErrorKind::InvalidInput, "--alpha given but the structure has no parameter");
      doc.parameter->value = *req.alpha;
    }
    return doc;
  }
  const std::string& p = req.preset;
  if (p == "a15") {
    const double alpha = req.alpha.value_or(1.25);
    check_a15_alpha(alpha);
    return a15_doc(alpha);
  }
  if (req.alpha) throw Error(ErrorKind::InvalidInput, "--alpha only applies to parameterized structures");
  if (p == "bcc") {
    StructureDoc doc = cubic_doc(3);
    doc.basis = {{4, 0, 0}, {0, 4, 0}, {0, 0, 4}};
    doc.classes = {{"bcc", {{0, 0, 0}, {2, 2, 2}}}};
    return doc;
  }
  if (p == "fcc") {
    StructureDoc doc = cubic_doc(3);
    doc.basis = {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    doc.classes = {{"fcc", {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}}};
    return doc;
  }
  if (p.size() == 2 && p[0] == 'z' && p[1] >= '1' && p[1] <= '4') return cubic_doc(p[1] - '0');
  throw Error(ErrorKind::InvalidInput, "unknown preset '" + p + "' (z1..z4, bcc, fcc, a15)");
}

// Parameter values outside the A15 validity range are rejected up front.
inline void check_parameter(const Request& req, double value) {
  if (req.preset == "a15") check_a15_alpha(value);
}

inline std::string fmt(double x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

inline std::string full(double x) { return fmt(x, std::numeric_limits<double>::max_digits10); }

struct Row {
  std::string key;
  double value;
};

inline void print_rows(std::ostream& out, Format f, const std::vector<Row>& rows) {
  if (f == Format::Csv) {
    out << "quantity,value\n";
    for (const auto& r : rows) out << r.key << ',' << full(r.value) << '\n';
    return;
  }
  for (const auto& r : rows) out << std::left << std::setw(26) << r.key << ' ' << fmt(r.value, 10) << '\n';
}

template <int N>
int analyze(const Request& req, const StructureDoc& doc, std::ostream& out) {
  if (doc.parameter) check_parameter(req, doc.parameter->value);
  const auto s = summarize(build_inventory(instantiate<N>(doc)));
  if (req.format == Format::Json) {
    out << summary_to_json(s).dump(2) << '\n';
    return kExitOk;
  }
  if (req.format == Format::Csv) {
    out << "label,multiplicity,volume,second_moment,probability\n";
    for (const auto& c : s.classes)
      out << c.label << ',' << c.multiplicity << ',' << full(c.volume) << ',' << full(c.second_moment) << ','
          << full(c.probability) << '\n';
    out << '\n';
  } else {
    out << "class                      N          V_i              U_i              p_i\n";
    for (const auto& c : s.classes)
      out << std::left << std::setw(26) << c.label << ' ' << std::setw(10) << c.multiplicity << ' ' << std::setw(16)
          << fmt(c.volume, 10) << ' ' << std::setw(16) << fmt(c.second_moment, 10) << ' ' << fmt(c.probability, 10)
          << '\n';
    out << '\n';
  }
  print_rows(out, req.format,
             {{"dimension", static_cast<double>(s.dimension)},
              {"tile_volume", s.tile_volume},
              {"cell_count", static_cast<double>(s.cell_count)},
              {"total_second_moment", s.total_second_moment},
              {"g_variable", s.g_variable},
              {"g_fixed", s.g_fixed},
              {"ratio", s.ratio},
              {"entropy_bits", s.rate.entropy_bits},
              {"index_bits", s.rate.index_bits},
              {"rate_bits_per_dim", s.rate.rate},
              {"covering_radius", s.covering.radius},
              {"thickness", s.covering.thickness}});
  return kExitOk;
}

template <int N>
int covering_cmd(const Request& req, const StructureDoc& doc, std::ostream& out) {
  if (doc.parameter) check_parameter(req, doc.parameter->value);
  const auto c = covering(build_inventory(instantiate<N>(doc)));
  if (req.format == Format::Json) {
    ordered_json j = {{"schema_version", kSchemaVersion}, {"covering_radius", c.radius}, {"thickness", c.thickness}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  print_rows(out, req.format, {{"covering_radius", c.radius}, {"thickness", c.thickness}});
  return kExitOk;
}

template <int N>
int optimize_cmd(const Request& req, const StructureDoc& doc, std::ostream& out) {
  if (!doc.parameter) throw Error(ErrorKind::InvalidInput, "optimize needs a structure with a scalar parameter");
  const double lo = req.lo.value_or(doc.parameter->lo);
  const double hi = req.hi.value_or(doc.parameter->hi);
  check_parameter(req, lo);
  check_parameter(req, hi);
  std::function<double(double)> objective;
  if (req.merit == "fixed") {
    objective = [&](double t) { return g_fixed(build_inventory(instantiate<N>(doc, t))); };
  } else if (req.merit == "variable") {
    objective = [&](double t) { return g_variable(build_inventory(instantiate<N>(doc, t))); };
  } else if (req.merit == "thickness") {
    objective = [&](double t) { return covering(build_inventory(instantiate<N>(doc, t))).thickness; };
  } else {
    throw Error(ErrorKind::InvalidInput, "--merit must be fixed, variable or thickness");
  }
  const auto r = minimize_scalar(objective, lo, hi, {req.tol, 200});
  if (req.format == Format::Json) {
    ordered_json j = {{"schema_version", kSchemaVersion}, {"parameter", doc.parameter->name},
                      {"merit", req.merit},               {"argmin", r.argmin},
                      {"min_value", r.min_value},         {"evaluations", r.evaluations},
                      {"converged", r.converged}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  print_rows(out, req.format,
             {{"argmin_" + doc.parameter->name, r.argmin},
              {"min_" + req.merit, r.min_value},
              {"evaluations", static_cast<double>(r.evaluations)}});
  return kExitOk;
}

template <int N>
int mc_check(const Request& req, const StructureDoc& doc, std::ostream& out) {
  if (doc.parameter) check_parameter(req, doc.parameter->value);
  const auto inv = build_inventory(instantiate<N>(doc));
  const auto s = summarize(inv);
  const auto e = estimate(inv, req.samples, req.seed);

  struct Check {
    std::string quantity;
    double exact, estimate, se, z;
  };
  std::vector<Check> checks;
  auto add = [&](const std::string& q, double exact, double est, double se) {
    checks.push_back({q, exact, est, se, z_score(exact, est, se)});
  };
  for (std::size_t i = 0; i < s.classes.size(); ++i) {
    const auto& c = s.classes[i];
    const auto& m = e.classes[i];
    add("p[" + c.label + "]", c.probability, m.probability, m.probability_se);
    add("V[" + c.label + "]", c.volume, m.volume, m.volume_se);
    add("U[" + c.label + "]", c.second_moment, m.second_moment, m.second_moment_se);
  }
  add("g_variable", s.g_variable, e.g_variable, e.g_variable_se);
  add("g_fixed", s.g_fixed, e.g_fixed, e.g_fixed_se);

  bool ok = true;
  for (const auto& c : checks) ok = ok && std::abs(c.z) <= req.z_max;
  const bool radius_ok = e.covering_radius <= s.covering.radius * (1.0 + 1e-9);
  ok = ok && radius_ok;

  if (req.format == Format::Json) {
    ordered_json rows = ordered_json::array();
    for (const auto& c : checks)
      rows.push_back({{"quantity", c.quantity}, {"exact", c.exact}, {"estimate", c.estimate}, {"se", c.se},
                      {"z", std::isfinite(c.z) ? ordered_json(c.z) : ordered_json(nullptr)}});
    ordered_json j = {{"schema_version", kSchemaVersion},
                      {"samples", e.samples},
                      {"seed", e.seed},
                      {"checks", rows},
                      {"covering_radius", {{"exact", s.covering.radius}, {"observed_max", e.covering_radius}}},
                      {"pass", ok}};
    out << j.dump(2) << '\n';
  } else if (req.format == Format::Csv) {
    out << "quantity,exact,estimate,se,z\n";
    for (const auto& c : checks)
      out << c.quantity << ',' << full(c.exact) << ',' << full(c.estimate) << ',' << full(c.se) << ',' << full(c.z) << '\n';
    out << "covering_radius," << full(s.covering.radius) << ',' << full(e.covering_radius) << ",,\n";
  } else {
    out << "samples " << e.samples << ", seed " << e.seed << '\n';
    out << std::left << std::setw(16) << "quantity" << std::setw(18) << "exact" << std::setw(18) << "estimate"
        << std::setw(18) << "std.err" << "z\n";
    for (const auto& c : checks)
      out << std::left << std::setw(16) << c.quantity << std::setw(18) << fmt(c.exact, 10) << std::setw(18)
          << fmt(c.estimate, 10) << std::setw(18) << fmt(c.se, 10) << fmt(c.z, 3) << '\n';
    out << std::left << std::setw(16) << "covering_R" << std::setw(18) << fmt(s.covering.radius, 10)
        << std::setw(18) << fmt(e.covering_radius, 10) << (radius_ok ? "(max observed <= exact)" : "(EXCEEDS exact)")
        << '\n';
    out << (ok ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitOk : kExitVerificationFailed;
}

template <int N>
int dispatch(const Request& req, const StructureDoc& doc, std::ostream& out) {
  if (req.command == "analyze") return analyze<N>(req, doc, out);
  if (req.command == "covering") return covering_cmd<N>(req, doc, out);
  if (req.command == "optimize") return optimize_cmd<N>(req, doc, out);
  return mc_check<N>(req, doc, out);
}

}  // namespace detail

inline int run(const Request& req, std::ostream& out, std::ostream& err) {
  try {
    const StructureDoc doc = detail::resolve_structure(req);
    switch (doc.dimension) {
      case 1: return detail::dispatch<1>(req, doc, out);
      case 2: return detail::dispatch<2>(req, doc, out);
      case 3: return detail::dispatch<3>(req, doc, out);
      case 4: return detail::dispatch<4>(req, doc, out);
      default: throw Error(ErrorKind::InvalidInput, "supported dimensions are 1 to 4");
    }
  } catch (const Error& e) {
    if (req.format == Format::Json) {
      ordered_json j = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
      err << j.dump() << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
    return kExitInvalid;
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zador coefficients, covering radius and thickness of periodic tiling quantizers"};
  app.require_subcommand(1);
  Request req;
  std::string format = "table";
  std::optional<double> alpha, lo, hi;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--preset", req.preset, "z1..z4, bcc, fcc or a15");
    sub->add_option("--file", req.file, "structure JSON file");
    sub->add_option("--alpha", alpha, "value of the structure's scalar parameter (A15 alpha)");
    sub->add_option("--format", format, "table, json or csv")->check(CLI::IsMember({"table", "json", "csv"}));
  };
  auto* analyze = app.add_subcommand("analyze", "cell inventory, both merits, rate terms and covering");
  auto* cover = app.add_subcommand("covering", "covering radius and thickness");
  auto* optimize = app.add_subcommand("optimize", "minimize a merit over the structure's scalar parameter");
  auto* mc = app.add_subcommand("mc-check", "compare exact values against a Monte Carlo estimate");
  for (auto* sub : {analyze, cover, optimize, mc}) add_source(sub);
  optimize->add_option("--merit", req.merit, "fixed, variable or thickness")
      ->check(CLI::IsMember({"fixed", "variable", "thickness"}));
  optimize->add_option("--lo", lo, "lower end of the search bracket");
  optimize->add_option("--hi", hi, "upper end of the search bracket");
  optimize->add_option("--tol", req.tol, "bracket width at which the search stops");
  mc->add_option("--samples", req.samples, "number of uniform samples");
  mc->add_option("--seed", req.seed, "random seed");
  mc->add_option("--z-max", req.z_max, "largest accepted |z| (default 4)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  for (auto* sub : {analyze, cover, optimize, mc})
    if (sub->parsed()) req.command = sub->get_name();
  req.alpha = alpha;
  req.lo = lo;
  req.hi = hi;
  req.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;
  return run(req, out, err);
}

}  // namespace zador::cli
