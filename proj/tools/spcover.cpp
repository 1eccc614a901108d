// Command-line front end: covering radius of code files, catalog export and
// verification, local optimization and the radius approximation.
#include "spcover/approx.hpp"
#include "spcover/catalog.hpp"
#include "spcover/io.hpp"
#include "spcover/optimize.hpp"
#include "spcover/voronoi.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace spcover;

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string deg10(double rad) { return fixed(rad_to_deg(rad), 10); }

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_text_file(out_path, text);
}

// ---- radius

struct RadiusArgs {
  std::string file;
  std::string format = "auto";
  bool full = false;
};

int cmd_radius(const RadiusArgs& a) {
  const SphericalCode code = read_code_file(a.file, parse_format_name(a.format));
  const CoveringResult r = covering_radius(code);
  std::cout << deg10(r.cap.angular_radius) << '\n';
  if (a.full) {
    std::cout << "radians " << format_coord(r.cap.angular_radius) << '\n'
              << "height " << format_coord(r.cap.height) << '\n'
              << "witness " << format_coord(r.witness_vertex.x()) << ' ' << format_coord(r.witness_vertex.y())
              << ' ' << format_coord(r.witness_vertex.z()) << '\n'
              << "caps";
    for (int c : r.witness_caps) std::cout << ' ' << c + 1;
    std::cout << '\n';
  }
  return 0;
}

// ---- catalog / export

struct CatalogArgs {
  std::size_t n = 0;
  std::string format = "xyz";
  std::string out;
  std::string circles;
};

int cmd_catalog(const CatalogArgs& a) {
  const CatalogEntry& e = catalog_entry(a.n);
  const SphericalCode code = build_code(e);
  const CodeFormat f = parse_format_name(a.format);
  emit(f == CodeFormat::Json ? emit_entry_json(e, code) : emit_code(code, f), a.out);
  if (!a.circles.empty())
    write_text_file(a.circles, emit_circles(code, covering_radius(code).cap.angular_radius));
  return 0;
}

struct ExportArgs {
  std::string plot;
  std::string out;
};

int cmd_export(const ExportArgs& a) {
  if (a.plot != "radius-vs-n") throw DomainError("unknown plot '" + a.plot + "'");
  std::ostringstream os;
  os << "n,catalog_radius_deg,approx_radius_deg\n";
  const auto& sizes = catalog_sizes();
  for (int n = 2; n <= ApproxCoefficients::kMaxN; ++n) {
    os << n << ',';
    if (std::find(sizes.begin(), sizes.end(), static_cast<std::size_t>(n)) != sizes.end())
      os << deg10(covering_radius(build_code(catalog_entry(n))).cap.angular_radius);
    os << ',';
    if (n >= ApproxCoefficients::kMinN) os << deg10(approx_radius(n));
    os << '\n';
  }
  emit(os.str(), a.out);
  return 0;
}

// ---- verify

struct VerifyArgs {
  std::size_t n = 0;
  bool all = false;
  double tol = 1e-10;
  bool json = false;
};

int cmd_verify(const VerifyArgs& a) {
  std::vector<std::size_t> sizes;
  if (a.all)
    sizes = catalog_sizes();
  else
    sizes.push_back(a.n);
  for (std::size_t n : sizes) catalog_entry(n);  // NotInCatalog before any output

  bool ok = true;
  nlohmann::json reports = nlohmann::json::array();
  for (std::size_t n : sizes) {
    const VerificationReport r = verify_entry(catalog_entry(n), a.tol);
    ok = ok && r.passed();
    if (a.json) {
      nlohmann::json jr{{"n", n}, {"passed", r.passed()}, {"checks", nlohmann::json::array()}};
      for (const Check& c : r.checks)
        jr["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"residual", c.residual}, {"detail", c.detail}});
      reports.push_back(jr);
      continue;
    }
    std::cout << "n=" << n << ' ' << (r.passed() ? "PASS" : "FAIL") << '\n';
    for (const Check& c : r.checks) {
      char res[32];
      std::snprintf(res, sizeof res, "%.3g", c.residual);
      std::cout << "  " << (c.passed ? "ok  " : "FAIL") << "  " << c.name << "  " << res;
      if (!c.detail.empty()) std::cout << "  " << c.detail;
      std::cout << '\n';
    }
  }
  if (a.json) std::cout << reports.dump(2) << '\n';
  return ok ? 0 : 1;
}

// ---- check-table

const char* marker(Status s) {
  switch (s) {
    case Status::LocalMinimum: return "+";
    case Status::NeedsInvestigation: return "*";
    case Status::NewLowerValue: return "<";
    default: return "";
  }
}

int cmd_check_table(bool csv) {
  constexpr double kTableTol = 1e-8;
  bool ok = true;
  std::ostringstream os;
  if (csv)
    os << "n,reference_deg,table_deg,computed_deg,status\n";
  else
    os << "   n  reference    table            computed          status\n";
  for (const CrossCheckRow& r : cross_check_table()) {
    const bool row_ok = std::abs(r.computed_deg - r.table_deg) <= kTableTol;
    ok = ok && row_ok;
    const std::string ref = r.reference_deg ? fixed(*r.reference_deg, 6) : "";
    if (csv) {
      os << r.n << ',' << ref << ',' << fixed(r.table_deg, 10) << ',' << fixed(r.computed_deg, 10) << ','
         << to_string(r.status) << '\n';
    } else {
      char line[160];
      std::snprintf(line, sizeof line, "%4zu  %-10s  %-15s  %-15s %-1s %s%s\n", r.n, ref.c_str(),
                    fixed(r.table_deg, 10).c_str(), fixed(r.computed_deg, 10).c_str(), marker(r.status),
                    to_string(r.status), row_ok ? "" : "  MISMATCH");
      os << line;
    }
  }
  if (!csv) os << "\n+ local minimum   * needs investigation   < new lower value\n";
  std::cout << os.str();
  return ok ? 0 : 1;
}

// ---- optimize

struct OptimizeArgs {
  std::string file;
  std::string format = "auto";
  std::string scheme;
  std::string rule = "minimax";
  std::size_t iters = 500;
  double tol = 1e-12;
  double perturb = 0.0;
  std::uint64_t seed = 0;
  std::size_t starts = 1;
  unsigned threads = 0;
  std::string out;
  std::string out_format = "xyz";
  bool verbose = false;
};

SchemePtr default_scheme(std::size_t n) {
  const auto& sizes = catalog_sizes();
  if (std::find(sizes.begin(), sizes.end(), n) == sizes.end()) return generic_scheme(n);
  return make_scheme(catalog_entry(n).scheme_id, n);
}

int cmd_optimize(const OptimizeArgs& a) {
  const SphericalCode start = read_code_file(a.file, parse_format_name(a.format));
  const std::size_t n = start.size();
  ConvergeOptions opt;
  opt.max_iters = a.iters;
  opt.tol = a.tol;
  if (a.rule == "minimax")
    opt.rule = StepRule::Minimax;
  else if (a.rule == "planefit")
    opt.rule = StepRule::PlaneFit;
  else
    throw DomainError("unknown rule '" + a.rule + "'");

  SchemePtr scheme = a.scheme.empty() ? default_scheme(n) : make_scheme(a.scheme, n);
  if (a.scheme.empty() && scheme->id() != "generic") {
    try {
      code_to_params(*scheme, start, opt.snap_residual);
    } catch (const SchemeMismatch&) {
      std::cerr << "note: code is not near the " << scheme->id() << " scheme; using generic\n";
      scheme = generic_scheme(n);
    }
  }

  const double before = covering_radius(start).cap.angular_radius;
  ConvergeResult best;
  std::uint64_t best_seed = a.seed;
  if (a.starts > 1) {
    std::vector<std::uint64_t> seeds(a.starts);
    std::iota(seeds.begin(), seeds.end(), a.seed);
    auto runs = multi_start(start, *scheme, a.perturb, seeds, opt, a.threads);
    if (a.verbose)
      for (const StartResult& s : runs)
        std::cout << "start seed " << s.seed << ' ' << deg10(s.result.covering.cap.angular_radius) << '\n';
    best = std::move(runs.front().result);
    best_seed = runs.front().seed;
  } else {
    best = run_converge(a.perturb > 0 ? perturb(start, a.perturb, a.seed) : start, *scheme, opt);
  }
  if (a.verbose)
    for (std::size_t i = 0; i < best.history.size(); ++i)
      std::cout << "iter " << i << ' ' << deg10(best.history[i]) << '\n';

  std::cout << "scheme " << scheme->id() << '\n'
            << "start " << deg10(before) << '\n'
            << "radius " << deg10(best.covering.cap.angular_radius) << '\n'
            << "height " << format_coord(best.covering.cap.height) << '\n'
            << "iterations " << best.iterations << '\n'
            << "converged " << (best.converged ? "yes" : "no") << '\n';
  if (a.starts > 1) std::cout << "seed " << best_seed << '\n';
  if (!a.out.empty()) emit(emit_code(best.code, parse_format_name(a.out_format)), a.out);
  return 0;
}

// ---- approx

int cmd_approx(int n) {
  const double r = approx_radius(n);
  std::cout << "radius_rad " << format_coord(r) << '\n'
            << "radius_deg " << deg10(r) << '\n'
            << "suggested_height " << format_coord(suggested_height(n)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equal-cap sphere coverings: radius, catalog, verification, optimization"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  const std::vector<std::string> in_formats{"auto", "sloane", "xyz", "json"};
  const std::vector<std::string> out_formats{"xyz", "sloane", "json", "off"};

  RadiusArgs ra;
  auto* radius = app.add_subcommand("radius", "Covering radius of a code file, in degrees");
  radius->add_option("file", ra.file, "Code file")->required()->check(CLI::ExistingFile);
  radius->add_option("--format", ra.format, "Input format")->check(CLI::IsMember(in_formats));
  radius->add_flag("--full", ra.full, "Also print radians, height and the witness vertex");

  CatalogArgs ca;
  auto* catalog = app.add_subcommand("catalog", "Emit a catalog code");
  catalog->add_option("--n", ca.n, "Number of caps")->required();
  catalog->add_option("--format", ca.format, "Output format")->check(CLI::IsMember(out_formats));
  catalog->add_option("--out", ca.out, "Output file (default stdout)");
  catalog->add_option("--circles", ca.circles, "Also write cap boundary polylines to this file");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Verify catalog entries");
  auto* vn = verify->add_option("--n", va.n, "Number of caps");
  auto* vall = verify->add_flag("--all", va.all, "Every catalog entry");
  vn->excludes(vall);
  verify->add_option("--tol", va.tol, "Tolerance for the stated-value checks")->check(CLI::PositiveNumber);
  verify->add_flag("--json", va.json, "Machine-readable report");

  bool csv = false;
  auto* table = app.add_subcommand("check-table", "Cross-check table against the recorded radii");
  table->add_flag("--csv", csv, "CSV output");

  OptimizeArgs oa;
  auto* optimize = app.add_subcommand("optimize", "Local covering optimization from a code file");
  optimize->add_option("file", oa.file, "Start code")->required()->check(CLI::ExistingFile);
  optimize->add_option("--format", oa.format, "Input format")->check(CLI::IsMember(in_formats));
  optimize->add_option("--scheme", oa.scheme, "Scheme id (default: catalog scheme for catalog n, else generic)");
  optimize->add_option("--rule", oa.rule, "Per-step update")->check(CLI::IsMember({"minimax", "planefit"}));
  optimize->add_option("--iters", oa.iters, "Iteration limit");
  optimize->add_option("--tol", oa.tol, "Stop when the radius changes less than this (radians)");
  optimize->add_option("--perturb", oa.perturb, "Perturb the start by this many radians")
      ->check(CLI::NonNegativeNumber);
  optimize->add_option("--seed", oa.seed, "Perturbation seed (first seed with --starts)");
  optimize->add_option("--starts", oa.starts, "Number of perturbed starts")->check(CLI::PositiveNumber);
  optimize->add_option("--threads", oa.threads, "Worker threads for --starts (0: hardware)");
  optimize->add_option("--out", oa.out, "Write the best code here");
  optimize->add_option("--out-format", oa.out_format, "Format for --out")->check(CLI::IsMember(out_formats));
  optimize->add_flag("--verbose", oa.verbose, "Print the iteration history");

  int an = 0;
  auto* approx = app.add_subcommand("approx", "Rational-polynomial radius estimate");
  approx->add_option("--n", an, "Number of caps")->required();

  ExportArgs ea;
  auto* exp = app.add_subcommand("export", "Data exports");
  exp->add_option("--plot", ea.plot, "Which data set")->required()->check(CLI::IsMember({"radius-vs-n"}));
  exp->add_option("--out", ea.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
    if (verify->parsed() && !va.all && vn->count() == 0)
      throw CLI::ValidationError("verify", "give --n N or --all");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (radius->parsed()) return cmd_radius(ra);
    if (catalog->parsed()) return cmd_catalog(ca);
    if (verify->parsed()) return cmd_verify(va);
    if (table->parsed()) return cmd_check_table(csv);
    if (optimize->parsed()) return cmd_optimize(oa);
    if (approx->parsed()) return cmd_approx(an);
    if (exp->parsed()) return cmd_export(ea);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
