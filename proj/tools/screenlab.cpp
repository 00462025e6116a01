// screenlab: batch CLI for quantum monodromy numbers, generalized Selberg
// integrals, Nichols-algebra symmetrizer kernels and lattice-VOA screenings.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "screenlab/json_io.hpp"
#include "screenlab/monodromy.hpp"
#include "screenlab/nichols.hpp"
#include "screenlab/reference_table.hpp"
#include "screenlab/selberg.hpp"
#include "screenlab/symformula.hpp"
#include "screenlab/voa.hpp"

namespace {

using namespace screenlab;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitNonConvergent = 3;
constexpr int kExitUsage = 64;

struct CommonOpts {
  double tol = 1e-8;
  int trunc = 6;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string format = "json";
  std::string out;
};

std::vector<Rational> parse_rationals(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  return out;
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

monodromy::MonodromyParams make_params(const std::string& m_csv, const std::string& mm_csv,
                                       const std::string& hbar_csv) {
  monodromy::MonodromyParams p;
  p.m = parse_rationals(m_csv);
  const int n = p.n();
  const auto mm = parse_rationals(mm_csv);
  if (static_cast<int>(mm.size()) != n * (n - 1) / 2)
    throw PreconditionError("--mm must list the n(n-1)/2 upper-triangular entries");
  size_t t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.mm[{i, j}] = mm[t++];
  if (!hbar_csv.empty()) p.hbar = parse_doubles(hbar_csv);
  return p;
}

void emit(const CommonOpts& common, const std::string& text) {
  if (common.out.empty() || common.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(common.out);
  if (!f) throw PreconditionError("cannot open output file " + common.out);
  f << text;
}

json report_json(const EvalReport& r) {
  const char* method = r.method == Method::series         ? "series"
                       : r.method == Method::closed_form  ? "closed_form"
                       : r.method == Method::quadrature   ? "quadrature"
                                                          : "monte_carlo";
  return json{{"schema", 1},
              {"value", {{"re", r.value.real()}, {"im", r.value.imag()}}},
              {"error_estimate", r.abs_error_estimate},
              {"terms_or_nodes", r.terms_or_nodes},
              {"converged", r.converged},
              {"method", method}};
}

int run_fmono(const CommonOpts& common, const std::string& m_csv, const std::string& mm_csv,
              const std::string& hbar_csv, int shell_cap) {
  const auto p = make_params(m_csv, mm_csv, hbar_csv);
  monodromy::SeriesOptions opt;
  opt.tol = common.tol;
  opt.shell_cap = shell_cap > 0 ? shell_cap : monodromy::default_shell_cap(p.n());
  const EvalReport r = p.hbar ? monodromy::f_hbar(p, opt) : monodromy::f_minus(p, opt);
  emit(common, report_json(r).dump(2) + "\n");
  return r.converged ? kExitOk : kExitNonConvergent;
}

int run_ftilde(const CommonOpts& common, const std::string& m_csv,
               const std::string& mm_csv) {
  const auto p = make_params(m_csv, mm_csv, "");
  symformula::FtildeOptions opt;
  opt.tol = common.tol;
  opt.jobs = common.jobs;
  opt.quad.seed = common.seed;
  const EvalReport r = symformula::f_tilde(p, opt);
  emit(common, report_json(r).dump(2) + "\n");
  return r.converged ? kExitOk : kExitNonConvergent;
}

int run_symcheck(const CommonOpts& common, const std::string& m_csv,
                 const std::string& mm_csv, double pass_tol, int expected_n) {
  const auto p = make_params(m_csv, mm_csv, "");
  if (expected_n > 0 && p.n() != expected_n)
    throw PreconditionError("--n does not match the number of --m entries");
  symformula::SymmetrizerCheckOptions opt;
  opt.series.tol = std::min(1e-7, pass_tol / 10.0);
  opt.series.shell_cap = 100'000;
  opt.ftilde.tol = std::min(1e-8, pass_tol / 10.0);
  opt.ftilde.jobs = common.jobs;
  const auto report = symformula::verify_symmetrizer(p, opt);
  const bool pass = report.residual <= pass_tol;
  json sigmas = json::array();
  for (const auto& [sigma, term] : report.per_sigma) {
    json img = json::array();
    for (int i : sigma.images()) img.push_back(i);
    sigmas.push_back(json{{"sigma", img}, {"term", {{"re", term.real()}, {"im", term.imag()}}}});
  }
  const json out{{"schema", 1},
                 {"lhs", {{"re", report.lhs.real()}, {"im", report.lhs.imag()}}},
                 {"rhs", {{"re", report.rhs.real()}, {"im", report.rhs.imag()}}},
                 {"residual", report.residual},
                 {"pass_tol", pass_tol},
                 {"pass", pass},
                 {"per_sigma", sigmas}};
  emit(common, out.dump(2) + "\n");
  return pass ? kExitOk : kExitNonConvergent;
}

int run_selberg(const CommonOpts& common, const std::string& m_csv,
                const std::string& mbar_csv, const std::string& mm_csv,
                std::int64_t sample_cap, int max_level) {
  selberg::SelbergParams p;
  p.m = parse_rationals(m_csv);
  p.mbar = mbar_csv.empty() ? std::vector<Rational>(p.m.size(), Rational(0))
                            : parse_rationals(mbar_csv);
  const int n = p.n();
  const auto mm = parse_rationals(mm_csv);
  if (static_cast<int>(mm.size()) != n * (n - 1) / 2)
    throw PreconditionError("--mm must list the n(n-1)/2 upper-triangular entries");
  size_t t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.mm[{i, j}] = mm[t++];

  selberg::QuadratureOptions opt;
  opt.tol = common.tol;
  opt.seed = common.seed;
  if (sample_cap > 0) opt.sample_cap = sample_cap;
  if (max_level > 0) opt.max_level = max_level;
  const EvalReport r = selberg::selberg(p, opt);
  emit(common, report_json(r).dump(2) + "\n");
  return r.converged ? kExitOk : kExitNonConvergent;
}

int run_nichols(const CommonOpts& common, int rank, const std::string& q_csv,
                const std::string& braiding_file, int nmax) {
  BraidingMatrix q;
  if (!braiding_file.empty()) {
    std::ifstream f(braiding_file);
    if (!f) throw PreconditionError("cannot open braiding file " + braiding_file);
    json j;
    f >> j;
    q = json_io::braiding_from_json(j);
  } else {
    const auto entries = parse_rationals(q_csv);
    if (static_cast<int>(entries.size()) != rank * rank)
      throw PreconditionError("--q must list rank*rank phase exponents row-major");
    std::vector<std::vector<Rational>> rows(rank);
    size_t t = 0;
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) rows[i].push_back(entries[t++]);
    q = BraidingMatrix(rows);
  }
  const auto dims = nichols::hilbert_series(q, nmax);
  if (common.format == "csv") {
    std::ostringstream os;
    for (size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << "\n";
    emit(common, os.str());
  } else {
    emit(common, json{{"schema", 1}, {"hilbert_series", dims}}.dump(2) + "\n");
  }
  return kExitOk;
}

int run_screen(const CommonOpts& common, const std::string& lattice_file,
               const std::vector<std::string>& alpha_csvs, const std::string& lambda_csv) {
  std::ifstream f(lattice_file);
  if (!f) throw PreconditionError("cannot open lattice file " + lattice_file);
  json lj;
  f >> lj;
  const voa::Lattice lattice = json_io::lattice_from_json(lj);
  std::vector<voa::LatticePoint> alphas;
  for (const auto& csv : alpha_csvs) {
    const auto coords = parse_rationals(csv);
    if (static_cast<int>(coords.size()) != lattice.rank())
      throw PreconditionError("--alpha coordinate count != lattice rank");
    alphas.push_back(coords);
  }
  const auto lambda = parse_rationals(lambda_csv);
  if (static_cast<int>(lambda.size()) != lattice.rank())
    throw PreconditionError("--lambda coordinate count != lattice rank");

  if (!voa::screening_smallness(lattice, alphas))
    std::cerr << "warning: some |alpha|^2 > 1; screening series may not converge\n";

  const auto result = voa::screening_product_direct(
      lattice, alphas, voa::exp_phi<Complex>(lambda, common.trunc), common.trunc);
  const json out{{"schema", 1},
                 {"truncation", common.trunc},
                 {"terms", json_io::element_to_json(result)}};
  emit(common, out.dump(2) + "\n");
  return kExitOk;
}

int run_trivial_level(const CommonOpts& common, const std::string& g) {
  voa::RootPreset preset;
  if (g == "sl2")
    preset = voa::RootPreset::sl2;
  else if (g == "sl3")
    preset = voa::RootPreset::sl3;
  else
    throw PreconditionError("--g must be sl2 or sl3");
  const auto report = voa::trivial_level_relations(preset, common.trunc);
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(json{{"name", c.name}, {"ok", c.ok}});
  emit(common,
       json{{"schema", 1}, {"all_ok", report.all_ok}, {"checks", checks}}.dump(2) + "\n");
  return report.all_ok ? kExitOk : kExitNonConvergent;
}

int run_reference_table(const CommonOpts& common) {
  const auto results = reference::recompute(common.jobs);
  bool all_pass = true;
  if (common.format == "csv") {
    std::ostringstream os;
    os << "m1,m2,m12,expected_re,expected_im,observed_re,observed_im,residual,pass\n";
    char buf[64];
    for (const auto& r : results) {
      if (r.row.quantity != "fmono") continue;  // the pinned CSV schema covers F-
      os << r.row.m1.str() << "," << r.row.m2.str() << "," << r.row.m12.str() << ",";
      std::snprintf(buf, sizeof buf, "%.4f,%.4f,", r.row.expected.real(),
                    r.row.expected.imag());
      os << buf;
      std::snprintf(buf, sizeof buf, "%.10f,%.10f,%.3e,", r.observed.real(),
                    r.observed.imag(), r.residual);
      os << buf << (r.pass ? "1" : "0") << "\n";
      all_pass = all_pass && r.pass;
    }
    emit(common, os.str());
  } else {
    json rows = json::array();
    for (const auto& r : results) {
      rows.push_back(json{{"quantity", r.row.quantity},
                          {"m1", r.row.m1.str()},
                          {"m2", r.row.m2.str()},
                          {"m12", r.row.m12.str()},
                          {"expected", {{"re", r.row.expected.real()}, {"im", r.row.expected.imag()}}},
                          {"observed", {{"re", r.observed.real()}, {"im", r.observed.imag()}}},
                          {"residual", r.residual},
                          {"pass", r.pass}});
      all_pass = all_pass && r.pass;
    }
    emit(common, json{{"schema", 1}, {"rows", rows}, {"all_pass", all_pass}}.dump(2) + "\n");
  }
  return all_pass ? kExitOk : kExitNonConvergent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum monodromy numbers, Selberg integrals, Nichols kernels and "
               "lattice-VOA screenings"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  CommonOpts common;
  if (const char* env_jobs = std::getenv("SCREENLAB_JOBS")) common.jobs = std::atoi(env_jobs);
  app.add_option("--tol", common.tol, "target tolerance");
  app.add_option("--trunc", common.trunc, "degree truncation for symbolic results");
  app.add_option("--seed", common.seed, "random stream seed (Monte Carlo)");
  app.add_option("--jobs", common.jobs, "worker threads for independent pieces");
  app.add_option("--format", common.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", common.out, "output path (default stdout)");

  std::string m_csv, mm_csv, mbar_csv, hbar_csv, q_csv, braiding_file, lattice_file,
      lambda_csv, g_name = "sl2";
  std::vector<std::string> alpha_csvs;
  int rank = 1, nmax = 6, shell_cap = 0, expected_n = 0, max_level = 0;
  std::int64_t sample_cap = 0;
  double pass_tol = 1e-4;

  auto* fmono = app.add_subcommand("fmono", "quantum monodromy number F- (series)");
  fmono->add_option("--m", m_csv, "comma list of rationals m_i")->required();
  fmono->add_option("--mm", mm_csv, "upper-triangular m_ij, row-major comma list")
      ->required();
  fmono->add_option("--hbar", hbar_csv, "per-variable radii (evaluates F^hbar)");
  fmono->add_option("--shell-cap", shell_cap, "series shell cap");

  auto* ftilde = app.add_subcommand("ftilde", "reduced quantum monodromy number F~-");
  ftilde->add_option("--m", m_csv)->required();
  ftilde->add_option("--mm", mm_csv)->required();

  auto* symcheck = app.add_subcommand("symcheck", "verify the quantum symmetrizer formula");
  symcheck->add_option("--m", m_csv)->required();
  symcheck->add_option("--mm", mm_csv)->required();
  symcheck->add_option("--n", expected_n, "expected n (checked against --m)");
  symcheck->add_option("--pass-tol", pass_tol, "residual threshold for exit 0");

  auto* sel = app.add_subcommand("selberg", "generalized Selberg integral");
  sel->add_option("--m", m_csv)->required();
  sel->add_option("--mbar", mbar_csv, "comma list of mbar_i (default all 0)");
  sel->add_option("--mm", mm_csv)->required();
  sel->add_option("--samples", sample_cap, "Monte Carlo sample cap (n >= 4)");
  sel->add_option("--max-level", max_level, "tanh-sinh refinement cap (n <= 3)");

  auto* nich = app.add_subcommand("nichols", "Nichols algebra Hilbert series");
  nich->add_option("--rank", rank, "number of generators");
  nich->add_option("--q", q_csv, "phase exponents m_ij row-major (q_ij = e^{i pi m})");
  nich->add_option("--braiding", braiding_file, "braiding matrix JSON file");
  nich->add_option("--nmax", nmax, "top degree");

  auto* screen = app.add_subcommand("screen", "apply screening operators to e^{phi_lambda}");
  screen->add_option("--lattice", lattice_file, "lattice JSON file")->required();
  screen->add_option("--alpha", alpha_csvs, "screening vector coordinates (repeatable)")
      ->required();
  screen->add_option("--lambda", lambda_csv, "target weight coordinates")->required();

  auto* trivial = app.add_subcommand("trivial-level", "integral root lattice relations");
  trivial->add_option("--g", g_name, "sl2 or sl3");

  app.add_subcommand("paper-table", "recompute the bundled n=2 reference table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("fmono"))
      return run_fmono(common, m_csv, mm_csv, hbar_csv, shell_cap);
    if (app.got_subcommand("ftilde")) return run_ftilde(common, m_csv, mm_csv);
    if (app.got_subcommand("symcheck"))
      return run_symcheck(common, m_csv, mm_csv, pass_tol, expected_n);
    if (app.got_subcommand("selberg"))
      return run_selberg(common, m_csv, mbar_csv, mm_csv, sample_cap, max_level);
    if (app.got_subcommand("nichols"))
      return run_nichols(common, rank, q_csv, braiding_file, nmax);
    if (app.got_subcommand("screen"))
      return run_screen(common, lattice_file, alpha_csvs, lambda_csv);
    if (app.got_subcommand("trivial-level")) return run_trivial_level(common, g_name);
    if (app.got_subcommand("paper-table")) return run_reference_table(common);
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const SmallnessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Error& e) {
    // Diverged / ShellCap / Budget / WindowOverflow / NonConvergent / size caps
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergent;
  }
  return kExitUsage;
}
