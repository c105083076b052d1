// Command-line driver for the ellopt shared library: convergence studies,
// regularization sweeps, spectral reports, and matrix export. Talks to the
// solver core exclusively through the C interface in ellopt.h.
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ellopt.h"

namespace {

struct Options {
  int dim = 3;
  int level_min = 1;
  int level_max = 5;
  int target = 1;
  std::string solver = "mg-minres";
  double rho_exponent = 4.0;
  double rtol = 1e-11;
  int quad_order = 4;
  std::string diag_variant = "lump";
  int max_iterations = 0;  // 0: automatic cap
  std::uint64_t seed = 0;
  int threads = 0;  // 0: fall back to ELLOPT_THREADS, then 1
  std::string format = "csv";
  std::string out_path;
  bool strict = false;

  int level = 4;  // sweep/spectral
  std::string rhos = "1e-6,1e-5,1e-4,1e-3,1e-2,1e-1";
  int samples = 200;
};

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("ELLOPT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

ellopt_config make_config(const Options& opt) {
  ellopt_config cfg;
  ellopt_config_init(&cfg);
  cfg.dim = opt.dim;
  cfg.level_min = opt.level_min;
  cfg.level_max = opt.level_max;
  cfg.target = opt.target;
  cfg.solver = opt.solver.c_str();
  cfg.rho_exponent = opt.rho_exponent;
  cfg.rtol = opt.rtol;
  cfg.quad_order = opt.quad_order;
  cfg.diag_variant = opt.diag_variant.c_str();
  cfg.max_iterations = opt.max_iterations;
  cfg.seed = opt.seed;
  cfg.threads = resolve_threads(opt.threads);
  return cfg;
}

bool parse_levels(const std::string& text, Options& opt) {
  const auto pos = text.find("..");
  if (pos == std::string::npos) return false;
  try {
    opt.level_min = std::stoi(text.substr(0, pos));
    opt.level_max = std::stoi(text.substr(pos + 2));
  } catch (...) {
    return false;
  }
  return opt.level_min >= 1 && opt.level_max >= opt.level_min;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> values;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (!item.empty()) values.push_back(std::stod(item));
  }
  return values;
}

std::vector<std::string> split_paths(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) parts.push_back(item);
  return parts;
}

int emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    return 0;
  }
  std::ofstream os(out_path, std::ios::binary);
  os << content;
  if (!os) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  return 0;
}

int report_error(const std::string& what, ellopt_status status) {
  std::cerr << "error: " << what << ": " << ellopt_last_error() << "\n";
  return status == ELLOPT_ERR_INVALID_ARG ? 2 : 1;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_study_cmd(const Options& opt) {
  const ellopt_config cfg = make_config(opt);
  ellopt_study* study = nullptr;
  if (const auto st = ellopt_run_study(&cfg, &study); st != ELLOPT_OK) {
    return report_error("study failed", st);
  }
  char* text = nullptr;
  const auto st = ellopt_study_format(study, opt.format.c_str(), &text);
  if (st != ELLOPT_OK) {
    ellopt_study_destroy(study);
    return report_error("formatting failed", st);
  }
  const int rc = emit(text, opt.out_path);
  ellopt_free(text);

  bool all_converged = true;
  const int rows = ellopt_study_row_count(study);
  for (int i = 0; i < rows; ++i) {
    ellopt_level_row row;
    if (ellopt_study_row(study, i, &row) == ELLOPT_OK && !row.converged) {
      std::cerr << "warning: level " << row.level << " did not converge within "
                << row.iterations << " iterations\n";
      all_converged = false;
    }
  }
  ellopt_study_destroy(study);
  if (rc != 0) return rc;
  return (!all_converged && opt.strict) ? 3 : 0;
}

int run_sweep_cmd(const Options& opt) {
  const ellopt_config cfg = make_config(opt);
  std::vector<double> rhos;
  try {
    rhos = parse_doubles(opt.rhos);
  } catch (...) {
    std::cerr << "error: cannot parse --rhos list\n";
    return 2;
  }
  if (rhos.empty()) {
    std::cerr << "error: --rhos list is empty\n";
    return 2;
  }
  std::vector<double> errors(rhos.size(), 0.0);
  double slope = 0.0, baseline = 0.0;
  int in_fit = 0;
  const auto st = ellopt_rho_sweep(&cfg, opt.level, rhos.data(), static_cast<int>(rhos.size()),
                                   errors.data(), &slope, &in_fit, &baseline);
  if (st != ELLOPT_OK) {
    const int rc = report_error("sweep failed", st);
    return st == ELLOPT_ERR_SOLVER && opt.strict ? 3 : rc;
  }
  std::ostringstream os;
  if (opt.format == "json") {
    os << "{\n  \"level\": " << opt.level << ",\n  \"fitted_slope\": " << num(slope)
       << ",\n  \"points_in_fit\": " << in_fit << ",\n  \"baseline_error\": " << num(baseline)
       << ",\n  \"points\": [\n";
    for (std::size_t i = 0; i < rhos.size(); ++i) {
      os << "    {\"rho\": " << num(rhos[i]) << ", \"l2_error\": " << num(errors[i]) << "}"
         << (i + 1 < rhos.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
  } else if (opt.format == "md") {
    os << "| rho | error |\n|-----|-------|\n";
    for (std::size_t i = 0; i < rhos.size(); ++i) {
      os << "| " << num(rhos[i]) << " | " << num(errors[i]) << " |\n";
    }
    os << "\nfitted slope: " << num(slope) << " (" << in_fit << " points)\n";
  } else {
    os << "rho,l2_error\r\n";
    for (std::size_t i = 0; i < rhos.size(); ++i) {
      os << num(rhos[i]) << ',' << num(errors[i]) << "\r\n";
    }
    os << "# fitted_slope," << num(slope) << "\r\n";
    os << "# points_in_fit," << in_fit << "\r\n";
    os << "# baseline_error," << num(baseline) << "\r\n";
  }
  return emit(os.str(), opt.out_path);
}

int run_spectral_cmd(const Options& opt) {
  const ellopt_config cfg = make_config(opt);
  ellopt_spectral_result rep;
  const auto st = ellopt_spectral(&cfg, opt.level, opt.samples, &rep);
  if (st != ELLOPT_OK) return report_error("spectral report failed", st);
  std::ostringstream os;
  if (opt.format == "json") {
    os << "{\n  \"level\": " << rep.level << ",\n  \"lambda_max_MinvK\": "
       << num(rep.lambda_max_MinvK) << ",\n  \"lambda_max_MinvK_times_h2\": "
       << num(rep.lambda_max_MinvK_times_h2) << ",\n  \"rayleigh_S_over_M_min\": "
       << num(rep.rayleigh_S_over_M_min) << ",\n  \"rayleigh_S_over_M_max\": "
       << num(rep.rayleigh_S_over_M_max) << ",\n  \"rayleigh_A_over_M_min\": "
       << num(rep.rayleigh_A_over_M_min) << ",\n  \"rayleigh_A_over_M_max\": "
       << num(rep.rayleigh_A_over_M_max) << "\n}\n";
  } else {
    os << "quantity,value\r\n";
    os << "level," << rep.level << "\r\n";
    os << "lambda_max_MinvK," << num(rep.lambda_max_MinvK) << "\r\n";
    os << "lambda_max_MinvK_times_h2," << num(rep.lambda_max_MinvK_times_h2) << "\r\n";
    os << "rayleigh_S_over_M_min," << num(rep.rayleigh_S_over_M_min) << "\r\n";
    os << "rayleigh_S_over_M_max," << num(rep.rayleigh_S_over_M_max) << "\r\n";
    os << "rayleigh_A_over_M_min," << num(rep.rayleigh_A_over_M_min) << "\r\n";
    os << "rayleigh_A_over_M_max," << num(rep.rayleigh_A_over_M_max) << "\r\n";
  }
  return emit(os.str(), opt.out_path);
}

int run_export_cmd(const Options& opt) {
  const ellopt_config cfg = make_config(opt);
  const auto paths = split_paths(opt.out_path);
  if (paths.size() != 3) {
    std::cerr << "error: export needs --out K_PATH,M_PATH,F_PATH\n";
    return 2;
  }
  const auto st = ellopt_export_matrices(&cfg, opt.level_max, paths[0].c_str(), paths[1].c_str(),
                                         paths[2].c_str());
  if (st != ELLOPT_OK) return report_error("export failed", st);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elliptic optimal control solver benchmarks (ellopt)"};
  app.require_subcommand(1);

  Options opt;
  std::string levels_text = "1..5";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--dim", opt.dim, "Spatial dimension (2 or 3)")->check(CLI::Range(2, 3));
    cmd->add_option("--levels", levels_text, "Refinement level range A..B");
    cmd->add_option("--target", opt.target, "Target function 1..4")->check(CLI::Range(1, 4));
    cmd->add_option("--solver", opt.solver, "mg-minres | diag-minres | bp-pcg | inex-sc-pcg");
    cmd->add_option("--rho-exponent", opt.rho_exponent, "rho(level) = h^exponent");
    cmd->add_option("--rtol", opt.rtol, "Relative residual reduction");
    cmd->add_option("--quad-order", opt.quad_order, "Quadrature order (1, 2, 4)");
    cmd->add_option("--diag-variant", opt.diag_variant, "diag | lump | area");
    cmd->add_option("--max-iterations", opt.max_iterations, "Iteration cap (0 = automatic)");
    cmd->add_option("--format", opt.format, "csv | json | md");
    cmd->add_option("--out", opt.out_path, "Output path (default stdout)");
    cmd->add_option("--seed", opt.seed, "Seed for random-vector experiments");
    cmd->add_option("--threads", opt.threads, "spmv workers (env ELLOPT_THREADS as fallback)");
    cmd->add_flag("--strict", opt.strict, "Exit 3 on solver non-convergence");
  };

  auto* study = app.add_subcommand("study", "Convergence study over a level range");
  add_common(study);

  auto* sweep = app.add_subcommand("sweep", "Error vs regularization parameter at one level");
  add_common(sweep);
  sweep->add_option("--level", opt.level, "Level for the sweep");
  sweep->add_option("--rhos", opt.rhos, "Comma-separated rho values");

  auto* spectral = app.add_subcommand("spectral", "Eigenvalue and spectral-equivalence report");
  add_common(spectral);
  spectral->add_option("--level", opt.level, "Level for the report (<= 4)");
  spectral->add_option("--samples", opt.samples, "Random vectors for Rayleigh sampling");

  auto* exp = app.add_subcommand("export", "Write K, M (Matrix Market) and the load vector");
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (!parse_levels(levels_text, opt)) {
    std::cerr << "error: --levels expects A..B with 1 <= A <= B\n";
    return 2;
  }
  if (opt.format != "csv" && opt.format != "json" && opt.format != "md") {
    std::cerr << "error: unknown --format " << opt.format << "\n";
    return 2;
  }

  if (study->parsed()) return run_study_cmd(opt);
  if (sweep->parsed()) return run_sweep_cmd(opt);
  if (spectral->parsed()) return run_spectral_cmd(opt);
  if (exp->parsed()) return run_export_cmd(opt);
  return 2;
}
