// Command-line front end: certify, solve, convert, gen, bench.
//
// Exit codes are a stable contract:
//   0 success, 1 input error, 2 certification failure, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gave/dynamics.hpp"
#include "gave/instances.hpp"
#include "gave/integrators.hpp"
#include "gave/io.hpp"
#include "gave/problem.hpp"
#include "gave/reformulations.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNotCertified = 2;
constexpr int kExitNumericalFailure = 3;

std::string vector_to_string(const gave::Vector& v) {
  std::ostringstream out;
  out << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i != 0) {
      out << ", ";
    }
    out << gave::format_double(v[i]);
  }
  out << ']';
  return out.str();
}

void print_certificate(const gave::Certificate& cert) {
  std::cout << "sigma_min(A)  = " << gave::format_double(cert.sigma_min_A)
            << "\n||B||         = " << gave::format_double(cert.norm_B)
            << "\ngap           = " << gave::format_double(cert.gap)
            << "\nverdict       = "
            << (cert.certified
                    ? "certified: unique solution for every right-hand side"
                    : "not certified: sigma_min(A) - ||B|| is not positive")
            << "\n";
}

bool is_identity(const gave::Matrix& b) {
  const Eigen::Index n = b.rows();
  return (b - gave::Matrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12;
}

struct CertifyOptions {
  std::string file;
  double tol = 0.0;  // 0 means problem-scaled default
};

int run_certify(const CertifyOptions& opt) {
  const gave::GaveProblem problem = gave::read_problem_json(opt.file);
  const gave::Certificate cert =
      opt.tol > 0.0 ? gave::certify_unique(problem, opt.tol)
                    : gave::certify_unique(problem);
  print_certificate(cert);
  return cert.certified ? kExitOk : kExitNotCertified;
}

struct SolveOptions {
  std::string file;
  std::string method = "euler";
  double gamma = 1.0;
  double rho1 = 1.0;
  double rho2 = 1.0;
  double xi = 4.0;
  bool xi_explicit = false;
  std::optional<double> lambda1;
  std::optional<double> lambda2;
  double eta = 0.1;
  double tol = 1e-8;
  std::int64_t max_iter = 1000000;
  bool safeguard = true;
  bool force = false;
  double rho_scale = 1.0;
  std::optional<double> t_end;
  std::optional<double> h;
  std::optional<std::uint64_t> seed;
  std::string trace_path;
  std::string out_path;
};

gave::Vector initial_point(const SolveOptions& opt, Eigen::Index n) {
  if (!opt.seed) {
    return gave::Vector::Zero(n);
  }
  gave::SplitMix64 rng(*opt.seed);
  gave::Vector x0(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x0[i] = rng.gaussian();
  }
  return x0;
}

gave::FlowParams flow_params_from(const SolveOptions& opt, bool* xi_form) {
  if (opt.lambda1.has_value() != opt.lambda2.has_value()) {
    throw std::invalid_argument(
        "--lambda1 and --lambda2 must be given together");
  }
  if (opt.lambda1) {
    if (opt.xi_explicit) {
      throw std::invalid_argument(
          "choose either --xi or --lambda1/--lambda2, not both");
    }
    *xi_form = false;
    return gave::FlowParams(opt.gamma, opt.rho1, opt.rho2, *opt.lambda1,
                            *opt.lambda2);
  }
  *xi_form = true;
  return gave::FlowParams::from_xi(opt.gamma, opt.rho1, opt.rho2, opt.xi);
}

void print_bounds(const gave::GaveProblem& problem,
                  const gave::FlowParams& params,
                  const gave::Certificate& cert) {
  if (!cert.certified) {
    return;
  }
  const gave::SettlingBound bound = gave::settling_time_bound(params, cert);
  std::cout << "T_max         = " << gave::format_double(bound.t_max) << "\n";
  if (is_identity(problem.B())) {
    try {
      const gave::SettlingBound prior =
          gave::settling_time_bound_lyyhc(params, problem.A());
      std::cout << "T_max_lyyhc   = " << gave::format_double(prior.t_max)
                << "\n";
    } catch (const std::invalid_argument&) {
      // sigma_min(A) <= 1: the comparison bound is undefined here.
    }
  }
}

/// Explicit integration of the inverse-based baseline flow, logging the
/// output iterates x_k = A^{-1}(B z_k + c).
gave::IterateLog baseline_solve(const gave::GaveProblem& problem,
                                const gave::BaselineFlow& flow,
                                const SolveOptions& opt,
                                const gave::Vector& x0) {
  gave::IterateLog log;
  gave::Vector z = x0.cwiseAbs();
  gave::Vector x = flow.output(z);
  double r_norm = gave::residual(problem, x).norm();
  const double r0_norm = r_norm;
  log.iterates.push_back(x);
  log.residual_norms.push_back(r_norm);
  if (r_norm <= opt.tol) {
    log.converged = true;
    return log;
  }
  for (std::int64_t k = 1; k <= opt.max_iter; ++k) {
    z += opt.eta * 0.5 * flow.rho_scale() * (x.cwiseAbs() - z);
    x = flow.output(z);
    r_norm = gave::residual(problem, x).norm();
    if (!std::isfinite(r_norm) || r_norm > 1e6 * r0_norm) {
      throw gave::NumericalError(
          "baseline iteration diverged; reduce eta or rho-scale");
    }
    log.iterates.push_back(x);
    log.residual_norms.push_back(r_norm);
    log.steps_taken = k;
    if (r_norm <= opt.tol) {
      log.converged = true;
      break;
    }
  }
  return log;
}

void write_solution_json(const std::string& path, const gave::Vector& x,
                         double residual_norm) {
  std::ostringstream out;
  out << "{\n  \"x\": " << vector_to_string(x)
      << ",\n  \"residual_norm\": " << gave::format_double(residual_norm)
      << "\n}\n";
  std::ofstream file(path);
  if (!file) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  file << out.str();
}

int finish_solve(const gave::GaveProblem& problem, const SolveOptions& opt,
                 const gave::Vector& x, const std::string& steps_line) {
  const double final_residual = gave::residual(problem, x).norm();
  std::cout << steps_line
            << "residual      = " << gave::format_double(final_residual)
            << "\nsolution      = " << vector_to_string(x) << "\n";
  if (!opt.out_path.empty()) {
    write_solution_json(opt.out_path, x, final_residual);
    std::cout << "solution file = " << opt.out_path << "\n";
  }
  if (final_residual <= opt.tol) {
    return kExitOk;
  }
  std::cerr << "error: tolerance not reached within the iteration budget\n";
  return kExitNumericalFailure;
}

int run_solve(const SolveOptions& opt) {
  const gave::GaveProblem problem = gave::read_problem_json(opt.file);

  // The baseline needs an invertible A before anything else; a singular A
  // is a misuse of that method, not a certification verdict.
  std::optional<gave::BaselineFlow> baseline;
  if (opt.method == "baseline") {
    try {
      baseline.emplace(problem, opt.rho_scale);
    } catch (const gave::NumericalError& e) {
      throw std::invalid_argument(std::string("baseline method: ") + e.what());
    }
  }

  const gave::Certificate cert = gave::certify_unique(problem);
  print_certificate(cert);
  if (!cert.certified && !opt.force) {
    std::cerr << "error: problem is not certified; pass --force to solve "
                 "anyway\n";
    return kExitNotCertified;
  }

  bool xi_form = false;
  const gave::FlowParams params = flow_params_from(opt, &xi_form);
  print_bounds(problem, params, cert);

  const gave::Vector x0 = initial_point(opt, problem.n());
  std::cout << "method        = " << opt.method << "\n";

  if (opt.method == "euler") {
    gave::EulerConfig config;
    config.eta = opt.eta;
    config.xi = opt.xi;
    config.max_iter = opt.max_iter;
    config.tol = opt.tol;
    config.safeguard = opt.safeguard;
    std::cout << "safeguard     = " << (opt.safeguard ? "on" : "off") << "\n";
    if (xi_form && cert.certified) {
      const std::int64_t k_star = gave::fixed_step_count(config, params, cert);
      std::cout << "k_star        = " << k_star << "\n";
    }
    const gave::IterateLog log =
        gave::forward_euler_solve(problem, params, config, x0);
    if (!opt.trace_path.empty()) {
      gave::write_trace_csv(opt.trace_path, log);
      std::cout << "trace         = " << opt.trace_path << "\n";
    }
    std::ostringstream steps;
    steps << "steps         = " << log.steps_taken
          << (log.converged ? " (converged)" : " (not converged)");
    if (log.safeguard_retries > 0) {
      steps << " [safeguard retries: " << log.safeguard_retries
            << "; run is not the plain explicit scheme]";
    }
    steps << "\n";
    return finish_solve(problem, opt, log.iterates.back(), steps.str());
  }

  if (opt.method == "reference") {
    double t_end = 0.0;
    if (opt.t_end) {
      t_end = *opt.t_end;
    } else if (cert.certified) {
      t_end = gave::settling_time_bound(params, cert).t_max;
    } else {
      throw std::invalid_argument(
          "--t-end is required when the problem is not certified");
    }
    const double h = opt.h ? *opt.h : std::min(opt.eta / 10.0, t_end / 1e4);
    const gave::Trajectory traj =
        gave::reference_flow_solve(problem, params, h, t_end, x0);
    if (!opt.trace_path.empty()) {
      gave::write_trace_csv(opt.trace_path, problem, traj);
      std::cout << "trace         = " << opt.trace_path << "\n";
    }
    std::ostringstream steps;
    steps << "samples       = " << traj.times.size()
          << " (t_end = " << gave::format_double(t_end) << ")\n";
    return finish_solve(problem, opt, traj.states.back(), steps.str());
  }

  // baseline
  std::cout << "rho_scale     = " << gave::format_double(opt.rho_scale)
            << "\n";
  const gave::IterateLog log = baseline_solve(problem, *baseline, opt, x0);
  if (!opt.trace_path.empty()) {
    gave::write_trace_csv(opt.trace_path, log);
    std::cout << "trace         = " << opt.trace_path << "\n";
  }
  std::ostringstream steps;
  steps << "steps         = " << log.steps_taken
        << (log.converged ? " (converged)" : " (not converged)") << "\n";
  return finish_solve(problem, opt, log.iterates.back(), steps.str());
}

struct ConvertOptions {
  std::string file;
  std::string direction;
  std::string out_path;
  bool solve = false;
  bool force = false;
  double tol = 1e-8;
  double eta = 0.1;
  std::int64_t max_iter = 1000000;
};

/// Solves a converted problem with the safeguarded explicit scheme at
/// defaults; the caller handles the certification gate.
gave::Vector solve_for_convert(const gave::GaveProblem& problem,
                               const ConvertOptions& opt) {
  gave::EulerConfig config;
  config.eta = opt.eta;
  config.max_iter = opt.max_iter;
  config.tol = opt.tol;
  config.safeguard = true;
  const gave::FlowParams params = gave::FlowParams::from_xi(1.0, 1.0, 1.0, 4.0);
  const gave::IterateLog log = gave::forward_euler_solve(
      problem, params, config, gave::Vector::Zero(problem.n()));
  if (!log.converged) {
    throw gave::NumericalError(
        "solver did not reach tolerance during conversion");
  }
  return log.iterates.back();
}

int run_convert(const ConvertOptions& opt) {
  if (opt.direction == "lcp2gave") {
    const gave::LcpProblem lcp = gave::read_lcp_json(opt.file);
    const gave::GaveProblem problem = gave::lcp_to_gave(lcp);
    const std::string out =
        opt.out_path.empty() ? opt.file + ".gave.json" : opt.out_path;
    gave::write_problem_json(out, problem);
    std::cout << "wrote         = " << out << "\n";
    const gave::Certificate cert = gave::certify_unique(problem);
    print_certificate(cert);
    if (!opt.solve) {
      return kExitOk;
    }
    if (!cert.certified && !opt.force) {
      std::cerr << "error: transformed problem is not certified; pass "
                   "--force to solve anyway\n";
      return kExitNotCertified;
    }
    const gave::Vector x = solve_for_convert(problem, opt);
    std::cout << "x             = " << vector_to_string(x) << "\n";
    const gave::Vector z = gave::recover_lcp_solution(lcp, x);
    std::cout << "z             = " << vector_to_string(z) << "\n";
    // The recovered z inherits the solve's residual error amplified by the
    // recovery inverse, so gating feasibility/complementarity at the
    // residual stop itself would be borderline at every tolerance; keep
    // four orders of separation between the stop and the gate.
    const gave::ComplementarityReport report =
        gave::verify_lcp(lcp, z, 1e4 * opt.tol);
    std::cout << "min(z)        = " << gave::format_double(report.min_z)
              << "\nmin(w)        = " << gave::format_double(report.min_w)
              << "\nz.w           = "
              << gave::format_double(report.inner_product)
              << "\nfeasible      = " << (report.feasible ? "yes" : "no")
              << "\ncomplementary = " << (report.complementary ? "yes" : "no")
              << "\n";
    return report.feasible && report.complementary ? kExitOk
                                                   : kExitNumericalFailure;
  }

  if (opt.direction == "hlcp2gave") {
    const gave::HlcpProblem hlcp = gave::read_hlcp_json(opt.file);
    const gave::GaveProblem problem = gave::hlcp_to_gave(hlcp);
    const std::string out =
        opt.out_path.empty() ? opt.file + ".gave.json" : opt.out_path;
    gave::write_problem_json(out, problem);
    std::cout << "wrote         = " << out << "\n";
    const gave::Certificate cert = gave::certify_unique(problem);
    print_certificate(cert);
    if (!opt.solve) {
      return kExitOk;
    }
    if (!cert.certified && !opt.force) {
      std::cerr << "error: transformed problem is not certified; pass "
                   "--force to solve anyway\n";
      return kExitNotCertified;
    }
    const gave::Vector x = solve_for_convert(problem, opt);
    const auto [z, w] = gave::gave_solution_to_hlcp(x);
    std::cout << "x             = " << vector_to_string(x)
              << "\nz             = " << vector_to_string(z)
              << "\nw             = " << vector_to_string(w)
              << "\n||Cz-Dw-p||   = "
              << gave::format_double(
                     (hlcp.C() * z - hlcp.D() * w - hlcp.p()).norm())
              << "\n";
    return kExitOk;
  }

  throw std::invalid_argument("direction must be lcp2gave or hlcp2gave");
}

struct GenOptions {
  std::string kind;
  std::int64_t n = 5;
  double gap = 1.0;
  double scale = 1.0;
  std::uint64_t seed = 0;
  bool identity_b = false;
  std::string out_path;
};

int run_gen(const GenOptions& opt) {
  if (opt.kind == "gave") {
    gave::GeneratorSpec spec;
    spec.n = static_cast<Eigen::Index>(opt.n);
    spec.gap = opt.gap;
    spec.scale = opt.scale;
    spec.seed = opt.seed;
    spec.identity_b = opt.identity_b;
    const auto [problem, x_star] = gave::random_solvable_gave(spec);
    const std::string out =
        opt.out_path.empty() ? std::string("problem.json") : opt.out_path;
    gave::write_problem_json(out, problem);
    std::cout << "wrote         = " << out << "\n";
    print_certificate(gave::certify_unique(problem));
    std::cout << "solution      = " << vector_to_string(x_star) << "\n";
    return kExitOk;
  }
  if (opt.kind == "lcp") {
    const gave::LcpProblem lcp =
        gave::random_spd_lcp(static_cast<Eigen::Index>(opt.n), opt.seed);
    const std::string out =
        opt.out_path.empty() ? std::string("lcp.json") : opt.out_path;
    gave::write_lcp_json(out, lcp);
    std::cout << "wrote         = " << out << "\n";
    print_certificate(gave::certify_unique(gave::lcp_to_gave(lcp)));
    return kExitOk;
  }
  throw std::invalid_argument("kind must be gave or lcp");
}

struct BenchOptions {
  std::int64_t n = 10;
  std::int64_t count = 10;
  double gap = 1.0;
  double xi = 4.0;
  double eta = 0.1;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  bool identity_b = false;
  std::string out_path;
};

int run_bench(const BenchOptions& opt) {
  std::ostringstream csv;
  csv << "seed,n,gap,t_max,t_max_lyyhc,k_star,steps_used,final_residual,"
         "wall_time\n";
  const gave::FlowParams params =
      gave::FlowParams::from_xi(1.0, 1.0, 1.0, opt.xi);

  for (std::int64_t i = 0; i < opt.count; ++i) {
    const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(i);
    gave::GeneratorSpec spec;
    spec.n = static_cast<Eigen::Index>(opt.n);
    spec.gap = opt.gap;
    spec.scale = 1.0;
    spec.seed = seed;
    spec.identity_b = opt.identity_b;
    const auto [problem, x_star] = gave::random_solvable_gave(spec);
    const gave::Certificate cert = gave::certify_unique(problem);
    const gave::SettlingBound bound = gave::settling_time_bound(params, cert);
    double t_max_lyyhc = std::numeric_limits<double>::quiet_NaN();
    if (opt.identity_b) {
      t_max_lyyhc =
          gave::settling_time_bound_lyyhc(params, problem.A()).t_max;
    }

    gave::EulerConfig config;
    config.eta = opt.eta;
    config.xi = opt.xi;
    config.tol = opt.tol;
    config.safeguard = true;
    const std::int64_t k_star = gave::fixed_step_count(config, params, cert);
    const gave::Vector x0 = gave::Vector::Zero(problem.n());

    const auto start = std::chrono::steady_clock::now();
    const gave::IterateLog log =
        gave::forward_euler_solve(problem, params, config, x0);
    gave::reference_flow_solve(problem, params,
                               std::min(opt.eta / 10.0, bound.t_max / 1e4),
                               bound.t_max, x0);
    const auto stop = std::chrono::steady_clock::now();
    const double wall_time =
        std::chrono::duration<double>(stop - start).count();

    csv << seed << ',' << opt.n << ',' << gave::format_double(cert.gap) << ','
        << gave::format_double(bound.t_max) << ','
        << gave::format_double(t_max_lyyhc) << ',' << k_star << ','
        << log.steps_taken << ','
        << gave::format_double(log.residual_norms.back()) << ','
        << gave::format_double(wall_time) << '\n';
  }

  if (opt.out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream file(opt.out_path);
    if (!file) {
      throw std::runtime_error("cannot open " + opt.out_path +
                               " for writing");
    }
    file << csv.str();
    if (!file) {
      throw std::runtime_error("write to " + opt.out_path + " failed");
    }
    std::cout << "wrote         = " << opt.out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver toolkit for equations A x - B |x| = c"};
  app.require_subcommand(1);

  CertifyOptions certify_opt;
  CLI::App* certify = app.add_subcommand(
      "certify", "Check the unique-solvability condition sigma_min(A) > ||B||");
  certify->add_option("file", certify_opt.file, "problem JSON file")
      ->required();
  certify->add_option("--tol", certify_opt.tol,
                      "certification tolerance (default scales with ||A||)");

  SolveOptions solve_opt;
  CLI::App* solve =
      app.add_subcommand("solve", "Solve a problem file with the fixed-time "
                                  "flow or the inverse-based baseline");
  solve->add_option("file", solve_opt.file, "problem JSON file")->required();
  solve->add_option("--method", solve_opt.method, "euler|reference|baseline")
      ->check(CLI::IsMember({"euler", "reference", "baseline"}));
  solve->add_option("--gamma", solve_opt.gamma, "flow gain (default 1)");
  solve->add_option("--rho1", solve_opt.rho1, "low-order speed weight");
  solve->add_option("--rho2", solve_opt.rho2, "high-order speed weight");
  CLI::Option* xi_opt = solve->add_option(
      "--xi", solve_opt.xi, "exponent parameter, lambda = 1 -/+ 2/xi");
  double lambda1_raw = 0.0;
  double lambda2_raw = 0.0;
  CLI::Option* l1_opt =
      solve->add_option("--lambda1", lambda1_raw, "low exponent in (0,1)");
  CLI::Option* l2_opt =
      solve->add_option("--lambda2", lambda2_raw, "high exponent > 1");
  solve->add_option("--eta", solve_opt.eta, "step size (default 0.1)");
  solve->add_option("--tol", solve_opt.tol, "residual stop (default 1e-8)");
  solve->add_option("--max-iter", solve_opt.max_iter, "iteration budget");
  solve->add_flag("--safeguard,!--no-safeguard", solve_opt.safeguard,
                  "retry residual-increasing steps at halved length "
                  "(default on; disable for the plain explicit scheme)");
  solve->add_flag("--force", solve_opt.force,
                  "solve even when certification fails");
  solve->add_option("--rho-scale", solve_opt.rho_scale,
                    "baseline flow speed (baseline method only)");
  double t_end_raw = 0.0;
  CLI::Option* t_end_opt = solve->add_option(
      "--t-end", t_end_raw, "integration horizon (reference method)");
  double h_raw = 0.0;
  CLI::Option* h_opt =
      solve->add_option("--step", h_raw, "base step (reference method)");
  std::uint64_t seed_raw = 0;
  CLI::Option* seed_opt = solve->add_option(
      "--seed", seed_raw, "draw the initial point from this seed "
                          "(default: start at the origin)");
  solve->add_option("--trace", solve_opt.trace_path, "write iterate CSV here");
  solve->add_option("--out", solve_opt.out_path, "write solution JSON here");

  ConvertOptions convert_opt;
  CLI::App* convert = app.add_subcommand(
      "convert", "Rewrite a complementarity problem as an equation file");
  convert->add_option("file", convert_opt.file, "input JSON file")->required();
  convert->add_option("direction", convert_opt.direction,
                      "lcp2gave or hlcp2gave")
      ->required();
  convert->add_option("--out", convert_opt.out_path,
                      "output problem file (default <input>.gave.json)");
  convert->add_flag("--solve", convert_opt.solve,
                    "also solve and recover/report the complementarity "
                    "solution");
  convert->add_flag("--force", convert_opt.force,
                    "solve even when certification fails");
  convert->add_option("--tol", convert_opt.tol, "residual stop");
  convert->add_option("--eta", convert_opt.eta, "step size");
  convert->add_option("--max-iter", convert_opt.max_iter, "iteration budget");

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand(
      "gen", "Generate a random certified instance and write it to JSON");
  gen->add_option("kind", gen_opt.kind, "gave or lcp")->required();
  gen->add_option("--n,--l", gen_opt.n, "dimension");
  gen->add_option("--gap", gen_opt.gap, "requested sigma_min(A) - ||B||");
  gen->add_option("--scale", gen_opt.scale, "solution magnitude");
  gen->add_option("--seed", gen_opt.seed, "RNG seed");
  gen->add_flag("--identity-b", gen_opt.identity_b,
                "use B = I (the |x| coefficient is the identity)");
  gen->add_option("--out", gen_opt.out_path, "output file");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand(
      "bench", "Generate instances, run both solvers, emit a CSV table");
  bench->add_option("--n", bench_opt.n, "instance dimension");
  bench->add_option("--count", bench_opt.count, "number of instances");
  bench->add_option("--gap", bench_opt.gap, "certificate gap");
  bench->add_option("--xi", bench_opt.xi, "exponent parameter");
  bench->add_option("--eta", bench_opt.eta, "step size");
  bench->add_option("--tol", bench_opt.tol, "residual stop");
  bench->add_option("--seed", bench_opt.seed,
                    "base seed; instance i uses seed+i");
  bench->add_flag("--identity-b", bench_opt.identity_b,
                  "use B = I and report the comparison bound column");
  bench->add_option("--out", bench_opt.out_path,
                    "CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  solve_opt.xi_explicit = xi_opt->count() > 0;
  if (l1_opt->count() > 0) {
    solve_opt.lambda1 = lambda1_raw;
  }
  if (l2_opt->count() > 0) {
    solve_opt.lambda2 = lambda2_raw;
  }
  if (t_end_opt->count() > 0) {
    solve_opt.t_end = t_end_raw;
  }
  if (h_opt->count() > 0) {
    solve_opt.h = h_raw;
  }
  if (seed_opt->count() > 0) {
    solve_opt.seed = seed_raw;
  }

  try {
    if (app.got_subcommand(certify)) {
      return run_certify(certify_opt);
    }
    if (app.got_subcommand(solve)) {
      return run_solve(solve_opt);
    }
    if (app.got_subcommand(convert)) {
      return run_convert(convert_opt);
    }
    if (app.got_subcommand(gen)) {
      return run_gen(gen_opt);
    }
    if (app.got_subcommand(bench)) {
      return run_bench(bench_opt);
    }
  } catch (const gave::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
