#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mublp/io_json.hpp"
#include "mublp/karlsson.hpp"
#include "mublp/mps.hpp"
#include "mublp/mub_sets.hpp"
#include "mublp/simplex.hpp"
#include "mublp/verifier.hpp"

using namespace mublp;

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  if (out.empty()) throw std::invalid_argument("expected a comma-separated integer list");
  return out;
}

void dump_json(const nlohmann::json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << j.dump(1) << "\n";
}

double hadamard_residual(const PhaseMatrix& m) {
  const int d = m.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Complex s{};
      for (int k = 0; k < d; ++k) s += m(i, k) * std::conj(m(j, k));
      if (i == j) s -= Complex(d, 0.0);
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

void print_report(const VerificationReport& rep) {
  std::printf("claim = %s\n", rep.claim.c_str());
  std::printf("samples = %lld\n", static_cast<long long>(rep.samples));
  std::printf("singular_points = %lld\n", static_cast<long long>(rep.singular_points));
  std::printf("max_residual = %.12g\n", rep.max_residual);
  std::printf("tol = %.12g\n", rep.tol);
  std::printf("seed = %llu\n", static_cast<unsigned long long>(rep.seed));
  for (const auto& [k, v] : rep.notes) std::printf("note %s = %s\n", k.c_str(), v.c_str());
  for (const auto& f : rep.failures) std::printf("failure: %s\n", f.c_str());
  std::printf("pass = %s\n", rep.pass ? "yes" : "no");
}

struct CommonOpts {
  int threads = 0;
  std::uint64_t seed = kDefaultSeed;
};

int run_karlsson(const CommonOpts& c, double theta, double phi, double z1_arg,
                 const std::string& branch, const std::string& out_path,
                 const std::string& json_path) {
  KarlssonParams p;
  p.theta = theta;
  p.phi = phi;
  p.z1 = std::polar(1.0, z1_arg);
  std::vector<int> b = parse_int_list(branch);
  if (b.size() != 3) throw std::invalid_argument("--branch expects three selectors");
  p.branch_z3 = b[0];
  p.branch_z2 = b[1];
  p.branch_z4 = b[2];

  ZChain zc = derive_zs(p);
  PhaseMatrix m = build(p);
  const double resid = hadamard_residual(m);

  std::printf("seed = %llu\n", static_cast<unsigned long long>(c.seed));
  std::printf("theta = %.12g\nphi = %.12g\nz1 = %.12g%+.12gi\n", theta, phi, p.z1.real(),
              p.z1.imag());
  std::printf("z2 = %.12g%+.12gi\nz3 = %.12g%+.12gi\nz4 = %.12g%+.12gi\n", zc.z2.real(),
              zc.z2.imag(), zc.z3.real(), zc.z3.imag(), zc.z4.real(), zc.z4.imag());
  std::printf("unitarity_residual = %.12g\n", resid);
  std::printf("cross_residual = %.12g\n", zc.cross_residual);
  std::printf("is_hadamard = %s\n", is_hadamard(m) ? "yes" : "no");

  if (!out_path.empty()) {
    write_matrix_json(m, out_path);
    std::printf("wrote %s\n", out_path.c_str());
  }
  if (!json_path.empty()) {
    nlohmann::json j = matrix_to_json(m);
    j["seed"] = c.seed;
    j["unitarity_residual"] = resid;
    j["cross_residual"] = zc.cross_residual;
    dump_json(j, json_path);
  }
  return is_hadamard(m) ? 0 : 1;
}

int run_eval(const CommonOpts& c, const std::string& matrix_path, const std::string& gamma_str,
             const std::string& json_path) {
  PhaseMatrix m = read_matrix_json(matrix_path);
  ExponentVector gamma = parse_int_list(gamma_str);
  Complex g = g_single(m, gamma);
  const double bigG = G_single(m, gamma);

  std::printf("seed = %llu\n", static_cast<unsigned long long>(c.seed));
  std::printf("matrix = %s (d=%d)\n", m.label().c_str(), m.dim());
  std::printf("gamma = %s\n", format_exponents(gamma).c_str());
  std::printf("g = %.12g%+.12gi\n", g.real(), g.imag());
  std::printf("abs_g = %.12g\n", std::abs(g));
  std::printf("G = %.12g\n", bigG);

  if (!json_path.empty()) {
    nlohmann::json j;
    j["seed"] = c.seed;
    j["matrix"] = m.label();
    j["d"] = m.dim();
    j["gamma"] = gamma;
    j["g_re"] = g.real();
    j["g_im"] = g.imag();
    j["abs_g"] = std::abs(g);
    j["G"] = bigG;
    dump_json(j, json_path);
  }
  return 0;
}

int run_gamma_space(const CommonOpts& c, int d, int l, bool list, const std::string& json_path) {
  std::vector<GammaOrbit> orbits = enumerate_gamma(d, l);
  const std::uint64_t raw = raw_point_count(d, l);
  const double mb =
      static_cast<double>(orbits.size()) * (48.0 + 4.0 * d) / (1024.0 * 1024.0);

  std::printf("seed = %llu\n", static_cast<unsigned long long>(c.seed));
  std::printf("d = %d\nl = %d\n", d, l);
  std::printf("orbits = %zu\n", orbits.size());
  std::printf("raw_points = %llu\n", static_cast<unsigned long long>(raw));
  std::printf("orbit_table_mb = %.12g\n", mb);
  if (list)
    for (const auto& o : orbits)
      std::printf("  %s size=%lld\n", format_exponents(o.rep).c_str(),
                  static_cast<long long>(o.orbit_size));

  if (!json_path.empty()) {
    nlohmann::json j;
    j["seed"] = c.seed;
    j["d"] = d;
    j["l"] = l;
    j["orbits"] = orbits.size();
    j["raw_points"] = raw;
    j["orbit_table_mb"] = mb;
    dump_json(j, json_path);
  }
  return 0;
}

void print_stats(const LpProblem& p) {
  LpStats st = stats(p);
  std::printf("variables = %lld\nrows = %lld\nnonzeros = %lld\nest_memory_mb = %.12g\n",
              static_cast<long long>(st.variables), static_cast<long long>(st.rows),
              static_cast<long long>(st.nonzeros), st.est_memory_mb);
}

nlohmann::json stats_json(const LpProblem& p) {
  LpStats st = stats(p);
  nlohmann::json j;
  j["variables"] = st.variables;
  j["rows"] = st.rows;
  j["nonzeros"] = st.nonzeros;
  j["est_memory_mb"] = st.est_memory_mb;
  return j;
}

int run_build_lp(const CommonOpts& c, int d, int l, bool karlsson_mode, const std::string& coupling,
                 const std::string& sense, const std::string& family, const std::string& rho_str,
                 const std::string& export_path, const std::string& json_path) {
  CouplingVariant variant = coupling == "plus" ? CouplingVariant::plus : CouplingVariant::minus;
  LpProblem p = build_lp(d, l, karlsson_mode, variant, resolve_threads(c.threads));
  if (!rho_str.empty()) {
    ExponentVector rho = parse_int_list(rho_str);
    p = set_objective(p, sense == "max" ? ObjectiveSense::maximize : ObjectiveSense::minimize,
                      family == "G" ? Family::G : Family::F, rho);
  }

  std::printf("seed = %llu\n", static_cast<unsigned long long>(c.seed));
  std::printf("d = %d\nl = %d\nkarlsson_mode = %d\ncoupling_variant = %s\n", d, l,
              karlsson_mode ? 1 : 0, variant == CouplingVariant::plus ? "plus" : "minus");
  print_stats(p);
  if (p.objective.is_set)
    std::printf("objective = %s %s\n", sense.c_str(), p.objective.column_name.c_str());

  if (!export_path.empty()) {
    export_mps(p, export_path);
    std::printf("wrote %s\nwrote %s\n", export_path.c_str(),
                sidecar_path(export_path).c_str());
  }
  if (!json_path.empty()) {
    nlohmann::json j = stats_json(p);
    j["seed"] = c.seed;
    j["d"] = d;
    j["l"] = l;
    j["karlsson_mode"] = karlsson_mode;
    if (p.objective.is_set) j["objective_column"] = p.objective.column_name;
    dump_json(j, json_path);
  }
  return 0;
}

int solve_and_print(const CommonOpts& c, const LpProblem& p, const std::string& mode,
                    std::int64_t iteration_cap, double time_cap, double verify_tol,
                    const std::string& out_path) {
  SolverOptions opts;
  if (mode == "exact") opts.mode = SolverMode::exact_rational;
  if (iteration_cap > 0) opts.iteration_cap = iteration_cap;
  if (time_cap > 0) opts.time_cap_seconds = time_cap;

  LpSolution s = solve(p, opts);
  std::printf("seed = %llu\n", static_cast<unsigned long long>(c.seed));
  std::printf("status = %s\n", status_name(s.status));
  std::printf("objective = %.12g\n", s.objective);
  if (!s.objective_exact.empty()) std::printf("objective_exact = %s\n", s.objective_exact.c_str());
  std::printf("iterations = %lld\n", static_cast<long long>(s.iterations));
  std::printf("seconds = %.12g\n", s.seconds);
  if (s.status != SolveStatus::optimal) return 3;

  if (opts.mode == SolverMode::exact_rational) {
    mpq_class obj(s.objective_exact);
    obj.canonicalize();
    mpq_class gap = obj - dual_objective_bound_exact(p, s);
    if (p.objective.sense == ObjectiveSense::maximize) gap = -gap;
    std::printf("duality_gap_exact = %s\n", gap.get_str().c_str());
  } else {
    double gap = s.objective - dual_objective_bound(p, s);
    if (p.objective.sense == ObjectiveSense::maximize) gap = -gap;
    std::printf("duality_gap = %.12g\n", gap);
  }

  VerificationReport rep = verify_solution(p, s, verify_tol);
  std::printf("row_check_max_residual = %.12g\n", rep.max_residual);
  std::printf("row_check = %s\n", rep.pass ? "pass" : "fail");
  if (!out_path.empty()) {
    write_solution_json(p, s, out_path);
    std::printf("wrote %s\n", out_path.c_str());
  }
  return rep.pass ? 0 : 1;
}

int run_solve(const CommonOpts& c, const std::string& mps_path, int d, int l, bool karlsson_mode,
              const std::string& coupling, const std::string& sense, const std::string& family,
              const std::string& rho_str, const std::string& mode, std::int64_t iteration_cap,
              double time_cap, double verify_tol, const std::string& out_path) {
  LpProblem p;
  if (!mps_path.empty()) {
    p = import_mps(mps_path);
  } else {
    if (d <= 0 || l <= 0 || rho_str.empty())
      throw std::invalid_argument("solve needs either --mps or --d/--l/--rho");
    CouplingVariant variant = coupling == "plus" ? CouplingVariant::plus : CouplingVariant::minus;
    p = build_lp(d, l, karlsson_mode, variant, resolve_threads(c.threads));
    p = set_objective(p, sense == "max" ? ObjectiveSense::maximize : ObjectiveSense::minimize,
                      family == "G" ? Family::G : Family::F, parse_int_list(rho_str));
  }
  return solve_and_print(c, p, mode, iteration_cap, time_cap, verify_tol, out_path);
}

int run_verify(const CommonOpts& c, const std::string& claim, const std::string& grid_str,
               bool all_branches, double tol, int samples, const std::string& json_path) {
  GridSpec grid;
  {
    std::vector<int> g = parse_int_list(grid_str);
    if (g.size() != 3) throw std::invalid_argument("--grid expects n_theta,n_phi,n_z");
    grid.n_theta = g[0];
    grid.n_phi = g[1];
    grid.n_z = g[2];
    grid.all_branches = all_branches;
  }
  const int threads = resolve_threads(c.threads);
  std::vector<VerificationReport> reps;

  if (claim == "vanishing") {
    reps.push_back(verify_vanishing(grid, tol > 0 ? tol : 1e-9, c.seed, threads));
  } else if (claim == "construction") {
    reps.push_back(verify_construction(grid, tol > 0 ? tol : 1e-9, 1e-8, threads));
  } else if (claim == "identities") {
    reps.push_back(verify_identities(grid, tol > 0 ? tol : 1e-10, 1e-9));
  } else if (claim == "spectral") {
    reps.push_back(verify_spectral_counterexample());
  } else if (claim == "constraints") {
    reps.push_back(verify_constraint_identities(standard_mub_set(2), samples, c.seed));
    reps.push_back(verify_constraint_identities(standard_mub_set(3), samples, c.seed));
    KarlssonParams kp;
    kp.theta = 0.3;
    kp.phi = 1.1;
    kp.z1 = std::polar(1.0, 0.7);
    reps.push_back(verify_constraint_identities({fourier_matrix(6), build(kp)}, samples,
                                                c.seed));
  } else if (claim == "witness") {
    reps.push_back(verify_lp_witness(2, 4));
    reps.push_back(verify_lp_witness(3, 6));
  } else {
    throw std::invalid_argument("unknown claim: " + claim);
  }

  bool all_pass = true;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (i) std::printf("--\n");
    print_report(reps[i]);
    all_pass = all_pass && reps[i].pass;
  }
  if (!json_path.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reps) arr.push_back(report_to_json(r));
    dump_json(arr.size() == 1 ? arr[0] : arr, json_path);
  }
  return all_pass ? 0 : 1;
}

int run_table1(const CommonOpts& c, int l, const std::string& rho_str, const std::string& family,
               bool karlsson_mode, const std::string& coupling, const std::string& export_path,
               const std::string& solve_kind, const std::string& mode,
               const std::string& json_path) {
  ExponentVector rho = parse_int_list(rho_str);
  const int d = static_cast<int>(rho.size());
  const ExponentVector rep = canonical_rep(rho);
  const int n = l1_norm(rep);

  std::printf("seed = %llu\n", static_cast<unsigned long long>(c.seed));
  std::printf("d = %d\nl = %d\nrho = %s\n", d, l, format_exponents(rho).c_str());

  nlohmann::json j;
  j["seed"] = c.seed;
  j["d"] = d;
  j["l"] = l;
  j["rho"] = rho;

  if (n > l) {
    std::printf("lower_bound = n/a (|rho|_1 = %d exceeds l = %d)\n", n, l);
    j["lower_bound"] = "n/a";
    dump_json(j, json_path);
    return 0;
  }

  CouplingVariant variant = coupling == "plus" ? CouplingVariant::plus : CouplingVariant::minus;
  LpProblem p = build_lp(d, l, karlsson_mode, variant, resolve_threads(c.threads));
  p = set_objective(p, ObjectiveSense::minimize, family == "G" ? Family::G : Family::F, rho);
  print_stats(p);
  j.update(stats_json(p));
  j["objective_column"] = p.objective.column_name;

  if (!export_path.empty()) {
    export_mps(p, export_path);
    std::printf("wrote %s\nwrote %s\n", export_path.c_str(),
                sidecar_path(export_path).c_str());
  }

  if (solve_kind == "embedded") {
    if (d >= 6)
      std::fprintf(stderr, "note: embedded solves at d=%d can run for minutes to hours\n", d);
    SolverOptions opts;
    if (mode == "exact") opts.mode = SolverMode::exact_rational;
    LpSolution s = solve(p, opts);
    std::printf("status = %s\n", status_name(s.status));
    std::printf("iterations = %lld\nseconds = %.12g\n", static_cast<long long>(s.iterations),
                s.seconds);
    j["status"] = status_name(s.status);
    j["iterations"] = s.iterations;
    if (s.status != SolveStatus::optimal) {
      dump_json(j, json_path);
      return 3;
    }
    std::printf("lower_bound = %.12g\n", s.objective);
    if (!s.objective_exact.empty())
      std::printf("lower_bound_exact = %s\n", s.objective_exact.c_str());
    j["lower_bound"] = s.objective;
    if (!s.objective_exact.empty()) j["lower_bound_exact"] = s.objective_exact;
  }
  dump_json(j, json_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hadamard construction, Fourier functionals, and LP bounds for the dimension-6 "
               "complete-MUB problem"};
  app.require_subcommand(1);

  CommonOpts common;
  app.add_option("--threads", common.threads,
                 "worker threads (0 = MUBLP_THREADS env or hardware default)");
  app.add_option("--seed", common.seed, "seed for randomized sampling");

  int rc = 0;

  // karlsson
  double theta = 0.0, phi = 0.0, z1_arg = 0.0;
  std::string branch = "1,1,1", k_out, k_json;
  auto* k = app.add_subcommand("karlsson", "build one family matrix and report its residuals");
  k->add_option("--theta", theta, "first angle (radians)");
  k->add_option("--phi", phi, "second angle (radians)");
  k->add_option("--z1-arg", z1_arg, "argument of the free unit z1 (radians)");
  k->add_option("--branch", branch, "square-root branch selectors b3,b2,b4");
  k->add_option("--out", k_out, "write the matrix as JSON");
  k->add_option("--json", k_json, "write a machine-readable summary");
  k->callback([&] { rc = run_karlsson(common, theta, phi, z1_arg, branch, k_out, k_json); });

  // eval
  std::string e_matrix, e_gamma, e_json;
  auto* e = app.add_subcommand("eval", "evaluate g and G for a matrix and exponent vector");
  e->add_option("--matrix", e_matrix, "matrix JSON file")->required();
  e->add_option("--gamma", e_gamma, "comma-separated exponents")->required();
  e->add_option("--json", e_json, "write a machine-readable summary");
  e->callback([&] { rc = run_eval(common, e_matrix, e_gamma, e_json); });

  // gamma-space
  int gs_d = 0, gs_l = 0;
  bool gs_stats = false, gs_list = false;
  std::string gs_json;
  auto* gs = app.add_subcommand("gamma-space", "enumerate exponent orbits and report sizes");
  gs->add_option("--d", gs_d, "dimension")->required();
  gs->add_option("--l", gs_l, "l1 radius")->required();
  gs->add_flag("--stats", gs_stats, "print counts only (default)");
  gs->add_flag("--list", gs_list, "also print every orbit representative");
  gs->add_option("--json", gs_json, "write a machine-readable summary");
  gs->callback([&] { rc = run_gamma_space(common, gs_d, gs_l, gs_list, gs_json); });

  // build-lp
  int bl_d = 0, bl_l = 0;
  bool bl_karlsson = false;
  std::string bl_coupling = "minus", bl_sense = "min", bl_family = "F", bl_rho, bl_export, bl_json;
  auto* bl = app.add_subcommand("build-lp", "assemble the LP and optionally export it as MPS");
  bl->add_option("--d", bl_d, "dimension")->required();
  bl->add_option("--l", bl_l, "l1 radius")->required();
  bl->add_flag("--karlsson", bl_karlsson, "pin the family-forced zero orbit (d=6)");
  bl->add_option("--coupling", bl_coupling, "coupling row variant: minus|plus")
      ->check(CLI::IsMember({"minus", "plus"}));
  bl->add_option("--sense", bl_sense, "objective sense: min|max")
      ->check(CLI::IsMember({"min", "max"}));
  bl->add_option("--family", bl_family, "objective family: F|G")
      ->check(CLI::IsMember({"F", "G"}));
  bl->add_option("--rho", bl_rho, "objective exponent vector");
  bl->add_option("--export", bl_export, "MPS output path");
  bl->add_option("--json", bl_json, "write a machine-readable summary");
  bl->callback([&] {
    rc = run_build_lp(common, bl_d, bl_l, bl_karlsson, bl_coupling, bl_sense, bl_family, bl_rho,
                      bl_export, bl_json);
  });

  // solve
  std::string s_mps, s_coupling = "minus", s_sense = "min", s_family = "F", s_rho, s_mode = "float",
              s_out;
  int s_d = 0, s_l = 0;
  bool s_karlsson = false;
  std::int64_t s_itcap = 0;
  double s_timecap = 0.0, s_vtol = 1e-6;
  auto* so = app.add_subcommand("solve", "run the simplex solver and check the solution rows");
  so->add_option("--mps", s_mps, "solve an exported MPS file");
  so->add_option("--d", s_d, "dimension (when building directly)");
  so->add_option("--l", s_l, "l1 radius (when building directly)");
  so->add_flag("--karlsson", s_karlsson, "pin the family-forced zero orbit (d=6)");
  so->add_option("--coupling", s_coupling, "coupling row variant: minus|plus")
      ->check(CLI::IsMember({"minus", "plus"}));
  so->add_option("--sense", s_sense, "objective sense: min|max")
      ->check(CLI::IsMember({"min", "max"}));
  so->add_option("--family", s_family, "objective family: F|G")
      ->check(CLI::IsMember({"F", "G"}));
  so->add_option("--rho", s_rho, "objective exponent vector");
  so->add_option("--mode", s_mode, "arithmetic: float|exact")
      ->check(CLI::IsMember({"float", "exact"}));
  so->add_option("--iteration-cap", s_itcap, "simplex iteration cap");
  so->add_option("--time-cap", s_timecap, "wall-clock cap in seconds");
  so->add_option("--verify-tol", s_vtol, "row residual tolerance for the post-check");
  so->add_option("--out", s_out, "write the solution as JSON");
  so->callback([&] {
    rc = run_solve(common, s_mps, s_d, s_l, s_karlsson, s_coupling, s_sense, s_family, s_rho, s_mode,
                   s_itcap, s_timecap, s_vtol, s_out);
  });

  // verify
  std::string v_claim, v_grid = "20,20,8", v_json;
  bool v_branches = false;
  double v_tol = 0.0;
  int v_samples = 100;
  auto* v = app.add_subcommand("verify", "certify a named numerical claim");
  v->add_option("--claim", v_claim,
                "vanishing|construction|identities|spectral|constraints|witness")
      ->required();
  v->add_option("--grid", v_grid, "grid as n_theta,n_phi,n_z");
  v->add_flag("--all-branches", v_branches, "sweep all 8 branch selector combinations");
  v->add_option("--tol", v_tol, "override the claim's main tolerance");
  v->add_option("--samples", v_samples, "random samples for the constraints claim");
  v->add_option("--json", v_json, "write the report(s) as JSON");
  v->callback([&] { rc = run_verify(common, v_claim, v_grid, v_branches, v_tol, v_samples, v_json); });

  // table1
  int t_l = 0;
  std::string t_rho, t_family = "F", t_coupling = "minus", t_export, t_solve = "none",
              t_mode = "float", t_json;
  bool t_karlsson = false;
  auto* t = app.add_subcommand("table1", "lower-bound experiment: minimize F(rho) over the space");
  t->add_option("--l", t_l, "l1 radius")->required();
  t->add_option("--rho", t_rho, "objective exponent vector (its length sets d)")->required();
  t->add_option("--family", t_family, "objective family: F|G")
      ->check(CLI::IsMember({"F", "G"}));
  t->add_flag("--karlsson", t_karlsson, "pin the family-forced zero orbit (d=6)");
  t->add_option("--coupling", t_coupling, "coupling row variant: minus|plus")
      ->check(CLI::IsMember({"minus", "plus"}));
  t->add_option("--export", t_export, "MPS output path");
  t->add_option("--solve", t_solve, "embedded|none")->check(CLI::IsMember({"embedded", "none"}));
  t->add_option("--mode", t_mode, "arithmetic: float|exact")
      ->check(CLI::IsMember({"float", "exact"}));
  t->add_option("--json", t_json, "write a machine-readable summary");
  t->callback([&] {
    rc = run_table1(common, t_l, t_rho, t_family, t_karlsson, t_coupling, t_export, t_solve, t_mode,
                    t_json);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return 2;
  } catch (const SingularTransformError& ex) {
    std::fprintf(stderr, "error: %s (input %.12g%+.12gi, |denominator| = %.3e)\n", ex.what(),
                 ex.offending_input().real(), ex.offending_input().imag(),
                 ex.denominator_modulus());
    return 1;
  } catch (const OrbitOutsideSpaceError& ex) {
    std::fprintf(stderr, "error: %s (|rho|_1 = %d, l = %d)\n", ex.what(), ex.l1_norm(), ex.l());
    return 2;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return rc;
}
