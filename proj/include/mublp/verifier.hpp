#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mublp/fourier.hpp"
#include "mublp/karlsson.hpp"
#include "mublp/lp_model.hpp"
#include "mublp/mub_sets.hpp"
#include "mublp/parallel.hpp"
#include "mublp/phase_matrix.hpp"
#include "mublp/simplex.hpp"

namespace mublp {

inline constexpr std::uint64_t kDefaultSeed = 20260814;
inline constexpr int kMaxRecordedFailures = 20;

/// Symmetrized |g| at (1,1,1,-1,-1,-1) for the isolated 6x6 matrix.
/// Pinned by the exact root-of-unity counting oracle in the test suite;
/// every unsymmetrized column sum there has modulus exactly 3.
inline constexpr double kSpectralRhoModulus = 1.5;
inline constexpr double kSpectralUnsymModulus = 3.0;

struct VerificationReport {
  std::string claim;
  std::int64_t samples = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::uint64_t seed = 0;
  std::int64_t singular_points = 0;
  std::vector<std::string> failures;  // capped at kMaxRecordedFailures
  std::vector<std::pair<std::string, std::string>> notes;
};

struct GridSpec {
  int n_theta = 20;
  int n_phi = 20;
  int n_z = 8;
  bool all_branches = false;
};

namespace detail {

inline void record_failure(std::vector<std::string>& sink, std::string entry) {
  if (sink.size() < kMaxRecordedFailures) sink.push_back(std::move(entry));
}

inline std::string format_params(const KarlssonParams& p) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "theta=%.6f phi=%.6f argz1=%.6f branches=%+d,%+d,%+d", p.theta,
                p.phi, std::arg(p.z1), p.branch_z3, p.branch_z2, p.branch_z4);
  return buf;
}

inline std::vector<KarlssonParams> grid_points(const GridSpec& grid) {
  std::vector<KarlssonParams> pts;
  const double tau = 2.0 * std::numbers::pi;
  const int combos = grid.all_branches ? 8 : 1;
  pts.reserve(static_cast<std::size_t>(grid.n_theta) * grid.n_phi * grid.n_z * combos);
  for (int a = 0; a < grid.n_theta; ++a)
    for (int b = 0; b < grid.n_phi; ++b)
      for (int c = 0; c < grid.n_z; ++c)
        for (int s = 0; s < combos; ++s) {
          KarlssonParams p;
          p.theta = tau * a / grid.n_theta;
          p.phi = tau * b / grid.n_phi;
          p.z1 = std::polar(1.0, tau * c / grid.n_z);
          p.branch_z3 = (s & 1) ? -1 : 1;
          p.branch_z2 = (s & 2) ? -1 : 1;
          p.branch_z4 = (s & 4) ? -1 : 1;
          pts.push_back(p);
        }
  return pts;
}

struct GridAccumulator {
  double max_residual = 0.0;
  std::int64_t samples = 0;
  std::int64_t singular = 0;
  std::vector<std::string> failures;

  void merge(const GridAccumulator& other) {
    max_residual = std::max(max_residual, other.max_residual);
    samples += other.samples;
    singular += other.singular;
    for (const auto& f : other.failures) record_failure(failures, f);
  }
};

}  // namespace detail

/// Max |g| at (1,1,1,-1,-1,-1) and (1,-1,1,-1,1,-1) plus 5 random
/// permutations per grid point, over the construction grid.
inline VerificationReport verify_vanishing(const GridSpec& grid, double tol = 1e-9,
                                          std::uint64_t seed = kDefaultSeed, int threads = 0) {
  if (tol <= 0) throw std::invalid_argument("verify_vanishing: tol must be positive");
  const auto pts = detail::grid_points(grid);
  const int nthreads = resolve_threads(threads);

  std::vector<detail::GridAccumulator> acc(static_cast<std::size_t>(nthreads));
  parallel_chunks(pts.size(), nthreads, [&](std::size_t begin, std::size_t end, int chunk) {
    auto& a = acc[static_cast<std::size_t>(chunk)];
    for (std::size_t at = begin; at < end; ++at) {
      const KarlssonParams& p = pts[at];
      PhaseMatrix k;
      try {
        k = build(p);
      } catch (const SingularTransformError&) {
        ++a.singular;
        continue;
      }
      std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (at + 1));
      std::vector<ExponentVector> gammas{{1, 1, 1, -1, -1, -1}, {1, -1, 1, -1, 1, -1}};
      for (int extra = 0; extra < 5; ++extra) {
        ExponentVector g{1, 1, 1, -1, -1, -1};
        std::shuffle(g.begin(), g.end(), rng);
        gammas.push_back(std::move(g));
      }
      for (const auto& g : gammas) {
        double r = std::abs(g_single(k, g));
        ++a.samples;
        if (r > a.max_residual) a.max_residual = r;
        if (r > tol)
          detail::record_failure(a.failures,
                                 detail::format_params(p) + " gamma=" + format_exponents(g) +
                                     " |g|=" + std::to_string(r));
      }
    }
  });

  detail::GridAccumulator total;
  for (const auto& a : acc) total.merge(a);
  VerificationReport rep;
  rep.claim = "vanishing";
  rep.samples = total.samples;
  rep.max_residual = total.max_residual;
  rep.tol = tol;
  rep.seed = seed;
  rep.singular_points = total.singular;
  rep.failures = std::move(total.failures);
  rep.pass = total.max_residual <= tol;
  rep.notes.emplace_back("grid", std::to_string(grid.n_theta) + "x" + std::to_string(grid.n_phi) +
                                     "x" + std::to_string(grid.n_z) +
                                     (grid.all_branches ? " x8 branches" : ""));
  return rep;
}

/// Hadamard and cross-relation residuals of the construction itself over
/// the grid; every non-singular point must assemble cleanly.
inline VerificationReport verify_construction(const GridSpec& grid, double tol = 1e-9,
                                              double cross_tol = 1e-8, int threads = 0) {
  if (tol <= 0 || cross_tol <= 0)
    throw std::invalid_argument("verify_construction: tolerances must be positive");
  const auto pts = detail::grid_points(grid);
  const int nthreads = resolve_threads(threads);

  std::vector<detail::GridAccumulator> acc(static_cast<std::size_t>(nthreads));
  std::vector<double> cross_max(static_cast<std::size_t>(nthreads), 0.0);
  parallel_chunks(pts.size(), nthreads, [&](std::size_t begin, std::size_t end, int chunk) {
    auto& a = acc[static_cast<std::size_t>(chunk)];
    double& cmax = cross_max[static_cast<std::size_t>(chunk)];
    for (std::size_t at = begin; at < end; ++at) {
      const KarlssonParams& p = pts[at];
      try {
        ZChain zc = derive_zs(p);
        PhaseMatrix k = build(p);
        double herr = std::max(k.max_entry_modulus_error(), k.max_unitarity_error());
        ++a.samples;
        if (herr > a.max_residual) a.max_residual = herr;
        if (zc.cross_residual > cmax) cmax = zc.cross_residual;
        if (herr > tol || zc.cross_residual > cross_tol)
          detail::record_failure(a.failures, detail::format_params(p) +
                                                 " hadamard=" + std::to_string(herr) +
                                                 " cross=" + std::to_string(zc.cross_residual));
      } catch (const SingularTransformError&) {
        ++a.singular;
      }
    }
  });

  detail::GridAccumulator total;
  double cmax = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    total.merge(acc[i]);
    cmax = std::max(cmax, cross_max[i]);
  }
  VerificationReport rep;
  rep.claim = "construction";
  rep.samples = total.samples;
  rep.max_residual = total.max_residual;
  rep.tol = tol;
  rep.singular_points = total.singular;
  rep.failures = std::move(total.failures);
  rep.pass = rep.failures.empty() && total.max_residual <= tol && cmax <= cross_tol;
  rep.notes.emplace_back("max_cross_residual", std::to_string(cmax));
  rep.notes.emplace_back("cross_tol", std::to_string(cross_tol));
  return rep;
}

/// Sweeps the two scalar identities over (theta, phi); reports which
/// reading of the bracket's last term vanishes.
inline VerificationReport verify_identities(const GridSpec& grid, double tol_i0 = 1e-10,
                                            double tol_i1 = 1e-9) {
  if (tol_i0 <= 0 || tol_i1 <= 0)
    throw std::invalid_argument("verify_identities: tolerances must be positive");
  const double tau = 2.0 * std::numbers::pi;
  double max_i0 = 0.0, max_printed = 0.0, max_conj = 0.0;
  std::int64_t samples = 0;
  for (int a = 0; a < grid.n_theta; ++a) {
    for (int b = 0; b < grid.n_phi; ++b) {
      ABEntries e = ab_blocks(tau * a / grid.n_theta, tau * b / grid.n_phi);
      max_i0 = std::max(max_i0, identity_I0_residual(e));
      max_printed = std::max(max_printed, std::abs(identity_I1_bracket(e, BracketReading::printed)));
      max_conj = std::max(max_conj, std::abs(identity_I1_bracket(e, BracketReading::conjugated)));
      ++samples;
    }
  }
  const bool printed_ok = max_printed <= tol_i1;
  const bool conj_ok = max_conj <= tol_i1;
  VerificationReport rep;
  rep.claim = "identities";
  rep.samples = samples;
  rep.max_residual = max_i0;
  rep.tol = tol_i0;
  rep.pass = max_i0 <= tol_i0 && (printed_ok != conj_ok);
  rep.notes.emplace_back("i0_max_residual", std::to_string(max_i0));
  rep.notes.emplace_back("i1_max_printed", std::to_string(max_printed));
  rep.notes.emplace_back("i1_max_conjugated", std::to_string(max_conj));
  rep.notes.emplace_back("i1_tol", std::to_string(tol_i1));
  rep.notes.emplace_back("i1_vanishing_reading", printed_ok && conj_ok ? "both"
                                                 : printed_ok          ? "printed"
                                                 : conj_ok             ? "conjugated"
                                                                       : "none");
  return rep;
}

/// The isolated 6x6 matrix does NOT satisfy the vanishing claim: |g| at
/// (1,1,1,-1,-1,-1) is pinned well away from zero.
inline VerificationReport verify_spectral_counterexample() {
  const PhaseMatrix s = spectral_matrix();
  const ExponentVector rho{1, 1, 1, -1, -1, -1};
  const Complex g = g_single(s, rho);
  const double mod = std::abs(g);

  // unsymmetrized column sums, one per permutation
  const auto args = detail::entry_args(s);
  const auto& perms = permutation_table(6);
  const std::size_t nperm = perms.size() / 6;
  double min_u = 0.0, max_u = 0.0;
  std::vector<double> phi(6);
  for (std::size_t p = 0; p < nperm; ++p) {
    detail::column_phases(args, 6, &perms[p * 6], rho, phi);
    Complex u{0.0, 0.0};
    for (int k = 0; k < 6; ++k) u += std::polar(1.0, phi[k]);
    double m = std::abs(u);
    if (p == 0) min_u = max_u = m;
    min_u = std::min(min_u, m);
    max_u = std::max(max_u, m);
  }

  VerificationReport rep;
  rep.claim = "spectral";
  rep.samples = static_cast<std::int64_t>(nperm);
  rep.max_residual = std::abs(mod - kSpectralRhoModulus);
  rep.tol = 1e-9;
  rep.pass = mod > 0.1 && rep.max_residual <= rep.tol &&
             std::abs(min_u - kSpectralUnsymModulus) <= 1e-9 &&
             std::abs(max_u - kSpectralUnsymModulus) <= 1e-9;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", mod);
  rep.notes.emplace_back("modulus", buf);
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", g.real(), g.imag());
  rep.notes.emplace_back("g", buf);
  rep.notes.emplace_back("unsym_modulus_min", std::to_string(min_u));
  rep.notes.emplace_back("unsym_modulus_max", std::to_string(max_u));
  return rep;
}

namespace detail {

inline ExponentVector random_gamma(int d, std::mt19937_64& rng) {
  const int half = d >= 6 ? 2 : 4;
  std::uniform_int_distribution<int> dist(-half, half);
  while (true) {
    ExponentVector g(static_cast<std::size_t>(d));
    for (auto& v : g) v = dist(rng);
    if (l1_norm(g) <= 12) return g;
  }
}

}  // namespace detail

/// Shift identities on explicit matrices: per matrix the row-shift sum
/// equals d^2; on complete sets also the d^4 identity, the zero-point
/// values, and the Cauchy-Schwarz inequality.
inline VerificationReport verify_constraint_identities(const std::vector<PhaseMatrix>& ms,
                                                       int samples = 100,
                                                       std::uint64_t seed = kDefaultSeed,
                                                       double tol_shift = 1e-7,
                                                       double tol_set = 1e-6) {
  if (ms.empty()) throw DimensionError("verify_constraint_identities: empty matrix set");
  if (samples <= 0) throw std::invalid_argument("verify_constraint_identities: samples must be positive");
  const int d = ms[0].dim();
  const double d2 = static_cast<double>(d) * d;
  const double d3 = d2 * d;
  const double d4 = d3 * d;

  bool complete = static_cast<int>(ms.size()) == d;
  if (complete) {
    for (std::size_t i = 0; complete && i < ms.size(); ++i)
      for (std::size_t j = i + 1; complete && j < ms.size(); ++j)
        if (!is_unbiased_pair(ms[i], ms[j], 1e-9)) complete = false;
  }

  std::mt19937_64 rng(seed);
  VerificationReport rep;
  rep.claim = "constraints";
  rep.seed = seed;
  rep.tol = tol_shift;
  double max_shift = 0.0, max_set = 0.0, max_cs = 0.0;

  for (int n = 0; n < samples; ++n) {
    ExponentVector g = detail::random_gamma(d, rng);
    for (const auto& m : ms) {
      double total = 0.0;
      ExponentVector shifted = g;
      for (int r = 0; r < d; ++r) {
        shifted[r] += 1;
        total += G_single(m, shifted);
        shifted[r] -= 1;
      }
      double res = std::abs(total - d2);
      ++rep.samples;
      max_shift = std::max(max_shift, res);
      if (res > tol_shift)
        detail::record_failure(rep.failures, m.label() + " gamma=" + format_exponents(g) +
                                                 " shift_residual=" + std::to_string(res));
    }
    if (complete) {
      double lhs = d * G_set(ms, g);
      ExponentVector shifted = g;
      for (int r = 0; r < d; ++r) {
        for (int t = 0; t < d; ++t) {
          if (r == t) continue;
          shifted[r] += 1;
          shifted[t] -= 1;
          lhs += F_set(ms, shifted);
          shifted[r] -= 1;
          shifted[t] += 1;
        }
      }
      double res = std::abs(lhs - d4);
      ++rep.samples;
      max_set = std::max(max_set, res);
      if (res > tol_set)
        detail::record_failure(rep.failures,
                               "set gamma=" + format_exponents(g) + " residual=" + std::to_string(res));
      double cs = F_set(ms, g) - d * G_set(ms, g);
      max_cs = std::max(max_cs, cs);
      if (cs > 1e-8)
        detail::record_failure(rep.failures, "cauchy-schwarz gamma=" + format_exponents(g) +
                                                 " excess=" + std::to_string(cs));
    }
  }

  double zero_f = 0.0, zero_g = 0.0;
  if (complete) {
    ExponentVector zero(static_cast<std::size_t>(d), 0);
    zero_f = std::abs(F_set(ms, zero) - d4);
    zero_g = std::abs(G_set(ms, zero) - d3);
    rep.notes.emplace_back("zero_point_F_residual", std::to_string(zero_f));
    rep.notes.emplace_back("zero_point_G_residual", std::to_string(zero_g));
  }
  rep.max_residual = std::max({max_shift, max_set, zero_f, zero_g});
  rep.notes.emplace_back("complete_set", complete ? "yes" : "no");
  rep.notes.emplace_back("max_shift_residual", std::to_string(max_shift));
  if (complete) {
    rep.notes.emplace_back("max_set_residual", std::to_string(max_set));
    rep.notes.emplace_back("max_cauchy_schwarz_excess", std::to_string(max_cs));
  }
  rep.pass = max_shift <= tol_shift &&
             (!complete || (max_set <= tol_set && zero_f <= tol_set && zero_g <= tol_set && max_cs <= 1e-8));
  return rep;
}

/// Evaluates the set functionals of the explicit complete MUB set on
/// every orbit and checks the point against every assembled row: the
/// relaxation must never exclude a genuine solution.
inline VerificationReport verify_lp_witness(int d, int l, CouplingVariant variant = CouplingVariant::minus,
                                            double tol = 1e-6) {
  const std::vector<PhaseMatrix> ms = standard_mub_set(d);
  const LpProblem p = build_lp(d, l, false, variant);

  std::vector<double> x(p.variables.size(), 0.0);
  for (std::size_t i = 0; i < p.orbits.size(); ++i) {
    x[static_cast<std::size_t>(p.g_column(i))] = G_set(ms, p.orbits[i].rep);
    x[static_cast<std::size_t>(p.f_column(i))] = F_set(ms, p.orbits[i].rep);
  }

  VerificationReport rep;
  rep.claim = "lp-witness";
  rep.tol = tol;
  for (const auto& row : p.rows) {
    double lhs = 0.0;
    for (const auto& [col, coeff] : row.coeffs) lhs += static_cast<double>(coeff) * x[static_cast<std::size_t>(col)];
    double res = 0.0;
    double diff = lhs - static_cast<double>(row.rhs);
    switch (row.rel) {
      case Relation::eq: res = std::abs(diff); break;
      case Relation::le: res = std::max(0.0, diff); break;
      case Relation::ge: res = std::max(0.0, -diff); break;
    }
    ++rep.samples;
    rep.max_residual = std::max(rep.max_residual, res);
    if (res > tol)
      detail::record_failure(rep.failures, row.name + " residual=" + std::to_string(res));
  }
  for (const auto& v : p.variables) {
    double val = x[static_cast<std::size_t>(v.column)];
    double res = std::max(static_cast<double>(v.lower) - val,
                          v.has_upper ? val - static_cast<double>(v.upper) : 0.0);
    res = std::max(0.0, res);
    rep.max_residual = std::max(rep.max_residual, res);
    if (res > tol) detail::record_failure(rep.failures, v.name + " bound_violation=" + std::to_string(res));
  }
  rep.pass = rep.failures.empty() && rep.max_residual <= tol;
  rep.notes.emplace_back("d", std::to_string(d));
  rep.notes.emplace_back("l", std::to_string(l));
  rep.notes.emplace_back("rows", std::to_string(p.rows.size()));
  return rep;
}

/// Independent row-by-row residual check of a solution against a problem.
/// Shares no code with the solver; exact values are re-checked in exact
/// arithmetic when present.
inline VerificationReport verify_solution(const LpProblem& p, const LpSolution& sol,
                                          double tol = 1e-9) {
  if (sol.values.size() != p.variables.size())
    throw DimensionError("verify_solution: value count does not match problem columns");

  VerificationReport rep;
  rep.claim = "solution";
  rep.tol = tol;

  const bool exact = !sol.values_exact.empty();
  std::vector<mpq_class> xq;
  if (exact) {
    xq.reserve(sol.values_exact.size());
    for (const auto& s : sol.values_exact) {
      mpq_class v(s);
      v.canonicalize();
      xq.push_back(std::move(v));
    }
  }

  bool exact_all_zero = exact;
  for (const auto& row : p.rows) {
    double res;
    if (exact) {
      mpq_class lhs(0);
      for (const auto& [col, coeff] : row.coeffs)
        lhs += mpq_class(static_cast<long>(coeff)) * xq[static_cast<std::size_t>(col)];
      mpq_class diff = lhs - mpq_class(static_cast<long>(row.rhs));
      mpq_class r(0);
      switch (row.rel) {
        case Relation::eq: r = diff < 0 ? mpq_class(-diff) : diff; break;
        case Relation::le: r = diff > 0 ? diff : mpq_class(0); break;
        case Relation::ge: r = diff < 0 ? mpq_class(-diff) : mpq_class(0); break;
      }
      if (r != 0) exact_all_zero = false;
      res = r.get_d();
    } else {
      double lhs = 0.0;
      for (const auto& [col, coeff] : row.coeffs)
        lhs += static_cast<double>(coeff) * sol.values[static_cast<std::size_t>(col)];
      double diff = lhs - static_cast<double>(row.rhs);
      switch (row.rel) {
        case Relation::eq: res = std::abs(diff); break;
        case Relation::le: res = std::max(0.0, diff); break;
        default: res = std::max(0.0, -diff); break;
      }
    }
    ++rep.samples;
    rep.max_residual = std::max(rep.max_residual, res);
    if (res > tol)
      detail::record_failure(rep.failures, row.name + " residual=" + std::to_string(res));
  }

  for (const auto& v : p.variables) {
    double val = sol.values[static_cast<std::size_t>(v.column)];
    double res = std::max(0.0, std::max(static_cast<double>(v.lower) - val,
                                        v.has_upper ? val - static_cast<double>(v.upper) : 0.0));
    rep.max_residual = std::max(rep.max_residual, res);
    if (res > tol) detail::record_failure(rep.failures, v.name + " bound_violation=" + std::to_string(res));
  }

  if (exact) rep.notes.emplace_back("exact_residuals_zero", exact_all_zero ? "yes" : "no");
  rep.pass = rep.failures.empty() && rep.max_residual <= tol && (!exact || exact_all_zero);
  return rep;
}

/// Dual objective recoverable from the reported row duals, for the
/// internal minimization form. At a true optimum the gap to the primal
/// objective is tiny (zero in exact arithmetic).
inline double dual_objective_bound(const LpProblem& p, const LpSolution& sol) {
  if (sol.row_duals.size() != p.rows.size())
    throw DimensionError("dual_objective_bound: dual count does not match rows");
  double total = 0.0;
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    total += sol.row_duals[i] * static_cast<double>(p.rows[i].rhs);

  std::vector<double> reduced(p.variables.size(), 0.0);
  for (std::size_t j = 0; j < p.variables.size(); ++j)
    reduced[j] = p.objective.column == static_cast<int>(j)
                     ? (p.objective.sense == ObjectiveSense::minimize ? 1.0 : -1.0)
                     : 0.0;
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    for (const auto& [col, coeff] : p.rows[i].coeffs)
      reduced[static_cast<std::size_t>(col)] -= sol.row_duals[i] * static_cast<double>(coeff);

  for (const auto& v : p.variables) {
    double dj = reduced[static_cast<std::size_t>(v.column)];
    if (dj > 0)
      total += dj * static_cast<double>(v.lower);
    else if (v.has_upper)
      total += dj * static_cast<double>(v.upper);
  }
  return total;
}

/// Same bound in exact rational arithmetic (needs an exact-mode solution).
inline mpq_class dual_objective_bound_exact(const LpProblem& p, const LpSolution& sol) {
  if (sol.row_duals_exact.size() != p.rows.size())
    throw DimensionError("dual_objective_bound_exact: exact duals missing or mismatched");
  std::vector<mpq_class> y(p.rows.size());
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    y[i] = mpq_class(sol.row_duals_exact[i]);
    y[i].canonicalize();
  }
  mpq_class total = 0;
  for (std::size_t i = 0; i < p.rows.size(); ++i) total += y[i] * mpq_class(static_cast<long>(p.rows[i].rhs));

  std::vector<mpq_class> reduced(p.variables.size(), mpq_class(0));
  if (p.objective.column >= 0)
    reduced[static_cast<std::size_t>(p.objective.column)] =
        p.objective.sense == ObjectiveSense::minimize ? 1 : -1;
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    for (const auto& [col, coeff] : p.rows[i].coeffs)
      reduced[static_cast<std::size_t>(col)] -= y[i] * mpq_class(static_cast<long>(coeff));

  for (const auto& v : p.variables) {
    const mpq_class& dj = reduced[static_cast<std::size_t>(v.column)];
    if (dj > 0)
      total += dj * mpq_class(static_cast<long>(v.lower));
    else if (v.has_upper)
      total += dj * mpq_class(static_cast<long>(v.upper));
  }
  return total;
}

}  // namespace mublp
