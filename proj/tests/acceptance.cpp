// Acceptance gate: each numbered criterion prints exactly one PASS/FAIL
// line with its measured quantities; the process exits nonzero if any
// criterion fails.
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>

#include "mublp/mps.hpp"
#include "mublp/mub_sets.hpp"
#include "mublp/simplex.hpp"
#include "mublp/verifier.hpp"

using namespace mublp;

namespace {

int failures = 0;

void line(int idx, bool ok, const std::string& label, const std::string& detail) {
  std::printf("%d %s %s: %s\n", idx, ok ? "PASS" : "FAIL", label.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string note(const VerificationReport& rep, const std::string& key) {
  for (const auto& [k, v] : rep.notes)
    if (k == key) return v;
  return {};
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

}  // namespace

int main() {
  // 1: vanishing of the symmetrized sum across the full parameter grid,
  // all 8 branch combinations, canonical and shuffled exponent orders
  {
    GridSpec grid{20, 20, 8, true};
    VerificationReport rep = verify_vanishing(grid, 1e-9);
    line(1, rep.pass, "vanishing certificate",
         fmt("max |g| = %.3e over %lld samples (%lld singular points skipped), tol 1e-9",
             rep.max_residual, static_cast<long long>(rep.samples),
             static_cast<long long>(rep.singular_points)));
  }

  // 2: every non-singular grid point builds a proper Hadamard and the
  // redundant chain relation closes
  {
    GridSpec grid{20, 20, 8, false};
    VerificationReport rep = verify_construction(grid, 1e-9, 1e-8);
    line(2, rep.pass, "construction residuals",
         fmt("max unitarity residual = %.3e (tol 1e-9), max chain residual = %s (tol 1e-8)",
             rep.max_residual, note(rep, "max_cross_residual").c_str()));
  }

  // 3: the spectral matrix breaks the vanishing claim by exactly the
  // brute-force value
  {
    VerificationReport rep = verify_spectral_counterexample();
    const double got = std::abs(g_single(spectral_matrix(), {1, 1, 1, -1, -1, -1}));
    const bool ok = rep.pass && std::abs(got - 1.5) <= 1e-9;
    line(3, ok, "spectral counterexample",
         fmt("|g| = %.12g vs oracle 1.5 (tol 1e-9), unsymmetrized span [%s, %s]", got,
             note(rep, "unsym_modulus_min").c_str(), note(rep, "unsym_modulus_max").c_str()));
  }

  // 4: row-shift and complete-set coupling identities on explicit
  // matrices at d = 2, 3, 6
  {
    VerificationReport r2 = verify_constraint_identities(standard_mub_set(2), 100);
    VerificationReport r3 = verify_constraint_identities(standard_mub_set(3), 100);
    KarlssonParams kp;
    kp.theta = 0.3;
    kp.phi = 1.1;
    kp.z1 = std::polar(1.0, 0.7);
    VerificationReport r6 =
        verify_constraint_identities({fourier_matrix(6), build(kp)}, 100);
    const bool ok = r2.pass && r3.pass && r6.pass;
    line(4, ok, "constraint identities",
         fmt("max residuals: d=2 set %.3e, d=3 set %.3e, d=6 singles %.3e (shift tol 1e-7, set "
             "tol 1e-6)",
             r2.max_residual, r3.max_residual, r6.max_residual));
  }

  // 5: the first closed-form check vanishes everywhere and exactly one
  // reading of the second bracket does
  {
    GridSpec grid{20, 20, 1, false};
    VerificationReport rep = verify_identities(grid, 1e-10, 1e-9);
    const std::string reading = note(rep, "i1_vanishing_reading");
    const bool one_reading = reading == "printed" || reading == "conjugated";
    line(5, rep.pass && one_reading, "bracket identities",
         fmt("first identity max residual = %s (tol 1e-10), vanishing reading = %s (tol 1e-9)",
             note(rep, "i0_max_residual").c_str(), reading.c_str()));
  }

  // 6: desk-scale structural optima: d=2 exact rational, d=3 float
  {
    LpProblem p2 = set_objective(build_lp(2, 4), ObjectiveSense::minimize, Family::G, {2, -2});
    SolverOptions exact;
    exact.mode = SolverMode::exact_rational;
    LpSolution s2 = solve(p2, exact);

    LpProblem p3 = set_objective(build_lp(3, 6), ObjectiveSense::minimize, Family::G, {3, -3, 0});
    LpSolution s3 = solve(p3);

    const bool ok2 = s2.status == SolveStatus::optimal && s2.objective_exact == "8";
    const bool ok3 = s3.status == SolveStatus::optimal && std::abs(s3.objective - 27.0) <= 1e-6;
    line(6, ok2 && ok3, "structural optima",
         fmt("d=2 l=4 min G -> %s exact (want 8), d=3 l=6 min G -> %.12g (want 27 +/- 1e-6)",
             s2.objective_exact.c_str(), s3.objective));
  }

  // 7: orbit bookkeeping at both ends of the scale
  {
    std::vector<GammaOrbit> small = enumerate_gamma(2, 2);
    std::int64_t total = 0;
    for (const auto& o : small) total += o.orbit_size;
    const bool small_ok =
        small.size() == 5 && total == 13 && raw_point_count(2, 2) == 13;

    bool outside_ok = false;
    std::string outside_msg = "no error raised";
    std::vector<GammaOrbit> big = enumerate_gamma(6, 22);
    std::uint64_t raw = raw_point_count(6, 22);
    try {
      LpProblem p = build_lp(6, 22);
      set_objective(std::move(p), ObjectiveSense::minimize, Family::F, {12, -12, 0, 0, 0, 0});
    } catch (const OrbitOutsideSpaceError& ex) {
      outside_ok = ex.l1_norm() == 24 && ex.l() == 22;
      outside_msg = fmt("|rho|_1 = %d > l = %d", ex.l1_norm(), ex.l());
    }
    line(7, small_ok && outside_ok && big.size() == 19963 && raw == 11847485ULL,
         "orbit bookkeeping",
         fmt("d=2 l=2: %zu orbits / %lld raw (want 5 / 13); d=6 l=22: %zu orbits / %llu raw "
             "(want 19963 / 11847485), objective rejected: %s",
             small.size(), static_cast<long long>(total), big.size(),
             static_cast<unsigned long long>(raw), outside_msg.c_str()));
  }

  // 8: the explicit complete-set functional values satisfy every
  // instantiated row
  {
    VerificationReport w2 = verify_lp_witness(2, 4, CouplingVariant::minus, 1e-6);
    VerificationReport w3 = verify_lp_witness(3, 6, CouplingVariant::minus, 1e-6);
    line(8, w2.pass && w3.pass, "relaxation keeps the witness",
         fmt("max row residuals: d=2 l=4 %.3e, d=3 l=6 %.3e (tol 1e-6)", w2.max_residual,
             w3.max_residual));
  }

  // 9: the d=6 l=12 lower bound is finite and does not drop when the
  // family-forced zero rows are added
  {
    LpProblem plain = set_objective(build_lp(6, 12, false), ObjectiveSense::minimize, Family::F,
                                    {6, -6, 0, 0, 0, 0});
    LpSolution sp = solve(plain);
    LpProblem pinned = set_objective(build_lp(6, 12, true), ObjectiveSense::minimize, Family::F,
                                     {6, -6, 0, 0, 0, 0});
    LpSolution sk = solve(pinned);
    const bool ok = sp.status == SolveStatus::optimal && sk.status == SolveStatus::optimal &&
                    std::isfinite(sp.objective) && std::isfinite(sk.objective) &&
                    sp.objective >= 0.0 && sk.objective >= 0.0 &&
                    sk.objective >= sp.objective - 1e-9;
    line(9, ok, "d=6 lower bound",
         fmt("plain %s %.12g (%lld iters, %.0fs), pinned %s %.12g (%lld iters, %.0fs)",
             status_name(sp.status), sp.objective, static_cast<long long>(sp.iterations),
             sp.seconds, status_name(sk.status), sk.objective,
             static_cast<long long>(sk.iterations), sk.seconds));
  }

  std::printf("ACCEPTANCE: %d/9 passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
