#include <catch2/catch_amalgamated.hpp>

#include "mublp/verifier.hpp"
#include "oracles.hpp"

using namespace mublp;

namespace {

std::string note(const VerificationReport& rep, const std::string& key) {
  for (const auto& [k, v] : rep.notes)
    if (k == key) return v;
  return {};
}

}  // namespace

TEST_CASE("vanishing sums certified on a coarse grid") {
  GridSpec grid{6, 6, 4, false};
  VerificationReport rep = verify_vanishing(grid, 1e-9, 123);
  CHECK(rep.pass);
  CHECK(rep.max_residual < 1e-9);
  CHECK(rep.samples > 0);
  CHECK(rep.seed == 123);
  CHECK(rep.failures.empty());
  CHECK(rep.claim == "vanishing");
}

TEST_CASE("branch sweep multiplies the sample count") {
  GridSpec base{4, 4, 2, false};
  GridSpec all{4, 4, 2, true};
  VerificationReport a = verify_vanishing(base, 1e-9);
  VerificationReport b = verify_vanishing(all, 1e-9);
  // the degenerate locus does not depend on the branch choices
  CHECK(b.samples == 8 * a.samples);
  CHECK(b.singular_points == 8 * a.singular_points);
  CHECK(b.pass);
}

TEST_CASE("same seed reproduces the same report") {
  GridSpec grid{4, 4, 2, false};
  VerificationReport a = verify_vanishing(grid, 1e-9, 77);
  VerificationReport b = verify_vanishing(grid, 1e-9, 77);
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.samples == b.samples);
  CHECK(a.singular_points == b.singular_points);
}

TEST_CASE("thread count does not change the outcome") {
  GridSpec grid{5, 5, 3, false};
  VerificationReport a = verify_vanishing(grid, 1e-9, 9, 1);
  VerificationReport b = verify_vanishing(grid, 1e-9, 9, 3);
  CHECK(a.max_residual == b.max_residual);
  CHECK(a.samples == b.samples);
}

TEST_CASE("construction residuals certified on a coarse grid") {
  GridSpec grid{6, 6, 4, false};
  VerificationReport rep = verify_construction(grid, 1e-9, 1e-8);
  CHECK(rep.pass);
  CHECK(rep.max_residual < 1e-9);
  CHECK(note(rep, "max_cross_residual") != "");
}

TEST_CASE("identity grid singles out one bracket reading") {
  GridSpec grid{12, 12, 1, false};
  VerificationReport rep = verify_identities(grid);
  CHECK(rep.pass);
  CHECK(note(rep, "i1_vanishing_reading") == "conjugated");
  double printed = std::stod(note(rep, "i1_max_printed"));
  double conj = std::stod(note(rep, "i1_max_conjugated"));
  CHECK(printed > 1.0);
  CHECK(conj < 1e-9);
}

TEST_CASE("spectral counterexample matches the exact counting oracle") {
  VerificationReport rep = verify_spectral_counterexample();
  CHECK(rep.pass);

  oracle::SpectralCount c = oracle::spectral_count({1, 1, 1, -1, -1, -1});
  CHECK(c.perms == 720);
  // every per-permutation column sum has the same squared modulus
  CHECK(c.min_unsym_sq == 9);
  CHECK(c.max_unsym_sq == 9);
  // |sum| in exact integer arithmetic: (720 * 3/2)^2 = 1166400
  CHECK(oracle::root3_norm_sq(c.n0, c.n1, c.n2) == 1166400);

  double modulus = std::stod(note(rep, "modulus"));
  CHECK(modulus == Catch::Approx(1.5).margin(1e-9));
  CHECK(modulus > 0.1);
}

TEST_CASE("shift identity holds per Hadamard and full sets obey the rest") {
  for (int d : {2, 3}) {
    auto ms = standard_mub_set(d);
    VerificationReport rep = verify_constraint_identities(ms, 60, 404);
    CHECK(rep.pass);
    CHECK(note(rep, "complete_set") == "yes");
  }
  std::vector<PhaseMatrix> single = {fourier_matrix(6)};
  VerificationReport rep = verify_constraint_identities(single, 40, 404);
  CHECK(rep.pass);
  CHECK(note(rep, "complete_set") == "no");
}

TEST_CASE("witness values satisfy the instantiated rows") {
  VerificationReport r2 = verify_lp_witness(2, 4);
  CHECK(r2.pass);
  CHECK(r2.max_residual < 1e-6);
  VerificationReport r3 = verify_lp_witness(3, 6);
  CHECK(r3.pass);
  CHECK(r3.max_residual < 1e-6);
}

TEST_CASE("reports carry failure details when a claim is broken") {
  // lying about the tolerance must produce recorded failures
  GridSpec grid{3, 3, 1, false};
  VerificationReport rep = verify_vanishing(grid, 1e-30, 5);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.failures.empty());
  CHECK(rep.tol == 1e-30);
}
