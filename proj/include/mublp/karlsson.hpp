#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "mublp/errors.hpp"
#include "mublp/phase_matrix.hpp"

namespace mublp {

using Mat2 = std::array<Complex, 4>;  // row-major 2x2

inline constexpr double kMobiusDenomEps = 1e-12;
inline constexpr double kCrossCheckTol = 1e-8;

/// Free parameters of the three-parameter reducible family; everything
/// else is derived. Branch selectors pick square roots downstream.
struct KarlssonParams {
  double theta = 0.0;
  double phi = 0.0;
  Complex z1{1.0, 0.0};
  int branch_z3 = +1;
  int branch_z2 = +1;
  int branch_z4 = +1;
};

inline void validate(const KarlssonParams& p) {
  if (std::abs(std::abs(p.z1) - 1.0) > 1e-12)
    throw std::invalid_argument("KarlssonParams: z1 must have unit modulus");
  auto ok = [](int b) { return b == 1 || b == -1; };
  if (!ok(p.branch_z3) || !ok(p.branch_z2) || !ok(p.branch_z4))
    throw std::invalid_argument("KarlssonParams: branch selectors must be +1 or -1");
}

/// (alpha z - beta) / (conj(beta) z - conj(alpha)); preserves the unit
/// circle whenever |alpha| != |beta|.
inline Complex mobius(Complex alpha, Complex beta, Complex z, double eps_denom = kMobiusDenomEps) {
  Complex den = std::conj(beta) * z - std::conj(alpha);
  if (std::abs(den) <= eps_denom)
    throw SingularTransformError("mobius: denominator vanishes", z, std::abs(den));
  return (alpha * z - beta) / den;
}

/// (conj(alpha) w - beta) / (conj(beta) w - alpha); inverse of mobius.
inline Complex mobius_inverse(Complex alpha, Complex beta, Complex w, double eps_denom = kMobiusDenomEps) {
  Complex den = std::conj(beta) * w - alpha;
  if (std::abs(den) <= eps_denom)
    throw SingularTransformError("mobius_inverse: denominator vanishes", w, std::abs(den));
  return (std::conj(alpha) * w - beta) / den;
}

struct ABEntries {
  Complex A11, A12, B11, B12;
};

/// The four defining entries: A11 = -1/2 + i sqrt(3)/2 (cos t + e^{-i p} sin t),
/// A12 = -1/2 + i sqrt(3)/2 (-cos t + e^{i p} sin t), B = -F2 - A entrywise.
inline ABEntries ab_blocks(double theta, double phi) {
  const double h = std::sqrt(3.0) / 2.0;
  const Complex i1{0.0, 1.0};
  ABEntries r;
  r.A11 = Complex{-0.5, 0.0} + i1 * h * (std::cos(theta) + std::polar(1.0, -phi) * std::sin(theta));
  r.A12 = Complex{-0.5, 0.0} + i1 * h * (-std::cos(theta) + std::polar(1.0, phi) * std::sin(theta));
  r.B11 = -1.0 - r.A11;
  r.B12 = -1.0 - r.A12;
  return r;
}

struct ZChain {
  Complex z2, z3, z4;
  double cross_residual = 0.0;  // |z4^2 - M_B(z1^2)|, the redundant cross relation
};

/// Chains the square roots z3, z2, z4 from z1 through the two Moebius
/// transforms, then verifies the redundant relation tying z4 back to z1.
inline ZChain derive_zs(const KarlssonParams& p) {
  validate(p);
  const ABEntries e = ab_blocks(p.theta, p.phi);
  const Complex alphaA = e.A12 * e.A12, betaA = e.A11 * e.A11;
  const Complex alphaB = e.B12 * e.B12, betaB = e.B11 * e.B11;
  ZChain c;
  const Complex z1sq = p.z1 * p.z1;
  const Complex z3sq = mobius(alphaA, betaA, z1sq);
  c.z3 = static_cast<double>(p.branch_z3) * std::sqrt(z3sq);
  const Complex z2sq = mobius_inverse(alphaB, betaB, z3sq);
  c.z2 = static_cast<double>(p.branch_z2) * std::sqrt(z2sq);
  const Complex z4sq = mobius(alphaA, betaA, z2sq);
  c.z4 = static_cast<double>(p.branch_z4) * std::sqrt(z4sq);
  c.cross_residual = std::abs(z4sq - mobius(alphaB, betaB, z1sq));
  if (c.cross_residual > kCrossCheckTol)
    throw ConsistencyError("derive_zs: cross relation for z4 violated", c.cross_residual);
  return c;
}

inline Mat2 mat2_mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

inline Mat2 mat2_scale(Complex s, const Mat2& x) { return {s * x[0], s * x[1], s * x[2], s * x[3]}; }

/// Max entry of |x x^dagger - 2 I|. The 2x2 blocks of the construction
/// have unit-phase entries and orthogonal rows, so x x^dagger = 2 I
/// (x / sqrt(2) is the unitary matrix the proof manipulates).
inline double scaled_unitarity_residual(const Mat2& x) {
  Complex g00 = x[0] * std::conj(x[0]) + x[1] * std::conj(x[1]) - 2.0;
  Complex g01 = x[0] * std::conj(x[2]) + x[1] * std::conj(x[3]);
  Complex g10 = x[2] * std::conj(x[0]) + x[3] * std::conj(x[1]);
  Complex g11 = x[2] * std::conj(x[2]) + x[3] * std::conj(x[3]) - 2.0;
  return std::max(std::max(std::abs(g00), std::abs(g01)), std::max(std::abs(g10), std::abs(g11)));
}

struct KarlssonBlocks {
  Complex A11, A12, B11, B12;
  Complex alphaA, betaA, alphaB, betaB;
  Complex z2, z3, z4;
  Mat2 a, b, c, d_blk;
  Mat2 F2, Z1, Z2, Z3, Z4;
  double cross_residual = 0.0;
};

/// All intermediates of the construction, for inspection and identity checks.
inline KarlssonBlocks blocks(const KarlssonParams& p) {
  const ABEntries e = ab_blocks(p.theta, p.phi);
  const ZChain zc = derive_zs(p);
  KarlssonBlocks k;
  k.A11 = e.A11;
  k.A12 = e.A12;
  k.B11 = e.B11;
  k.B12 = e.B12;
  k.alphaA = e.A12 * e.A12;
  k.betaA = e.A11 * e.A11;
  k.alphaB = e.B12 * e.B12;
  k.betaB = e.B11 * e.B11;
  k.z2 = zc.z2;
  k.z3 = zc.z3;
  k.z4 = zc.z4;
  k.cross_residual = zc.cross_residual;
  const Mat2 A{e.A11, e.A12, std::conj(e.A12), -std::conj(e.A11)};
  const Mat2 B{e.B11, e.B12, std::conj(e.B12), -std::conj(e.B11)};
  k.F2 = {1.0, 1.0, 1.0, -1.0};
  k.Z1 = {1.0, 1.0, p.z1, -p.z1};
  k.Z2 = {1.0, 1.0, zc.z2, -zc.z2};
  k.Z3 = {1.0, zc.z3, 1.0, -zc.z3};
  k.Z4 = {1.0, zc.z4, 1.0, -zc.z4};
  const Complex half{0.5, 0.0};
  k.a = mat2_scale(half, mat2_mul(k.Z3, mat2_mul(A, k.Z1)));
  k.b = mat2_scale(half, mat2_mul(k.Z3, mat2_mul(B, k.Z2)));
  k.c = mat2_scale(half, mat2_mul(k.Z4, mat2_mul(B, k.Z1)));
  k.d_blk = mat2_scale(half, mat2_mul(k.Z4, mat2_mul(A, k.Z2)));
  return k;
}

/// Assembles the 6x6 matrix from its 2x2 blocks and certifies it.
inline PhaseMatrix build(const KarlssonParams& p) {
  const KarlssonBlocks k = blocks(p);
  std::vector<Complex> e(36);
  auto put = [&](int bi, int bj, const Mat2& m) {
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        e[static_cast<std::size_t>(2 * bi + r) * 6 + (2 * bj + c)] = m[static_cast<std::size_t>(r) * 2 + c];
  };
  put(0, 0, k.F2);
  put(0, 1, k.Z1);
  put(0, 2, k.Z2);
  put(1, 0, k.Z3);
  put(1, 1, k.a);
  put(1, 2, k.b);
  put(2, 0, k.Z4);
  put(2, 1, k.c);
  put(2, 2, k.d_blk);
  PhaseMatrix m(6, std::move(e), "karlsson");
  if (!is_hadamard(m, 1e-9, 1e-9)) {
    double worst = std::max(m.max_entry_modulus_error(), m.max_unitarity_error());
    throw ConstructionError("build: assembled matrix failed the Hadamard check", worst);
  }
  return m;
}

/// Residual of the first scalar identity behind the theorem proof:
/// Re(A11^2 conj(B11^2)) = Re(A12^2 conj(B12^2)).
inline double identity_I0_residual(const ABEntries& e) {
  double lhs = (e.A11 * e.A11 * std::conj(e.B11 * e.B11)).real();
  double rhs = (e.A12 * e.A12 * std::conj(e.B12 * e.B12)).real();
  return std::abs(lhs - rhs);
}

enum class BracketReading { printed, conjugated };

/// The bracket of the second scalar identity. Its final term has two
/// candidate readings; both are exposed so a grid sweep can decide
/// which one actually vanishes.
inline Complex identity_I1_bracket(const ABEntries& e, BracketReading reading) {
  Complex acc{2.0, 0.0};
  acc += std::conj(e.A11) * e.A12 * std::conj(e.B12 * e.B12);
  acc += std::conj(e.B11) * e.B12 * std::conj(e.A12 * e.A12);
  acc += e.A11 * std::conj(e.A12) * std::conj(e.B11 * e.B11);
  Complex last = e.B11 * std::conj(e.B12);
  acc += reading == BracketReading::printed ? last * (e.A11 * e.A11) : last * std::conj(e.A11 * e.A11);
  return acc;
}

}  // namespace mublp
