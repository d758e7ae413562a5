#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mublp/errors.hpp"
#include "mublp/gamma.hpp"
#include "mublp/phase_matrix.hpp"

namespace mublp {

inline constexpr int kMaxPermutationDim = 8;
inline constexpr double kImagTol = 1e-9;

/// All permutations of {0..d-1} in lexicographic order, flattened
/// (perm p occupies entries [p*d, (p+1)*d)). Built once, thread-safe.
inline const std::vector<int>& permutation_table(int d) {
  if (d < 1 || d > kMaxPermutationDim)
    throw DimensionError("permutation_table: d must be between 1 and 8");
  static const std::vector<std::vector<int>> tables = [] {
    std::vector<std::vector<int>> t(kMaxPermutationDim + 1);
    for (int n = 1; n <= kMaxPermutationDim; ++n) {
      std::vector<int> p(n);
      for (int i = 0; i < n; ++i) p[i] = i;
      do {
        t[n].insert(t[n].end(), p.begin(), p.end());
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return t;
  }();
  return tables[d];
}

namespace detail {

/// Entry arguments of a matrix, row-major. Integer powers of unit-modulus
/// entries become multiplications here, avoiding repeated complex pow.
inline std::vector<double> entry_args(const PhaseMatrix& m) {
  const int d = m.dim();
  std::vector<double> a(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) a[static_cast<std::size_t>(i) * d + k] = std::arg(m(i, k));
  return a;
}

/// Column phase sums for one permuted exponent vector:
/// out[k] = sum_i gamma[perm[i]] * arg(M_{ik}), reduced mod 2 pi.
inline void column_phases(const std::vector<double>& args, int d, const int* perm,
                          const ExponentVector& gamma, std::vector<double>& out) {
  for (int k = 0; k < d; ++k) {
    double phi = 0.0;
    for (int i = 0; i < d; ++i) phi += gamma[perm[i]] * args[static_cast<std::size_t>(i) * d + k];
    out[k] = std::remainder(phi, 2.0 * std::numbers::pi);
  }
}

inline void check_dim(const PhaseMatrix& m, const ExponentVector& gamma, const char* where) {
  if (static_cast<int>(gamma.size()) != m.dim())
    throw DimensionError(std::string(where) + ": exponent vector length does not match matrix dimension");
  if (m.dim() > kMaxPermutationDim)
    throw DimensionError(std::string(where) + ": permutation sums supported only for d <= 8");
}

}  // namespace detail

/// Symmetrized column sum (1/d!) sum_sigma sum_k prod_i M_{ik}^{sigma(gamma)_i}.
inline Complex g_single(const PhaseMatrix& m, const ExponentVector& gamma) {
  detail::check_dim(m, gamma, "g_single");
  const int d = m.dim();
  const auto args = detail::entry_args(m);
  const auto& perms = permutation_table(d);
  const std::size_t nperm = perms.size() / d;
  std::vector<double> phi(d);
  Complex acc{0.0, 0.0};
  for (std::size_t p = 0; p < nperm; ++p) {
    detail::column_phases(args, d, &perms[p * d], gamma, phi);
    for (int k = 0; k < d; ++k) acc += std::polar(1.0, phi[k]);
  }
  return acc / static_cast<double>(nperm);
}

/// Modulus-squared of the symmetrized sum, for comparison with G_single
/// (the two differ because squaring and symmetrizing do not commute).
inline double g_single_mod_sq(const PhaseMatrix& m, const ExponentVector& gamma) {
  return std::norm(g_single(m, gamma));
}

/// Symmetrized double column sum (1/d!) sum_sigma sum_{k,l} (c_k/c_l)^{sigma(gamma)}.
/// This squares before symmetrizing; it is not |g_single|^2.
inline double G_single(const PhaseMatrix& m, const ExponentVector& gamma) {
  detail::check_dim(m, gamma, "G_single");
  const int d = m.dim();
  const auto args = detail::entry_args(m);
  const auto& perms = permutation_table(d);
  const std::size_t nperm = perms.size() / d;
  std::vector<double> phi(d);
  std::vector<Complex> v(d);
  Complex acc{0.0, 0.0};
  for (std::size_t p = 0; p < nperm; ++p) {
    detail::column_phases(args, d, &perms[p * d], gamma, phi);
    for (int k = 0; k < d; ++k) v[k] = std::polar(1.0, phi[k]);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) acc += v[k] * std::conj(v[l]);
  }
  acc /= static_cast<double>(nperm);
  if (std::abs(acc.imag()) >= kImagTol)
    throw ConsistencyError("G_single: double sum has non-negligible imaginary part", std::abs(acc.imag()));
  return acc.real();
}

namespace detail {

inline void check_set(const std::vector<PhaseMatrix>& ms, const ExponentVector& gamma, const char* where) {
  if (ms.empty()) throw DimensionError(std::string(where) + ": empty matrix set");
  for (const auto& m : ms) check_dim(m, gamma, where);
}

/// Phase vectors for all matrices at one permutation, concatenated.
inline void set_column_phases(const std::vector<std::vector<double>>& args_per_matrix, int d,
                              const int* perm, const ExponentVector& gamma, std::vector<double>& out) {
  std::vector<double> phi(d);
  std::size_t at = 0;
  for (const auto& args : args_per_matrix) {
    column_phases(args, d, perm, gamma, phi);
    for (int k = 0; k < d; ++k) out[at++] = phi[k];
  }
}

}  // namespace detail

/// Sum of g_single over the set.
inline Complex f_set(const std::vector<PhaseMatrix>& ms, const ExponentVector& gamma) {
  detail::check_set(ms, gamma, "f_set");
  Complex acc{0.0, 0.0};
  for (const auto& m : ms) acc += g_single(m, gamma);
  return acc;
}

/// Symmetrized double sum over all column pairs drawn from the whole set,
/// including cross-matrix pairs. Squares before symmetrizing.
inline double F_set(const std::vector<PhaseMatrix>& ms, const ExponentVector& gamma) {
  detail::check_set(ms, gamma, "F_set");
  const int d = ms[0].dim();
  std::vector<std::vector<double>> args;
  args.reserve(ms.size());
  for (const auto& m : ms) args.push_back(detail::entry_args(m));
  const auto& perms = permutation_table(d);
  const std::size_t nperm = perms.size() / d;
  const std::size_t ncols = ms.size() * static_cast<std::size_t>(d);
  std::vector<double> phi(ncols);
  std::vector<Complex> v(ncols);
  Complex acc{0.0, 0.0};
  for (std::size_t p = 0; p < nperm; ++p) {
    detail::set_column_phases(args, d, &perms[p * d], gamma, phi);
    for (std::size_t k = 0; k < ncols; ++k) v[k] = std::polar(1.0, phi[k]);
    for (std::size_t k = 0; k < ncols; ++k)
      for (std::size_t l = 0; l < ncols; ++l) acc += v[k] * std::conj(v[l]);
  }
  acc /= static_cast<double>(nperm);
  if (std::abs(acc.imag()) >= kImagTol)
    throw ConsistencyError("F_set: double sum has non-negligible imaginary part", std::abs(acc.imag()));
  return acc.real();
}

/// Sum of G_single over the set (same-matrix column pairs only).
inline double G_set(const std::vector<PhaseMatrix>& ms, const ExponentVector& gamma) {
  detail::check_set(ms, gamma, "G_set");
  double acc = 0.0;
  for (const auto& m : ms) acc += G_single(m, gamma);
  return acc;
}

}  // namespace mublp
