#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "mublp/errors.hpp"

namespace mublp {

using Complex = std::complex<double>;

inline constexpr double kDefaultEntryTol = 1e-10;
inline constexpr double kDefaultUnitaryTol = 1e-9;

/// Square matrix whose entries are (numerically) complex phases.
///
/// Value type: every operation returns fresh matrices and never mutates
/// its inputs, so instances can be shared freely across threads.
class PhaseMatrix {
 public:
  PhaseMatrix() : d_(0) {}

  PhaseMatrix(int d, std::vector<Complex> entries, std::string label = "")
      : d_(d), entries_(std::move(entries)), label_(std::move(label)) {
    if (d_ < 1) throw DimensionError("PhaseMatrix: dimension must be positive");
    if (entries_.size() != static_cast<std::size_t>(d_) * d_)
      throw DimensionError("PhaseMatrix: entry count does not match dimension");
  }

  /// Builds from rows, rejecting ragged or non-square input.
  static PhaseMatrix from_rows(const std::vector<std::vector<Complex>>& rows,
                               std::string label = "") {
    int d = static_cast<int>(rows.size());
    if (d < 1) throw DimensionError("PhaseMatrix: empty row list");
    std::vector<Complex> flat;
    flat.reserve(static_cast<std::size_t>(d) * d);
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != d)
        throw DimensionError("PhaseMatrix: input is not square");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return PhaseMatrix(d, std::move(flat), std::move(label));
  }

  int dim() const { return d_; }
  const std::string& label() const { return label_; }
  const std::vector<Complex>& entries() const { return entries_; }

  Complex operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * d_ + j]; }

  /// Largest deviation of any entry modulus from 1.
  double max_entry_modulus_error() const {
    double worst = 0.0;
    for (const Complex& e : entries_) worst = std::max(worst, std::abs(std::abs(e) - 1.0));
    return worst;
  }

  /// Largest entry of |M M^dagger - d I|.
  double max_unitarity_error() const {
    double worst = 0.0;
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j < d_; ++j) {
        Complex dot{0.0, 0.0};
        for (int k = 0; k < d_; ++k) dot += (*this)(i, k) * std::conj((*this)(j, k));
        if (i == j) dot -= static_cast<double>(d_);
        worst = std::max(worst, std::abs(dot));
      }
    }
    return worst;
  }

  PhaseMatrix conjugate_transpose() const {
    std::vector<Complex> out(entries_.size());
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) out[static_cast<std::size_t>(j) * d_ + i] = std::conj((*this)(i, j));
    return PhaseMatrix(d_, std::move(out), label_.empty() ? "" : label_ + "^dagger");
  }

  PhaseMatrix with_swapped_rows(int r1, int r2) const {
    if (r1 < 0 || r1 >= d_ || r2 < 0 || r2 >= d_)
      throw DimensionError("with_swapped_rows: row index out of range");
    std::vector<Complex> out = entries_;
    for (int j = 0; j < d_; ++j)
      std::swap(out[static_cast<std::size_t>(r1) * d_ + j], out[static_cast<std::size_t>(r2) * d_ + j]);
    return PhaseMatrix(d_, std::move(out), label_);
  }

 private:
  int d_;
  std::vector<Complex> entries_;
  std::string label_;
};

/// True iff all entries are unit phases and M M^dagger = d I, within tol.
inline bool is_hadamard(const PhaseMatrix& m, double entry_tol, double unitary_tol) {
  if (entry_tol <= 0 || unitary_tol <= 0)
    throw std::invalid_argument("is_hadamard: tolerance must be positive");
  if (m.max_entry_modulus_error() > entry_tol) return false;
  return m.max_unitarity_error() <= unitary_tol;
}

inline bool is_hadamard(const PhaseMatrix& m, double tol) { return is_hadamard(m, tol, tol); }

inline bool is_hadamard(const PhaseMatrix& m) {
  return is_hadamard(m, kDefaultEntryTol, kDefaultUnitaryTol);
}

/// True iff every entry of M1^dagger M2 has modulus sqrt(d) within tol.
/// Both inputs must already be Hadamard.
inline bool is_unbiased_pair(const PhaseMatrix& m1, const PhaseMatrix& m2, double tol) {
  if (m1.dim() != m2.dim())
    throw DimensionError("is_unbiased_pair: dimension mismatch");
  if (!is_hadamard(m1) || !is_hadamard(m2))
    throw std::invalid_argument("is_unbiased_pair: inputs must be complex Hadamard matrices");
  const int d = m1.dim();
  const double root_d = std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Complex dot{0.0, 0.0};
      for (int k = 0; k < d; ++k) dot += std::conj(m1(k, i)) * m2(k, j);
      if (std::abs(std::abs(dot) - root_d) > tol) return false;
    }
  }
  return true;
}

/// Unit phase exp(2 pi i num / den). All roots of unity go through here.
inline Complex unit_root(long long num, long long den) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den));
}

/// d x d matrix with entry (j,k) = exp(2 pi i jk / d), zero-based.
inline PhaseMatrix fourier_matrix(int d) {
  if (d < 1) throw DimensionError("fourier_matrix: dimension must be positive");
  std::vector<Complex> e(static_cast<std::size_t>(d) * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k)
      e[static_cast<std::size_t>(j) * d + k] = unit_root(static_cast<long long>(j) * k, d);
  return PhaseMatrix(d, std::move(e), "F" + std::to_string(d));
}

/// The isolated 6x6 Hadamard over cube roots of unity.
inline PhaseMatrix spectral_matrix() {
  // Exponents of omega = exp(2 pi i / 3) per entry.
  static constexpr int kExp[6][6] = {
      {0, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 2, 2}, {0, 1, 0, 2, 2, 1},
      {0, 1, 2, 0, 1, 2}, {0, 2, 2, 1, 0, 1}, {0, 2, 1, 2, 1, 0}};
  std::vector<Complex> e(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) e[static_cast<std::size_t>(i) * 6 + j] = unit_root(kExp[i][j], 3);
  return PhaseMatrix(6, std::move(e), "S6_spectral");
}

}  // namespace mublp
