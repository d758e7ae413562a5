#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mublp/errors.hpp"
#include "mublp/gamma.hpp"
#include "mublp/parallel.hpp"

namespace mublp {

enum class Family { F, G };
enum class Relation { eq, le, ge };
enum class RowKind { r1, r2, r3, r4, r5, r7 };
enum class CouplingVariant { minus, plus };
enum class ObjectiveSense { minimize, maximize };

inline const char* family_name(Family f) { return f == Family::F ? "F" : "G"; }

inline int row_kind_tag(RowKind k) {
  switch (k) {
    case RowKind::r1: return 1;
    case RowKind::r2: return 2;
    case RowKind::r3: return 3;
    case RowKind::r4: return 4;
    case RowKind::r5: return 5;
    case RowKind::r7: return 7;
  }
  return 0;
}

struct LpVariable {
  Family family = Family::G;
  GammaOrbit orbit;
  int column = -1;
  std::string name;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  bool has_upper = true;
};

struct LpRow {
  RowKind kind = RowKind::r1;
  std::string name;
  std::vector<std::pair<int, std::int64_t>> coeffs;  // (column, coefficient), column-sorted
  Relation rel = Relation::eq;
  std::int64_t rhs = 0;
};

struct Objective {
  bool is_set = false;
  ObjectiveSense sense = ObjectiveSense::minimize;
  int column = -1;
  std::string column_name;
};

struct LpProblem {
  int d = 0;
  int l = 0;
  bool karlsson_mode = false;
  CouplingVariant coupling_variant = CouplingVariant::minus;
  std::vector<GammaOrbit> orbits;  // enumeration order; empty for imported problems
  std::vector<LpVariable> variables;
  std::vector<LpRow> rows;
  Objective objective;

  int g_column(std::size_t orbit_index) const { return static_cast<int>(orbit_index); }
  int f_column(std::size_t orbit_index) const { return static_cast<int>(orbits.size() + orbit_index); }
};

struct LpStats {
  std::int64_t variables = 0;
  std::int64_t rows = 0;
  std::int64_t nonzeros = 0;
  double est_memory_mb = 0.0;
};

inline LpStats stats(const LpProblem& p) {
  LpStats s;
  s.variables = static_cast<std::int64_t>(p.variables.size());
  s.rows = static_cast<std::int64_t>(p.rows.size());
  for (const auto& r : p.rows) s.nonzeros += static_cast<std::int64_t>(r.coeffs.size());
  // sparse pair per nonzero plus fixed per-row / per-column bookkeeping
  s.est_memory_mb = (16.0 * s.nonzeros + 96.0 * s.rows + 96.0 * s.variables) / (1024.0 * 1024.0);
  return s;
}

namespace detail {

struct OrbitIndex {
  std::map<ExponentVector, int> by_rep;
  int find(const ExponentVector& rep) const {
    auto it = by_rep.find(rep);
    return it == by_rep.end() ? -1 : it->second;
  }
};

inline void add_coeff(std::map<int, std::int64_t>& acc, int col, std::int64_t c) { acc[col] += c; }

inline std::vector<std::pair<int, std::int64_t>> to_sorted(const std::map<int, std::int64_t>& acc) {
  std::vector<std::pair<int, std::int64_t>> out(acc.begin(), acc.end());
  return out;  // std::map iterates in key order already
}

}  // namespace detail

/// Assembles the orbit-variable relaxation over Gamma_l: shift identities
/// (R1), the complete-set identity (R2), the cross-pair identity in the
/// selected variant (R3), the zero-point pins (R4), the per-orbit
/// Cauchy-Schwarz inequalities (R5), and, in karlsson mode for d=6, the
/// vanishing rows at (1,1,1,-1,-1,-1) (R7). Bounds live on the variables.
///
/// Rows are instantiated only when every shifted point stays inside the
/// space. R1 (and R3 in the plus variant) are not invariant under global
/// negation of the base point, so those rows are emitted at both the
/// representative and its negation unless the two coincide up to
/// permutation.
inline LpProblem build_lp(int d, int l, bool karlsson_mode = false,
                          CouplingVariant variant = CouplingVariant::minus, int threads = 0) {
  if (d < 2) throw std::invalid_argument("build_lp: d must be at least 2");
  if (l < 2) throw std::invalid_argument("build_lp: l must be at least 2");
  if (karlsson_mode && d != 6)
    throw std::invalid_argument("build_lp: karlsson mode applies only to d=6");

  LpProblem p;
  p.d = d;
  p.l = l;
  p.karlsson_mode = karlsson_mode;
  p.coupling_variant = variant;
  p.orbits = enumerate_gamma(d, l);
  const std::size_t norb = p.orbits.size();

  detail::OrbitIndex idx;
  for (std::size_t i = 0; i < norb; ++i) idx.by_rep.emplace(p.orbits[i].rep, static_cast<int>(i));

  const std::int64_t d3 = static_cast<std::int64_t>(d) * d * d;
  const std::int64_t d4 = d3 * d;

  p.variables.resize(2 * norb);
  {
    int shell = -1, shell_at = 0;
    for (std::size_t i = 0; i < norb; ++i) {
      if (p.orbits[i].l1_norm != shell) {
        shell = p.orbits[i].l1_norm;
        shell_at = 0;
      }
      const std::string suffix = std::to_string(shell) + "_" + std::to_string(shell_at++);
      LpVariable g;
      g.family = Family::G;
      g.orbit = p.orbits[i];
      g.column = p.g_column(i);
      g.name = "G_" + suffix;
      g.upper = d3;
      LpVariable f;
      f.family = Family::F;
      f.orbit = p.orbits[i];
      f.column = p.f_column(i);
      f.name = "F_" + suffix;
      f.upper = d4;
      p.variables[static_cast<std::size_t>(g.column)] = std::move(g);
      p.variables[static_cast<std::size_t>(f.column)] = std::move(f);
    }
  }

  const int nthreads = resolve_threads(threads);

  // Generates the per-orbit rows of one kind across a chunked orbit range,
  // merging chunks in order so the result is schedule-independent.
  auto generate = [&](const std::function<void(std::size_t, std::vector<LpRow>&)>& per_orbit) {
    std::vector<std::vector<LpRow>> chunks(static_cast<std::size_t>(nthreads));
    parallel_chunks(norb, nthreads, [&](std::size_t begin, std::size_t end, int chunk) {
      auto& sink = chunks[static_cast<std::size_t>(chunk)];
      for (std::size_t i = begin; i < end; ++i) per_orbit(i, sink);
    });
    std::vector<LpRow> merged;
    for (auto& c : chunks)
      for (auto& r : c) merged.push_back(std::move(r));
    return merged;
  };

  auto bases_of = [](const GammaOrbit& o) {
    std::vector<ExponentVector> bases{o.rep};
    if (!detail::negation_is_permutation(o.rep)) {
      ExponentVector neg(o.rep.size());
      for (std::size_t i = 0; i < o.rep.size(); ++i) neg[i] = -o.rep[i];
      bases.push_back(std::move(neg));
    }
    return bases;
  };

  auto lookup = [&](const ExponentVector& point) {
    int at = idx.find(canonical_rep(point));
    if (at < 0)
      throw OrbitOutsideSpaceError("build_lp: shifted point escaped the space", l1_norm(point), l);
    return at;
  };

  // R1: sum_r G(canon(gamma + pi_r)) = d^3 whenever |gamma| <= l-1.
  std::vector<LpRow> r1 = generate([&](std::size_t i, std::vector<LpRow>& sink) {
    if (p.orbits[i].l1_norm > l - 1) return;
    for (const auto& base : bases_of(p.orbits[i])) {
      std::map<int, std::int64_t> acc;
      ExponentVector pt = base;
      for (int r = 0; r < d; ++r) {
        pt[r] += 1;
        detail::add_coeff(acc, p.g_column(static_cast<std::size_t>(lookup(pt))), 1);
        pt[r] -= 1;
      }
      sink.push_back(LpRow{RowKind::r1, "", detail::to_sorted(acc), Relation::eq, d3});
    }
  });

  // R2: d G(gamma) + sum_{r!=t} F(canon(gamma + pi_r - pi_t)) = d^4, |gamma| <= l-2.
  // Negation-invariant, so one instantiation per orbit suffices.
  std::vector<LpRow> r2 = generate([&](std::size_t i, std::vector<LpRow>& sink) {
    if (p.orbits[i].l1_norm > l - 2) return;
    std::map<int, std::int64_t> acc;
    detail::add_coeff(acc, p.g_column(i), d);
    ExponentVector pt = p.orbits[i].rep;
    for (int r = 0; r < d; ++r) {
      for (int t = 0; t < d; ++t) {
        if (r == t) continue;
        pt[r] += 1;
        pt[t] -= 1;
        detail::add_coeff(acc, p.f_column(static_cast<std::size_t>(lookup(pt))), 1);
        pt[r] -= 1;
        pt[t] += 1;
      }
    }
    sink.push_back(LpRow{RowKind::r2, "", detail::to_sorted(acc), Relation::eq, d4});
  });

  // R3: sum_{r!=t} F(canon(gamma + pi_r - pi_t)) - sum_{r!=t} G(canon(gamma + pi_r -+ pi_t)) = 0.
  // The minus variant shifts G by pi_r - pi_t (negation-invariant); the plus
  // variant shifts G by pi_r + pi_t and needs both base signs.
  std::vector<LpRow> r3 = generate([&](std::size_t i, std::vector<LpRow>& sink) {
    if (p.orbits[i].l1_norm > l - 2) return;
    const bool plus = variant == CouplingVariant::plus;
    std::vector<ExponentVector> bases =
        plus ? bases_of(p.orbits[i]) : std::vector<ExponentVector>{p.orbits[i].rep};
    for (const auto& base : bases) {
      std::map<int, std::int64_t> acc;
      ExponentVector pt = base;
      for (int r = 0; r < d; ++r) {
        for (int t = 0; t < d; ++t) {
          if (r == t) continue;
          pt[r] += 1;
          pt[t] -= 1;
          detail::add_coeff(acc, p.f_column(static_cast<std::size_t>(lookup(pt))), 1);
          pt[r] -= 1;
          pt[t] += 1;

          pt[r] += 1;
          pt[t] += plus ? 1 : -1;
          detail::add_coeff(acc, p.g_column(static_cast<std::size_t>(lookup(pt))), -1);
          pt[r] -= 1;
          pt[t] -= plus ? 1 : -1;
        }
      }
      sink.push_back(LpRow{RowKind::r3, "", detail::to_sorted(acc), Relation::eq, 0});
    }
  });

  for (auto& r : r1) p.rows.push_back(std::move(r));
  for (auto& r : r2) p.rows.push_back(std::move(r));
  for (auto& r : r3) p.rows.push_back(std::move(r));

  // R4: pins at the zero orbit (always index 0 in enumeration order).
  p.rows.push_back(LpRow{RowKind::r4, "", {{p.f_column(0), 1}}, Relation::eq, d4});
  p.rows.push_back(LpRow{RowKind::r4, "", {{p.g_column(0), 1}}, Relation::eq, d3});

  // R5: F(gamma) <= d G(gamma) per orbit.
  for (std::size_t i = 0; i < norb; ++i)
    p.rows.push_back(LpRow{RowKind::r5,
                           "",
                           {{p.g_column(i), -static_cast<std::int64_t>(d)}, {p.f_column(i), 1}},
                           Relation::le,
                           0});

  if (karlsson_mode) {
    ExponentVector rho{1, 1, 1, -1, -1, -1};
    int at = idx.find(canonical_rep(rho));
    if (at < 0)
      throw OrbitOutsideSpaceError("build_lp: karlsson rows need the (1,1,1,-1,-1,-1) orbit inside the space",
                                   l1_norm(rho), l);
    p.rows.push_back(LpRow{RowKind::r7, "", {{p.f_column(static_cast<std::size_t>(at)), 1}}, Relation::eq, 0});
    p.rows.push_back(LpRow{RowKind::r7, "", {{p.g_column(static_cast<std::size_t>(at)), 1}}, Relation::eq, 0});
  }

  std::map<int, int> seq;
  for (auto& r : p.rows) {
    int tag = row_kind_tag(r.kind);
    r.name = "R" + std::to_string(tag) + "_" + std::to_string(seq[tag]++);
  }
  return p;
}

/// Points the objective at the single column (family, orbit of rho).
inline LpProblem set_objective(LpProblem p, ObjectiveSense sense, Family family,
                               const ExponentVector& rho) {
  if (p.orbits.empty()) throw std::logic_error("set_objective: problem carries no orbit table");
  if (static_cast<int>(rho.size()) != p.d)
    throw DimensionError("set_objective: exponent vector length does not match d");
  const ExponentVector rep = canonical_rep(rho);
  const int n = l1_norm(rep);
  if (n > p.l)
    throw OrbitOutsideSpaceError("set_objective: target orbit lies outside the space", n, p.l);
  int at = -1;
  for (std::size_t i = 0; i < p.orbits.size(); ++i)
    if (p.orbits[i].rep == rep) {
      at = static_cast<int>(i);
      break;
    }
  if (at < 0)
    throw OrbitOutsideSpaceError("set_objective: target orbit not enumerated", n, p.l);
  p.objective.is_set = true;
  p.objective.sense = sense;
  p.objective.column = family == Family::F ? p.f_column(static_cast<std::size_t>(at))
                                           : p.g_column(static_cast<std::size_t>(at));
  p.objective.column_name = p.variables[static_cast<std::size_t>(p.objective.column)].name;
  return p;
}

}  // namespace mublp
