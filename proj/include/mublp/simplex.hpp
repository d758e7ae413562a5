#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mublp/errors.hpp"
#include "mublp/lp_model.hpp"

namespace mublp {

enum class SolveStatus { optimal, infeasible, unbounded, iteration_cap, time_cap };

inline const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::iteration_cap: return "iteration-cap";
    case SolveStatus::time_cap: return "time-cap";
  }
  return "?";
}

enum class SolverMode { float64, exact_rational };
enum class PivotRule { bland, dantzig_bland };

struct SolverOptions {
  SolverMode mode = SolverMode::float64;
  PivotRule pivot = PivotRule::dantzig_bland;
  double feas_tol = 1e-9;  // ignored in exact mode
  std::int64_t iteration_cap = 2000000;
  double time_cap_seconds = 172800.0;
};

struct LpSolution {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;
  std::string objective_exact;  // canonical rational, exact mode only
  std::vector<double> values;   // one per structural column
  std::vector<std::string> values_exact;
  std::vector<double> row_duals;  // for the internal minimization form
  std::vector<std::string> row_duals_exact;
  std::vector<std::string> basis;
  std::int64_t iterations = 0;
  double seconds = 0.0;
};

namespace detail {

template <class T>
struct ScalarOps {
  static T from_int(std::int64_t v) { return static_cast<T>(v); }
  static double to_double(const T& v) { return static_cast<double>(v); }
  static std::string to_exact_string(const T&) { return {}; }
  static constexpr bool exact = false;
};

template <>
struct ScalarOps<mpq_class> {
  static mpq_class from_int(std::int64_t v) {
    return mpq_class(static_cast<long>(v));  // long is 64-bit on this target
  }
  static double to_double(const mpq_class& v) { return v.get_d(); }
  static std::string to_exact_string(const mpq_class& v) {
    mpq_class c = v;
    c.canonicalize();
    return c.get_str();
  }
  static constexpr bool exact = true;
};

/// Full-tableau primal simplex over variables with bounds [lb, ub or
/// +inf]. Nonbasic variables rest on a bound; the ratio test allows bound
/// flips. Phase 1 starts from one artificial per row.
template <class T>
class BoundedSimplex {
 public:
  using Ops = ScalarOps<T>;

  // Columns 0..n_struct-1 structural, then slacks, then m artificials.
  int m = 0, n_struct = 0, n_slack = 0, n_total = 0;
  std::vector<T> tab;   // m x n_total, row-major: B^-1 A
  std::vector<T> xB;    // basic variable values
  std::vector<T> zrow;  // reduced costs of the active phase
  std::vector<T> cost;
  std::vector<int> basis;
  enum Stat : unsigned char { at_lower = 0, at_upper = 1, in_basis = 2 };
  std::vector<unsigned char> stat;
  std::vector<T> lb, ub;
  std::vector<char> has_ub;
  std::vector<char> blocked;  // artificials barred from entering
  std::vector<int> art_sign;  // row scaling applied during setup
  std::vector<T> b_signed;    // rhs in the internal (sign-adjusted) system
  T tol_cost, tol_piv, tol_zero;
  bool bland = false;  // forced smallest-index rule
  PivotRule rule = PivotRule::dantzig_bland;
  std::int64_t iterations = 0;
  std::int64_t iteration_cap = 0;
  std::chrono::steady_clock::time_point deadline;
  bool have_deadline = false;
  int degenerate_streak = 0;
  static constexpr int kStallThreshold = 40;
  std::int64_t last_refresh_ = -1;

  T& at(int i, int j) { return tab[static_cast<std::size_t>(i) * n_total + j]; }

  void setup(const LpProblem& p, const SolverOptions& opts) {
    m = static_cast<int>(p.rows.size());
    n_struct = static_cast<int>(p.variables.size());
    n_slack = 0;
    for (const auto& r : p.rows)
      if (r.rel != Relation::eq) ++n_slack;
    n_total = n_struct + n_slack + m;

    if constexpr (Ops::exact) {
      tol_cost = tol_piv = tol_zero = T(0);
    } else {
      tol_cost = T(opts.feas_tol);
      tol_piv = T(1e-10);
      tol_zero = T(1e-11);
    }
    rule = opts.pivot;
    bland = rule == PivotRule::bland;
    iteration_cap = opts.iteration_cap;

    lb.assign(n_total, T(0));
    ub.assign(n_total, T(0));
    has_ub.assign(n_total, 0);
    blocked.assign(n_total, 0);
    stat.assign(n_total, at_lower);
    for (int j = 0; j < n_struct; ++j) {
      lb[j] = Ops::from_int(p.variables[static_cast<std::size_t>(j)].lower);
      if (p.variables[static_cast<std::size_t>(j)].has_upper) {
        ub[j] = Ops::from_int(p.variables[static_cast<std::size_t>(j)].upper);
        has_ub[j] = 1;
      }
    }

    // Raw equality system: A x + slack = rhs, slack sign -1 for >= rows.
    tab.assign(static_cast<std::size_t>(m) * n_total, T(0));
    xB.assign(m, T(0));
    basis.assign(m, -1);
    art_sign.assign(m, 1);
    b_signed.assign(m, T(0));
    int slack_at = n_struct;
    for (int i = 0; i < m; ++i) {
      const auto& row = p.rows[static_cast<std::size_t>(i)];
      T res = Ops::from_int(row.rhs);
      for (const auto& [col, coeff] : row.coeffs) {
        at(i, col) = Ops::from_int(coeff);
        res -= Ops::from_int(coeff) * lb[col];
      }
      if (row.rel != Relation::eq) {
        at(i, slack_at) = row.rel == Relation::le ? T(1) : T(-1);
        ++slack_at;
      }
      int art = n_struct + n_slack + i;
      blocked[art] = 1;  // may leave but never re-enter
      if (res < T(0)) {
        art_sign[i] = -1;
        for (int j = 0; j < n_total; ++j) at(i, j) = -at(i, j);
        res = -res;
      }
      b_signed[static_cast<std::size_t>(i)] =
          Ops::from_int(row.rhs) * Ops::from_int(art_sign[static_cast<std::size_t>(i)]);
      at(i, art) = T(1);
      basis[i] = art;
      stat[art] = in_basis;
      xB[i] = res;
    }
  }

  /// Recomputes the basic values from original data. The artificial block
  /// of the tableau is the current basis inverse, so this undoes the
  /// roundoff accumulated by incremental pivoting.
  void refresh_xB() {
    const int art0 = n_struct + n_slack;
    std::vector<T> nb(static_cast<std::size_t>(m), T(0));
    for (int i = 0; i < m; ++i) {
      const T* row = &tab[static_cast<std::size_t>(i) * n_total];
      T acc{};
      for (int k = 0; k < m; ++k) acc += row[art0 + k] * b_signed[static_cast<std::size_t>(k)];
      nb[static_cast<std::size_t>(i)] = acc;
    }
    for (int j = 0; j < art0; ++j) {
      if (stat[j] == in_basis) continue;
      const T xj = stat[j] == at_upper ? ub[static_cast<std::size_t>(j)] : lb[static_cast<std::size_t>(j)];
      if (xj == T(0)) continue;
      for (int i = 0; i < m; ++i) nb[static_cast<std::size_t>(i)] -= at(i, j) * xj;
    }
    xB = std::move(nb);
  }

  void recompute_zrow() {
    zrow = cost;
    for (int i = 0; i < m; ++i) {
      const T& cb = cost[static_cast<std::size_t>(basis[i])];
      if (cb == T(0)) continue;
      const T* row = &tab[static_cast<std::size_t>(i) * n_total];
      for (int j = 0; j < n_total; ++j) zrow[static_cast<std::size_t>(j)] -= cb * row[j];
    }
    for (int i = 0; i < m; ++i) zrow[static_cast<std::size_t>(basis[i])] = T(0);
  }

  bool out_of_time() const {
    return have_deadline && std::chrono::steady_clock::now() > deadline;
  }

  // The smallest-index rule engages while a degenerate stall lasts and
  // releases once a real step is taken again.
  bool bland_active() const { return bland || degenerate_streak > kStallThreshold; }

  int price() const {
    const bool use_bland = bland_active();
    int best = -1;
    T best_score = tol_cost;
    for (int j = 0; j < n_total; ++j) {
      if (stat[j] == in_basis || blocked[j]) continue;
      const T& d = zrow[static_cast<std::size_t>(j)];
      T score;
      if (stat[j] == at_lower) {
        if (!(d < -tol_cost)) continue;
        score = -d;
      } else {
        if (!(d > tol_cost)) continue;
        score = d;
      }
      if (use_bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  enum class StepResult { moved, optimal, unbounded };

  // Ratio for row i against the entering direction; false when the row
  // does not block. delta widens the blocking bound, so pass 2 may prefer
  // a larger pivot among rows that block within that slack.
  bool row_ratio(int i, int q, int dir, const T& delta, T& ti, bool& to_upper) {
    T alpha = at(i, q);
    if (dir < 0) alpha = -alpha;
    int b = basis[i];
    if (alpha > tol_piv) {
      ti = (xB[static_cast<std::size_t>(i)] - (lb[static_cast<std::size_t>(b)] - delta)) / alpha;
      to_upper = false;
    } else if (alpha < -tol_piv && has_ub[b]) {
      ti = (xB[static_cast<std::size_t>(i)] - (ub[static_cast<std::size_t>(b)] + delta)) / alpha;
      to_upper = true;
    } else {
      return false;
    }
    if (ti < T(0)) ti = T(0);
    return true;
  }

  StepResult step() {
    int q = price();
    if (q < 0) return StepResult::optimal;
    int dir = stat[q] == at_lower ? 1 : -1;
    T delta{};
    if constexpr (!Ops::exact) delta = T(1e-9);

    // pass 1: smallest relaxed ratio over the blocking rows
    bool have_t = false;
    T t_rel{};
    for (int i = 0; i < m; ++i) {
      T ti;
      bool tu;
      if (!row_ratio(i, q, dir, delta, ti, tu)) continue;
      if (!have_t || ti < t_rel) {
        t_rel = ti;
        have_t = true;
      }
    }
    bool have_span = false;
    T t_span{};
    if (has_ub[q]) {
      t_span = ub[static_cast<std::size_t>(q)] - lb[static_cast<std::size_t>(q)];
      have_span = true;
    }
    if (!have_t && !have_span) return StepResult::unbounded;

    // pass 2: among rows whose strict ratio fits under the relaxed
    // minimum, the largest pivot magnitude wins for stability. The stalled
    // rule takes the smallest basic index, still refusing pivots far
    // smaller than the best on offer.
    int leave_row = -1;
    bool leave_to_upper = false;
    T t{};
    if (have_t) {
      T max_mag{};
      for (int i = 0; i < m; ++i) {
        T ti;
        bool tu;
        if (!row_ratio(i, q, dir, T(0), ti, tu)) continue;
        if (!(ti <= t_rel)) continue;
        T alpha = at(i, q);
        T mag = alpha < T(0) ? T(-alpha) : alpha;
        if (mag > max_mag) max_mag = mag;
      }
      T floor_mag{};
      if constexpr (!Ops::exact) floor_mag = max_mag * T(1e-3);
      const bool use_bland = bland_active();
      T best_mag{};
      for (int i = 0; i < m; ++i) {
        T ti;
        bool tu;
        if (!row_ratio(i, q, dir, T(0), ti, tu)) continue;
        if (!(ti <= t_rel)) continue;
        T alpha = at(i, q);
        T mag = alpha < T(0) ? T(-alpha) : alpha;
        if (mag < floor_mag) continue;
        bool take;
        if (leave_row < 0) {
          take = true;
        } else if (use_bland) {
          take = basis[i] < basis[leave_row];
        } else {
          take = mag > best_mag || (mag == best_mag && basis[i] < basis[leave_row]);
        }
        if (take) {
          leave_row = i;
          leave_to_upper = tu;
          best_mag = mag;
          t = ti;
        }
      }
    }
    if (leave_row < 0) {
      t = t_span;  // no blocking row: the entering variable crosses its span
    } else if (have_span && t_span < t) {
      leave_row = -1;
      t = t_span;
    }

    ++iterations;
    if (t <= tol_zero) {
      ++degenerate_streak;
    } else {
      degenerate_streak = 0;
    }

    if (leave_row < 0) {
      // bound flip: entering variable crosses to its other bound
      for (int i = 0; i < m; ++i) {
        T alpha = at(i, q);
        if (alpha == T(0)) continue;
        if (dir < 0) alpha = -alpha;
        xB[static_cast<std::size_t>(i)] -= t * alpha;
      }
      stat[q] = stat[q] == at_lower ? at_upper : at_lower;
      return StepResult::moved;
    }

    T xq = (stat[q] == at_lower ? lb[static_cast<std::size_t>(q)] : ub[static_cast<std::size_t>(q)]);
    xq += dir > 0 ? t : -t;
    for (int i = 0; i < m; ++i) {
      T alpha = at(i, q);
      if (alpha == T(0)) continue;
      if (dir < 0) alpha = -alpha;
      xB[static_cast<std::size_t>(i)] -= t * alpha;
    }
    leave_stat_ = leave_to_upper ? at_upper : at_lower;
    pivot(leave_row, q);
    stat[static_cast<std::size_t>(q)] = in_basis;
    xB[static_cast<std::size_t>(leave_row)] = xq;
    return StepResult::moved;
  }

  void pivot(int r, int q) {
    int leaving = basis[r];
    stat[static_cast<std::size_t>(leaving)] = leave_stat_;
    basis[r] = q;

    T* prow = &tab[static_cast<std::size_t>(r) * n_total];
    const T piv = prow[q];
    for (int j = 0; j < n_total; ++j) prow[j] /= piv;
    prow[q] = T(1);
    for (int i = 0; i < m; ++i) {
      if (i == r) continue;
      T f = at(i, q);
      if (f == T(0)) continue;
      T* row = &tab[static_cast<std::size_t>(i) * n_total];
      for (int j = 0; j < n_total; ++j) row[j] -= f * prow[j];
      row[q] = T(0);
    }
    T dq = zrow[static_cast<std::size_t>(q)];
    if (dq != T(0)) {
      for (int j = 0; j < n_total; ++j) zrow[static_cast<std::size_t>(j)] -= dq * prow[j];
    }
    zrow[static_cast<std::size_t>(q)] = T(0);
  }

  unsigned char leave_stat_ = at_lower;

  SolveStatus run_phase() {
    recompute_zrow();
    int resumes = 0;
    while (true) {
      if (iterations >= iteration_cap) return SolveStatus::iteration_cap;
      if ((iterations & 63) == 0 && out_of_time()) return SolveStatus::time_cap;
      if constexpr (!Ops::exact) {
        // periodic hygiene: rebuild basic values and reduced costs from
        // original data instead of trusting long pivot chains
        if (iterations > 0 && (iterations & 255) == 0 && iterations != last_refresh_) {
          last_refresh_ = iterations;
          refresh_xB();
          recompute_zrow();
        }
      }
      StepResult r = step();
      if (r == StepResult::moved) continue;
      if (r == StepResult::unbounded) return SolveStatus::unbounded;
      if constexpr (!Ops::exact) {
        // an "optimal" claim must survive a clean recomputation
        if (resumes < 4) {
          ++resumes;
          refresh_xB();
          recompute_zrow();
          if (price() >= 0) continue;
        }
      }
      return SolveStatus::optimal;
    }
  }

  T phase1_objective() const {
    T s{};
    for (int i = 0; i < m; ++i)
      if (basis[i] >= n_struct + n_slack) s += xB[static_cast<std::size_t>(i)];
    return s;
  }

  void drive_out_artificials() {
    T accept = tol_piv;
    if constexpr (!Ops::exact) accept = T(1e-7);
    for (int r = 0; r < m; ++r) {
      if (basis[r] < n_struct + n_slack) continue;
      int q = -1;
      T best{};
      for (int j = 0; j < n_struct + n_slack; ++j) {
        if (stat[j] == in_basis) continue;
        T a = at(r, j);
        T mag = a < T(0) ? T(-a) : a;
        if (mag > accept && (q < 0 || mag > best)) {
          q = j;
          best = mag;
        }
      }
      if (q < 0) continue;  // redundant row; the inert artificial stays at 0
      T xq = stat[q] == at_lower ? lb[static_cast<std::size_t>(q)] : ub[static_cast<std::size_t>(q)];
      leave_stat_ = at_lower;
      pivot(r, q);
      stat[static_cast<std::size_t>(q)] = in_basis;
      xB[static_cast<std::size_t>(r)] = xq;
    }
  }
};

}  // namespace detail

/// Two-phase solve. The objective is the problem's single target column;
/// maximization is handled by negating the internal cost, so reported
/// row duals always correspond to the minimization form.
template <class T>
LpSolution solve_with(const LpProblem& p, const SolverOptions& opts) {
  using Ops = detail::ScalarOps<T>;
  if (!p.objective.is_set) throw std::invalid_argument("solve: objective required");
  if (opts.iteration_cap <= 0 || opts.time_cap_seconds <= 0)
    throw std::invalid_argument("solve: caps must be positive");

  const auto t0 = std::chrono::steady_clock::now();
  detail::BoundedSimplex<T> s;
  s.setup(p, opts);
  s.deadline = t0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(opts.time_cap_seconds));
  s.have_deadline = true;

  LpSolution sol;
  auto finish = [&](SolveStatus st) {
    sol.status = st;
    sol.iterations = s.iterations;
    sol.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<int> row_of(static_cast<std::size_t>(s.n_total), -1);
    for (int i = 0; i < s.m; ++i) row_of[static_cast<std::size_t>(s.basis[i])] = i;
    sol.values.resize(static_cast<std::size_t>(s.n_struct));
    if constexpr (Ops::exact) sol.values_exact.resize(static_cast<std::size_t>(s.n_struct));
    for (int j = 0; j < s.n_struct; ++j) {
      T v = s.stat[j] == detail::BoundedSimplex<T>::in_basis
                ? s.xB[static_cast<std::size_t>(row_of[static_cast<std::size_t>(j)])]
                : (s.stat[j] == detail::BoundedSimplex<T>::at_upper ? s.ub[static_cast<std::size_t>(j)]
                                                                    : s.lb[static_cast<std::size_t>(j)]);
      if constexpr (!Ops::exact) {
        // basic values carry pivot dust; values within tolerance of a
        // bound are reported on the bound
        const T snap = T(opts.feas_tol);
        T dl = v - s.lb[static_cast<std::size_t>(j)];
        if (dl < T(0)) dl = -dl;
        if (dl <= snap) v = s.lb[static_cast<std::size_t>(j)];
        if (s.has_ub[j]) {
          T du = v - s.ub[static_cast<std::size_t>(j)];
          if (du < T(0)) du = -du;
          if (du <= snap) v = s.ub[static_cast<std::size_t>(j)];
        }
      }
      sol.values[static_cast<std::size_t>(j)] = Ops::to_double(v);
      if constexpr (Ops::exact) sol.values_exact[static_cast<std::size_t>(j)] = Ops::to_exact_string(v);
    }
    {
      int oc = p.objective.column;
      sol.objective = sol.values[static_cast<std::size_t>(oc)];
      if constexpr (Ops::exact) sol.objective_exact = sol.values_exact[static_cast<std::size_t>(oc)];
    }
    sol.row_duals.resize(static_cast<std::size_t>(s.m));
    if constexpr (Ops::exact) sol.row_duals_exact.resize(static_cast<std::size_t>(s.m));
    for (int i = 0; i < s.m; ++i) {
      int art = s.n_struct + s.n_slack + i;
      const T& z = s.zrow[static_cast<std::size_t>(art)];
      sol.row_duals[static_cast<std::size_t>(i)] =
          -Ops::to_double(z) * s.art_sign[static_cast<std::size_t>(i)];
      if constexpr (Ops::exact) {
        T y = -z * Ops::from_int(s.art_sign[static_cast<std::size_t>(i)]);
        sol.row_duals_exact[static_cast<std::size_t>(i)] = Ops::to_exact_string(y);
      }
    }
    sol.basis.reserve(static_cast<std::size_t>(s.m));
    for (int i = 0; i < s.m; ++i) {
      int b = s.basis[i];
      if (b < s.n_struct) {
        sol.basis.push_back(p.variables[static_cast<std::size_t>(b)].name);
      } else if (b < s.n_struct + s.n_slack) {
        sol.basis.push_back("SLACK_" + std::to_string(b - s.n_struct));
      } else {
        sol.basis.push_back("ART_" + p.rows[static_cast<std::size_t>(b - s.n_struct - s.n_slack)].name);
      }
    }
    return sol;
  };

  // phase 1: minimize the artificial sum
  s.cost.assign(static_cast<std::size_t>(s.n_total), T(0));
  for (int i = 0; i < s.m; ++i) s.cost[static_cast<std::size_t>(s.n_struct + s.n_slack + i)] = T(1);
  for (int i = 0; i < s.m; ++i) s.blocked[static_cast<std::size_t>(s.n_struct + s.n_slack + i)] = 0;
  SolveStatus st = s.run_phase();
  if (st != SolveStatus::optimal) return finish(st);
  {
    T infeas = s.phase1_objective();
    bool bad;
    if constexpr (Ops::exact) {
      bad = infeas > T(0);
    } else {
      double rhs_scale = 1.0;
      for (const auto& r : p.rows)
        rhs_scale = std::max(rhs_scale, std::abs(static_cast<double>(r.rhs)));
      bad = Ops::to_double(infeas) > opts.feas_tol * rhs_scale;
    }
    if (bad) return finish(SolveStatus::infeasible);
  }
  for (int i = 0; i < s.m; ++i) s.blocked[static_cast<std::size_t>(s.n_struct + s.n_slack + i)] = 1;
  s.drive_out_artificials();

  // phase 2: the real single-column objective
  s.cost.assign(static_cast<std::size_t>(s.n_total), T(0));
  s.cost[static_cast<std::size_t>(p.objective.column)] =
      p.objective.sense == ObjectiveSense::minimize ? T(1) : T(-1);
  s.degenerate_streak = 0;
  s.bland = opts.pivot == PivotRule::bland;
  st = s.run_phase();
  return finish(st);
}

inline LpSolution solve(const LpProblem& p, const SolverOptions& opts = {}) {
  if (opts.mode == SolverMode::exact_rational) return solve_with<mpq_class>(p, opts);
  return solve_with<double>(p, opts);
}

}  // namespace mublp
