#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "mublp/lp_model.hpp"
#include "mublp/mub_sets.hpp"
#include "oracles.hpp"

using namespace mublp;

namespace {

std::map<RowKind, int> count_by_kind(const LpProblem& p) {
  std::map<RowKind, int> out;
  for (const auto& r : p.rows) out[r.kind] += 1;
  return out;
}

const LpRow* find_row(const LpProblem& p, const std::string& name) {
  for (const auto& r : p.rows)
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("variables mirror the orbit enumeration") {
  LpProblem p = build_lp(2, 2);
  REQUIRE(p.orbits.size() == 5);
  REQUIRE(p.variables.size() == 10);
  CHECK(p.variables[0].name == "G_0_0");
  CHECK(p.variables[1].name == "G_1_0");
  CHECK(p.variables[2].name == "G_2_0");
  CHECK(p.variables[3].name == "G_2_1");
  CHECK(p.variables[4].name == "G_2_2");
  CHECK(p.variables[5].name == "F_0_0");
  CHECK(p.variables[9].name == "F_2_2");
  for (std::size_t i = 0; i < p.variables.size(); ++i)
    CHECK(p.variables[i].column == static_cast<int>(i));
  CHECK(p.g_column(3) == 3);
  CHECK(p.f_column(3) == 8);

  // bounds: 0 <= G <= d^3, 0 <= F <= d^4
  for (const auto& v : p.variables) {
    CHECK(v.lower == 0);
    CHECK(v.has_upper);
    CHECK(v.upper == (v.family == Family::G ? 8 : 16));
  }
}

TEST_CASE("row census for the desk instances") {
  LpProblem p2 = build_lp(2, 2);
  auto c2 = count_by_kind(p2);
  CHECK(c2[RowKind::r1] == 3);
  CHECK(c2[RowKind::r2] == 1);
  CHECK(c2[RowKind::r3] == 1);
  CHECK(c2[RowKind::r4] == 2);
  CHECK(c2[RowKind::r5] == 5);
  CHECK(p2.rows.size() == 12);

  LpProblem p4 = build_lp(2, 4);
  auto c4 = count_by_kind(p4);
  CHECK(c4[RowKind::r1] == 14);
  CHECK(c4[RowKind::r2] == 5);
  CHECK(c4[RowKind::r3] == 5);
  CHECK(c4[RowKind::r4] == 2);
  CHECK(c4[RowKind::r5] == 13);
  CHECK(p4.rows.size() == 39);

  LpStats st = stats(p4);
  CHECK(st.rows == 39);
  CHECK(st.variables == 26);
  std::int64_t nnz = 0;
  for (const auto& r : p4.rows) nnz += static_cast<std::int64_t>(r.coeffs.size());
  CHECK(st.nonzeros == nnz);
  CHECK(st.est_memory_mb > 0.0);
}

TEST_CASE("hand-checked rows at d=2 l=2") {
  LpProblem p = build_lp(2, 2);
  auto col = [&](Family f, const ExponentVector& rep) {
    for (std::size_t i = 0; i < p.orbits.size(); ++i)
      if (p.orbits[i].rep == rep)
        return f == Family::G ? p.g_column(static_cast<int>(i)) : p.f_column(static_cast<int>(i));
    FAIL("orbit not found");
    return -1;
  };

  // shifting the zero point by each coordinate direction lands on (1,0) twice
  const LpRow* r1 = find_row(p, "R1_0");
  REQUIRE(r1 != nullptr);
  CHECK(r1->rel == Relation::eq);
  CHECK(r1->rhs == 8);
  REQUIRE(r1->coeffs.size() == 1);
  CHECK(r1->coeffs[0] == std::pair<int, std::int64_t>{col(Family::G, {1, 0}), 2});

  // the two signed bases of orbit (1,0) give different shifted rows
  const LpRow* r1b = find_row(p, "R1_1");
  const LpRow* r1c = find_row(p, "R1_2");
  REQUIRE(r1b != nullptr);
  REQUIRE(r1c != nullptr);
  std::vector<std::pair<int, std::int64_t>> plus_base = {
      {col(Family::G, {2, 0}), 1}, {col(Family::G, {1, 1}), 1}};
  std::vector<std::pair<int, std::int64_t>> minus_base = {
      {col(Family::G, {0, 0}), 1}, {col(Family::G, {1, -1}), 1}};
  bool ordered = (r1b->coeffs == plus_base && r1c->coeffs == minus_base) ||
                 (r1b->coeffs == minus_base && r1c->coeffs == plus_base);
  CHECK(ordered);

  // d G(0) + sum_{r != t} F(pi_r - pi_t) = d^4
  const LpRow* r2 = find_row(p, "R2_0");
  REQUIRE(r2 != nullptr);
  CHECK(r2->rhs == 16);
  std::vector<std::pair<int, std::int64_t>> r2_want = {{col(Family::G, {0, 0}), 2},
                                                       {col(Family::F, {1, -1}), 2}};
  CHECK(r2->coeffs == r2_want);

  // same-shift difference rows cancel: F(1,-1) and G(1,-1) twice each
  const LpRow* r3 = find_row(p, "R3_0");
  REQUIRE(r3 != nullptr);
  CHECK(r3->rhs == 0);
  std::vector<std::pair<int, std::int64_t>> r3_want = {{col(Family::G, {1, -1}), -2},
                                                       {col(Family::F, {1, -1}), 2}};
  std::sort(r3_want.begin(), r3_want.end());
  CHECK(r3->coeffs == r3_want);

  // fixed zero-point values
  const LpRow* r4f = find_row(p, "R4_0");
  const LpRow* r4g = find_row(p, "R4_1");
  REQUIRE(r4f != nullptr);
  REQUIRE(r4g != nullptr);
  std::int64_t seen_f = 0, seen_g = 0;
  for (const LpRow* r : {r4f, r4g}) {
    REQUIRE(r->coeffs.size() == 1);
    if (r->coeffs[0].first == col(Family::F, {0, 0})) seen_f = r->rhs;
    if (r->coeffs[0].first == col(Family::G, {0, 0})) seen_g = r->rhs;
  }
  CHECK(seen_f == 16);
  CHECK(seen_g == 8);

  // one Cauchy-Schwarz style inequality per orbit
  for (const auto& r : p.rows) {
    if (r.kind != RowKind::r5) continue;
    CHECK(r.rel == Relation::le);
    CHECK(r.rhs == 0);
    REQUIRE(r.coeffs.size() == 2);
    CHECK(r.coeffs[0].second == -2);  // -d on the G column
    CHECK(r.coeffs[1].second == 1);
  }
}

TEST_CASE("coupling variant changes the difference rows") {
  LpProblem minus = build_lp(2, 4, false, CouplingVariant::minus);
  LpProblem plus = build_lp(2, 4, false, CouplingVariant::plus);
  CHECK(count_by_kind(minus)[RowKind::r3] == 5);
  CHECK(count_by_kind(plus)[RowKind::r3] == 8);
  CHECK(minus.coupling_variant == CouplingVariant::minus);
  CHECK(plus.coupling_variant == CouplingVariant::plus);

  // plus reading at the zero point: F(1,-1) terms against G(1,1) terms
  LpProblem p2 = build_lp(2, 2, false, CouplingVariant::plus);
  const LpRow* r3 = find_row(p2, "R3_0");
  REQUIRE(r3 != nullptr);
  bool has_g11 = false;
  for (auto [c, a] : r3->coeffs)
    if (c == 3 && a == -2) has_g11 = true;  // G_2_1 is orbit (1,1)
  CHECK(has_g11);
}

TEST_CASE("true functional values satisfy every generated row") {
  for (auto [d, l] : std::vector<std::pair<int, int>>{{2, 4}, {3, 4}}) {
    auto ms = standard_mub_set(d);
    LpProblem p = build_lp(d, l);
    std::vector<double> x(p.variables.size());
    for (const auto& v : p.variables) {
      double val = v.family == Family::G ? oracle::G_set(ms, v.orbit.rep)
                                         : oracle::F_set(ms, v.orbit.rep);
      x[static_cast<std::size_t>(v.column)] = val;
    }
    double worst = 0.0;
    for (const auto& r : p.rows) {
      double lhs = 0.0;
      for (auto [c, a] : r.coeffs) lhs += x[static_cast<std::size_t>(c)] * static_cast<double>(a);
      double res = r.rel == Relation::eq  ? std::abs(lhs - static_cast<double>(r.rhs))
                   : r.rel == Relation::le ? std::max(0.0, lhs - static_cast<double>(r.rhs))
                                           : std::max(0.0, static_cast<double>(r.rhs) - lhs);
      worst = std::max(worst, res);
    }
    CHECK(worst < 1e-6);
    for (const auto& v : p.variables) {
      double val = x[static_cast<std::size_t>(v.column)];
      CHECK(val >= -1e-9);
      CHECK(val <= static_cast<double>(v.upper) + 1e-6);
    }
  }
}

TEST_CASE("karlsson mode pins the signed pattern orbit to zero") {
  LpProblem p = build_lp(6, 6, true);
  auto c = count_by_kind(p);
  CHECK(c[RowKind::r7] == 2);
  GammaOrbit rho = canonicalize({1, 1, 1, -1, -1, -1});
  int idx = -1;
  for (std::size_t i = 0; i < p.orbits.size(); ++i)
    if (p.orbits[i].rep == rho.rep) idx = static_cast<int>(i);
  REQUIRE(idx >= 0);
  int hits = 0;
  for (const auto& r : p.rows) {
    if (r.kind != RowKind::r7) continue;
    CHECK(r.rel == Relation::eq);
    CHECK(r.rhs == 0);
    REQUIRE(r.coeffs.size() == 1);
    bool on_rho = r.coeffs[0].first == p.g_column(idx) || r.coeffs[0].first == p.f_column(idx);
    CHECK(on_rho);
    ++hits;
  }
  CHECK(hits == 2);

  CHECK_THROWS_AS(build_lp(2, 4, true), std::invalid_argument);
}

TEST_CASE("objective selection and its guards") {
  LpProblem p = build_lp(2, 4);
  LpProblem q = set_objective(p, ObjectiveSense::minimize, Family::G, {2, -2});
  CHECK(q.objective.is_set);
  CHECK(q.objective.sense == ObjectiveSense::minimize);
  CHECK(q.objective.column_name == "G_4_4");
  CHECK_FALSE(p.objective.is_set);  // input untouched

  CHECK_THROWS_AS(set_objective(p, ObjectiveSense::minimize, Family::G, {1, 2, 3}),
                  DimensionError);
  CHECK_THROWS_AS(set_objective(p, ObjectiveSense::minimize, Family::F, {5, -1}),
                  OrbitOutsideSpaceError);
  try {
    set_objective(p, ObjectiveSense::minimize, Family::F, {5, -1});
  } catch (const OrbitOutsideSpaceError& e) {
    CHECK(e.l1_norm() == 6);
    CHECK(e.l() == 4);
  }

  LpProblem empty;
  CHECK_THROWS_AS(set_objective(empty, ObjectiveSense::minimize, Family::G, {0, 0}),
                  std::logic_error);
}

TEST_CASE("construction preconditions") {
  CHECK_THROWS_AS(build_lp(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_lp(2, 1), std::invalid_argument);
}

TEST_CASE("generation is deterministic and thread-count independent") {
  LpProblem a = build_lp(3, 4, false, CouplingVariant::minus, 1);
  LpProblem b = build_lp(3, 4, false, CouplingVariant::minus, 3);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].name == b.rows[i].name);
    CHECK(a.rows[i].coeffs == b.rows[i].coeffs);
    CHECK(a.rows[i].rhs == b.rows[i].rhs);
  }
}
