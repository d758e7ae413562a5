#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mublp/errors.hpp"
#include "mublp/lp_model.hpp"
#include "mublp/phase_matrix.hpp"
#include "mublp/simplex.hpp"
#include "mublp/verifier.hpp"

namespace mublp {

inline nlohmann::json matrix_to_json(const PhaseMatrix& m) {
  nlohmann::json j;
  j["d"] = m.dim();
  j["label"] = m.label();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int k = 0; k < m.dim(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline void write_matrix_json(const PhaseMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_matrix_json: cannot open " + path);
  out << matrix_to_json(m).dump(1) << "\n";
  if (!out) throw std::runtime_error("write_matrix_json: write failed for " + path);
}

/// Loads a matrix, enforcing square shape and unit-modulus entries.
inline PhaseMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.contains("d") || !j.contains("entries"))
    throw std::runtime_error("matrix_from_json: missing d or entries");
  const int d = j.at("d").get<int>();
  const auto& rows = j.at("entries");
  if (!rows.is_array() || static_cast<int>(rows.size()) != d)
    throw DimensionError("matrix_from_json: entries row count does not match d");
  std::vector<Complex> e;
  e.reserve(static_cast<std::size_t>(d) * d);
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw DimensionError("matrix_from_json: entries are not a d x d array");
    for (const auto& cell : row) {
      if (!cell.is_array() || cell.size() != 2)
        throw std::runtime_error("matrix_from_json: entry is not an [re, im] pair");
      e.emplace_back(cell[0].get<double>(), cell[1].get<double>());
    }
  }
  PhaseMatrix m(d, std::move(e), j.value("label", std::string{}));
  if (m.max_entry_modulus_error() > kDefaultEntryTol)
    throw ConstructionError("matrix_from_json: entries are not unit phases", m.max_entry_modulus_error());
  return m;
}

inline PhaseMatrix read_matrix_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_matrix_json: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return matrix_from_json(j);
}

inline nlohmann::json solution_to_json(const LpProblem& p, const LpSolution& sol) {
  nlohmann::json j;
  j["status"] = status_name(sol.status);
  j["objective"] = sol.objective;
  if (!sol.objective_exact.empty()) j["objective_exact"] = sol.objective_exact;
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t i = 0; i < p.variables.size(); ++i) values[p.variables[i].name] = sol.values[i];
  j["values"] = std::move(values);
  if (!sol.values_exact.empty()) {
    nlohmann::json ev = nlohmann::json::object();
    for (std::size_t i = 0; i < p.variables.size(); ++i) ev[p.variables[i].name] = sol.values_exact[i];
    j["values_exact"] = std::move(ev);
  }
  j["basis"] = sol.basis;
  j["iterations"] = sol.iterations;
  j["seconds"] = sol.seconds;
  return j;
}

inline void write_solution_json(const LpProblem& p, const LpSolution& sol, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_solution_json: cannot open " + path);
  out << solution_to_json(p, sol).dump(1) << "\n";
  if (!out) throw std::runtime_error("write_solution_json: write failed for " + path);
}

/// Reads a solution (possibly produced by an external solver) back,
/// aligning values with the problem's columns by name.
inline LpSolution read_solution_json(const LpProblem& p, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_solution_json: cannot open " + path);
  nlohmann::json j;
  in >> j;

  LpSolution sol;
  const std::string st = j.value("status", "optimal");
  if (st == "optimal")
    sol.status = SolveStatus::optimal;
  else if (st == "infeasible")
    sol.status = SolveStatus::infeasible;
  else if (st == "unbounded")
    sol.status = SolveStatus::unbounded;
  else if (st == "iteration-cap")
    sol.status = SolveStatus::iteration_cap;
  else
    sol.status = SolveStatus::time_cap;
  sol.objective = j.value("objective", 0.0);
  sol.objective_exact = j.value("objective_exact", std::string{});
  sol.iterations = j.value("iterations", std::int64_t{0});
  sol.seconds = j.value("seconds", 0.0);
  if (j.contains("basis")) sol.basis = j.at("basis").get<std::vector<std::string>>();

  sol.values.assign(p.variables.size(), 0.0);
  const auto& values = j.at("values");
  for (const auto& v : p.variables) {
    if (!values.contains(v.name))
      throw std::runtime_error("read_solution_json: missing value for column " + v.name);
    sol.values[static_cast<std::size_t>(v.column)] = values.at(v.name).get<double>();
  }
  if (j.contains("values_exact")) {
    sol.values_exact.assign(p.variables.size(), "0");
    const auto& ev = j.at("values_exact");
    for (const auto& v : p.variables)
      sol.values_exact[static_cast<std::size_t>(v.column)] = ev.value(v.name, "0");
  }
  return sol;
}

inline nlohmann::json report_to_json(const VerificationReport& rep) {
  nlohmann::json j;
  j["claim"] = rep.claim;
  j["samples"] = rep.samples;
  j["max_residual"] = rep.max_residual;
  j["tol"] = rep.tol;
  j["pass"] = rep.pass;
  j["seed"] = rep.seed;
  j["singular_points"] = rep.singular_points;
  j["failures"] = rep.failures;
  nlohmann::json notes = nlohmann::json::object();
  for (const auto& [k, v] : rep.notes) notes[k] = v;
  j["notes"] = std::move(notes);
  return j;
}

inline void write_report_json(const VerificationReport& rep, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_report_json: cannot open " + path);
  out << report_to_json(rep).dump(1) << "\n";
  if (!out) throw std::runtime_error("write_report_json: write failed for " + path);
}

}  // namespace mublp
