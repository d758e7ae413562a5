#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mublp/errors.hpp"
#include "mublp/lp_model.hpp"

namespace mublp {

namespace detail {

// Fixed-format field starts (1-indexed): 2, 5, 15, 25, 40, 50.
inline constexpr std::size_t kFieldStart[6] = {2, 5, 15, 25, 40, 50};

inline void put_field(std::string& line, int field, const std::string& token) {
  std::size_t start = kFieldStart[field] - 1;
  if (line.size() < start)
    line.append(start - line.size(), ' ');
  else
    line.push_back(' ');  // long name spilled over; keep tokens separated
  line += token;
}

inline char relation_code(Relation r) {
  switch (r) {
    case Relation::eq: return 'E';
    case Relation::le: return 'L';
    case Relation::ge: return 'G';
  }
  return '?';
}

}  // namespace detail

inline std::string sidecar_path(const std::string& mps_path) { return mps_path + ".meta.json"; }

/// Writes the problem as fixed-format MPS plus a JSON sidecar mapping
/// column names back to orbit representatives. Deterministic: identical
/// problems produce byte-identical files.
inline void export_mps(const LpProblem& p, const std::string& path) {
  if (!p.objective.is_set) throw std::invalid_argument("export_mps: objective required");

  std::ostringstream out;
  out << "* d=" << p.d << " l=" << p.l << " karlsson_mode=" << (p.karlsson_mode ? 1 : 0)
      << " coupling_variant=" << (p.coupling_variant == CouplingVariant::minus ? "minus" : "plus") << "\n";
  if (p.objective.sense == ObjectiveSense::maximize) out << "* OBJSENSE MAX\n";
  {
    std::string line = "NAME";
    detail::put_field(line, 2, "MUBLP_D" + std::to_string(p.d) + "_L" + std::to_string(p.l));
    out << line << "\n";
  }

  out << "ROWS\n";
  {
    std::string line;
    detail::put_field(line, 0, "N");
    detail::put_field(line, 1, "OBJ");
    out << line << "\n";
  }
  for (const auto& r : p.rows) {
    std::string line;
    detail::put_field(line, 0, std::string(1, detail::relation_code(r.rel)));
    detail::put_field(line, 1, r.name);
    out << line << "\n";
  }

  // Column-major scatter; row order within a column follows row order.
  std::vector<std::vector<std::pair<const std::string*, std::int64_t>>> per_col(p.variables.size());
  {
    static const std::string kObjName = "OBJ";
    per_col[static_cast<std::size_t>(p.objective.column)].push_back({&kObjName, 1});
    for (const auto& r : p.rows)
      for (const auto& [col, coeff] : r.coeffs)
        per_col[static_cast<std::size_t>(col)].push_back({&r.name, coeff});
  }

  out << "COLUMNS\n";
  for (std::size_t j = 0; j < p.variables.size(); ++j) {
    const auto& entries = per_col[j];
    for (std::size_t at = 0; at < entries.size(); at += 2) {
      std::string line;
      detail::put_field(line, 1, p.variables[j].name);
      detail::put_field(line, 2, *entries[at].first);
      detail::put_field(line, 3, std::to_string(entries[at].second));
      if (at + 1 < entries.size()) {
        detail::put_field(line, 4, *entries[at + 1].first);
        detail::put_field(line, 5, std::to_string(entries[at + 1].second));
      }
      out << line << "\n";
    }
  }

  out << "RHS\n";
  {
    std::vector<std::pair<const std::string*, std::int64_t>> entries;
    for (const auto& r : p.rows)
      if (r.rhs != 0) entries.push_back({&r.name, r.rhs});
    for (std::size_t at = 0; at < entries.size(); at += 2) {
      std::string line;
      detail::put_field(line, 1, "RHS");
      detail::put_field(line, 2, *entries[at].first);
      detail::put_field(line, 3, std::to_string(entries[at].second));
      if (at + 1 < entries.size()) {
        detail::put_field(line, 4, *entries[at + 1].first);
        detail::put_field(line, 5, std::to_string(entries[at + 1].second));
      }
      out << line << "\n";
    }
  }

  out << "BOUNDS\n";
  for (const auto& v : p.variables) {
    if (!v.has_upper) continue;
    std::string line;
    detail::put_field(line, 0, "UP");
    detail::put_field(line, 1, "BND");
    detail::put_field(line, 2, v.name);
    detail::put_field(line, 3, std::to_string(v.upper));
    out << line << "\n";
  }
  out << "ENDATA\n";

  {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("export_mps: cannot open " + path);
    file << out.str();
    if (!file) throw std::runtime_error("export_mps: write failed for " + path);
  }

  nlohmann::json meta;
  meta["d"] = p.d;
  meta["l"] = p.l;
  meta["karlsson_mode"] = p.karlsson_mode;
  meta["coupling_variant"] = p.coupling_variant == CouplingVariant::minus ? "minus" : "plus";
  meta["objective"]["sense"] = p.objective.sense == ObjectiveSense::minimize ? "min" : "max";
  meta["objective"]["column"] = p.objective.column_name;
  nlohmann::json cols = nlohmann::json::object();
  for (const auto& v : p.variables) cols[v.name] = v.orbit.rep;
  meta["columns"] = std::move(cols);
  std::ofstream side(sidecar_path(path), std::ios::binary);
  if (!side) throw std::runtime_error("export_mps: cannot open " + sidecar_path(path));
  side << meta.dump(1) << "\n";
  if (!side) throw std::runtime_error("export_mps: write failed for " + sidecar_path(path));
}

/// Reads an MPS file back into a problem. Only the sparse structure is
/// recovered (orbit metadata lives in the sidecar); token order, not byte
/// positions, drives the parse so overlong names are harmless.
inline LpProblem import_mps(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("import_mps: cannot open " + path);

  LpProblem p;
  std::map<std::string, int> row_index;
  std::map<std::string, int> col_index;
  bool maximize = false;
  std::string objective_row;
  std::string section;
  std::string raw;

  auto column_of = [&](const std::string& name) {
    auto it = col_index.find(name);
    if (it != col_index.end()) return it->second;
    int id = static_cast<int>(p.variables.size());
    LpVariable v;
    v.name = name;
    v.family = name.rfind("G", 0) == 0 ? Family::G : Family::F;
    v.column = id;
    v.has_upper = false;
    p.variables.push_back(std::move(v));
    col_index.emplace(name, id);
    return id;
  };

  while (std::getline(file, raw)) {
    if (raw.empty()) continue;
    if (raw[0] == '*') {
      if (raw.find("OBJSENSE MAX") != std::string::npos) maximize = true;
      continue;
    }
    if (raw[0] != ' ') {
      std::istringstream head(raw);
      head >> section;
      continue;
    }
    std::istringstream in(raw);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (section == "ROWS") {
      if (tok.size() != 2) throw std::runtime_error("import_mps: malformed ROWS line: " + raw);
      if (tok[0] == "N") {
        objective_row = tok[1];
        continue;
      }
      LpRow r;
      r.name = tok[1];
      r.rel = tok[0] == "E" ? Relation::eq : tok[0] == "L" ? Relation::le : Relation::ge;
      if (r.name.size() > 1 && r.name[0] == 'R') {
        switch (r.name[1]) {
          case '1': r.kind = RowKind::r1; break;
          case '2': r.kind = RowKind::r2; break;
          case '3': r.kind = RowKind::r3; break;
          case '4': r.kind = RowKind::r4; break;
          case '5': r.kind = RowKind::r5; break;
          case '7': r.kind = RowKind::r7; break;
          default: break;
        }
      }
      row_index.emplace(r.name, static_cast<int>(p.rows.size()));
      p.rows.push_back(std::move(r));
    } else if (section == "COLUMNS") {
      int col = column_of(tok[0]);
      for (std::size_t at = 1; at + 1 < tok.size(); at += 2) {
        const std::string& row_name = tok[at];
        std::int64_t value = std::stoll(tok[at + 1]);
        if (row_name == objective_row) {
          p.objective.is_set = true;
          p.objective.column = col;
          p.objective.column_name = tok[0];
          continue;
        }
        auto it = row_index.find(row_name);
        if (it == row_index.end())
          throw std::runtime_error("import_mps: unknown row " + row_name);
        p.rows[static_cast<std::size_t>(it->second)].coeffs.push_back({col, value});
      }
    } else if (section == "RHS") {
      for (std::size_t at = 1; at + 1 < tok.size(); at += 2) {
        auto it = row_index.find(tok[at]);
        if (it == row_index.end()) throw std::runtime_error("import_mps: unknown RHS row " + tok[at]);
        p.rows[static_cast<std::size_t>(it->second)].rhs = std::stoll(tok[at + 1]);
      }
    } else if (section == "BOUNDS") {
      if (tok.size() < 3) throw std::runtime_error("import_mps: malformed BOUNDS line: " + raw);
      const std::string& type = tok[0];
      int col = column_of(tok[2]);
      auto& v = p.variables[static_cast<std::size_t>(col)];
      std::int64_t value = tok.size() > 3 ? std::stoll(tok[3]) : 0;
      if (type == "UP") {
        v.upper = value;
        v.has_upper = true;
      } else if (type == "LO") {
        v.lower = value;
      } else if (type == "FX") {
        v.lower = v.upper = value;
        v.has_upper = true;
      } else {
        throw std::runtime_error("import_mps: unsupported bound type " + type);
      }
    } else if (section == "RANGES") {
      throw std::runtime_error("import_mps: RANGES not supported");
    }
  }
  p.objective.sense = maximize ? ObjectiveSense::maximize : ObjectiveSense::minimize;
  for (auto& r : p.rows)
    std::sort(r.coeffs.begin(), r.coeffs.end());
  return p;
}

}  // namespace mublp
