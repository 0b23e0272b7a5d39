// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bellsim/circuit.hpp"

namespace bellsim {

/// Directed two-qubit connectivity of a hardware backend.
struct CouplingMap {
  std::string name;
  int n_qubits = 0;
  std::vector<std::pair<int, int>> edges;

  bool has_edge(int a, int b) const {
    return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
  }
  bool has_coupling(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }
};

/// Text format: first line is the qubit count, then one directed edge per
/// line as two integers. Blank lines and '#' comments are skipped. Errors
/// carry 1-based line numbers.
inline CouplingMap parse_coupling_map(const std::string& text, const std::string& name = "map") {
  CouplingMap m;
  m.name = name;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_count = false;
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(name + ": line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == '#') continue;
    if (!have_count) {
      try {
        std::size_t used = 0;
        m.n_qubits = std::stoi(first, &used);
        if (used != first.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail("expected qubit count, got '" + first + "'");
      }
      if (m.n_qubits < 1) fail("qubit count must be positive");
      std::string extra;
      if (ls >> extra) fail("unexpected token '" + extra + "' after qubit count");
      have_count = true;
      continue;
    }
    std::string second;
    if (!(ls >> second)) fail("edge needs two qubit indices");
    std::string extra;
    if (ls >> extra) fail("unexpected token '" + extra + "' after edge");
    int a = 0;
    int b = 0;
    try {
      std::size_t ua = 0;
      std::size_t ub = 0;
      a = std::stoi(first, &ua);
      b = std::stoi(second, &ub);
      if (ua != first.size() || ub != second.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail("bad edge '" + first + " " + second + "'");
    }
    if (a < 0 || a >= m.n_qubits || b < 0 || b >= m.n_qubits) fail("edge qubit out of range");
    if (a == b) fail("self-loop edge");
    if (!m.has_edge(a, b)) m.edges.emplace_back(a, b);
  }
  if (!have_count) throw std::invalid_argument(name + ": empty coupling map file");
  return m;
}

/// Shipped topology classes: a bowtie of two triangles sharing a qubit
/// (every coupling in both directions) and a linear chain. These reproduce
/// the structural difference that decides which experiment variants fit.
inline std::string builtin_coupling_text(const std::string& name) {
  if (name == "qx2-class") {
    return "5\n0 1\n1 0\n0 2\n2 0\n1 2\n2 1\n2 3\n3 2\n3 4\n4 3\n2 4\n4 2\n";
  }
  if (name == "vigo-class") {
    return "5\n0 1\n1 0\n1 2\n2 1\n2 3\n3 2\n3 4\n4 3\n";
  }
  throw std::invalid_argument("unknown builtin coupling map: " + name);
}

inline bool is_builtin_coupling(const std::string& name) {
  return name == "qx2-class" || name == "vigo-class";
}

/// Builtin name or file path.
inline CouplingMap load_coupling_map(const std::string& source) {
  if (is_builtin_coupling(source)) {
    return parse_coupling_map(builtin_coupling_text(source), source);
  }
  std::ifstream in(source);
  if (!in) throw std::invalid_argument("cannot open coupling map file: " + source);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_coupling_map(buf.str(), source);
}

/// A two-qubit interaction the best assignment could not place on an edge.
struct FeasibilityViolation {
  std::size_t op_index = 0;
  int control_wire = 0;
  int target_wire = 0;
  int control_qubit = -1;  // -1 when no assignment exists at all
  int target_qubit = -1;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<int> assignment;  // wire -> physical qubit, for the best assignment
  std::vector<FeasibilityViolation> violations;  // empty iff feasible
};

/// Exhaustive search over injective wire -> qubit assignments (at most 6
/// wires, so at most 6! candidates per qubit subset). Every CNOT needs the
/// edge (control, target); with direction flips allowed either direction
/// counts, since a reversed CNOT is four Hadamards away. Classically
/// controlled ops are single-qubit at the hardware level and constrain
/// nothing. Reports the assignment with the fewest unsatisfied interactions.
inline FeasibilityReport check_feasibility(const CircuitSpec& circuit, const CouplingMap& map,
                                           bool allow_direction_flip = true) {
  circuit.validate();
  struct TwoQubitOp {
    std::size_t op_index;
    int control;
    int target;
  };
  std::vector<TwoQubitOp> twoq;
  for (std::size_t k = 0; k < circuit.ops.size(); ++k) {
    if (circuit.ops[k].type == OpType::ControlledNot) {
      twoq.push_back({k, circuit.ops[k].q0, circuit.ops[k].q1});
    }
  }
  FeasibilityReport report;
  if (circuit.n_qubits > map.n_qubits) {
    for (const auto& op : twoq) {
      report.violations.push_back({op.op_index, op.control, op.target, -1, -1});
    }
    if (twoq.empty()) {
      // No interactions, but the register itself does not fit.
      report.violations.push_back({0, 0, 0, -1, -1});
    }
    return report;
  }

  std::vector<int> assign(static_cast<std::size_t>(circuit.n_qubits), -1);
  std::vector<bool> used(static_cast<std::size_t>(map.n_qubits), false);
  std::size_t best_bad = twoq.size() + 1;
  std::vector<int> best_assign;

  auto count_bad = [&]() {
    std::size_t bad = 0;
    for (const auto& op : twoq) {
      const int pc = assign[static_cast<std::size_t>(op.control)];
      const int pt = assign[static_cast<std::size_t>(op.target)];
      const bool ok =
          allow_direction_flip ? map.has_coupling(pc, pt) : map.has_edge(pc, pt);
      if (!ok) ++bad;
    }
    return bad;
  };

  auto search = [&](auto&& self, int wire) -> void {
    if (best_bad == 0) return;
    if (wire == circuit.n_qubits) {
      const std::size_t bad = count_bad();
      if (bad < best_bad) {
        best_bad = bad;
        best_assign = assign;
      }
      return;
    }
    for (int q = 0; q < map.n_qubits; ++q) {
      if (used[static_cast<std::size_t>(q)]) continue;
      used[static_cast<std::size_t>(q)] = true;
      assign[static_cast<std::size_t>(wire)] = q;
      self(self, wire + 1);
      used[static_cast<std::size_t>(q)] = false;
    }
  };
  search(search, 0);

  report.assignment = best_assign;
  report.feasible = best_bad == 0;
  if (!report.feasible) {
    for (const auto& op : twoq) {
      const int pc = best_assign[static_cast<std::size_t>(op.control)];
      const int pt = best_assign[static_cast<std::size_t>(op.target)];
      const bool ok = allow_direction_flip ? map.has_coupling(pc, pt) : map.has_edge(pc, pt);
      if (!ok) report.violations.push_back({op.op_index, op.control, op.target, pc, pt});
    }
  }
  return report;
}

}  // namespace bellsim
