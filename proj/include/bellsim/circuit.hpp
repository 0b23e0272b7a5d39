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

#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellsim/gate.hpp"

namespace bellsim {

enum class WireRole { Data, Ancilla };

enum class OpType {
  Gate,           // single-qubit unitary on q0
  ControlledNot,  // CNOT, control q0, target q1
  Measure,        // projective Z measurement of q0 into cbit
  ClassicalGate,  // single-qubit unitary on q0, applied iff cbit reads 1
};

struct CircuitOp {
  OpType type = OpType::Gate;
  Gate gate;
  int q0 = 0;
  int q1 = 0;
  int cbit = 0;
};

inline CircuitOp make_gate_op(const Gate& g, int q) {
  return {OpType::Gate, g, q, 0, 0};
}
inline CircuitOp make_cnot_op(int control, int target) {
  return {OpType::ControlledNot, gates::x(), control, target, 0};
}
inline CircuitOp make_measure_op(int q, int cbit) {
  return {OpType::Measure, gates::identity(), q, 0, cbit};
}
inline CircuitOp make_classical_op(const Gate& g, int cbit, int q) {
  return {OpType::ClassicalGate, g, q, 0, cbit};
}

/// An ordered list of operations over `n_qubits` wires and `n_cbits`
/// classical bits. Wire 0 is the top wire. `prep_end` marks the boundary
/// between state preparation and the rest of the circuit; noise channels that
/// model an imperfectly prepared state are injected at that point.
struct CircuitSpec {
  std::string name;
  int n_qubits = 0;
  int n_cbits = 0;
  std::vector<WireRole> roles;
  std::vector<CircuitOp> ops;
  std::size_t prep_end = 0;

  void add(const Gate& g, int q) { ops.push_back(make_gate_op(g, q)); }
  void add_cnot(int control, int target) { ops.push_back(make_cnot_op(control, target)); }
  void add_measure(int q, int cbit) { ops.push_back(make_measure_op(q, cbit)); }
  void add_classical(const Gate& g, int cbit, int q) {
    ops.push_back(make_classical_op(g, cbit, q));
  }
  void mark_prep_end() { prep_end = ops.size(); }

  /// Structural checks: index ranges, control != target, classical bits
  /// written before read, parametric angles finite.
  void validate() const {
    if (n_qubits < 1 || n_qubits > 6) {
      throw std::invalid_argument("circuit '" + name + "': qubit count must be in [1, 6]");
    }
    if (!roles.empty() && static_cast<int>(roles.size()) != n_qubits) {
      throw std::invalid_argument("circuit '" + name + "': role list does not match qubit count");
    }
    if (prep_end > ops.size()) {
      throw std::invalid_argument("circuit '" + name + "': prep boundary past end of op list");
    }
    std::vector<bool> written(static_cast<std::size_t>(n_cbits), false);
    for (std::size_t k = 0; k < ops.size(); ++k) {
      const CircuitOp& op = ops[k];
      auto fail = [&](const std::string& what) {
        throw std::invalid_argument("circuit '" + name + "', op " + std::to_string(k) + ": " + what);
      };
      if (op.q0 < 0 || op.q0 >= n_qubits) fail("qubit index out of range");
      switch (op.type) {
        case OpType::Gate:
        case OpType::ClassicalGate:
          if (!is_unitary(op.gate.m)) fail("gate '" + op.gate.name + "' is not unitary");
          if (op.gate.parametric && !std::isfinite(op.gate.angle)) fail("angle is not finite");
          break;
        case OpType::ControlledNot:
          if (op.q1 < 0 || op.q1 >= n_qubits) fail("target qubit out of range");
          if (op.q0 == op.q1) fail("cnot control equals target");
          break;
        case OpType::Measure:
          break;
      }
      if (op.type == OpType::Measure || op.type == OpType::ClassicalGate) {
        if (op.cbit < 0 || op.cbit >= n_cbits) fail("classical bit out of range");
        if (op.type == OpType::Measure) {
          written[static_cast<std::size_t>(op.cbit)] = true;
        } else if (!written[static_cast<std::size_t>(op.cbit)]) {
          fail("classical bit read before any measurement writes it");
        }
      }
    }
  }
};

namespace detail {

inline std::string format_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", a);
  return buf;
}

}  // namespace detail

/// One op per line:
///   x q0
///   cnot q0 q1
///   ry q2 -3.9269908169872414
///   measure q0 -> c0
///   c-h c0 q1
/// Angles print with enough digits to round-trip exactly.
inline std::string dump_circuit(const CircuitSpec& c) {
  std::ostringstream out;
  for (const CircuitOp& op : c.ops) {
    switch (op.type) {
      case OpType::Gate:
        out << op.gate.name << " q" << op.q0;
        if (op.gate.parametric) out << ' ' << detail::format_angle(op.gate.angle);
        out << '\n';
        break;
      case OpType::ControlledNot:
        out << "cnot q" << op.q0 << " q" << op.q1 << '\n';
        break;
      case OpType::Measure:
        out << "measure q" << op.q0 << " -> c" << op.cbit << '\n';
        break;
      case OpType::ClassicalGate:
        out << "c-" << op.gate.name << " c" << op.cbit << " q" << op.q0;
        if (op.gate.parametric) out << ' ' << detail::format_angle(op.gate.angle);
        out << '\n';
        break;
    }
  }
  return out.str();
}

namespace detail {

inline int parse_index(const std::string& tok, char prefix, int line_no) {
  if (tok.size() < 2 || tok[0] != prefix) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": expected '" +
                                std::string(1, prefix) + "<index>', got '" + tok + "'");
  }
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok.substr(1), &used);
    if (used != tok.size() - 1 || v < 0) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad index '" + tok + "'");
  }
}

inline double parse_angle(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad angle '" + tok + "'");
  }
}

/// Gate factory by dump name. Parametric names require an angle; fixed names
/// reject one.
inline Gate gate_by_name(const std::string& name, bool have_angle, double angle, int line_no) {
  auto need = [&](bool parametric) {
    if (parametric != have_angle) {
      throw std::invalid_argument("line " + std::to_string(line_no) + ": gate '" + name +
                                  (parametric ? "' requires an angle" : "' takes no angle"));
    }
  };
  if (name == "i") { need(false); return gates::identity(); }
  if (name == "x") { need(false); return gates::x(); }
  if (name == "y") { need(false); return gates::y(); }
  if (name == "z") { need(false); return gates::z(); }
  if (name == "h") { need(false); return gates::h(); }
  if (name == "ry") { need(true); return gates::ry(angle); }
  if (name == "rz") { need(true); return gates::rz(angle); }
  if (name == "p") { need(true); return gates::phase(angle); }
  throw std::invalid_argument("line " + std::to_string(line_no) + ": unknown gate '" + name + "'");
}

}  // namespace detail

/// Parse the dump_circuit() text format. Blank lines and lines starting with
/// '#' are skipped. Qubit and classical-bit counts are inferred from the
/// highest index used. Errors carry 1-based line numbers.
inline CircuitSpec parse_circuit(const std::string& text, const std::string& name = "parsed") {
  CircuitSpec c;
  c.name = name;
  int max_q = -1;
  int max_c = -1;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    const std::string& head = tok[0];
    auto expect_argc = [&](std::size_t n) {
      if (tok.size() != n) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": '" + head + "' expects " +
                                    std::to_string(n - 1) + " arguments");
      }
    };
    if (head == "cnot") {
      expect_argc(3);
      const int cq = detail::parse_index(tok[1], 'q', line_no);
      const int tq = detail::parse_index(tok[2], 'q', line_no);
      c.add_cnot(cq, tq);
      max_q = std::max({max_q, cq, tq});
    } else if (head == "measure") {
      expect_argc(4);
      if (tok[2] != "->") {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": expected '->'");
      }
      const int q = detail::parse_index(tok[1], 'q', line_no);
      const int cb = detail::parse_index(tok[3], 'c', line_no);
      c.add_measure(q, cb);
      max_q = std::max(max_q, q);
      max_c = std::max(max_c, cb);
    } else if (head.rfind("c-", 0) == 0) {
      const std::string gname = head.substr(2);
      const bool have_angle = tok.size() == 4;
      expect_argc(have_angle ? 4 : 3);
      const int cb = detail::parse_index(tok[1], 'c', line_no);
      const int q = detail::parse_index(tok[2], 'q', line_no);
      const double angle = have_angle ? detail::parse_angle(tok[3], line_no) : 0.0;
      c.add_classical(detail::gate_by_name(gname, have_angle, angle, line_no), cb, q);
      max_q = std::max(max_q, q);
      max_c = std::max(max_c, cb);
    } else {
      const bool have_angle = tok.size() == 3;
      expect_argc(have_angle ? 3 : 2);
      const int q = detail::parse_index(tok[1], 'q', line_no);
      const double angle = have_angle ? detail::parse_angle(tok[2], line_no) : 0.0;
      c.add(detail::gate_by_name(head, have_angle, angle, line_no), q);
      max_q = std::max(max_q, q);
    }
  }
  c.n_qubits = max_q + 1;
  c.n_cbits = max_c + 1;
  if (c.n_qubits < 1) {
    throw std::invalid_argument("circuit text contains no operations");
  }
  c.validate();
  return c;
}

}  // namespace bellsim
