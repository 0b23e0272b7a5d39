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

#include <stdexcept>
#include <string>
#include <vector>

#include "bellsim/abc.hpp"
#include "bellsim/circuit.hpp"
#include "bellsim/gate.hpp"

namespace bellsim {

/// The five experiment layouts.
///  I              direct measurement, one two-qubit circuit per setting
///  II             one ancilla reads the correlator off a controlled pair
///                 of observables (one three-qubit circuit per setting)
///  III quantum    two ancillas in superposition pick the setting with
///                 controlled basis rotations; everything measured at the end
///  III classical  the ancillas are measured first and the basis rotations
///                 are classically conditioned on the outcomes
///  IV             like III quantum, plus a parity ancilla so only ancillas
///                 are measured
enum class VariantKind { I, II, IIIQuantum, IIIClassical, IV };

inline constexpr VariantKind kAllVariants[] = {
    VariantKind::I, VariantKind::II, VariantKind::IIIQuantum, VariantKind::IIIClassical,
    VariantKind::IV};

inline std::string variant_name(VariantKind v) {
  switch (v) {
    case VariantKind::I: return "I";
    case VariantKind::II: return "II";
    case VariantKind::IIIQuantum: return "III-quantum";
    case VariantKind::IIIClassical: return "III-classical";
    case VariantKind::IV: return "IV";
  }
  throw std::invalid_argument("unknown variant");
}

inline VariantKind parse_variant(const std::string& label) {
  for (VariantKind v : kAllVariants) {
    if (variant_name(v) == label) return v;
  }
  throw std::invalid_argument("unknown variant: " + label);
}

namespace detail {

/// (|01> - |10>)/sqrt(2) on wires (d1, d2), then the prep boundary marker.
inline void append_pair_prep(CircuitSpec& c, int d1, int d2) {
  c.add(gates::x(), d1);
  c.add(gates::x(), d2);
  c.add(gates::h(), d1);
  c.add_cnot(d1, d2);
  c.mark_prep_end();
}

/// Rotations that turn a standard-basis measurement of (d1, d2) into a
/// measurement of the pair's observables.
inline void append_basis_rotation(CircuitSpec& c, ObservablePair p, int d1, int d2) {
  const Gate g1 = diagonalizer(first_observable(p));
  if (g1.name != "i") c.add(g1, d1);
  c.add(diagonalizer(second_observable(p)), d2);
}

/// Setting-selection rotations controlled by the two ancillas: a1 toggles
/// Q -> R on d1, a2 toggles T -> S on d2. Ry(alpha) alone is the T basis;
/// adding the conditional Ry(phi) lands on the S basis.
inline void append_controlled_selection(CircuitSpec& c, int a1, int d1, int a2, int d2) {
  append_controlled_unitary(c, abc_for_h(), a1, d1);
  c.add(gates::ry(kAlphaT), d2);
  append_controlled_unitary(c, abc_for_ry(kPhiST), a2, d2);
}

}  // namespace detail

/// Variant I: prepare the pair, rotate into the setting's eigenbases,
/// measure both data qubits. The correlator value is the product of the two
/// measured eigenvalues.
inline CircuitSpec build_variant_i(ObservablePair p) {
  CircuitSpec c;
  c.name = "variant-I-" + pair_name(p);
  c.n_qubits = 2;
  c.n_cbits = 2;
  c.roles = {WireRole::Data, WireRole::Data};
  detail::append_pair_prep(c, 0, 1);
  detail::append_basis_rotation(c, p, 0, 1);
  c.add_measure(0, 0);
  c.add_measure(1, 1);
  c.validate();
  return c;
}

/// Variant II: a Hadamard-sandwiched ancilla controls both observables as
/// unitaries; P(ancilla = 0) = (1 + <A (x) B>) / 2, so the ancilla alone
/// carries the correlator.
inline CircuitSpec build_variant_ii(ObservablePair p) {
  CircuitSpec c;
  c.name = "variant-II-" + pair_name(p);
  c.n_qubits = 3;
  c.n_cbits = 1;
  c.roles = {WireRole::Ancilla, WireRole::Data, WireRole::Data};
  detail::append_pair_prep(c, 1, 2);
  c.add(gates::h(), 0);
  append_controlled_unitary(c, abc_for_observable(first_observable(p)), 0, 1);
  append_controlled_unitary(c, abc_for_observable(second_observable(p)), 0, 2);
  c.add(gates::h(), 0);
  c.add_measure(0, 0);
  c.validate();
  return c;
}

/// Variant III, quantum form: ancillas a1 (wire 0) and a2 (wire 3) in |+>
/// select the setting through controlled rotations; all four wires are
/// measured. Classical bits read (a1, d1, d2, a2).
inline CircuitSpec build_variant_iii_quantum() {
  CircuitSpec c;
  c.name = "variant-III-quantum";
  c.n_qubits = 4;
  c.n_cbits = 4;
  c.roles = {WireRole::Ancilla, WireRole::Data, WireRole::Data, WireRole::Ancilla};
  detail::append_pair_prep(c, 1, 2);
  c.add(gates::h(), 0);
  c.add(gates::h(), 3);
  detail::append_controlled_selection(c, 0, 1, 3, 2);
  c.add_measure(0, 0);
  c.add_measure(1, 1);
  c.add_measure(2, 2);
  c.add_measure(3, 3);
  c.validate();
  return c;
}

/// Variant III, classical form: the ancillas are measured up front and the
/// selection rotations run under classical control. By deferred measurement
/// this reproduces the quantum form's outcome distribution exactly.
inline CircuitSpec build_variant_iii_classical() {
  CircuitSpec c;
  c.name = "variant-III-classical";
  c.n_qubits = 4;
  c.n_cbits = 4;
  c.roles = {WireRole::Ancilla, WireRole::Data, WireRole::Data, WireRole::Ancilla};
  detail::append_pair_prep(c, 1, 2);
  c.add(gates::h(), 0);
  c.add(gates::h(), 3);
  c.add_measure(0, 0);
  c.add_measure(3, 3);
  c.add_classical(gates::h(), 0, 1);
  c.add(gates::ry(kAlphaT), 2);
  c.add_classical(gates::ry(kPhiST), 3, 2);
  c.add_measure(1, 1);
  c.add_measure(2, 2);
  c.validate();
  return c;
}

/// Variant IV: variant III's selection stage, then the data parity is copied
/// onto a parity ancilla a3 (wire 4) with two CNOTs and only the ancillas
/// are measured. Classical bits read (a1, a2, a3).
inline CircuitSpec build_variant_iv() {
  CircuitSpec c;
  c.name = "variant-IV";
  c.n_qubits = 5;
  c.n_cbits = 3;
  c.roles = {WireRole::Ancilla, WireRole::Data, WireRole::Data, WireRole::Ancilla,
             WireRole::Ancilla};
  detail::append_pair_prep(c, 1, 2);
  c.add(gates::h(), 0);
  c.add(gates::h(), 3);
  detail::append_controlled_selection(c, 0, 1, 3, 2);
  c.add_cnot(1, 4);
  c.add_cnot(2, 4);
  c.add_measure(0, 0);
  c.add_measure(3, 1);
  c.add_measure(4, 2);
  c.validate();
  return c;
}

/// The circuits a variant runs: four setting-specific circuits for I and II,
/// one shared circuit otherwise. `pairs[k]` labels `circuits[k]` when the
/// setting is fixed per circuit, and is empty when the circuit itself
/// selects the setting.
struct ExperimentPlan {
  VariantKind variant = VariantKind::I;
  std::vector<CircuitSpec> circuits;
  std::vector<ObservablePair> pairs;
};

inline ExperimentPlan make_plan(VariantKind v) {
  ExperimentPlan plan;
  plan.variant = v;
  switch (v) {
    case VariantKind::I:
      for (ObservablePair p : kAllPairs) {
        plan.circuits.push_back(build_variant_i(p));
        plan.pairs.push_back(p);
      }
      break;
    case VariantKind::II:
      for (ObservablePair p : kAllPairs) {
        plan.circuits.push_back(build_variant_ii(p));
        plan.pairs.push_back(p);
      }
      break;
    case VariantKind::IIIQuantum:
      plan.circuits.push_back(build_variant_iii_quantum());
      break;
    case VariantKind::IIIClassical:
      plan.circuits.push_back(build_variant_iii_classical());
      break;
    case VariantKind::IV:
      plan.circuits.push_back(build_variant_iv());
      break;
  }
  return plan;
}

}  // namespace bellsim
