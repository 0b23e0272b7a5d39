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

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bellsim/channels.hpp"
#include "bellsim/circuit.hpp"
#include "bellsim/rng.hpp"
#include "bellsim/statevector.hpp"

namespace bellsim {

enum class NoiseKind { None, Depolarizing, Channel };

/// Noise applied during circuit execution.
///  - Depolarizing: after every executed gate, each touched qubit suffers a
///    uniformly random Pauli with probability `rate`. A rate of zero draws
///    nothing from the generator, so results match the noiseless run shot
///    for shot.
///  - Channel: a Kraus channel hits the data qubits once, at the boundary
///    between state preparation and the rest of the circuit.
struct NoiseConfig {
  NoiseKind kind = NoiseKind::None;
  double rate = 0.0;
  ChannelConfig channel;
};

namespace detail {

/// First wire the channel acts on: the first data wire of the circuit, with
/// a two-qubit channel spanning the next wire as well. Circuits without role
/// annotations place the channel at wire 0.
inline int channel_anchor(const CircuitSpec& c, int channel_qubits) {
  int first = 0;
  if (!c.roles.empty()) {
    first = -1;
    for (int q = 0; q < c.n_qubits; ++q) {
      if (c.roles[static_cast<std::size_t>(q)] == WireRole::Data) {
        first = q;
        break;
      }
    }
    if (first < 0) throw std::invalid_argument("channel noise needs a data wire");
    if (channel_qubits == 2) {
      if (first + 1 >= c.n_qubits ||
          c.roles[static_cast<std::size_t>(first + 1)] != WireRole::Data) {
        throw std::invalid_argument("two-qubit channel needs adjacent data wires");
      }
    }
  }
  if (first + channel_qubits > c.n_qubits) {
    throw std::invalid_argument("channel does not fit the register");
  }
  return first;
}

/// Apply a (not necessarily unitary) operator on `op_qubits` consecutive
/// wires to the raw amplitude vector, without normalizing.
inline void apply_raw_operator(StateVector& psi, const Eigen::MatrixXcd& k, int op_qubits,
                               int first_qubit) {
  const Eigen::MatrixXcd full = lift_operator(k, op_qubits, first_qubit, psi.n_qubits());
  const auto d = static_cast<Eigen::Index>(psi.dim());
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = psi.amp(static_cast<std::size_t>(i));
  v = (full * v).eval();
  auto& amps = psi.mutable_amps();
  for (Eigen::Index i = 0; i < d; ++i) amps[static_cast<std::size_t>(i)] = v(i);
}

inline void apply_random_pauli(StateVector& psi, int q, ShotRng& rng) {
  switch (rng.pauli_index()) {
    case 0: psi.apply(gates::x(), q); break;
    case 1: psi.apply(gates::y(), q); break;
    default: psi.apply(gates::z(), q); break;
  }
}

inline void depolarize_qubit(StateVector& psi, int q, double rate, ShotRng& rng) {
  if (rate <= 0.0) return;
  if (rng.uniform() < rate) apply_random_pauli(psi, q, rng);
}

/// Sample one Kraus branch: pick operator k with probability |K_k psi|^2 and
/// renormalize. Trajectories over this rule average to the channel.
inline void apply_channel_stochastic(StateVector& psi, const KrausChannel& ch, int first_qubit,
                                     ShotRng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  StateVector branch = psi;
  for (std::size_t k = 0; k < ch.ops.size(); ++k) {
    branch = psi;
    apply_raw_operator(branch, ch.ops[k], ch.n_qubits, first_qubit);
    const double p = branch.norm_sq();
    acc += p;
    if (u < acc || k + 1 == ch.ops.size()) {
      if (p < 1e-15) {
        throw std::runtime_error("channel branch has near-zero probability");
      }
      const double s = 1.0 / std::sqrt(p);
      for (auto& a : branch.mutable_amps()) a *= s;
      psi = branch;
      return;
    }
  }
}

}  // namespace detail

/// Execute one shot of the circuit, returning the classical register.
/// Classical bits start at 0 and are overwritten by measurements.
inline std::vector<int> run_shot(const CircuitSpec& c, const NoiseConfig& noise, ShotRng& rng) {
  c.validate();
  const KrausChannel ch =
      noise.kind == NoiseKind::Channel ? make_channel(noise.channel) : KrausChannel{};
  const int anchor =
      noise.kind == NoiseKind::Channel ? detail::channel_anchor(c, ch.n_qubits) : 0;
  StateVector psi(c.n_qubits);
  std::vector<int> cbits(static_cast<std::size_t>(c.n_cbits), 0);
  for (std::size_t k = 0; k < c.ops.size(); ++k) {
    if (noise.kind == NoiseKind::Channel && k == c.prep_end) {
      detail::apply_channel_stochastic(psi, ch, anchor, rng);
    }
    const CircuitOp& op = c.ops[k];
    switch (op.type) {
      case OpType::Gate:
        psi.apply(op.gate, op.q0);
        if (noise.kind == NoiseKind::Depolarizing) {
          detail::depolarize_qubit(psi, op.q0, noise.rate, rng);
        }
        break;
      case OpType::ControlledNot:
        psi.apply_controlled(gates::x(), op.q0, op.q1);
        if (noise.kind == NoiseKind::Depolarizing) {
          detail::depolarize_qubit(psi, op.q0, noise.rate, rng);
          detail::depolarize_qubit(psi, op.q1, noise.rate, rng);
        }
        break;
      case OpType::Measure: {
        const MeasurementRecord r = psi.measure(op.q0, rng);
        cbits[static_cast<std::size_t>(op.cbit)] = r.outcome;
        break;
      }
      case OpType::ClassicalGate:
        if (cbits[static_cast<std::size_t>(op.cbit)] == 1) {
          psi.apply(op.gate, op.q0);
          if (noise.kind == NoiseKind::Depolarizing) {
            detail::depolarize_qubit(psi, op.q0, noise.rate, rng);
          }
        }
        break;
    }
  }
  if (noise.kind == NoiseKind::Channel && c.ops.size() == c.prep_end) {
    detail::apply_channel_stochastic(psi, ch, anchor, rng);
  }
  return cbits;
}

/// Classical-register index with bit c0 most significant, mirroring the
/// qubit convention.
inline std::size_t cbits_index(const std::vector<int>& cbits) {
  std::size_t v = 0;
  for (int b : cbits) v = (v << 1) | static_cast<std::size_t>(b);
  return v;
}

namespace detail {

inline void walk_branches(const CircuitSpec& c, const NoiseConfig& noise, const KrausChannel& ch,
                          int anchor, StateVector psi, std::size_t op_idx, double weight,
                          std::vector<int>& cbits, std::vector<double>& out) {
  constexpr double kBranchCutoff = 1e-15;
  for (std::size_t k = op_idx; k < c.ops.size(); ++k) {
    if (noise.kind == NoiseKind::Channel && k == c.prep_end) {
      // Branch over Kraus operators, weighting by the branch probability.
      // Skipping zero-probability branches keeps project() reachable only
      // on normalizable states.
      NoiseConfig rest = noise;
      rest.kind = NoiseKind::None;
      for (const auto& kraus : ch.ops) {
        StateVector branch = psi;
        apply_raw_operator(branch, kraus, ch.n_qubits, anchor);
        const double p = branch.norm_sq();
        if (p < kBranchCutoff) continue;
        const double s = 1.0 / std::sqrt(p);
        for (auto& a : branch.mutable_amps()) a *= s;
        walk_branches(c, rest, ch, anchor, std::move(branch), k, weight * p, cbits, out);
      }
      return;
    }
    const CircuitOp& op = c.ops[k];
    switch (op.type) {
      case OpType::Gate:
        psi.apply(op.gate, op.q0);
        break;
      case OpType::ControlledNot:
        psi.apply_controlled(gates::x(), op.q0, op.q1);
        break;
      case OpType::Measure: {
        for (int outcome : {0, 1}) {
          const double p = psi.qubit_probability(op.q0, outcome);
          if (p < kBranchCutoff) continue;
          StateVector branch = psi;
          branch.project(op.q0, outcome, kBranchCutoff / 2);
          cbits[static_cast<std::size_t>(op.cbit)] = outcome;
          walk_branches(c, noise, ch, anchor, std::move(branch), k + 1, weight * p, cbits, out);
        }
        return;
      }
      case OpType::ClassicalGate:
        if (cbits[static_cast<std::size_t>(op.cbit)] == 1) psi.apply(op.gate, op.q0);
        break;
    }
  }
  if (noise.kind == NoiseKind::Channel && c.ops.size() == c.prep_end) {
    NoiseConfig rest = noise;
    rest.kind = NoiseKind::None;
    for (const auto& kraus : ch.ops) {
      StateVector branch = psi;
      apply_raw_operator(branch, kraus, ch.n_qubits, anchor);
      const double p = branch.norm_sq();
      if (p < kBranchCutoff) continue;
      out[cbits_index(cbits)] += weight * p;
    }
    return;
  }
  out[cbits_index(cbits)] += weight;
}

}  // namespace detail

/// Exact probability of every classical-register value, by enumerating all
/// measurement branches (and Kraus branches under channel noise) with their
/// Born weights. Per-op depolarizing has no compact exact form here and is
/// rejected.
inline std::vector<double> exact_distribution(const CircuitSpec& c, const NoiseConfig& noise) {
  c.validate();
  if (noise.kind == NoiseKind::Depolarizing && noise.rate != 0.0) {
    throw std::invalid_argument("exact evaluation does not support per-op depolarizing");
  }
  const KrausChannel ch =
      noise.kind == NoiseKind::Channel ? make_channel(noise.channel) : KrausChannel{};
  const int anchor =
      noise.kind == NoiseKind::Channel ? detail::channel_anchor(c, ch.n_qubits) : 0;
  std::vector<double> out(std::size_t{1} << c.n_cbits, 0.0);
  std::vector<int> cbits(static_cast<std::size_t>(c.n_cbits), 0);
  detail::walk_branches(c, noise, ch, anchor, StateVector(c.n_qubits), 0, 1.0, cbits, out);
  return out;
}

inline std::vector<double> exact_distribution(const CircuitSpec& c) {
  return exact_distribution(c, NoiseConfig{});
}

/// Full CNOT matrix on n qubits: a basis permutation flipping the target bit
/// wherever the control bit is set. Built directly from indices, so it can
/// serve as an oracle for the state-vector kernels.
inline Eigen::MatrixXcd cnot_matrix(int control, int target, int n_qubits) {
  if (control == target) throw std::invalid_argument("cnot_matrix: control equals target");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  const std::size_t cmask = std::size_t{1} << (n_qubits - 1 - control);
  const std::size_t tmask = std::size_t{1} << (n_qubits - 1 - target);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < static_cast<std::size_t>(dim); ++i) {
    const std::size_t j = (i & cmask) ? (i ^ tmask) : i;
    m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return m;
}

/// Product of a measurement-free op list as one matrix, later ops on the
/// left. Kronecker-lifted independently of the state-vector update kernels.
inline Eigen::MatrixXcd unitary_of_ops(const std::vector<CircuitOp>& ops, int n_qubits) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const CircuitOp& op : ops) {
    switch (op.type) {
      case OpType::Gate:
        u = (lift_operator(op.gate.m, 1, op.q0, n_qubits) * u).eval();
        break;
      case OpType::ControlledNot:
        u = (cnot_matrix(op.q0, op.q1, n_qubits) * u).eval();
        break;
      default:
        throw std::invalid_argument("unitary_of_ops: op list contains a non-unitary op");
    }
  }
  return u;
}

}  // namespace bellsim
