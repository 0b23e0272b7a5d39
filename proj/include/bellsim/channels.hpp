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
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "bellsim/density.hpp"
#include "bellsim/gate.hpp"

namespace bellsim {

// Single-qubit decoherence models acting on the first data qubit of the
// entangled pair, plus a two-qubit depolarizing model acting on both.
// Parameterization: p is the probability that nothing happens (p = 1 is
// noiseless); theta parameterizes damping strength via gamma = sin^2(theta);
// the depolarizing weight p_d mixes in the maximally mixed state.
enum class ChannelKind {
  BitFlip,
  PhaseFlip,
  BitPhaseFlip,
  AmplitudeDamping,
  GeneralizedAmplitudeDamping,
  Depolarizing,
};

inline constexpr ChannelKind kAllChannelKinds[] = {
    ChannelKind::BitFlip,          ChannelKind::PhaseFlip,
    ChannelKind::BitPhaseFlip,     ChannelKind::AmplitudeDamping,
    ChannelKind::GeneralizedAmplitudeDamping, ChannelKind::Depolarizing,
};

inline std::string channel_kind_name(ChannelKind k) {
  switch (k) {
    case ChannelKind::BitFlip: return "B";
    case ChannelKind::PhaseFlip: return "P";
    case ChannelKind::BitPhaseFlip: return "BP";
    case ChannelKind::AmplitudeDamping: return "A";
    case ChannelKind::GeneralizedAmplitudeDamping: return "GA";
    case ChannelKind::Depolarizing: return "D";
  }
  throw std::invalid_argument("unknown channel kind");
}

inline ChannelKind parse_channel_kind(const std::string& label) {
  for (ChannelKind k : kAllChannelKinds) {
    if (channel_kind_name(k) == label) return k;
  }
  throw std::invalid_argument("unknown channel kind: " + label);
}

struct ChannelConfig {
  ChannelKind kind = ChannelKind::BitFlip;
  double p = 1.0;      // survival weight for B, P, BP; bath weight p2 for GA;
                       // depolarizing weight p_d for D
  double theta = 0.0;  // damping angle for A and GA
};

/// A channel as an explicit Kraus operator set.
struct KrausChannel {
  std::string name;
  int n_qubits = 1;
  std::vector<Eigen::MatrixXcd> ops;

  /// Trace preservation: sum_k K_k^dagger K_k = I.
  void check_complete(double tol = 1e-12) const {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& k : ops) {
      if (k.rows() != d || k.cols() != d) {
        throw std::invalid_argument("channel '" + name + "': Kraus operator dimension mismatch");
      }
      s += k.adjoint() * k;
    }
    if ((s - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() >= tol) {
      throw std::invalid_argument("channel '" + name + "' is not trace preserving");
    }
  }
};

namespace detail {

inline void check_probability(double p, const std::string& what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(what + " must lie in [0, 1]");
  }
}

inline Eigen::Matrix2cd damp_keep(double theta) {
  Eigen::Matrix2cd k;
  k << 1, 0, 0, std::cos(theta);
  return k;
}

inline Eigen::Matrix2cd damp_decay(double theta) {
  Eigen::Matrix2cd k;
  k << 0, std::sin(theta), 0, 0;
  return k;
}

// Mirror images damping toward |1> instead of |0>, for the bath-excited half
// of generalized amplitude damping.
inline Eigen::Matrix2cd damp_keep_up(double theta) {
  Eigen::Matrix2cd k;
  k << std::cos(theta), 0, 0, 1;
  return k;
}

inline Eigen::Matrix2cd damp_decay_up(double theta) {
  Eigen::Matrix2cd k;
  k << 0, 0, std::sin(theta), 0;
  return k;
}

}  // namespace detail

inline KrausChannel make_channel(const ChannelConfig& cfg) {
  using detail::check_probability;
  KrausChannel ch;
  ch.name = channel_kind_name(cfg.kind);
  const double sp = std::sqrt(cfg.p);
  const double sq = std::sqrt(1.0 - cfg.p);
  switch (cfg.kind) {
    case ChannelKind::BitFlip:
      check_probability(cfg.p, "bit flip p");
      ch.ops = {sp * gates::identity().m, sq * gates::x().m};
      break;
    case ChannelKind::PhaseFlip:
      check_probability(cfg.p, "phase flip p");
      ch.ops = {sp * gates::identity().m, sq * gates::z().m};
      break;
    case ChannelKind::BitPhaseFlip:
      check_probability(cfg.p, "bit-phase flip p");
      ch.ops = {sp * gates::identity().m, sq * gates::y().m};
      break;
    case ChannelKind::AmplitudeDamping:
      if (!std::isfinite(cfg.theta)) throw std::invalid_argument("damping angle must be finite");
      ch.ops = {detail::damp_keep(cfg.theta), detail::damp_decay(cfg.theta)};
      break;
    case ChannelKind::GeneralizedAmplitudeDamping: {
      check_probability(cfg.p, "bath weight p2");
      if (!std::isfinite(cfg.theta)) throw std::invalid_argument("damping angle must be finite");
      ch.ops = {sp * detail::damp_keep(cfg.theta), sp * detail::damp_decay(cfg.theta),
                sq * detail::damp_keep_up(cfg.theta), sq * detail::damp_decay_up(cfg.theta)};
      break;
    }
    case ChannelKind::Depolarizing: {
      check_probability(cfg.p, "depolarizing weight p_d");
      ch.n_qubits = 2;
      const Eigen::Matrix2cd paulis[4] = {gates::identity().m, gates::x().m, gates::y().m,
                                          gates::z().m};
      const double w = std::sqrt(cfg.p / 16.0);
      ch.ops.push_back(std::sqrt(1.0 - 15.0 * cfg.p / 16.0) *
                       Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(4, 4)));
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          if (a == 0 && b == 0) continue;
          ch.ops.push_back(w * Eigen::MatrixXcd(Eigen::kroneckerProduct(paulis[a], paulis[b])));
        }
      }
      break;
    }
  }
  ch.check_complete();
  return ch;
}

/// Lift a Kraus operator acting on `ch.n_qubits` consecutive wires starting
/// at `first_qubit` to the register dimension. Wire 0 is the leftmost
/// Kronecker factor.
inline Eigen::MatrixXcd lift_operator(const Eigen::MatrixXcd& k, int op_qubits, int first_qubit,
                                      int n_qubits) {
  if (first_qubit < 0 || first_qubit + op_qubits > n_qubits) {
    throw std::out_of_range("lift_operator: qubit window out of range");
  }
  const auto left = static_cast<Eigen::Index>(std::size_t{1} << first_qubit);
  const auto right =
      static_cast<Eigen::Index>(std::size_t{1} << (n_qubits - first_qubit - op_qubits));
  Eigen::MatrixXcd full = Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(left, left), k);
  full = Eigen::kroneckerProduct(full, Eigen::MatrixXcd::Identity(right, right)).eval();
  return full;
}

/// rho <- sum_k K_k rho K_k^dagger with the channel placed at `first_qubit`.
inline void apply_channel(DensityMatrix& rho, const KrausChannel& ch, int first_qubit) {
  ch.check_complete();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (const auto& k : ch.ops) {
    const Eigen::MatrixXcd full = lift_operator(k, ch.n_qubits, first_qubit, rho.n_qubits());
    out += full * rho.m() * full.adjoint();
  }
  rho.mutable_m() = out;
  rho.check_invariants();
}

/// The entangled pair (|01> - |10>)/sqrt(2) as a density matrix, produced by
/// running the preparation gates rather than typing the matrix in.
inline DensityMatrix bell_density() {
  StateVector psi(2);
  psi.apply(gates::x(), 0);
  psi.apply(gates::x(), 1);
  psi.apply(gates::h(), 0);
  psi.apply_controlled(gates::x(), 0, 1);
  return DensityMatrix::from_state(psi);
}

/// A (x) B for the pair's observables, first observable on wire 0.
inline Eigen::Matrix4cd pair_observable_matrix(ObservablePair p) {
  return Eigen::kroneckerProduct(observable_gate(first_observable(p)).m,
                                 observable_gate(second_observable(p)).m);
}

/// sqrt(2) <A (x) B> on the noisy pair: the channel hits data qubit 1 (both
/// qubits for the two-qubit depolarizing model) between preparation and
/// measurement. Noiseless values are +1 (QS, RS, RT) and -1 (QT).
inline double noisy_sqrt2_expectation(const KrausChannel& ch, ObservablePair pair) {
  DensityMatrix rho = bell_density();
  apply_channel(rho, ch, 0);
  return std::sqrt(2.0) * rho.expectation(pair_observable_matrix(pair));
}

/// Closed-form value of sqrt(2) <A (x) B> for each channel family. The
/// generalized amplitude damping result does not depend on the bath weight.
inline double table_v_prediction(const ChannelConfig& cfg, ObservablePair pair) {
  const bool first_q = first_observable(pair) == Observable::Q;
  const double sign = chsh_sign(pair);
  switch (cfg.kind) {
    case ChannelKind::BitFlip:
      return first_q ? sign * (2.0 * cfg.p - 1.0) : 1.0;
    case ChannelKind::PhaseFlip:
      return first_q ? sign : 2.0 * cfg.p - 1.0;
    case ChannelKind::BitPhaseFlip:
      return sign * (2.0 * cfg.p - 1.0);
    case ChannelKind::AmplitudeDamping:
    case ChannelKind::GeneralizedAmplitudeDamping: {
      const double c = std::cos(cfg.theta);
      return first_q ? sign * c * c : c;
    }
    case ChannelKind::Depolarizing:
      return sign * (1.0 - cfg.p);
  }
  throw std::invalid_argument("unknown channel kind");
}

}  // namespace bellsim
