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

#include <Eigen/Dense>

#include "bellsim/circuit.hpp"
#include "bellsim/gate.hpp"

namespace bellsim {

/// ZYZ parameters of a single-qubit unitary:
///   U = e^{i eta} Rz(beta) Ry(gamma) Rz(delta).
struct AbcAngles {
  double eta = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

/// The three correction blocks of U = e^{i eta} A X B X C with A B C = I:
///   A = Rz(beta) Ry(gamma/2)
///   B = Ry(-gamma/2) Rz(-(delta+beta)/2)
///   C = Rz((delta-beta)/2)
/// Wrapping B between two CNOTs and phasing the control by eta turns any
/// single-qubit unitary into a two-qubit controlled gate over the native
/// {ry, rz, p, cnot} set.
struct AbcDecomposition {
  AbcAngles angles;
  Matrix2 a;
  Matrix2 b;
  Matrix2 c;
};

inline AbcDecomposition abc_from_angles(const AbcAngles& g) {
  AbcDecomposition d;
  d.angles = g;
  d.a = gates::rz(g.beta).m * gates::ry(g.gamma / 2).m;
  d.b = gates::ry(-g.gamma / 2).m * gates::rz(-(g.delta + g.beta) / 2).m;
  d.c = gates::rz((g.delta - g.beta) / 2).m;
  return d;
}

/// Recover ZYZ angles from an arbitrary unitary. Branch choices: eta in
/// (-pi/2, pi/2], gamma in [0, pi]; degenerate gamma folds delta into beta.
inline AbcAngles zyz_angles(const Matrix2& u) {
  if (!is_unitary(u)) {
    throw std::invalid_argument("zyz_angles: input is not unitary");
  }
  AbcAngles g;
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  g.eta = 0.5 * std::arg(det);
  const Matrix2 v = std::exp(Complex(0, -g.eta)) * u;
  const double c = std::abs(v(0, 0));
  const double s = std::abs(v(1, 0));
  g.gamma = 2.0 * std::atan2(s, c);
  constexpr double kDegenerate = 1e-12;
  if (s < kDegenerate) {
    g.beta = -2.0 * std::arg(v(0, 0));
    g.delta = 0.0;
  } else if (c < kDegenerate) {
    g.beta = 2.0 * std::arg(v(1, 0));
    g.delta = 0.0;
  } else {
    g.beta = std::arg(v(1, 0)) - std::arg(v(0, 0));
    g.delta = -std::arg(v(0, 0)) - std::arg(v(1, 0));
  }
  return g;
}

inline AbcDecomposition abc_decompose(const Matrix2& u) {
  return abc_from_angles(zyz_angles(u));
}

/// Fixed-point ZYZ tables for the gates that appear in the experiment
/// circuits. Exact constants keep circuit dumps stable digit-for-digit.
inline AbcAngles abc_for_observable(Observable o) {
  constexpr double kPi = 3.14159265358979323846;
  switch (o) {
    case Observable::Q:
      return {kPi / 2, kPi, 0.0, 0.0};
    case Observable::R:
      return {-kPi / 2, kPi, kPi, 0.0};
    case Observable::S:
      return {kPi / 2, 0.0, kPi / 2, -kPi};
    case Observable::T:
      return {kPi / 2, kPi, kPi / 2, 0.0};
  }
  throw std::invalid_argument("abc_for_observable: bad observable");
}

inline AbcAngles abc_for_h() {
  constexpr double kPi = 3.14159265358979323846;
  return {kPi / 2, 0.0, kPi / 2, kPi};
}

inline AbcAngles abc_for_ry(double phi) { return {0.0, 0.0, phi, 0.0}; }

/// Append the controlled-U fragment for the given ZYZ angles. Time order on
/// the target is C, CNOT, B, CNOT, A with each block expanded into native
/// rotations; eta becomes a phase gate on the control. Rotations with a zero
/// angle are elided.
inline void append_controlled_unitary(CircuitSpec& circ, const AbcAngles& g, int control,
                                      int target) {
  auto rz = [&](double a) {
    if (a != 0.0) circ.add(gates::rz(a), target);
  };
  auto ry = [&](double a) {
    if (a != 0.0) circ.add(gates::ry(a), target);
  };
  rz((g.delta - g.beta) / 2);
  circ.add_cnot(control, target);
  rz(-(g.delta + g.beta) / 2);
  ry(-g.gamma / 2);
  circ.add_cnot(control, target);
  ry(g.gamma / 2);
  rz(g.beta);
  if (g.eta != 0.0) circ.add(gates::phase(g.eta), control);
}

/// Block matrix of a controlled-U on (control, target) = (qubit 0, qubit 1)
/// under the MSB-first index convention: diag(I, U).
inline Eigen::Matrix4cd controlled_block(const Matrix2& u) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m.block<2, 2>(2, 2) = u;
  return m;
}

/// Reconstruct e^{i eta} A X B X C; equals the decomposed unitary.
inline Matrix2 abc_reconstruct(const AbcDecomposition& d) {
  const Matrix2 x = gates::x().m;
  return std::exp(Complex(0, d.angles.eta)) * d.a * x * d.b * x * d.c;
}

}  // namespace bellsim
