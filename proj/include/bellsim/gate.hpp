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
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bellsim {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

// Tolerances used for gate validation and norm tracking. Dimensions never
// exceed 64, so double precision leaves orders of magnitude of headroom.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormTol = 1e-12;

inline double max_abs(const Eigen::MatrixXcd& a) {
  return a.cwiseAbs().maxCoeff();
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return max_abs(a - b);
}

inline bool is_unitary(const Matrix2& m, double tol = kUnitaryTol) {
  return max_abs_diff(m.adjoint() * m, Matrix2::Identity()) < tol;
}

inline bool is_hermitian(const Eigen::MatrixXcd& m, double tol = kNormTol) {
  return max_abs_diff(m, m.adjoint()) < tol;
}

/// A named single-qubit gate. `angle` is meaningful only for parametric
/// gates (ry, rz, phase); it is what the circuit text format prints.
struct Gate {
  std::string name;
  Matrix2 m = Matrix2::Identity();
  double angle = 0.0;
  bool parametric = false;
};

namespace gates {

inline Gate identity() {
  return {"i", Matrix2::Identity()};
}

inline Gate x() {
  Matrix2 m;
  m << 0, 1, 1, 0;
  return {"x", m};
}

inline Gate y() {
  Matrix2 m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return {"y", m};
}

inline Gate z() {
  Matrix2 m;
  m << 1, 0, 0, -1;
  return {"z", m};
}

inline Gate h() {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix2 m;
  m << s, s, s, -s;
  return {"h", m};
}

/// Rotation about Y: cos(t/2) I - i sin(t/2) Y.
inline Gate ry(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("ry: angle must be finite");
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix2 m;
  m << c, -s, s, c;
  return {"ry", m, theta, true};
}

/// Rotation about Z: diag(exp(-it/2), exp(+it/2)), matching the ry convention.
inline Gate rz(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rz: angle must be finite");
  Matrix2 m;
  m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
  return {"rz", m, theta, true};
}

/// Phase gate diag(1, exp(i eta)).
inline Gate phase(double eta) {
  if (!std::isfinite(eta)) throw std::invalid_argument("phase: angle must be finite");
  Matrix2 m;
  m << 1, 0, 0, std::polar(1.0, eta);
  return {"p", m, eta, true};
}

}  // namespace gates

/// The four single-qubit observables of the CHSH experiment. All are
/// Hermitian and unitary with eigenvalues +1 and -1.
enum class Observable { Q, R, S, T };

inline constexpr Observable kAllObservables[] = {Observable::Q, Observable::R,
                                                 Observable::S, Observable::T};

inline std::string observable_name(Observable o) {
  switch (o) {
    case Observable::Q: return "Q";
    case Observable::R: return "R";
    case Observable::S: return "S";
    case Observable::T: return "T";
  }
  throw std::invalid_argument("unknown observable");
}

inline Observable parse_observable(const std::string& label) {
  if (label == "Q") return Observable::Q;
  if (label == "R") return Observable::R;
  if (label == "S") return Observable::S;
  if (label == "T") return Observable::T;
  throw std::invalid_argument("unknown observable label: " + label);
}

// Q = Z, R = X, S = -(Z+X)/sqrt(2), T = (Z-X)/sqrt(2).
inline Gate observable_gate(Observable o) {
  const double s = 1.0 / std::sqrt(2.0);
  Matrix2 m;
  switch (o) {
    case Observable::Q:
      return {"q", gates::z().m};
    case Observable::R:
      return {"r", gates::x().m};
    case Observable::S:
      m << -s, -s, -s, s;
      return {"s", m};
    case Observable::T:
      m << s, -s, -s, -s;
      return {"t", m};
  }
  throw std::invalid_argument("unknown observable");
}

// Rotation angles that bring S and T to the Z axis, and the conditional
// rotation that turns the T setting into the S setting.
inline constexpr double kThetaS = -5.0 * std::numbers::pi / 4.0;
inline constexpr double kAlphaT = std::numbers::pi / 4.0;
inline constexpr double kPhiST = kThetaS - kAlphaT;  // = -3*pi/2

/// Unitary O with O * obs * O^dagger = Z, so a standard-basis measurement
/// after O is statistically a measurement of obs.
inline Gate diagonalizer(Observable o) {
  switch (o) {
    case Observable::Q: return gates::identity();
    case Observable::R: return gates::h();
    case Observable::S: return gates::ry(kThetaS);
    case Observable::T: return gates::ry(kAlphaT);
  }
  throw std::invalid_argument("unknown observable");
}

/// The four correlator settings. The first observable acts on data qubit 1,
/// the second on data qubit 2.
enum class ObservablePair { QS, RS, RT, QT };

inline constexpr ObservablePair kAllPairs[] = {ObservablePair::QS, ObservablePair::RS,
                                               ObservablePair::RT, ObservablePair::QT};

inline Observable first_observable(ObservablePair p) {
  return (p == ObservablePair::QS || p == ObservablePair::QT) ? Observable::Q : Observable::R;
}

inline Observable second_observable(ObservablePair p) {
  return (p == ObservablePair::QS || p == ObservablePair::RS) ? Observable::S : Observable::T;
}

inline std::string pair_name(ObservablePair p) {
  return observable_name(first_observable(p)) + observable_name(second_observable(p));
}

inline ObservablePair parse_pair(const std::string& label) {
  for (ObservablePair p : kAllPairs) {
    if (pair_name(p) == label) return p;
  }
  throw std::invalid_argument("unknown observable pair: " + label);
}

/// Sign of the pair's term in the CHSH sum <QS> + <RS> + <RT> - <QT>.
inline double chsh_sign(ObservablePair p) { return p == ObservablePair::QT ? -1.0 : 1.0; }

inline double chsh_value(double qs, double rs, double rt, double qt) {
  return qs + rs + rt - qt;
}

/// Ideal correlators on the singlet state: +-1/sqrt(2), summing to 2*sqrt(2).
inline double theoretical_expectation(ObservablePair p) {
  return chsh_sign(p) / std::sqrt(2.0);
}

inline double theoretical_chsh() { return 2.0 * std::sqrt(2.0); }

}  // namespace bellsim
