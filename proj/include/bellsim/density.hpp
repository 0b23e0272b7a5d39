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

#include <Eigen/Dense>

#include "bellsim/statevector.hpp"

namespace bellsim {

/// Dense density matrix over a small register. Shares the MSB-first index
/// convention of StateVector. Invariants (hermiticity, unit trace, positive
/// semidefiniteness) are enforced on construction and on demand.
class DensityMatrix {
 public:
  explicit DensityMatrix(int n_qubits) : n_(check_count(n_qubits)) {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_);
    rho_ = Eigen::MatrixXcd::Zero(d, d);
    rho_(0, 0) = 1.0;
  }

  static DensityMatrix from_state(const StateVector& psi) {
    DensityMatrix r(psi.n_qubits());
    const auto d = static_cast<Eigen::Index>(psi.dim());
    Eigen::VectorXcd v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = psi.amp(static_cast<std::size_t>(i));
    r.rho_ = v * v.adjoint();
    r.check_invariants();
    return r;
  }

  static DensityMatrix from_matrix(int n_qubits, Eigen::MatrixXcd m) {
    DensityMatrix r(check_count(n_qubits));
    if (m.rows() != r.rho_.rows() || m.cols() != r.rho_.cols()) {
      throw std::invalid_argument("from_matrix: dimension does not match qubit count");
    }
    r.rho_ = std::move(m);
    r.check_invariants();
    return r;
  }

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return rho_.rows(); }
  const Eigen::MatrixXcd& m() const { return rho_; }

  /// Hermitian within tol, trace 1 within tol, eigenvalues >= -tol.
  void check_invariants(double tol = 1e-10) const {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() >= tol) {
      throw std::runtime_error("density matrix is not hermitian");
    }
    if (std::abs(rho_.trace().real() - 1.0) >= tol || std::abs(rho_.trace().imag()) >= tol) {
      throw std::runtime_error("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= -tol) {
      throw std::runtime_error("density matrix has a negative eigenvalue");
    }
  }

  /// tr(rho O) for hermitian O; the imaginary part must vanish.
  double expectation(const Eigen::MatrixXcd& obs) const {
    if (obs.rows() != dim() || obs.cols() != dim()) {
      throw std::invalid_argument("expectation: observable dimension mismatch");
    }
    const Complex tr = (rho_ * obs).trace();
    if (std::abs(tr.imag()) >= 1e-10) {
      throw std::runtime_error("expectation value has a non-real trace");
    }
    return tr.real();
  }

  /// rho <- U rho U^dagger.
  void apply_unitary(const Eigen::MatrixXcd& u) {
    if (u.rows() != dim() || u.cols() != dim()) {
      throw std::invalid_argument("apply_unitary: dimension mismatch");
    }
    rho_ = u * rho_ * u.adjoint();
  }

  /// Raw access for channel application; callers restore the invariants.
  Eigen::MatrixXcd& mutable_m() { return rho_; }

 private:
  static int check_count(int n) {
    if (n < 1 || n > kMaxQubits) {
      throw std::invalid_argument("DensityMatrix: qubit count must be in [1, 6]");
    }
    return n;
  }

  int n_;
  Eigen::MatrixXcd rho_;
};

}  // namespace bellsim
