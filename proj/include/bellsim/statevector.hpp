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
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bellsim/gate.hpp"
#include "bellsim/rng.hpp"

namespace bellsim {

inline constexpr int kMaxQubits = 6;

/// Outcome of one projective single-qubit measurement. `probability` is the
/// Born probability the recorded outcome had before the collapse.
struct MeasurementRecord {
  int qubit = 0;
  int outcome = 0;
  double probability = 0.0;
};

/// Dense complex state vector over 1..6 qubits.
///
/// Index convention: qubit 0 is the top circuit wire and the MOST significant
/// bit of the amplitude index. A ket |q0 q1 ... qn-1> therefore reads
/// left-to-right exactly like the printed bitstring of its index, e.g. |01>
/// on two qubits is amplitude index 0b01 = 1.
///
/// All unitary operations preserve the norm to within kNormTol; this is
/// checked after every application. Global phase is never normalized away.
class StateVector {
 public:
  explicit StateVector(int n_qubits) : n_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      throw std::invalid_argument("StateVector: qubit count must be in [1, 6]");
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex(0, 0));
    amps_[0] = Complex(1, 0);
  }

  int n_qubits() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amps() const { return amps_; }
  Complex amp(std::size_t index) const { return amps_.at(index); }

  /// Direct amplitude access for oracle-style test setup. The caller is
  /// responsible for leaving the state normalized.
  std::vector<Complex>& mutable_amps() { return amps_; }

  /// Bit of `index` belonging to qubit `q` under the MSB-first convention.
  int bit_of(std::size_t index, int q) const {
    return static_cast<int>((index >> (n_ - 1 - q)) & 1u);
  }

  double norm_sq() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  /// Apply a single-qubit gate to qubit q (I x ... x gate x ... x I).
  void apply(const Gate& g, int q) {
    check_qubit(q);
    check_unitary(g);
    const std::size_t stride = std::size_t{1} << (n_ - 1 - q);
    for (std::size_t base = 0; base < dim(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        const Complex a0 = amps_[i];
        const Complex a1 = amps_[i + stride];
        amps_[i] = g.m(0, 0) * a0 + g.m(0, 1) * a1;
        amps_[i + stride] = g.m(1, 0) * a0 + g.m(1, 1) * a1;
      }
    }
    check_norm();
  }

  /// Apply `g` to `target` on the |1>-subspace of `control`.
  void apply_controlled(const Gate& g, int control, int target) {
    check_qubit(control);
    check_qubit(target);
    if (control == target) {
      throw std::invalid_argument("apply_controlled: control equals target");
    }
    check_unitary(g);
    const std::size_t stride = std::size_t{1} << (n_ - 1 - target);
    const std::size_t cmask = std::size_t{1} << (n_ - 1 - control);
    for (std::size_t base = 0; base < dim(); base += 2 * stride) {
      for (std::size_t i = base; i < base + stride; ++i) {
        if (!(i & cmask)) continue;
        const Complex a0 = amps_[i];
        const Complex a1 = amps_[i + stride];
        amps_[i] = g.m(0, 0) * a0 + g.m(0, 1) * a1;
        amps_[i + stride] = g.m(1, 0) * a0 + g.m(1, 1) * a1;
      }
    }
    check_norm();
  }

  /// Born probabilities |amp_i|^2 for all 2^n basis outcomes.
  std::vector<double> probabilities() const {
    std::vector<double> p(dim());
    for (std::size_t i = 0; i < dim(); ++i) p[i] = std::norm(amps_[i]);
    return p;
  }

  /// Probability of measuring `outcome` on qubit q, without collapsing.
  double qubit_probability(int q, int outcome) const {
    check_qubit(q);
    double p = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (bit_of(i, q) == outcome) p += std::norm(amps_[i]);
    }
    return p;
  }

  /// Projective measurement of qubit q. Samples the outcome with its Born
  /// probability, collapses and renormalizes. Measuring the same qubit again
  /// reproduces the outcome with probability 1.
  ///
  /// The branch is chosen against exact probabilities; if the sampled branch
  /// carries less than 1e-15 probability the state cannot be renormalized
  /// meaningfully and a runtime error is raised instead.
  MeasurementRecord measure(int q, ShotRng& rng) {
    check_qubit(q);
    const double p0 = qubit_probability(q, 0);
    const int outcome = rng.uniform() < p0 ? 0 : 1;
    const double p = outcome == 0 ? p0 : 1.0 - p0;
    if (p < 1e-15) {
      throw std::runtime_error("measure: sampled branch has near-zero probability");
    }
    collapse(q, outcome, p);
    return {q, outcome, p};
  }

  /// Force a measurement outcome (used by the exact branch enumerator).
  /// Returns the Born probability the branch had; throws like measure() on a
  /// near-zero branch.
  double project(int q, int outcome, double min_probability = 1e-15) {
    check_qubit(q);
    const double p = qubit_probability(q, outcome);
    if (p < min_probability) {
      throw std::runtime_error("project: branch has near-zero probability");
    }
    collapse(q, outcome, p);
    return p;
  }

 private:
  void check_qubit(int q) const {
    if (q < 0 || q >= n_) throw std::out_of_range("qubit index out of range");
  }

  static void check_unitary(const Gate& g) {
    if (!is_unitary(g.m)) {
      throw std::invalid_argument("gate '" + g.name + "' is not unitary");
    }
  }

  void check_norm() const {
    if (std::abs(norm_sq() - 1.0) >= kNormTol) {
      throw std::runtime_error("state norm drifted beyond tolerance");
    }
  }

  void collapse(int q, int outcome, double p) {
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (bit_of(i, q) == outcome) {
        amps_[i] *= scale;
      } else {
        amps_[i] = Complex(0, 0);
      }
    }
  }

  int n_;
  std::vector<Complex> amps_;
};

/// |00...0> on n qubits.
inline StateVector zero_state(int n_qubits) { return StateVector(n_qubits); }

}  // namespace bellsim
