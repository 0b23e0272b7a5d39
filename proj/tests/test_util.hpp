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

// Reference constructions for the tests, written against plain Kronecker
// algebra so the library's update kernels are checked against independent
// arithmetic.

#pragma once

#include <complex>
#include <fstream>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace testutil {

inline double maxdiff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// I^(q) (x) m (x) I^(n-1-q), qubit 0 leftmost.
inline Eigen::MatrixXcd kron_at(const Eigen::Matrix2cd& m, int q, int n) {
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < n; ++k) {
    const Eigen::MatrixXcd factor =
        k == q ? Eigen::MatrixXcd(m) : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2));
    full = Eigen::kroneckerProduct(full, factor).eval();
  }
  return full;
}

/// CNOT as an explicit sum of projector terms:
/// |0><0|_c (x) I + |1><1|_c (x) X.
inline Eigen::MatrixXcd cnot_ref(int control, int target, int n) {
  Eigen::Matrix2cd p0;
  p0 << 1, 0, 0, 0;
  Eigen::Matrix2cd p1;
  p1 << 0, 0, 0, 1;
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  return kron_at(p0, control, n) +
         Eigen::MatrixXcd(kron_at(p1, control, n) * kron_at(x, target, n));
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace testutil
