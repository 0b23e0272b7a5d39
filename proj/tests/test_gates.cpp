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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <bellsim/gate.hpp>

#include "test_util.hpp"

using namespace bellsim;
using Catch::Matchers::WithinAbs;
using testutil::maxdiff;

namespace {
const double kR2 = std::sqrt(2.0);
const Complex kI(0.0, 1.0);
}  // namespace

TEST_CASE("fixed gates match their textbook matrices", "[gates]") {
  Matrix2 want;

  want << 0, 1, 1, 0;
  REQUIRE(maxdiff(gates::x().m, want) < 1e-15);

  want << 0, -kI, kI, 0;
  REQUIRE(maxdiff(gates::y().m, want) < 1e-15);

  want << 1, 0, 0, -1;
  REQUIRE(maxdiff(gates::z().m, want) < 1e-15);

  want << 1 / kR2, 1 / kR2, 1 / kR2, -1 / kR2;
  REQUIRE(maxdiff(gates::h().m, want) < 1e-15);

  REQUIRE(maxdiff(gates::identity().m, Matrix2::Identity()) < 1e-15);
}

TEST_CASE("rotation gates match their cosine and sine entries", "[gates]") {
  SECTION("ry") {
    const double theta = 0.7331;
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    Matrix2 want;
    want << c, -s, s, c;
    REQUIRE(maxdiff(gates::ry(theta).m, want) < 1e-15);
  }
  SECTION("ry at pi is -iY") {
    const double pi = 4 * std::atan(1.0);
    REQUIRE(maxdiff(gates::ry(pi).m, Matrix2(-kI * gates::y().m)) < 1e-15);
  }
  SECTION("rz") {
    const double theta = -1.234;
    Matrix2 want = Matrix2::Zero();
    want(0, 0) = std::exp(-kI * (theta / 2));
    want(1, 1) = std::exp(kI * (theta / 2));
    REQUIRE(maxdiff(gates::rz(theta).m, want) < 1e-15);
  }
  SECTION("phase") {
    const double eta = 0.25;
    Matrix2 want = Matrix2::Identity();
    want(1, 1) = std::exp(kI * eta);
    REQUIRE(maxdiff(gates::phase(eta).m, want) < 1e-15);
  }
  SECTION("non-finite angles are rejected") {
    REQUIRE_THROWS_AS(gates::ry(std::nan("")), std::invalid_argument);
    REQUIRE_THROWS_AS(gates::rz(INFINITY), std::invalid_argument);
    REQUIRE_THROWS_AS(gates::phase(-INFINITY), std::invalid_argument);
  }
}

TEST_CASE("every named gate is unitary", "[gates]") {
  for (const Gate& g : {gates::identity(), gates::x(), gates::y(), gates::z(), gates::h(),
                        gates::ry(0.3), gates::rz(-2.1), gates::phase(5.0)}) {
    REQUIRE(is_unitary(g.m));
  }
}

TEST_CASE("observables are the CHSH operators", "[gates]") {
  Matrix2 want;

  SECTION("Q = Z and R = X") {
    REQUIRE(maxdiff(observable_gate(Observable::Q).m, gates::z().m) < 1e-15);
    REQUIRE(maxdiff(observable_gate(Observable::R).m, gates::x().m) < 1e-15);
  }
  SECTION("S = -(Z + X)/sqrt(2)") {
    want = -(gates::z().m + gates::x().m) / kR2;
    REQUIRE(maxdiff(observable_gate(Observable::S).m, want) < 1e-15);
  }
  SECTION("T = (Z - X)/sqrt(2)") {
    want = (gates::z().m - gates::x().m) / kR2;
    REQUIRE(maxdiff(observable_gate(Observable::T).m, want) < 1e-15);
  }
  SECTION("all are hermitian, unitary, and traceless") {
    for (Observable o : kAllObservables) {
      const Matrix2 m = observable_gate(o).m;
      REQUIRE(is_hermitian(m));
      REQUIRE(is_unitary(m));
      REQUIRE(std::abs(m.trace()) < 1e-15);
    }
  }
}

TEST_CASE("diagonalizers rotate each observable onto Z", "[gates]") {
  for (Observable o : kAllObservables) {
    const Matrix2 u = diagonalizer(o).m;
    const Matrix2 got = u * observable_gate(o).m * u.adjoint();
    INFO("observable " << observable_name(o));
    REQUIRE(maxdiff(got, gates::z().m) < 1e-10);
  }
}

TEST_CASE("diagonalizer angles", "[gates]") {
  const double pi = 4 * std::atan(1.0);
  REQUIRE_THAT(kThetaS, WithinAbs(-5 * pi / 4, 1e-15));
  REQUIRE_THAT(kAlphaT, WithinAbs(pi / 4, 1e-15));
  REQUIRE_THAT(kPhiST, WithinAbs(-3 * pi / 2, 1e-15));
  REQUIRE(diagonalizer(Observable::S).angle == kThetaS);
  REQUIRE(diagonalizer(Observable::T).angle == kAlphaT);
}

TEST_CASE("observable pair bookkeeping", "[gates]") {
  REQUIRE(first_observable(ObservablePair::QS) == Observable::Q);
  REQUIRE(second_observable(ObservablePair::QS) == Observable::S);
  REQUIRE(first_observable(ObservablePair::RT) == Observable::R);
  REQUIRE(second_observable(ObservablePair::RT) == Observable::T);
  REQUIRE(pair_name(ObservablePair::QT) == "QT");
  REQUIRE(parse_pair("RS") == ObservablePair::RS);
  REQUIRE_THROWS_AS(parse_pair("ZZ"), std::invalid_argument);
  REQUIRE(chsh_sign(ObservablePair::QS) == 1.0);
  REQUIRE(chsh_sign(ObservablePair::QT) == -1.0);
}

TEST_CASE("theoretical correlators reach the Tsirelson bound", "[gates]") {
  const double half_r2 = 0.5 * kR2;
  REQUIRE_THAT(theoretical_expectation(ObservablePair::QS), WithinAbs(half_r2, 1e-15));
  REQUIRE_THAT(theoretical_expectation(ObservablePair::RS), WithinAbs(half_r2, 1e-15));
  REQUIRE_THAT(theoretical_expectation(ObservablePair::RT), WithinAbs(half_r2, 1e-15));
  REQUIRE_THAT(theoretical_expectation(ObservablePair::QT), WithinAbs(-half_r2, 1e-15));
  REQUIRE_THAT(theoretical_chsh(), WithinAbs(2.8284271247461903, 1e-15));
  REQUIRE_THAT(chsh_value(half_r2, half_r2, half_r2, -half_r2),
               WithinAbs(theoretical_chsh(), 1e-15));
}

TEST_CASE("observable labels round trip", "[gates]") {
  for (Observable o : kAllObservables) {
    REQUIRE(parse_observable(observable_name(o)) == o);
  }
  REQUIRE_THROWS_AS(parse_observable("W"), std::invalid_argument);
}
