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

// Acceptance gate: ten self-contained checks, one PASS/FAIL line each.
// Every expected number is computed here from first principles (dense
// Eigen algebra, closed forms, published decimals), not taken from the
// library's own verification code.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <bellsim/bellsim.hpp>

namespace {

using namespace bellsim;
using Clock = std::chrono::steady_clock;

constexpr double kSqrt2 = 1.4142135623730951;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

double pair_e(ObservablePair p) { return chsh_sign(p) / kSqrt2; }

double maxdiff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

struct Criterion {
  int number;
  bool pass;
  std::string detail;
};

// 1. Analytic CHSH values and their sum, under a millisecond.
Criterion criterion_1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  double values[4];
  for (int i = 0; i < 4; ++i) {
    values[i] = theoretical_expectation(kAllPairs[i]);
    const double want = kAllPairs[i] == ObservablePair::QT ? -0.5 * kSqrt2 : 0.5 * kSqrt2;
    worst = std::max(worst, std::abs(values[i] - want));
  }
  const double sum = chsh_value(values[0], values[1], values[2], values[3]);
  worst = std::max(worst, std::abs(sum - 2.0 * kSqrt2));
  const double elapsed = ms_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "analytic CHSH: worst residual %.2e (tol 1e-12), %.3f ms (limit 1)", worst,
                elapsed);
  return {1, worst < 1e-12 && elapsed < 1.0, buf};
}

// 2. Conjugation, commutator, and ABC reconstruction identities.
Criterion criterion_2() {
  using M = Eigen::Matrix2cd;
  const Complex i2(0.0, kSqrt2);
  const M X = gates::x().m;
  const M Y = gates::y().m;
  const M Z = gates::z().m;
  const M H = gates::h().m;
  const M S = observable_gate(Observable::S).m;
  const M T = observable_gate(Observable::T).m;

  double worst = 0.0;
  auto check = [&](const M& left, const M& right) {
    worst = std::max(worst, maxdiff(left, right));
  };
  check(H * X * H, Z);
  check(gates::ry(kThetaS).m * S * gates::ry(-kThetaS).m, Z);
  check(gates::ry(kAlphaT).m * T * gates::ry(-kAlphaT).m, Z);
  check(Y * S - S * Y, i2 * (Z - X));
  check(Y * S * Y, M(S + kSqrt2 * (Z + X)));
  check(Y * T - T * Y, i2 * (Z + X));
  check(Y * T * Y, M(T + kSqrt2 * (X - Z)));

  const struct {
    AbcDecomposition abc;
    M target;
  } cases[] = {
      {abc_from_angles(abc_for_observable(Observable::Q)), observable_gate(Observable::Q).m},
      {abc_from_angles(abc_for_observable(Observable::R)), observable_gate(Observable::R).m},
      {abc_from_angles(abc_for_observable(Observable::S)), S},
      {abc_from_angles(abc_for_observable(Observable::T)), T},
      {abc_from_angles(abc_for_h()), H},
      {abc_from_angles(abc_for_ry(kPhiST)), gates::ry(kPhiST).m},
  };
  for (const auto& c : cases) {
    const M a = c.abc.a;
    const M b = c.abc.b;
    const M cc = c.abc.c;
    check(a * b * cc, M::Identity());
    const Complex phase = std::polar(1.0, c.abc.angles.eta);
    check(phase * a * X * b * X * cc, c.target);
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "identity suite: worst residual %.2e (tol 1e-10)", worst);
  return {2, worst < 1e-10, buf};
}

// 3. Exact distributions of variants III and IV against the closed forms.
Criterion criterion_3() {
  double worst = 0.0;
  const std::vector<double> d3 = exact_distribution(build_variant_iii_quantum());
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const int a1 = static_cast<int>((idx >> 3) & 1u);
    const int d1 = static_cast<int>((idx >> 2) & 1u);
    const int d2 = static_cast<int>((idx >> 1) & 1u);
    const int a2 = static_cast<int>(idx & 1u);
    const double e = pair_e(pair_from_ancilla_bits(a1, a2));
    const double want = (1.0 + (1 - 2 * d1) * (1 - 2 * d2) * e) / 16.0;
    worst = std::max(worst, std::abs(d3[idx] - want));
  }
  double marginal_worst = 0.0;
  for (int a1 = 0; a1 < 2; ++a1) {
    for (int a2 = 0; a2 < 2; ++a2) {
      double marginal = 0.0;
      for (std::size_t idx = 0; idx < 16; ++idx) {
        if (static_cast<int>((idx >> 3) & 1u) == a1 && static_cast<int>(idx & 1u) == a2) {
          marginal += d3[idx];
        }
      }
      marginal_worst = std::max(marginal_worst, std::abs(marginal - 0.25));
    }
  }
  const std::vector<double> d4 = exact_distribution(build_variant_iv());
  for (std::size_t idx = 0; idx < 8; ++idx) {
    const int a1 = static_cast<int>((idx >> 2) & 1u);
    const int a2 = static_cast<int>((idx >> 1) & 1u);
    const int a3 = static_cast<int>(idx & 1u);
    const double e = pair_e(pair_from_ancilla_bits(a1, a2));
    const double want = (1.0 + (1 - 2 * a3) * e) / 8.0;
    worst = std::max(worst, std::abs(d4[idx] - want));
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "closed-form distributions: worst gap %.2e (tol 1e-12), marginal gap %.2e",
                worst, marginal_worst);
  return {3, worst < 1e-12 && marginal_worst < 1e-12, buf};
}

// 4. Deferred measurement: exact equality and sampled agreement per bin.
Criterion criterion_4() {
  const CircuitSpec quantum = build_variant_iii_quantum();
  const CircuitSpec classical = build_variant_iii_classical();
  const std::vector<double> dq = exact_distribution(quantum);
  const std::vector<double> dc = exact_distribution(classical);
  double exact_gap = 0.0;
  for (std::size_t idx = 0; idx < dq.size(); ++idx) {
    exact_gap = std::max(exact_gap, std::abs(dq[idx] - dc[idx]));
  }

  const long long shots = 131072;  // >= 1e5
  auto sample = [&](const CircuitSpec& c, std::uint64_t stream) {
    std::vector<long long> counts(16, 0);
    for (long long s = 0; s < shots; ++s) {
      ShotRng rng = ShotRng::substream(2024, stream, static_cast<std::uint64_t>(s));
      counts[cbits_index(run_shot(c, NoiseConfig{}, rng))] += 1;
    }
    return counts;
  };
  const std::vector<long long> cq = sample(quantum, 0);
  const std::vector<long long> cc = sample(classical, 1);
  double worst_z = 0.0;
  for (std::size_t idx = 0; idx < 16; ++idx) {
    const double n = static_cast<double>(shots);
    const double pooled = static_cast<double>(cq[idx] + cc[idx]) / (2.0 * n);
    if (pooled == 0.0) continue;
    const double se = std::sqrt(pooled * (1.0 - pooled) * 2.0 / n);
    const double gap = std::abs(static_cast<double>(cq[idx] - cc[idx])) / n;
    worst_z = std::max(worst_z, gap / se);
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "deferred measurement: exact gap %.2e (tol 1e-12), worst bin %.2f SE (limit 4)",
                exact_gap, worst_z);
  return {4, exact_gap < 1e-12 && worst_z < 4.0, buf};
}

// 5. Variant I sampling calibration at 4096 shots per observable.
Criterion criterion_5() {
  const auto t0 = Clock::now();
  const ExperimentPlan plan = make_plan(VariantKind::I);
  const ExperimentResult r = run_experiment(plan, 4096, 7, NoiseConfig{}, 1);
  const double elapsed = ms_since(t0);
  double worst_z = 0.0;
  for (const PairEstimate& e : r.pairs) {
    worst_z = std::max(worst_z, std::abs(e.expectation - pair_e(e.pair)) / e.sigma);
  }
  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "variant I calibration: CHSH %.4f (> 2.7), worst %.2f sigma (limit 4), "
                "%.0f ms single-threaded (limit 5000)",
                r.chsh, worst_z, elapsed);
  return {5, r.chsh > 2.7 && worst_z < 4.0 && elapsed < 5000.0, buf};
}

// 6. Depolarizing noise at 0.005 still violates the classical bound.
Criterion criterion_6() {
  NoiseConfig noise;
  noise.kind = NoiseKind::Depolarizing;
  noise.rate = 0.005;
  bool pass = true;
  std::string detail = "depolarizing 0.005 CHSH:";
  for (VariantKind v : kAllVariants) {
    const ExperimentPlan plan = make_plan(v);
    // 4 x 8192 total shots: per circuit for the four-circuit variants, all
    // in one circuit for the shared-circuit variants.
    const long long shots = plan.circuits.size() == 4 ? 8192 : 32768;
    const ExperimentResult r = run_experiment(plan, shots, 2026, noise, 4);
    char buf[48];
    std::snprintf(buf, sizeof(buf), " %s %.3f", variant_name(v).c_str(), r.chsh);
    detail += buf;
    pass = pass && r.chsh > 2.0;
  }
  detail += " (all > 2)";
  return {6, pass, detail};
}

// 7. The noise table closed forms, GA bath-weight independence, and the
// explicit Bell density matrix.
Criterion criterion_7() {
  double worst = 0.0;
  for (ChannelKind k : kAllChannelKinds) {
    const bool damping =
        k == ChannelKind::AmplitudeDamping || k == ChannelKind::GeneralizedAmplitudeDamping;
    for (int g = 0; g <= 10; ++g) {
      const double t = g / 10.0;
      ChannelConfig cfg;
      cfg.kind = k;
      if (damping) {
        cfg.theta = t * 2.0 * std::atan(1.0);
        cfg.p = 0.25;
      } else {
        cfg.p = t;
      }
      const KrausChannel ch = make_channel(cfg);
      for (ObservablePair pair : kAllPairs) {
        // Published closed forms, transcribed row by row.
        const double c = std::cos(cfg.theta);
        double want = 0.0;
        switch (k) {
          case ChannelKind::BitFlip:
            want = pair == ObservablePair::QS   ? 2.0 * cfg.p - 1.0
                   : pair == ObservablePair::QT ? 1.0 - 2.0 * cfg.p
                                                : 1.0;
            break;
          case ChannelKind::PhaseFlip:
            want = pair == ObservablePair::QS   ? 1.0
                   : pair == ObservablePair::QT ? -1.0
                                                : 2.0 * cfg.p - 1.0;
            break;
          case ChannelKind::BitPhaseFlip:
            want = pair == ObservablePair::QT ? 1.0 - 2.0 * cfg.p : 2.0 * cfg.p - 1.0;
            break;
          case ChannelKind::AmplitudeDamping:
          case ChannelKind::GeneralizedAmplitudeDamping:
            want = pair == ObservablePair::QS   ? c * c
                   : pair == ObservablePair::QT ? -c * c
                                                : c;
            break;
          case ChannelKind::Depolarizing:
            want = pair == ObservablePair::QT ? cfg.p - 1.0 : 1.0 - cfg.p;
            break;
        }
        worst = std::max(worst, std::abs(noisy_sqrt2_expectation(ch, pair) - want));
      }
    }
  }

  double ga_spread = 0.0;
  for (int g = 0; g <= 10; ++g) {
    const double theta = (g / 10.0) * 2.0 * std::atan(1.0);
    for (ObservablePair pair : kAllPairs) {
      const double base = noisy_sqrt2_expectation(
          make_channel({ChannelKind::GeneralizedAmplitudeDamping, 0.0, theta}), pair);
      for (double p2 : {0.3, 0.7, 1.0}) {
        const double v = noisy_sqrt2_expectation(
            make_channel({ChannelKind::GeneralizedAmplitudeDamping, p2, theta}), pair);
        ga_spread = std::max(ga_spread, std::abs(v - base));
      }
    }
  }

  Eigen::Matrix4cd explicit_rho = Eigen::Matrix4cd::Zero();
  explicit_rho(1, 1) = 0.5;
  explicit_rho(2, 2) = 0.5;
  explicit_rho(1, 2) = -0.5;
  explicit_rho(2, 1) = -0.5;
  const double rho_gap = maxdiff(bell_density().m(), explicit_rho);

  char buf[200];
  std::snprintf(buf, sizeof(buf),
                "noise table: worst gap %.2e (tol 1e-10), GA spread %.2e, Bell rho gap %.2e",
                worst, ga_spread, rho_gap);
  return {7, worst < 1e-10 && ga_spread < 1e-10 && rho_gap < 1e-15, buf};
}

// 8. Variant II: exact ancilla probability and sampled estimates.
Criterion criterion_8() {
  double exact_gap = 0.0;
  for (ObservablePair p : kAllPairs) {
    const std::vector<double> dist = exact_distribution(build_variant_ii(p));
    exact_gap = std::max(exact_gap, std::abs(dist[0] - 0.5 * (1.0 + pair_e(p))));
  }
  const ExperimentPlan plan = make_plan(VariantKind::II);
  const ExperimentResult r = run_experiment(plan, 8192, 31, NoiseConfig{}, 4);
  double worst_z = 0.0;
  for (const PairEstimate& e : r.pairs) {
    worst_z = std::max(worst_z, std::abs(e.expectation - pair_e(e.pair)) / e.sigma);
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "variant II: p0 gap %.2e (tol 1e-12), worst sampled %.2f sigma (limit 4)",
                exact_gap, worst_z);
  return {8, exact_gap < 1e-12 && worst_z < 4.0, buf};
}

// 9. Feasibility claims on the shipped topologies, under 100 ms per check.
Criterion criterion_9() {
  const std::string data_dir = BELLSIM_DATA_DIR;
  const CouplingMap maps[4] = {
      load_coupling_map("qx2-class"),
      load_coupling_map("vigo-class"),
      load_coupling_map(data_dir + "/coupling/qx2-class.txt"),
      load_coupling_map(data_dir + "/coupling/vigo-class.txt"),
  };
  const auto triangle = [](const CouplingMap& m) {
    return m.has_coupling(0, 2);  // distinguishes the bowtie from the chain
  };
  bool pass = true;
  double worst_ms = 0.0;
  for (const CouplingMap& map : maps) {
    const bool has_triangle = triangle(map);
    const struct {
      VariantKind variant;
      bool want;
    } claims[] = {
        {VariantKind::I, true},
        {VariantKind::II, has_triangle},
        {VariantKind::IIIQuantum, true},
        {VariantKind::IIIClassical, true},
        {VariantKind::IV, false},
    };
    for (const auto& claim : claims) {
      for (const CircuitSpec& c : make_plan(claim.variant).circuits) {
        const auto t0 = Clock::now();
        const bool got = check_feasibility(c, map).feasible;
        worst_ms = std::max(worst_ms, ms_since(t0));
        pass = pass && got == claim.want;
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "feasibility claims on 4 fixtures: %s, slowest check %.1f ms (limit 100)",
                pass ? "all as published" : "MISMATCH", worst_ms);
  return {9, pass && worst_ms < 100.0, buf};
}

// 10. Byte-identical result documents for any worker count.
Criterion criterion_10() {
  const ExperimentPlan plan = make_plan(VariantKind::IV);
  std::string reference;
  bool pass = true;
  for (int workers : {1, 3, 8}) {
    const ExperimentResult r = run_experiment(plan, 2048, 99, NoiseConfig{}, workers);
    const std::string doc = result_to_json(r, plan).dump(2);
    if (reference.empty()) {
      reference = doc;
    } else {
      pass = pass && doc == reference;
    }
  }
  // A repeated identical configuration reproduces the document as well.
  const ExperimentResult again = run_experiment(plan, 2048, 99, NoiseConfig{}, 2);
  pass = pass && result_to_json(again, plan).dump(2) == reference;
  return {10, pass,
          std::string("determinism: documents for workers {1, 3, 8} and a rerun ") +
              (pass ? "are byte-identical" : "DIFFER")};
}

}  // namespace

int main() {
  const Criterion results[] = {
      criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
      criterion_6(), criterion_7(), criterion_8(), criterion_9(), criterion_10(),
  };
  int failed = 0;
  for (const Criterion& c : results) {
    std::printf("%s  criterion %2d  %s\n", c.pass ? "PASS" : "FAIL", c.number, c.detail.c_str());
    if (!c.pass) ++failed;
  }
  if (failed == 0) {
    std::printf("all 10 acceptance criteria pass\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", failed);
  }
  return failed == 0 ? 0 : 1;
}
