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
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "bellsim/execute.hpp"
#include "bellsim/variants.hpp"

namespace bellsim {

/// One shot reduced to its setting label and +-1 correlator value.
struct DecodedShot {
  ObservablePair pair = ObservablePair::QS;
  int value = 1;
};

/// Setting chosen by the two selection ancillas: a1 toggles Q -> R and a2
/// toggles T -> S.
inline ObservablePair pair_from_ancilla_bits(int a1, int a2) {
  if (a1 == 0) return a2 == 0 ? ObservablePair::QT : ObservablePair::QS;
  return a2 == 0 ? ObservablePair::RT : ObservablePair::RS;
}

/// Map a classical register to (setting, value). `fixed_pair` labels the
/// circuit for variants whose circuits are setting-specific (I and II) and
/// is ignored otherwise. Measured bit b carries eigenvalue 1 - 2b.
inline DecodedShot decode_shot(VariantKind v, ObservablePair fixed_pair,
                               const std::vector<int>& cbits) {
  auto bit = [&](std::size_t k) { return cbits.at(k); };
  auto eigen = [&](std::size_t k) { return 1 - 2 * bit(k); };
  switch (v) {
    case VariantKind::I:
      return {fixed_pair, eigen(0) * eigen(1)};
    case VariantKind::II:
      return {fixed_pair, eigen(0)};
    case VariantKind::IIIQuantum:
    case VariantKind::IIIClassical:
      // Register reads (a1, d1, d2, a2).
      return {pair_from_ancilla_bits(bit(0), bit(3)), eigen(1) * eigen(2)};
    case VariantKind::IV:
      // Register reads (a1, a2, a3); a3 is the data parity.
      return {pair_from_ancilla_bits(bit(0), bit(1)), eigen(2)};
  }
  throw std::invalid_argument("unknown variant");
}

/// decode_shot over a packed register index (bit c0 most significant).
inline DecodedShot decode_outcome(VariantKind v, ObservablePair fixed_pair, std::size_t index,
                                  int n_cbits) {
  std::vector<int> cbits(static_cast<std::size_t>(n_cbits));
  for (int k = 0; k < n_cbits; ++k) {
    cbits[static_cast<std::size_t>(k)] = static_cast<int>((index >> (n_cbits - 1 - k)) & 1u);
  }
  return decode_shot(v, fixed_pair, cbits);
}

/// Standard error of a +-1 sample mean: sqrt((1 - e^2) / (n - 1)).
inline double sample_sigma(double expectation, long long n) {
  if (n < 2) throw std::invalid_argument("sample_sigma needs at least two shots");
  return std::sqrt((1.0 - expectation * expectation) / static_cast<double>(n - 1));
}

/// Sampled correlator for one setting.
struct PairEstimate {
  ObservablePair pair = ObservablePair::QS;
  long long shots = 0;
  long long plus = 0;  // shots decoding to +1
  double expectation = 0.0;
  double sigma = 0.0;
};

/// Exact correlator for one setting, with the probability that a shot of the
/// shared circuit lands on this setting at all (1 for setting-specific
/// circuits).
struct PairExpectation {
  ObservablePair pair = ObservablePair::QS;
  double expectation = 0.0;
  double selection_probability = 1.0;
};

inline double chsh_from_values(const double e[4]) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += chsh_sign(kAllPairs[i]) * e[i];
  return s;
}

/// Aggregate of one full experiment run.
struct ExperimentResult {
  VariantKind variant = VariantKind::I;
  long long shots_per_circuit = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  NoiseConfig noise;
  std::vector<std::vector<long long>> counts;  // [circuit][register index]
  std::vector<PairEstimate> pairs;             // ordered QS, RS, RT, QT
  double chsh = 0.0;
  double chsh_sigma = 0.0;
};

/// Reduce outcome counts to the four correlator estimates and the CHSH sum.
/// The CHSH error adds the four variances.
inline void summarize_counts(const ExperimentPlan& plan, ExperimentResult& r) {
  long long shots[4] = {0, 0, 0, 0};
  long long plus[4] = {0, 0, 0, 0};
  for (std::size_t ci = 0; ci < plan.circuits.size(); ++ci) {
    const int n_cbits = plan.circuits[ci].n_cbits;
    const ObservablePair fixed = plan.pairs.empty() ? ObservablePair::QS : plan.pairs[ci];
    const auto& circuit_counts = r.counts.at(ci);
    for (std::size_t idx = 0; idx < circuit_counts.size(); ++idx) {
      const long long n = circuit_counts[idx];
      if (n == 0) continue;
      const DecodedShot d = decode_outcome(plan.variant, fixed, idx, n_cbits);
      const int slot = static_cast<int>(d.pair);
      shots[slot] += n;
      if (d.value > 0) plus[slot] += n;
    }
  }
  r.pairs.clear();
  double esum = 0.0;
  double vsum = 0.0;
  for (int i = 0; i < 4; ++i) {
    PairEstimate e;
    e.pair = kAllPairs[i];
    e.shots = shots[static_cast<int>(e.pair)];
    e.plus = plus[static_cast<int>(e.pair)];
    if (e.shots == 0) {
      throw std::runtime_error("no shots landed on setting " + pair_name(e.pair));
    }
    e.expectation =
        static_cast<double>(2 * e.plus - e.shots) / static_cast<double>(e.shots);
    e.sigma = sample_sigma(e.expectation, e.shots);
    esum += chsh_sign(e.pair) * e.expectation;
    vsum += e.sigma * e.sigma;
    r.pairs.push_back(e);
  }
  r.chsh = esum;
  r.chsh_sigma = std::sqrt(vsum);
}

/// Run `shots` shots of every circuit in the plan. Shot s of circuit c uses
/// the RNG substream (seed, stream = c, shot = s), so the outcome of a shot
/// never depends on which worker executes it and merged counts are identical
/// for every worker count.
inline ExperimentResult run_experiment(const ExperimentPlan& plan, long long shots,
                                       std::uint64_t seed, const NoiseConfig& noise,
                                       int workers = 1) {
  if (shots < 2) throw std::invalid_argument("run_experiment needs at least two shots");
  if (workers < 1) throw std::invalid_argument("worker count must be positive");
  ExperimentResult r;
  r.variant = plan.variant;
  r.shots_per_circuit = shots;
  r.seed = seed;
  r.workers = workers;
  r.noise = noise;
  for (std::size_t ci = 0; ci < plan.circuits.size(); ++ci) {
    const CircuitSpec& circ = plan.circuits[ci];
    const auto n_outcomes = std::size_t{1} << circ.n_cbits;
    const int nw = static_cast<int>(std::min<long long>(workers, shots));
    std::vector<std::vector<long long>> local(
        static_cast<std::size_t>(nw), std::vector<long long>(n_outcomes, 0));
    auto work = [&](int w) {
      auto& mine = local[static_cast<std::size_t>(w)];
      for (long long s = w; s < shots; s += nw) {
        ShotRng rng = ShotRng::substream(seed, static_cast<std::uint64_t>(ci),
                                         static_cast<std::uint64_t>(s));
        mine[cbits_index(run_shot(circ, noise, rng))] += 1;
      }
    };
    if (nw == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(nw));
      for (int w = 0; w < nw; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    std::vector<long long> merged(n_outcomes, 0);
    for (const auto& m : local) {
      for (std::size_t i = 0; i < n_outcomes; ++i) merged[i] += m[i];
    }
    r.counts.push_back(std::move(merged));
  }
  summarize_counts(plan, r);
  return r;
}

/// Exact correlators from the branch-enumerated distribution, conditioning
/// on the selected setting for shared-circuit variants.
inline std::vector<PairExpectation> exact_expectations(const ExperimentPlan& plan,
                                                       const NoiseConfig& noise = {}) {
  double value_sum[4] = {0, 0, 0, 0};
  double prob_sum[4] = {0, 0, 0, 0};
  for (std::size_t ci = 0; ci < plan.circuits.size(); ++ci) {
    const ObservablePair fixed = plan.pairs.empty() ? ObservablePair::QS : plan.pairs[ci];
    const std::vector<double> dist = exact_distribution(plan.circuits[ci], noise);
    for (std::size_t idx = 0; idx < dist.size(); ++idx) {
      if (dist[idx] == 0.0) continue;
      const DecodedShot d =
          decode_outcome(plan.variant, fixed, idx, plan.circuits[ci].n_cbits);
      const int slot = static_cast<int>(d.pair);
      value_sum[slot] += dist[idx] * d.value;
      prob_sum[slot] += dist[idx];
    }
  }
  std::vector<PairExpectation> out;
  for (ObservablePair p : kAllPairs) {
    const int slot = static_cast<int>(p);
    if (prob_sum[slot] <= 0.0) {
      throw std::runtime_error("setting " + pair_name(p) + " is unreachable");
    }
    PairExpectation e;
    e.pair = p;
    e.expectation = value_sum[slot] / prob_sum[slot];
    e.selection_probability = prob_sum[slot];
    out.push_back(e);
  }
  return out;
}

inline double exact_chsh(const ExperimentPlan& plan, const NoiseConfig& noise = {}) {
  const auto ex = exact_expectations(plan, noise);
  double s = 0.0;
  for (const auto& e : ex) s += chsh_sign(e.pair) * e.expectation;
  return s;
}

}  // namespace bellsim
