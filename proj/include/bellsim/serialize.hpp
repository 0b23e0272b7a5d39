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

#include <cstdio>
#include <string>

#include <json.hpp>

#include "bellsim/estimator.hpp"

namespace bellsim {

using ordered_json = nlohmann::ordered_json;

inline ordered_json noise_to_json(const NoiseConfig& n) {
  ordered_json j;
  switch (n.kind) {
    case NoiseKind::None:
      j["kind"] = "none";
      break;
    case NoiseKind::Depolarizing:
      j["kind"] = "depolarizing";
      j["rate"] = n.rate;
      break;
    case NoiseKind::Channel:
      j["kind"] = "channel";
      j["channel"] = channel_kind_name(n.channel.kind);
      j["p"] = n.channel.p;
      j["theta"] = n.channel.theta;
      break;
  }
  return j;
}

inline NoiseConfig noise_from_json(const ordered_json& j) {
  NoiseConfig n;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "none") {
    n.kind = NoiseKind::None;
  } else if (kind == "depolarizing") {
    n.kind = NoiseKind::Depolarizing;
    n.rate = j.at("rate").get<double>();
  } else if (kind == "channel") {
    n.kind = NoiseKind::Channel;
    n.channel.kind = parse_channel_kind(j.at("channel").get<std::string>());
    n.channel.p = j.at("p").get<double>();
    n.channel.theta = j.at("theta").get<double>();
  } else {
    throw std::invalid_argument("unknown noise kind: " + kind);
  }
  return n;
}

inline std::string noise_label(const NoiseConfig& n) {
  char buf[96];
  switch (n.kind) {
    case NoiseKind::None:
      return "none";
    case NoiseKind::Depolarizing:
      std::snprintf(buf, sizeof(buf), "depolarizing(%.17g)", n.rate);
      return buf;
    case NoiseKind::Channel:
      std::snprintf(buf, sizeof(buf), "channel %s(p=%.17g, theta=%.17g)",
                    channel_kind_name(n.channel.kind).c_str(), n.channel.p, n.channel.theta);
      return buf;
  }
  return "unknown";
}

namespace detail {

inline std::string outcome_key(std::size_t index, int n_cbits) {
  std::string s(static_cast<std::size_t>(n_cbits), '0');
  for (int k = 0; k < n_cbits; ++k) {
    if ((index >> (n_cbits - 1 - k)) & 1u) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

}  // namespace detail

/// Result document. Everything here is a pure function of (variant, shots,
/// seed, noise), so documents from runs with the same configuration are
/// byte-identical regardless of worker count.
inline ordered_json result_to_json(const ExperimentResult& r, const ExperimentPlan& plan) {
  ordered_json j;
  j["tool"] = "bellsim";
  j["format_version"] = 1;
  j["generator"] = ShotRng::generator_name();
  j["variant"] = variant_name(r.variant);
  j["shots_per_circuit"] = r.shots_per_circuit;
  j["seed"] = r.seed;
  j["noise"] = noise_to_json(r.noise);
  ordered_json obs = ordered_json::array();
  for (const PairEstimate& e : r.pairs) {
    ordered_json o;
    o["pair"] = pair_name(e.pair);
    o["shots"] = e.shots;
    o["plus"] = e.plus;
    o["expectation"] = e.expectation;
    o["sigma"] = e.sigma;
    o["theory"] = theoretical_expectation(e.pair);
    obs.push_back(o);
  }
  j["observables"] = obs;
  j["chsh"] = ordered_json{
      {"value", r.chsh}, {"sigma", r.chsh_sigma}, {"theory", theoretical_chsh()}};
  ordered_json counts = ordered_json::array();
  for (std::size_t ci = 0; ci < r.counts.size(); ++ci) {
    ordered_json c;
    c["circuit"] = plan.circuits.at(ci).name;
    ordered_json outcomes;
    for (std::size_t idx = 0; idx < r.counts[ci].size(); ++idx) {
      if (r.counts[ci][idx] == 0) continue;
      outcomes[detail::outcome_key(idx, plan.circuits[ci].n_cbits)] = r.counts[ci][idx];
    }
    c["outcomes"] = outcomes;
    counts.push_back(c);
  }
  j["counts"] = counts;
  return j;
}

/// Rebuild the result from its document. Estimates are recomputed from the
/// stored counts and must reproduce the stored values bit for bit.
inline ExperimentResult result_from_json(const ordered_json& j) {
  ExperimentResult r;
  r.variant = parse_variant(j.at("variant").get<std::string>());
  r.shots_per_circuit = j.at("shots_per_circuit").get<long long>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.noise = noise_from_json(j.at("noise"));
  const ExperimentPlan plan = make_plan(r.variant);
  for (std::size_t ci = 0; ci < plan.circuits.size(); ++ci) {
    const auto& doc = j.at("counts").at(ci);
    if (doc.at("circuit").get<std::string>() != plan.circuits[ci].name) {
      throw std::invalid_argument("result document circuit order does not match the variant");
    }
    std::vector<long long> counts(std::size_t{1} << plan.circuits[ci].n_cbits, 0);
    for (const auto& [key, value] : doc.at("outcomes").items()) {
      std::size_t idx = 0;
      for (char ch : key) idx = (idx << 1) | static_cast<std::size_t>(ch == '1');
      counts.at(idx) = value.get<long long>();
    }
    r.counts.push_back(std::move(counts));
  }
  summarize_counts(plan, r);
  const auto& stored = j.at("observables");
  for (std::size_t i = 0; i < r.pairs.size(); ++i) {
    if (stored.at(i).at("expectation").get<double>() != r.pairs[i].expectation) {
      throw std::invalid_argument("result document estimates disagree with stored counts");
    }
  }
  return r;
}

/// Estimates table, 4 decimals.
inline std::string human_table(const ExperimentResult& r) {
  char line[160];
  std::string out;
  std::snprintf(line, sizeof(line), "variant %s  shots/circuit %lld  seed %llu  noise %s\n",
                variant_name(r.variant).c_str(), r.shots_per_circuit,
                static_cast<unsigned long long>(r.seed), noise_label(r.noise).c_str());
  out += line;
  out += "pair    shots  expectation    sigma   theory\n";
  for (const PairEstimate& e : r.pairs) {
    std::snprintf(line, sizeof(line), "%-4s  %7lld      %+8.4f   %6.4f  %+7.4f\n",
                  pair_name(e.pair).c_str(), e.shots, e.expectation, e.sigma,
                  theoretical_expectation(e.pair));
    out += line;
  }
  std::snprintf(line, sizeof(line), "CHSH          %8.4f +- %6.4f  (theory %7.4f, classical bound 2)\n",
                r.chsh, r.chsh_sigma, theoretical_chsh());
  out += line;
  return out;
}

/// CSV mirror of the estimates table, full precision.
inline std::string result_to_csv(const ExperimentResult& r) {
  char line[200];
  std::string out = "pair,shots,plus,expectation,sigma,theory\n";
  for (const PairEstimate& e : r.pairs) {
    std::snprintf(line, sizeof(line), "%s,%lld,%lld,%.17g,%.17g,%.17g\n",
                  pair_name(e.pair).c_str(), e.shots, e.plus, e.expectation, e.sigma,
                  theoretical_expectation(e.pair));
    out += line;
  }
  std::snprintf(line, sizeof(line), "CHSH,%lld,,%.17g,%.17g,%.17g\n",
                4 * r.shots_per_circuit, r.chsh, r.chsh_sigma, theoretical_chsh());
  out += line;
  return out;
}

/// Channel sweep: computed sqrt(2) <A (x) B> on the noisy pair against the
/// closed form, one row per (grid point, setting). The swept parameter is p
/// for B, P, BP and D, and theta for A and GA (whose bath weight is fixed,
/// as the closed form does not depend on it).
inline std::string noise_table_csv(ChannelKind kind, int grid_points = 11) {
  constexpr double kPi = 3.14159265358979323846;
  const bool sweep_theta =
      kind == ChannelKind::AmplitudeDamping || kind == ChannelKind::GeneralizedAmplitudeDamping;
  std::string out = "channel,param,observable,analytic,computed,abs_error\n";
  char line[200];
  for (int g = 0; g < grid_points; ++g) {
    const double t = static_cast<double>(g) / (grid_points - 1);
    ChannelConfig cfg;
    cfg.kind = kind;
    if (sweep_theta) {
      cfg.theta = t * kPi / 2;
      cfg.p = 0.25;
    } else {
      cfg.p = t;
    }
    const KrausChannel ch = make_channel(cfg);
    for (ObservablePair pair : kAllPairs) {
      const double analytic = table_v_prediction(cfg, pair);
      const double computed = noisy_sqrt2_expectation(ch, pair);
      std::snprintf(line, sizeof(line), "%s,%.17g,%s,%.17g,%.17g,%.3g\n",
                    channel_kind_name(kind).c_str(), sweep_theta ? cfg.theta : cfg.p,
                    pair_name(pair).c_str(), analytic, computed, std::abs(analytic - computed));
      out += line;
    }
  }
  return out;
}

}  // namespace bellsim
