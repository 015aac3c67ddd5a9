// Copyright 2026 The shadow-retriever Authors
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

#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "shadow/channel.hpp"
#include "shadow/linalg.hpp"
#include "shadow/retrieving.hpp"

namespace shadow {

/// Reproducible random streams. Stream seeds are derived with SplitMix64
/// from (seed, stream index); each stream draws from a std::mt19937_64 and
/// maps the top 53 bits of each output to a double in [0, 1).
class StreamRng {
 public:
  explicit StreamRng(std::uint64_t seed);

  /// Seed of stream `index` under a parent seed.
  static std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

  double uniform();

 private:
  std::mt19937_64 engine_;
};

struct ProtocolConfig {
  double epsilon_hat = 0.05;
  double delta = 0.05;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> rounds_override;
  double log_base = std::numbers::e;

  void validate() const;
};

struct EstimateReport {
  double xi = 0.0;
  std::int64_t rounds = 0;
  double gamma = 0.0;
  std::optional<double> true_value;
  std::optional<double> abs_error;
  std::uint64_t seed = 0;
};

/// 2γ²·log(2/δ)/ε̂² before rounding; natural log unless `log_base` is given.
double sampling_rounds_real(double gamma, double epsilon_hat, double delta, double log_base = std::numbers::e);

/// Ceiling of sampling_rounds_real, ignoring a 1e-12 relative excess so that
/// values that are integers in exact arithmetic are not bumped up.
std::int64_t sampling_rounds(double gamma, double epsilon_hat, double delta, double log_base = std::numbers::e);

/// Σ_j c_j tr[D_j(N(ρ)) O].
double exact_recovery(const DensityMatrix& rho, const KrausChannel& noise, const RetrieverDecomposition& retriever,
                      const HermitianOperator& o);

/// Precomputed outcome distributions for one (ρ, N, D, O) instance.
class ProtocolSampler {
 public:
  /// Throws ObservableNotNormalized when the spectrum of o leaves [−1, 1].
  ProtocolSampler(const DensityMatrix& rho, const KrausChannel& noise, const RetrieverDecomposition& retriever,
                  const HermitianOperator& o);

  double gamma() const { return gamma_; }
  double true_value() const { return true_value_; }

  /// E[ξ] computed from the exact outcome distributions.
  double mean() const;

  /// ξ = (γ/S)·Σ_s sgn(c^(s))·o^(s) over `rounds` sampled rounds.
  double estimate(std::int64_t rounds, std::uint64_t seed) const;

 private:
  double gamma_ = 0.0;
  double weight1_ = 1.0;  // probability of drawing D1
  double true_value_ = 0.0;
  RVector eigenvalues_;
  std::vector<double> cdf_[2];
  std::vector<double> probs_[2];
};

EstimateReport simulate_protocol(const DensityMatrix& rho, const KrausChannel& noise,
                                 const RetrieverDecomposition& retriever, const HermitianOperator& o,
                                 const ProtocolConfig& cfg);

/// Runs the protocol on O/‖O‖_∞ with the accuracy target scaled to match and
/// reports the estimate in the units of O.
EstimateReport simulate_protocol_rescaled(const DensityMatrix& rho, const KrausChannel& noise,
                                          const RetrieverDecomposition& retriever, const HermitianOperator& o,
                                          const ProtocolConfig& cfg);

struct CoverageResult {
  double failure_fraction = 0.0;
  int failures = 0;
  int trials = 0;
  std::int64_t rounds = 0;
};

/// Independent protocol runs on derived streams; a failure is |ξ − tr[ρO]| > ε̂.
CoverageResult coverage_trial(const DensityMatrix& rho, const KrausChannel& noise,
                              const RetrieverDecomposition& retriever, const HermitianOperator& o,
                              const ProtocolConfig& cfg, int n_trials);

}  // namespace shadow
