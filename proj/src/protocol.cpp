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


#include "shadow/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shadow/errors.hpp"

namespace shadow {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void check_dims(const DensityMatrix& rho, const KrausChannel& noise, const RetrieverDecomposition& r,
                const HermitianOperator& o) {
  const int d = noise.dim();
  if (rho.dim() != d || o.dim() != d || r.dim() != d) {
    throw DimensionError("state, channel, retriever and observable dimensions differ");
  }
}

int sample_index(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
}

}  // namespace

StreamRng::StreamRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

std::uint64_t StreamRng::derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

double StreamRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

void ProtocolConfig::validate() const {
  if (!(epsilon_hat > 0.0) || !std::isfinite(epsilon_hat)) throw InvalidArgument("epsilon_hat must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (rounds_override && *rounds_override <= 0) throw InvalidArgument("rounds override must be positive");
  if (!(log_base > 1.0) || !std::isfinite(log_base)) throw InvalidArgument("log base must exceed 1");
}

double sampling_rounds_real(double gamma, double epsilon_hat, double delta, double log_base) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be positive");
  if (!(epsilon_hat > 0.0)) throw InvalidArgument("epsilon_hat must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!(log_base > 1.0)) throw InvalidArgument("log base must exceed 1");
  return 2.0 * gamma * gamma * (std::log(2.0 / delta) / std::log(log_base)) / (epsilon_hat * epsilon_hat);
}

std::int64_t sampling_rounds(double gamma, double epsilon_hat, double delta, double log_base) {
  const double s = sampling_rounds_real(gamma, epsilon_hat, delta, log_base);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(s * (1.0 - 1e-12))));
}

double exact_recovery(const DensityMatrix& rho, const KrausChannel& noise, const RetrieverDecomposition& retriever,
                      const HermitianOperator& o) {
  check_dims(rho, noise, retriever, o);
  const CMatrix sigma = apply_map(noise, rho.matrix());
  const double e1 = (apply_choi(retriever.d1.matrix(), sigma) * o.matrix()).trace().real();
  const double e2 = (apply_choi(retriever.d2.matrix(), sigma) * o.matrix()).trace().real();
  return retriever.c1 * e1 + retriever.c2 * e2;
}

ProtocolSampler::ProtocolSampler(const DensityMatrix& rho, const KrausChannel& noise,
                                 const RetrieverDecomposition& retriever, const HermitianOperator& o) {
  check_dims(rho, noise, retriever, o);
  const EigenDecomposition eig = hermitian_eig(o);
  if (eig.values.cwiseAbs().maxCoeff() > 1.0 + 1e-12) {
    throw ObservableNotNormalized("observable spectrum leaves [-1, 1]; rescale by its operator norm");
  }
  eigenvalues_ = eig.values;
  gamma_ = std::abs(retriever.c1) + std::abs(retriever.c2);
  if (!(gamma_ > 0.0)) throw InvalidArgument("retriever has zero weight");
  weight1_ = std::abs(retriever.c1) / gamma_;
  true_value_ = (rho.matrix() * o.matrix()).trace().real();

  const CMatrix sigma = apply_map(noise, rho.matrix());
  const ChoiMatrix* parts[2] = {&retriever.d1, &retriever.d2};
  for (int j = 0; j < 2; ++j) {
    const CMatrix out = apply_choi(parts[j]->matrix(), sigma);
    std::vector<double>& p = probs_[j];
    p.resize(eig.values.size());
    double total = 0.0;
    for (Eigen::Index m = 0; m < eig.values.size(); ++m) {
      const double born = eig.vectors.col(m).dot(out * eig.vectors.col(m)).real();
      if (born < -1e-10) throw Error("negative Born probability " + std::to_string(born));
      p[m] = std::max(born, 0.0);
      total += p[m];
    }
    std::vector<double>& c = cdf_[j];
    c.resize(p.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) {
      p[m] /= total;
      acc += p[m];
      c[m] = acc;
    }
    c.back() = 1.0;
  }
}

double ProtocolSampler::mean() const {
  double e[2] = {0.0, 0.0};
  for (int j = 0; j < 2; ++j) {
    for (std::size_t m = 0; m < probs_[j].size(); ++m) e[j] += probs_[j][m] * eigenvalues_(m);
  }
  return gamma_ * (weight1_ * e[0] - (1.0 - weight1_) * e[1]);
}

double ProtocolSampler::estimate(std::int64_t rounds, std::uint64_t seed) const {
  if (rounds <= 0) throw InvalidArgument("rounds must be positive");
  StreamRng rng(seed);
  double sum = 0.0;
  for (std::int64_t s = 0; s < rounds; ++s) {
    const int j = rng.uniform() < weight1_ ? 0 : 1;
    const int m = sample_index(cdf_[j], rng.uniform());
    sum += j == 0 ? eigenvalues_(m) : -eigenvalues_(m);
  }
  return gamma_ * sum / static_cast<double>(rounds);
}

EstimateReport simulate_protocol(const DensityMatrix& rho, const KrausChannel& noise,
                                 const RetrieverDecomposition& retriever, const HermitianOperator& o,
                                 const ProtocolConfig& cfg) {
  cfg.validate();
  const ProtocolSampler sampler(rho, noise, retriever, o);
  EstimateReport r;
  r.gamma = sampler.gamma();
  r.rounds = cfg.rounds_override ? *cfg.rounds_override
                                 : sampling_rounds(r.gamma, cfg.epsilon_hat, cfg.delta, cfg.log_base);
  r.seed = cfg.seed;
  r.xi = sampler.estimate(r.rounds, cfg.seed);
  r.true_value = sampler.true_value();
  r.abs_error = std::abs(r.xi - *r.true_value);
  return r;
}

EstimateReport simulate_protocol_rescaled(const DensityMatrix& rho, const KrausChannel& noise,
                                          const RetrieverDecomposition& retriever, const HermitianOperator& o,
                                          const ProtocolConfig& cfg) {
  const double scale = hermitian_eig(o).values.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw InvalidArgument("observable must be non-zero");
  ProtocolConfig scaled = cfg;
  scaled.epsilon_hat = cfg.epsilon_hat / scale;
  EstimateReport r = simulate_protocol(rho, noise, retriever, HermitianOperator(o.matrix() / scale), scaled);
  r.xi *= scale;
  r.true_value = *r.true_value * scale;
  r.abs_error = std::abs(r.xi - *r.true_value);
  return r;
}

CoverageResult coverage_trial(const DensityMatrix& rho, const KrausChannel& noise,
                              const RetrieverDecomposition& retriever, const HermitianOperator& o,
                              const ProtocolConfig& cfg, int n_trials) {
  cfg.validate();
  if (n_trials <= 0) throw InvalidArgument("n_trials must be positive");
  const ProtocolSampler sampler(rho, noise, retriever, o);
  CoverageResult c;
  c.trials = n_trials;
  c.rounds = cfg.rounds_override ? *cfg.rounds_override
                                 : sampling_rounds(sampler.gamma(), cfg.epsilon_hat, cfg.delta, cfg.log_base);
  for (int t = 0; t < n_trials; ++t) {
    const double xi = sampler.estimate(c.rounds, StreamRng::derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    if (std::abs(xi - sampler.true_value()) > cfg.epsilon_hat) ++c.failures;
  }
  c.failure_fraction = static_cast<double>(c.failures) / n_trials;
  return c;
}

}  // namespace shadow
