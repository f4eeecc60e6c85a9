#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "belief/error.hpp"
#include "belief/evidence.hpp"
#include "belief/frame.hpp"
#include "belief/mass.hpp"
#include "belief/rational.hpp"

namespace belief {

/// Prior probabilities over the plaintext messages of a model.
class PriorSpec {
 public:
  const Frame& frame() const noexcept { return frame_; }
  const std::map<SubsetMask, Rational>& weights() const noexcept { return weights_; }

  Rational weight_of(const SubsetMask& a) const {
    const auto it = weights_.find(a);
    return it == weights_.end() ? Rational(0) : it->second;
  }

  /// Equal weight on every plaintext of the model's domain.
  static PriorSpec uniform(const EvidenceModel& model) {
    const Rational w(1, static_cast<long long>(model.plaintext_domain().size()));
    std::map<SubsetMask, Rational> weights;
    for (const auto& a : model.plaintext_domain()) weights.emplace(a, w);
    return PriorSpec(model, std::move(weights));
  }

  /// Explicit weights; plaintexts left out get zero.
  static PriorSpec from_weights(const EvidenceModel& model, std::map<SubsetMask, Rational> weights) {
    return PriorSpec(model, std::move(weights));
  }

  /// Two-point prior with prior(first) : prior(second) = odds : 1.
  static PriorSpec from_odds(const EvidenceModel& model, const SubsetMask& first, const SubsetMask& second,
                             const Rational& odds) {
    if (first == second) throw Error(Errc::InvalidPrior, "odds prior needs two distinct plaintexts");
    if (odds < 0) throw Error(Errc::InvalidPrior, "prior odds must be non-negative");
    std::map<SubsetMask, Rational> weights;
    weights.emplace(first, odds / (odds + 1));
    weights.emplace(second, Rational(1) / (odds + 1));
    return PriorSpec(model, std::move(weights));
  }

 private:
  PriorSpec(const EvidenceModel& model, std::map<SubsetMask, Rational> weights)
      : frame_(model.frame()), weights_(std::move(weights)) {
    Rational total = 0;
    for (const auto& [a, w] : weights_) {
      if (!model.in_domain(a))
        throw Error(Errc::UnknownPlaintext, "prior weight on " + to_string(a) + ", which is not a plaintext of the model");
      if (w < 0) throw Error(Errc::InvalidPrior, "negative prior weight on " + to_string(a));
      total += w;
    }
    if (total != 1) throw Error(Errc::InvalidPrior, "prior weights sum to " + to_string(total) + ", not 1");
  }

  Frame frame_;
  std::map<SubsetMask, Rational> weights_;
};

struct PosteriorReport {
  std::map<SubsetMask, Rational> prior;
  std::map<SubsetMask, Rational> likelihoods;
  std::map<SubsetMask, Rational> posterior;
  Rational normalizer;  // marginal probability of the observed message
};

namespace detail {

inline void require_plaintext(const EvidenceModel& model, const SubsetMask& a) {
  if (!(a.frame() == model.frame())) throw Error(Errc::FrameMismatch, "plaintext is not on the model frame");
  if (!model.in_domain(a))
    throw Error(Errc::UnknownPlaintext, to_string(a) + " is not a plaintext of the model");
}

}  // namespace detail

/// Pr(q | A): total probability of the codes that carry A to q. Codes are
/// chosen independently of the plaintext.
inline Rational likelihood(const EvidenceModel& model, const SubsetMask& a, const std::string& q) {
  model.require_message(q);
  detail::require_plaintext(model, a);
  Rational sum = 0;
  for (const auto& [code, p] : model.codes()) {
    const std::string* emitted = code.encode(a);
    if (emitted && *emitted == q) sum += p;
  }
  return sum;
}

/// Exact posterior over the plaintext domain. Zero-probability plaintexts are
/// kept in every table.
inline PosteriorReport posterior(const EvidenceModel& model, const PriorSpec& prior, const std::string& q) {
  model.require_message(q);
  if (!(prior.frame() == model.frame())) throw Error(Errc::FrameMismatch, "prior is not on the model frame");
  PosteriorReport report;
  for (const auto& a : model.plaintext_domain()) {
    const Rational pi = prior.weight_of(a);
    const Rational l = likelihood(model, a, q);
    report.prior.emplace(a, pi);
    report.likelihoods.emplace(a, l);
    report.normalizer += pi * l;
  }
  if (report.normalizer == 0)
    throw Error(Errc::ZeroMarginal, "message '" + q + "' has zero probability under the prior");
  for (const auto& a : model.plaintext_domain())
    report.posterior.emplace(a, report.prior.at(a) * report.likelihoods.at(a) / report.normalizer);
  return report;
}

/// Likelihood ratio Pr(q | first) / Pr(q | second).
inline Rational bayes_factor(const EvidenceModel& model, const std::string& q, const SubsetMask& first,
                             const SubsetMask& second) {
  const Rational l1 = likelihood(model, first, q);
  const Rational l2 = likelihood(model, second, q);
  if (l2 == 0) {
    if (l1 == 0)
      throw Error(Errc::UndefinedOdds, "both " + to_string(first) + " and " + to_string(second) +
                                           " have zero likelihood for '" + q + "'");
    throw Error(Errc::InfiniteOdds, to_string(second) + " has zero likelihood for '" + q + "'");
  }
  return l1 / l2;
}

/// Posterior odds of `first` against `second` given prior odds `prior_odds` : 1.
inline Rational posterior_odds(const EvidenceModel& model, const std::string& q, const SubsetMask& first,
                               const SubsetMask& second, const Rational& prior_odds) {
  return prior_odds * bayes_factor(model, q, first, second);
}

struct WilliamsReport {
  bool one_to_one;
  bool equivalent;
  MassFunction mass;
  std::map<SubsetMask, Rational> uniform_posterior;
};

/// Compares the derived mass function with the posterior under a uniform
/// prior on plaintexts. When every possible code decodes q to a single
/// plaintext the two coincide.
inline WilliamsReport williams_check(const EvidenceModel& model, const std::string& q) {
  MassFunction mass = derive_mass(model, q);
  const ConstrainingRelation e = constraining_relation(model, q);
  std::map<std::string, int> decodings;
  for (const auto& [s, a] : e.pairs) ++decodings[s];
  bool one_to_one = true;
  for (const auto& [s, n] : decodings) one_to_one = one_to_one && n == 1;

  const PosteriorReport post = posterior(model, PriorSpec::uniform(model), q);
  std::map<SubsetMask, Rational> positive;
  for (const auto& [a, p] : post.posterior)
    if (p != 0) positive.emplace(a, p);
  const bool equivalent = positive == mass.focal();
  return {one_to_one, equivalent, std::move(mass), post.posterior};
}

struct SimulationReport {
  static constexpr std::string_view kAlgorithm = "mt19937_64/inverse-cdf-53bit";

  std::map<SubsetMask, double> frequencies;
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t sample_index(std::mt19937_64& rng, const std::vector<double>& cumulative) {
  const double u = unit_interval(rng);
  for (std::size_t i = 0; i + 1 < cumulative.size(); ++i)
    if (u < cumulative[i]) return i;
  return cumulative.size() - 1;
}

// Cumulative sums in exact arithmetic, converted once; the last entry is 1.
template <class Weights>
std::vector<double> cumulative_of(const Weights& weights) {
  std::vector<double> out;
  Rational running = 0;
  for (const auto& w : weights) {
    running += w;
    out.push_back(static_cast<double>(running));
  }
  return out;
}

}  // namespace detail

/// Monte Carlo rendition of the generative story: draw A from the prior and a
/// code from P independently, keep the trial when the code carries A to q,
/// and tabulate accepted plaintexts. Each trial draws the plaintext first and
/// the code second from a single mt19937_64 stream seeded with `seed`.
inline SimulationReport simulate(const EvidenceModel& model, const PriorSpec& prior, const std::string& q,
                                 std::uint64_t n, std::uint64_t seed) {
  model.require_message(q);
  if (n == 0) throw Error(Errc::NoAcceptedTrials, "sample count must be at least 1");
  if (!(prior.frame() == model.frame())) throw Error(Errc::FrameMismatch, "prior is not on the model frame");

  const auto& domain = model.plaintext_domain();
  std::vector<Rational> prior_weights;
  for (const auto& a : domain) prior_weights.push_back(prior.weight_of(a));
  std::vector<Rational> code_weights;
  for (const auto& wc : model.codes()) code_weights.push_back(wc.probability);
  const auto prior_cdf = detail::cumulative_of(prior_weights);
  const auto code_cdf = detail::cumulative_of(code_weights);

  // accepts[i][j]: code j carries plaintext i to q.
  std::vector<std::vector<bool>> accepts(domain.size(), std::vector<bool>(model.codes().size()));
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (std::size_t j = 0; j < model.codes().size(); ++j) {
      const std::string* emitted = model.codes()[j].code.encode(domain[i]);
      accepts[i][j] = emitted && *emitted == q;
    }

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> counts(domain.size(), 0);
  SimulationReport report;
  report.trials = n;
  report.seed = seed;
  for (std::uint64_t t = 0; t < n; ++t) {
    const std::size_t i = detail::sample_index(rng, prior_cdf);
    const std::size_t j = detail::sample_index(rng, code_cdf);
    if (accepts[i][j]) {
      ++counts[i];
      ++report.accepted;
    }
  }
  if (report.accepted == 0)
    throw Error(Errc::NoAcceptedTrials, "none of " + std::to_string(n) + " trials produced '" + q + "'");
  for (std::size_t i = 0; i < domain.size(); ++i)
    report.frequencies.emplace(domain[i], static_cast<double>(counts[i]) / static_cast<double>(report.accepted));
  return report;
}

}  // namespace belief
