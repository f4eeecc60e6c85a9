#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "belief/bayes.hpp"
#include "support/fixtures.hpp"

using namespace belief;
using namespace belief::testing;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidModel;
}

}  // namespace

TEST(Likelihood, ExampleValues) {
  EXPECT_EQ(likelihood(example1(), no(), "BANANA"), Rational(2, 3));
  EXPECT_EQ(likelihood(example2(), no(), "BANANA"), 1);
  EXPECT_EQ(likelihood(example1(), yes(), "BANANA"), 0);
  EXPECT_EQ(likelihood(example1(), both(), "BANANA"), Rational(1, 3));
  EXPECT_EQ(likelihood(example2(), both(), "BANANA"), Rational(1, 3));
}

TEST(Likelihood, Errors) {
  EXPECT_EQ(error_of([] { likelihood(example1(), no(), "KIWI"); }), Errc::UnknownMessage);
  const EvidenceModel narrow(spy_frame(), {"A"}, {both()}, {{Code{"c", {{both(), "A"}}}, Rational(1)}});
  EXPECT_EQ(error_of([&] { likelihood(narrow, no(), "A"); }), Errc::UnknownPlaintext);
}

TEST(PriorSpec, Constructors) {
  const auto uniform = PriorSpec::uniform(example1());
  EXPECT_EQ(uniform.weight_of(yes()), Rational(1, 3));
  EXPECT_EQ(uniform.weight_of(both()), Rational(1, 3));

  const auto odds = PriorSpec::from_odds(example1(), no(), both(), Rational(2));
  EXPECT_EQ(odds.weight_of(no()), Rational(2, 3));
  EXPECT_EQ(odds.weight_of(both()), Rational(1, 3));
  EXPECT_EQ(odds.weight_of(yes()), 0);

  EXPECT_EQ(error_of([] { PriorSpec::from_weights(example1(), {{no(), Rational(1, 2)}}); }), Errc::InvalidPrior);
  EXPECT_EQ(error_of([] { PriorSpec::from_weights(example1(), {{no(), Rational(3, 2)}, {yes(), Rational(-1, 2)}}); }),
            Errc::InvalidPrior);
  EXPECT_EQ(error_of([] { PriorSpec::from_odds(example1(), no(), no(), Rational(1)); }), Errc::InvalidPrior);
  const EvidenceModel narrow(spy_frame(), {"A"}, {both()}, {{Code{"c", {{both(), "A"}}}, Rational(1)}});
  EXPECT_EQ(error_of([&] { PriorSpec::from_weights(narrow, {{no(), Rational(1)}}); }), Errc::UnknownPlaintext);
}

TEST(Posterior, UniformPriorOnBundledExamples) {
  // Likelihoods (0, 2/3, 1/3) and (0, 1, 1/3); a uniform prior cancels.
  const auto p1 = posterior(example1(), PriorSpec::uniform(example1()), "BANANA");
  EXPECT_EQ(p1.posterior.at(yes()), 0);
  EXPECT_EQ(p1.posterior.at(no()), Rational(2, 3));
  EXPECT_EQ(p1.posterior.at(both()), Rational(1, 3));
  EXPECT_EQ(p1.normalizer, Rational(1, 3));

  const auto p2 = posterior(example2(), PriorSpec::uniform(example2()), "BANANA");
  EXPECT_EQ(p2.posterior.at(yes()), 0);
  EXPECT_EQ(p2.posterior.at(no()), Rational(3, 4));
  EXPECT_EQ(p2.posterior.at(both()), Rational(1, 4));
}

TEST(Posterior, ConcentratedPriorAndZeroMarginal) {
  const auto p = posterior(example1(), PriorSpec::from_weights(example1(), {{no(), Rational(1)}}), "BANANA");
  EXPECT_EQ(p.posterior.at(no()), 1);
  EXPECT_EQ(p.posterior.at(yes()), 0);
  EXPECT_EQ(error_of([] { posterior(example1(), PriorSpec::from_weights(example1(), {{yes(), Rational(1)}}), "BANANA"); }),
            Errc::ZeroMarginal);
}

TEST(Odds, ExampleBayesFactors) {
  EXPECT_EQ(bayes_factor(example1(), "BANANA", no(), both()), 2);
  EXPECT_EQ(bayes_factor(example2(), "BANANA", no(), both()), 3);
  EXPECT_EQ(bayes_factor(example1(), "BANANA", both(), no()), Rational(1, 2));
  for (const Rational& a : {Rational(1, 3), Rational(1), Rational(2), Rational(7, 5)}) {
    EXPECT_EQ(posterior_odds(example1(), "BANANA", no(), both(), a), 2 * a);
    EXPECT_EQ(posterior_odds(example2(), "BANANA", no(), both(), a), 3 * a);
    EXPECT_EQ(posterior_odds(example1(), "BANANA", no(), no(), a), a);
    EXPECT_GT(posterior_odds(example2(), "BANANA", no(), both(), a),
              posterior_odds(example1(), "BANANA", no(), both(), a));
  }
}

TEST(Odds, PosteriorOddsMatchPosteriorRatio) {
  for (const Rational& a : {Rational(1, 3), Rational(1), Rational(2), Rational(7, 5)}) {
    for (const auto& model : {example1(), example2()}) {
      const auto post = posterior(model, PriorSpec::from_odds(model, no(), both(), a), "BANANA");
      EXPECT_EQ(post.posterior.at(no()) / post.posterior.at(both()),
                posterior_odds(model, "BANANA", no(), both(), a));
    }
  }
}

TEST(Odds, ZeroLikelihoodsAreSignalled) {
  EXPECT_EQ(error_of([] { bayes_factor(example1(), "BANANA", no(), yes()); }), Errc::InfiniteOdds);
  EXPECT_EQ(error_of([] { bayes_factor(example1(), "BANANA", yes(), yes()); }), Errc::UndefinedOdds);
  EXPECT_EQ(bayes_factor(example1(), "BANANA", yes(), no()), 0);
}

TEST(Williams, BundledExamples) {
  const auto w1 = williams_check(example1(), "BANANA");
  EXPECT_TRUE(w1.one_to_one);
  EXPECT_TRUE(w1.equivalent);
  EXPECT_EQ(w1.mass, example1_mass());

  const auto w2 = williams_check(example2(), "BANANA");
  EXPECT_FALSE(w2.one_to_one);
  EXPECT_FALSE(w2.equivalent);
  EXPECT_EQ(w2.uniform_posterior.at(no()), Rational(3, 4));
  EXPECT_EQ(w2.uniform_posterior.at(both()), Rational(1, 4));
  EXPECT_EQ(w2.mass.mass_of(no()), Rational(2, 3));
  EXPECT_EQ(w2.mass.mass_of(both()), Rational(1, 3));
}

TEST(Williams, SingleInjectiveCode) {
  const EvidenceModel single(spy_frame(), {"APPLE", "BANANA", "CHERRY"}, {yes(), no(), both()},
                             {{make_code("only", "APPLE", "BANANA", "CHERRY"), Rational(1)}});
  const auto w = williams_check(single, "BANANA");
  EXPECT_TRUE(w.one_to_one);
  EXPECT_TRUE(w.equivalent);
}

TEST(Williams, OneToOneImpliesEquivalentOnRandomModels) {
  std::mt19937_64 rng(31337);
  int one_to_one = 0;
  int checked = 0;
  for (int i = 0; i < 600 && checked < 250; ++i) {
    const EvidenceModel model = random_model(rng, {4, 5, 5});
    const std::string q = *model.observed();
    if (brute_force_mass(model, q).empty()) continue;
    const auto w = williams_check(model, q);
    if (w.one_to_one) {
      ++one_to_one;
      EXPECT_TRUE(w.equivalent) << "model " << i;
    }
    ++checked;
  }
  EXPECT_GE(checked, 200);
  EXPECT_GT(one_to_one, 20);
}

TEST(Posterior, ExactnessOnRandomModelsAndPriors) {
  std::mt19937_64 rng(555);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 200; ++i) {
    const EvidenceModel model = random_model(rng, {4, 5, 5});
    std::map<SubsetMask, Rational> weights;
    Rational total = 0;
    std::uniform_int_distribution<int> w(0, 4);
    for (const auto& a : model.plaintext_domain()) {
      weights[a] = w(rng);
      total += weights[a];
    }
    if (total == 0) continue;
    for (auto& [a, x] : weights) x /= total;
    const auto prior = PriorSpec::from_weights(model, weights);
    PosteriorReport post;
    try {
      post = posterior(model, prior, *model.observed());
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ZeroMarginal);
      continue;
    }
    Rational sum = 0;
    for (const auto& [a, p] : post.posterior) {
      sum += p;
      EXPECT_EQ(p * post.normalizer, prior.weight_of(a) * post.likelihoods.at(a));
    }
    EXPECT_EQ(sum, 1);
    ++checked;
  }
  EXPECT_GE(checked, 200);
}

TEST(Simulate, ConvergesToExactPosterior) {
  for (const auto& model : {example1(), example2()}) {
    const auto prior = PriorSpec::uniform(model);
    const auto exact = posterior(model, prior, "BANANA");
    const auto sim = simulate(model, prior, "BANANA", 100000, 20240101);
    EXPECT_EQ(sim.trials, 100000u);
    EXPECT_GT(sim.accepted, 0u);
    for (const auto& [a, p] : exact.posterior)
      EXPECT_NEAR(sim.frequencies.at(a), static_cast<double>(p), 0.01) << to_string(a);
  }
}

TEST(Simulate, DeterministicForFixedSeed) {
  const auto prior = PriorSpec::uniform(example2());
  const auto a = simulate(example2(), prior, "BANANA", 5000, 7);
  const auto b = simulate(example2(), prior, "BANANA", 5000, 7);
  const auto c = simulate(example2(), prior, "BANANA", 5000, 8);
  EXPECT_EQ(a.frequencies, b.frequencies);
  EXPECT_EQ(a.accepted, b.accepted);
  EXPECT_NE(a.accepted == c.accepted && a.frequencies == c.frequencies, true);
}

TEST(Simulate, ConcentratedPriorIsExact) {
  // Every code of example2 sends {no} to BANANA.
  const auto prior = PriorSpec::from_weights(example2(), {{no(), Rational(1)}});
  const auto sim = simulate(example2(), prior, "BANANA", 1000, 3);
  EXPECT_EQ(sim.accepted, 1000u);
  EXPECT_EQ(sim.frequencies.at(no()), 1.0);
  EXPECT_EQ(sim.frequencies.at(yes()), 0.0);
}

TEST(Simulate, NoAcceptedTrials) {
  const auto prior = PriorSpec::from_weights(example1(), {{yes(), Rational(1)}});
  EXPECT_EQ(error_of([&] { simulate(example1(), prior, "BANANA", 100, 1); }), Errc::NoAcceptedTrials);
  EXPECT_EQ(error_of([] { simulate(example1(), PriorSpec::uniform(example1()), "BANANA", 0, 1); }),
            Errc::NoAcceptedTrials);
}
