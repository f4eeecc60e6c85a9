#pragma once

// Shared test fixtures: the two coded-message examples built in code, random
// generators for models and mass functions, and brute-force oracles that work
// on plain label sets instead of bitmasks.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "belief/belief.hpp"

namespace belief::testing {

inline Frame spy_frame() { return Frame({"yes", "no"}); }

inline SubsetMask yes() { return subset_from_labels(spy_frame(), {"yes"}); }
inline SubsetMask no() { return subset_from_labels(spy_frame(), {"no"}); }
inline SubsetMask both() { return SubsetMask::full(spy_frame()); }

inline Code make_code(std::string name, const std::string& on_yes, const std::string& on_no,
                      const std::string& on_both) {
  return Code{std::move(name), {{yes(), on_yes}, {no(), on_no}, {both(), on_both}}};
}

/// Two codes: s1 sends {no} to CHERRY and T to BANANA; s2 swaps those.
inline EvidenceModel example1() {
  return EvidenceModel(spy_frame(), {"APPLE", "BANANA", "CHERRY"}, {yes(), no(), both()},
                       {{make_code("s1", "APPLE", "CHERRY", "BANANA"), Rational(1, 3)},
                        {make_code("s2", "APPLE", "BANANA", "CHERRY"), Rational(2, 3)}},
                       "BANANA");
}

/// As example1, but the first code only separates {yes} from the rest.
inline EvidenceModel example2() {
  return EvidenceModel(spy_frame(), {"APPLE", "BANANA", "CHERRY"}, {yes(), no(), both()},
                       {{make_code("s1'", "APPLE", "BANANA", "BANANA"), Rational(1, 3)},
                        {make_code("s2", "APPLE", "BANANA", "CHERRY"), Rational(2, 3)}},
                       "BANANA");
}

inline MassFunction example1_mass() {
  return make_mass(spy_frame(), {{no(), Rational(2, 3)}, {both(), Rational(1, 3)}});
}

inline Frame lettered_frame(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return Frame(labels);
}

/// Random mass function on `frame` with up to `max_focal` focal elements.
inline MassFunction random_mass(std::mt19937_64& rng, const Frame& frame, int max_focal = 5) {
  const std::uint32_t full = frame.full_bits();
  std::uniform_int_distribution<std::uint32_t> pick_subset(1, full);
  std::uniform_int_distribution<int> pick_count(1, max_focal);
  std::uniform_int_distribution<int> pick_weight(1, 9);
  std::vector<std::pair<SubsetMask, Rational>> raw;
  Rational total = 0;
  const int k = pick_count(rng);
  for (int i = 0; i < k; ++i) {
    const Rational w(pick_weight(rng));
    raw.emplace_back(SubsetMask(frame, pick_subset(rng)), w);
    total += w;
  }
  for (auto& e : raw) e.second /= total;
  return make_mass(frame, raw);
}

struct ModelShape {
  std::size_t max_frame = 4;
  std::size_t max_codes = 5;
  std::size_t max_messages = 5;
};

/// Random coded-message model. The observed field holds a random message,
/// which may be impossible under every code.
inline EvidenceModel random_model(std::mt19937_64& rng, ModelShape shape, const Frame* fixed_frame = nullptr) {
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  const Frame frame = fixed_frame ? *fixed_frame : lettered_frame(uniform(1, shape.max_frame));
  std::vector<std::string> messages;
  const std::size_t nq = uniform(1, shape.max_messages);
  for (std::size_t i = 0; i < nq; ++i) messages.push_back("q" + std::to_string(i));

  std::vector<SubsetMask> domain;
  for (std::uint32_t bits = 1; bits <= frame.full_bits(); ++bits)
    if (uniform(0, 2) != 0) domain.emplace_back(frame, bits);
  if (domain.empty()) domain.emplace_back(frame, static_cast<std::uint32_t>(uniform(1, frame.full_bits())));

  const std::size_t ns = uniform(1, shape.max_codes);
  std::vector<std::size_t> weights;
  std::size_t total = 0;
  for (std::size_t i = 0; i < ns; ++i) {
    weights.push_back(uniform(1, 6));
    total += weights.back();
  }
  std::vector<WeightedCode> codes;
  for (std::size_t i = 0; i < ns; ++i) {
    Code code{"c" + std::to_string(i), {}};
    for (const auto& a : domain) code.codebook.emplace(a, messages[uniform(0, nq - 1)]);
    codes.push_back({std::move(code), Rational(static_cast<long long>(weights[i]), static_cast<long long>(total))});
  }
  return EvidenceModel(frame, messages, domain, std::move(codes), messages[uniform(0, nq - 1)]);
}

// ---- oracles on plain label sets ------------------------------------------

using LabelSet = std::set<std::string>;

inline LabelSet labels_of(const SubsetMask& s) {
  const auto v = s.member_labels();
  return LabelSet(v.begin(), v.end());
}

inline std::map<LabelSet, Rational> as_label_map(const MassFunction& m) {
  std::map<LabelSet, Rational> out;
  for (const auto& [a, mass] : m.focal()) out.emplace(labels_of(a), mass);
  return out;
}

/// Eq-1 oracle: scan every (code, plaintext) pair, keep those sending the
/// plaintext to q, union plaintexts per code, then sum normalized code
/// probabilities per union. Empty result means no code can produce q.
inline std::map<LabelSet, Rational> brute_force_mass(const EvidenceModel& model, const std::string& q) {
  std::map<std::string, LabelSet> compat;
  std::map<std::string, Rational> prob;
  for (const auto& wc : model.codes()) {
    for (const auto& a : model.plaintext_domain()) {
      if (wc.code.codebook.at(a) != q) continue;
      const LabelSet labels = labels_of(a);
      compat[wc.code.name].insert(labels.begin(), labels.end());
      prob[wc.code.name] = wc.probability;
    }
  }
  Rational possible = 0;
  for (const auto& [name, p] : prob) possible += p;
  std::map<LabelSet, Rational> out;
  for (const auto& [name, c] : compat) out[c] += prob[name] / possible;
  return out;
}

/// Eq-2 oracle: Bel(A) by scanning focal elements as label sets.
inline Rational brute_force_belief(const MassFunction& m, const LabelSet& a) {
  Rational sum = 0;
  for (const auto& [b, mass] : as_label_map(m)) {
    bool inside = true;
    for (const auto& x : b) inside = inside && a.contains(x);
    if (inside) sum += mass;
  }
  return sum;
}

}  // namespace belief::testing
