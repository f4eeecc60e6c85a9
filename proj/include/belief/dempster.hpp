#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "belief/error.hpp"
#include "belief/evidence.hpp"
#include "belief/frame.hpp"
#include "belief/mass.hpp"
#include "belief/rational.hpp"

namespace belief {

/// Outcome of Dempster's rule. `conflict` is the mass on empty intersections
/// before normalization, so the normalizer is 1 / (1 - conflict).
struct CombinationResult {
  MassFunction combined;
  Rational conflict;

  friend bool operator==(const CombinationResult&, const CombinationResult&) = default;
};

/// Dempster's rule on two mass functions over one frame.
inline CombinationResult combine_direct(const MassFunction& m1, const MassFunction& m2) {
  if (!(m1.frame() == m2.frame())) throw Error(Errc::FrameMismatch, "mass functions are on different frames");
  std::map<SubsetMask, Rational> joint;
  Rational conflict = 0;
  for (const auto& [b, mb] : m1.focal()) {
    for (const auto& [c, mc] : m2.focal()) {
      const SubsetMask a = intersect(b, c);
      if (a.is_empty())
        conflict += mb * mc;
      else
        joint[a] += mb * mc;
    }
  }
  if (conflict == 1) throw Error(Errc::TotalConflict, "every pair of focal elements is disjoint");
  const Rational normalizer = Rational(1) - conflict;
  std::vector<std::pair<SubsetMask, Rational>> entries;
  entries.reserve(joint.size());
  for (auto& [a, mass] : joint) entries.emplace_back(a, mass / normalizer);
  return {make_mass(m1.frame(), entries), conflict};
}

/// An evidence model together with the message received through it.
struct ObservedModel {
  const EvidenceModel& model;
  std::string message;
};

/// Dempster's rule built from the product space of two independent code
/// choices: enumerate every (s, u, A1 ∩ A2) with s(A1) = q1, u(A2) = q2 and
/// A1 ∩ A2 nonempty, weight (s, u) by P(s)·R(u), and assign each compatible
/// pair's weight to C(s, u), the union of its intersections.
///
/// The reported conflict is measured relative to the code pairs that can
/// produce both messages individually (S1 × U1), which makes it agree with
/// combining the two derived mass functions.
inline CombinationResult combine_via_product(const ObservedModel& first, const ObservedModel& second) {
  const EvidenceModel& m1 = first.model;
  const EvidenceModel& m2 = second.model;
  if (!(m1.frame() == m2.frame())) throw Error(Errc::FrameMismatch, "models are on different frames");
  m1.require_message(first.message);
  m2.require_message(second.message);

  Rational pr_compatible = 0;    // Pr(SU1)
  Rational pr_first_possible = 0;   // P(S1)
  Rational pr_second_possible = 0;  // R(U1)
  std::map<SubsetMask, Rational> joint;

  for (const auto& [u, r] : m2.codes()) {
    for (const auto& [a2, q2] : u.codebook)
      if (q2 == second.message) {
        pr_second_possible += r;
        break;
      }
  }

  for (const auto& [s, p] : m1.codes()) {
    bool s_possible = false;
    for (const auto& [a1, q1] : s.codebook) s_possible = s_possible || q1 == first.message;
    if (s_possible) pr_first_possible += p;

    for (const auto& [u, r] : m2.codes()) {
      std::optional<SubsetMask> c_su;
      for (const auto& [a1, q1] : s.codebook) {
        if (q1 != first.message) continue;
        for (const auto& [a2, q2] : u.codebook) {
          if (q2 != second.message) continue;
          const SubsetMask a = intersect(a1, a2);
          if (a.is_empty()) continue;
          c_su = c_su ? union_of(*c_su, a) : a;
        }
      }
      if (!c_su) continue;
      pr_compatible += p * r;
      joint[*c_su] += p * r;
    }
  }

  if (pr_first_possible == 0 || pr_second_possible == 0)
    throw Error(Errc::TotalConflict, "an observed message cannot be produced by any code");
  if (pr_compatible == 0) throw Error(Errc::TotalConflict, "no pair of codes is compatible with both messages");

  std::vector<std::pair<SubsetMask, Rational>> entries;
  entries.reserve(joint.size());
  for (auto& [a, w] : joint) entries.emplace_back(a, w / pr_compatible);
  const Rational conflict = Rational(1) - pr_compatible / (pr_first_possible * pr_second_possible);
  return {make_mass(m1.frame(), entries), conflict};
}

}  // namespace belief
