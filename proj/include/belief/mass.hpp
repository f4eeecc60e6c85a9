#pragma once

#include <map>
#include <utility>
#include <vector>

#include "belief/error.hpp"
#include "belief/frame.hpp"
#include "belief/rational.hpp"

namespace belief {

/// Basic probability assignment over a frame. Only strictly positive masses
/// are stored; they sum to exactly one and the empty set is never focal.
class MassFunction {
 public:
  using FocalMap = std::map<SubsetMask, Rational>;

  const Frame& frame() const noexcept { return frame_; }
  const FocalMap& focal() const noexcept { return focal_; }

  /// Mass of `a` (zero when `a` is not focal).
  Rational mass_of(const SubsetMask& a) const {
    if (!(a.frame() == frame_)) throw Error(Errc::FrameMismatch, "subset is not on the mass function's frame");
    const auto it = focal_.find(a);
    return it == focal_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const MassFunction& a, const MassFunction& b) {
    return a.frame_ == b.frame_ && a.focal_ == b.focal_;
  }

 private:
  MassFunction(Frame frame, FocalMap focal) : frame_(std::move(frame)), focal_(std::move(focal)) {}

  friend MassFunction make_mass(const Frame&, const std::vector<std::pair<SubsetMask, Rational>>&);

  Frame frame_;
  FocalMap focal_;
};

/// Builds a mass function, dropping zero entries and merging duplicate subsets
/// by addition before validating the invariants.
inline MassFunction make_mass(const Frame& frame,
                              const std::vector<std::pair<SubsetMask, Rational>>& entries) {
  MassFunction::FocalMap merged;
  for (const auto& [subset, mass] : entries) {
    if (!(subset.frame() == frame))
      throw Error(Errc::FrameMismatch, "focal element " + to_string(subset) + " is not on the target frame");
    merged[subset] += mass;
  }
  MassFunction::FocalMap focal;
  Rational total = 0;
  for (auto& [subset, mass] : merged) {
    if (mass < 0)
      throw Error(Errc::NegativeMass, "negative mass " + to_string(mass) + " on " + to_string(subset));
    if (mass == 0) continue;
    if (subset.is_empty()) throw Error(Errc::MassOnEmptySet, "mass " + to_string(mass) + " assigned to {}");
    total += mass;
    focal.emplace(subset, mass);
  }
  if (total != 1) throw Error(Errc::MassNotNormalized, "masses sum to " + to_string(total) + ", not 1");
  return MassFunction(frame, std::move(focal));
}

inline MassFunction vacuous(const Frame& frame) {
  return make_mass(frame, {{SubsetMask::full(frame), Rational(1)}});
}

/// Bel(A): total mass of focal elements contained in A.
inline Rational belief_of(const MassFunction& m, const SubsetMask& a) {
  if (!(a.frame() == m.frame())) throw Error(Errc::FrameMismatch, "subset is not on the mass function's frame");
  Rational sum = 0;
  for (const auto& [b, mass] : m.focal())
    if ((b.bits() & ~a.bits()) == 0) sum += mass;
  return sum;
}

/// Pl(A) = 1 - Bel(complement of A).
inline Rational plausibility_of(const MassFunction& m, const SubsetMask& a) {
  if (!(a.frame() == m.frame())) throw Error(Errc::FrameMismatch, "subset is not on the mass function's frame");
  return Rational(1) - belief_of(m, complement(a));
}

/// True iff every focal element is a singleton.
inline bool is_bayesian(const MassFunction& m) {
  for (const auto& [b, mass] : m.focal())
    if (b.count() != 1) return false;
  return true;
}

/// Belief values of every subset of the frame, indexed by mask bits.
inline std::vector<Rational> tabulate_belief(const MassFunction& m) {
  const std::size_t n = std::size_t{1} << m.frame().size();
  std::vector<Rational> table(n);
  for (const auto& [b, mass] : m.focal()) table[b.bits()] += mass;
  // Zeta transform over subsets: table[A] = sum of table[B] for B within A.
  for (std::size_t bit = 1; bit < n; bit <<= 1)
    for (std::size_t a = 0; a < n; ++a)
      if (a & bit) table[a] += table[a ^ bit];
  return table;
}

/// Recovers the mass function whose belief function is `bel`, by Möbius
/// inversion. `bel` must assign a value to every subset of `frame`.
inline MassFunction belief_to_mass(const Frame& frame, const std::map<SubsetMask, Rational>& bel) {
  const std::size_t n = std::size_t{1} << frame.size();
  if (bel.size() != n)
    throw Error(Errc::NotABeliefFunction, "belief table must cover all " + std::to_string(n) +
                                              " subsets, got " + std::to_string(bel.size()));
  std::vector<Rational> table(n);
  for (const auto& [subset, value] : bel) {
    if (!(subset.frame() == frame)) throw Error(Errc::FrameMismatch, "belief entry is not on the target frame");
    table[subset.bits()] = value;
  }
  if (table[n - 1] != 1)
    throw Error(Errc::NotABeliefFunction, "Bel(T) = " + to_string(table[n - 1]) + ", not 1");

  for (std::size_t bit = 1; bit < n; bit <<= 1)
    for (std::size_t a = 0; a < n; ++a)
      if (a & bit) table[a] -= table[a ^ bit];

  if (table[0] != 0)
    throw Error(Errc::NotABeliefFunction, "inversion puts mass " + to_string(table[0]) + " on {}");
  std::vector<std::pair<SubsetMask, Rational>> entries;
  for (std::size_t a = 1; a < n; ++a) {
    if (table[a] < 0)
      throw Error(Errc::NotABeliefFunction,
                  "inversion yields negative mass " + to_string(table[a]) + " on " +
                      to_string(SubsetMask(frame, static_cast<std::uint32_t>(a))));
    if (table[a] != 0) entries.emplace_back(SubsetMask(frame, static_cast<std::uint32_t>(a)), table[a]);
  }
  return make_mass(frame, entries);
}

}  // namespace belief
