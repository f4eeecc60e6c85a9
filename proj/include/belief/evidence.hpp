#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "belief/error.hpp"
#include "belief/frame.hpp"
#include "belief/mass.hpp"
#include "belief/rational.hpp"

namespace belief {

/// A code s: carries each plaintext A of the model's domain to a message.
/// Need not be injective.
struct Code {
  std::string name;
  std::map<SubsetMask, std::string> codebook;

  /// Message emitted for `plaintext`, or nullptr when it is outside the domain.
  const std::string* encode(const SubsetMask& plaintext) const {
    const auto it = codebook.find(plaintext);
    return it == codebook.end() ? nullptr : &it->second;
  }

  friend bool operator==(const Code&, const Code&) = default;
};

struct WeightedCode {
  Code code;
  Rational probability;

  friend bool operator==(const WeightedCode&, const WeightedCode&) = default;
};

/// The coded-message setup: hypothesis frame T, message alphabet Q, the
/// plaintexts every code maps, and the codes S with their probabilities P.
class EvidenceModel {
 public:
  EvidenceModel(Frame frame, std::vector<std::string> messages, std::vector<SubsetMask> plaintext_domain,
                std::vector<WeightedCode> codes, std::optional<std::string> observed = std::nullopt)
      : frame_(std::move(frame)),
        messages_(std::move(messages)),
        plaintexts_(std::move(plaintext_domain)),
        codes_(std::move(codes)),
        observed_(std::move(observed)) {
    validate();
  }

  const Frame& frame() const noexcept { return frame_; }
  const std::vector<std::string>& messages() const noexcept { return messages_; }
  const std::vector<SubsetMask>& plaintext_domain() const noexcept { return plaintexts_; }
  const std::vector<WeightedCode>& codes() const noexcept { return codes_; }
  const std::optional<std::string>& observed() const noexcept { return observed_; }

  bool has_message(const std::string& q) const {
    return std::find(messages_.begin(), messages_.end(), q) != messages_.end();
  }

  bool in_domain(const SubsetMask& a) const {
    return std::find(plaintexts_.begin(), plaintexts_.end(), a) != plaintexts_.end();
  }

  const WeightedCode* find_code(const std::string& name) const {
    const auto it = std::find_if(codes_.begin(), codes_.end(),
                                 [&](const WeightedCode& wc) { return wc.code.name == name; });
    return it == codes_.end() ? nullptr : &*it;
  }

  void require_message(const std::string& q) const {
    if (!has_message(q)) throw Error(Errc::UnknownMessage, "message '" + q + "' is not in the alphabet");
  }

  friend bool operator==(const EvidenceModel&, const EvidenceModel&) = default;

 private:
  void validate() const {
    std::set<std::string> seen_messages;
    for (const auto& q : messages_) {
      if (q.empty()) throw Error(Errc::InvalidModel, "message labels must be non-empty");
      if (!seen_messages.insert(q).second)
        throw Error(Errc::InvalidModel, "duplicate message label '" + q + "'");
    }
    if (plaintexts_.empty()) throw Error(Errc::InvalidModel, "plaintext domain is empty");
    std::set<SubsetMask> seen_plaintexts;
    for (const auto& a : plaintexts_) {
      if (!(a.frame() == frame_)) throw Error(Errc::FrameMismatch, "plaintext is not on the model frame");
      if (a.is_empty()) throw Error(Errc::InvalidModel, "the empty set cannot be a plaintext");
      if (!seen_plaintexts.insert(a).second)
        throw Error(Errc::InvalidModel, "duplicate plaintext " + to_string(a));
    }
    if (codes_.empty()) throw Error(Errc::InvalidModel, "model has no codes");
    std::set<std::string> seen_codes;
    Rational total = 0;
    for (const auto& [code, p] : codes_) {
      if (code.name.empty()) throw Error(Errc::InvalidModel, "code names must be non-empty");
      if (!seen_codes.insert(code.name).second)
        throw Error(Errc::DuplicateCodeName, "duplicate code name '" + code.name + "'");
      if (p <= 0)
        throw Error(Errc::ProbabilitySumError,
                    "code '" + code.name + "' has non-positive probability " + to_string(p));
      total += p;
      for (const auto& [a, q] : code.codebook) {
        if (!seen_plaintexts.contains(a))
          throw Error(Errc::IncompleteCodebook,
                      "code '" + code.name + "' maps " + to_string(a) + ", which is outside the plaintext domain");
        if (!seen_messages.contains(q))
          throw Error(Errc::UnknownMessage,
                      "code '" + code.name + "' emits '" + q + "', which is not in the alphabet");
      }
      if (code.codebook.size() != plaintexts_.size())
        throw Error(Errc::IncompleteCodebook, "code '" + code.name + "' does not map every plaintext");
    }
    if (total != 1)
      throw Error(Errc::ProbabilitySumError, "code probabilities sum to " + to_string(total) + ", not 1");
    if (observed_ && !seen_messages.contains(*observed_))
      throw Error(Errc::UnknownMessage, "observed message '" + *observed_ + "' is not in the alphabet");
  }

  Frame frame_;
  std::vector<std::string> messages_;
  std::vector<SubsetMask> plaintexts_;
  std::vector<WeightedCode> codes_;
  std::optional<std::string> observed_;
};

/// E: the (code, plaintext) pairs consistent with an observed message.
struct ConstrainingRelation {
  std::set<std::pair<std::string, SubsetMask>> pairs;

  friend bool operator==(const ConstrainingRelation&, const ConstrainingRelation&) = default;
};

inline ConstrainingRelation constraining_relation(const EvidenceModel& model, const std::string& q) {
  model.require_message(q);
  ConstrainingRelation e;
  for (const auto& [code, p] : model.codes())
    for (const auto& [a, message] : code.codebook)
      if (message == q) e.pairs.emplace(code.name, a);
  return e;
}

/// S1: codes that could have produced the observed message.
inline std::set<std::string> possible_codes(const ConstrainingRelation& e) {
  std::set<std::string> out;
  for (const auto& [s, a] : e.pairs) out.insert(s);
  return out;
}

/// C(s): union of every plaintext the relation pairs with `s`.
inline SubsetMask compatibility_set(const ConstrainingRelation& e, const std::string& s) {
  std::optional<SubsetMask> acc;
  for (const auto& [name, a] : e.pairs) {
    if (name != s) continue;
    acc = acc ? union_of(*acc, a) : a;
  }
  if (!acc) throw Error(Errc::CodeNotPossible, "code '" + s + "' cannot produce the observed message");
  return *acc;
}

/// m(A) = sum over s in S1 with C(s) = A of P(s) / P(S1).
inline MassFunction derive_mass(const EvidenceModel& model, const std::string& q) {
  const ConstrainingRelation e = constraining_relation(model, q);
  const std::set<std::string> possible = possible_codes(e);
  Rational p_possible = 0;
  std::vector<std::pair<SubsetMask, Rational>> raw;
  for (const auto& [code, p] : model.codes()) {
    if (!possible.contains(code.name)) continue;
    p_possible += p;
    raw.emplace_back(compatibility_set(e, code.name), p);
  }
  if (p_possible == 0)
    throw Error(Errc::TotalConflict, "no code can produce message '" + q + "'");
  for (auto& entry : raw) entry.second /= p_possible;
  return make_mass(model.frame(), raw);
}

}  // namespace belief
