#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "belief/bayes.hpp"
#include "belief/error.hpp"
#include "belief/evidence.hpp"
#include "belief/frame.hpp"
#include "belief/rational.hpp"

namespace belief {

// Model document layout (JSON):
//
//   {
//     "frame": ["yes", "no"],
//     "messages": ["APPLE", "BANANA", "CHERRY"],
//     "plaintexts": [["yes"], ["no"], ["yes", "no"]],
//     "codes": [
//       {"name": "s1", "prob": "1/3", "map": {"{yes}": "APPLE", "{no}": "CHERRY", "{yes,no}": "BANANA"}},
//       ...
//     ],
//     "observed": "BANANA"
//   }
//
// Probabilities are exact rational strings. Codebook keys are canonical subset
// strings, members in frame order. "observed" is optional.

namespace detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] inline void fail_at(Errc code, std::string_view path, const std::string& what) {
  throw Error(code, std::string(path) + ": " + what);
}

inline std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

inline json parse_json_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending character.
    const std::size_t byte = e.byte == 0 ? 0 : e.byte - 1;
    std::string what = e.what();
    if (const auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw Error(Errc::SyntaxError, line_column(text, byte) + ": " + what);
  }
}

inline const json& require_field(const json& obj, const char* key, std::string_view path) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail_at(Errc::SyntaxError, path, std::string("missing field '") + key + "'");
  return *it;
}

inline void reject_unknown_fields(const json& obj, std::initializer_list<std::string_view> allowed,
                                  std::string_view path) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail_at(Errc::SyntaxError, path, "unexpected field '" + key + "'");
  }
}

inline std::string require_string(const json& value, std::string_view path) {
  if (!value.is_string()) fail_at(Errc::SyntaxError, path, "expected a string");
  return value.get<std::string>();
}

inline std::vector<std::string> require_string_list(const json& value, std::string_view path) {
  if (!value.is_array()) fail_at(Errc::SyntaxError, path, "expected a list of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < value.size(); ++i)
    out.push_back(require_string(value[i], std::string(path) + "[" + std::to_string(i) + "]"));
  return out;
}

inline Rational require_rational(const json& value, std::string_view path) {
  const std::string text = require_string(value, path);
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    fail_at(e.code(), path, e.what());
  }
}

inline Frame parse_frame_labels(const json& value, std::string_view path) {
  const auto labels = require_string_list(value, path);
  for (const auto& label : labels)
    if (label.find_first_of(",{}") != std::string::npos)
      fail_at(Errc::SyntaxError, path, "label '" + label + "' may not contain ',', '{' or '}'");
  try {
    return Frame(labels);
  } catch (const Error& e) {
    fail_at(Errc::SyntaxError, path, e.what());
  }
}

inline SubsetMask parse_subset_at(const Frame& frame, const std::string& text, std::string_view path) {
  try {
    return parse_subset(frame, text, true);
  } catch (const Error& e) {
    fail_at(e.code(), path, e.what());
  }
}

}  // namespace detail

/// Parses and validates a model document. Errors name the offending field
/// (or line and column for malformed JSON).
inline EvidenceModel parse_model(std::string_view document) {
  using detail::fail_at;
  const auto root = detail::parse_json_document(document);
  if (!root.is_object()) fail_at(Errc::SyntaxError, "$", "model document must be a JSON object");
  detail::reject_unknown_fields(root, {"frame", "messages", "plaintexts", "codes", "observed"}, "$");

  const Frame frame = detail::parse_frame_labels(detail::require_field(root, "frame", "$"), "frame");

  const auto messages = detail::require_string_list(detail::require_field(root, "messages", "$"), "messages");
  const std::set<std::string> message_set(messages.begin(), messages.end());
  if (message_set.size() != messages.size()) fail_at(Errc::SyntaxError, "messages", "duplicate message label");

  const auto& plaintext_list = detail::require_field(root, "plaintexts", "$");
  if (!plaintext_list.is_array() || plaintext_list.empty())
    fail_at(Errc::SyntaxError, "plaintexts", "expected a non-empty list of subsets");
  std::vector<SubsetMask> plaintexts;
  for (std::size_t i = 0; i < plaintext_list.size(); ++i) {
    const std::string path = "plaintexts[" + std::to_string(i) + "]";
    const auto names = detail::require_string_list(plaintext_list[i], path);
    SubsetMask a = SubsetMask::empty(frame);
    try {
      a = subset_from_labels(frame, names);
    } catch (const Error& e) {
      fail_at(e.code(), path, e.what());
    }
    if (a.is_empty()) fail_at(Errc::SyntaxError, path, "plaintext may not be the empty set");
    if (std::find(plaintexts.begin(), plaintexts.end(), a) != plaintexts.end())
      fail_at(Errc::SyntaxError, path, "duplicate plaintext " + to_string(a));
    plaintexts.push_back(a);
  }

  const auto& code_list = detail::require_field(root, "codes", "$");
  if (!code_list.is_array() || code_list.empty())
    fail_at(Errc::SyntaxError, "codes", "expected a non-empty list of codes");
  std::vector<WeightedCode> codes;
  std::set<std::string> code_names;
  Rational total = 0;
  for (std::size_t i = 0; i < code_list.size(); ++i) {
    const std::string path = "codes[" + std::to_string(i) + "]";
    const auto& entry = code_list[i];
    if (!entry.is_object()) fail_at(Errc::SyntaxError, path, "expected a code record");
    detail::reject_unknown_fields(entry, {"name", "prob", "map"}, path);
    WeightedCode wc;
    wc.code.name = detail::require_string(detail::require_field(entry, "name", path), path + ".name");
    if (wc.code.name.empty()) fail_at(Errc::SyntaxError, path + ".name", "code name may not be empty");
    if (!code_names.insert(wc.code.name).second)
      fail_at(Errc::DuplicateCodeName, path + ".name", "duplicate code name '" + wc.code.name + "'");
    wc.probability = detail::require_rational(detail::require_field(entry, "prob", path), path + ".prob");
    if (wc.probability <= 0)
      fail_at(Errc::ProbabilitySumError, path + ".prob", "probability must be positive, got " + to_string(wc.probability));
    total += wc.probability;

    const auto& map = detail::require_field(entry, "map", path);
    if (!map.is_object()) fail_at(Errc::SyntaxError, path + ".map", "expected an object");
    for (const auto& [key, value] : map.items()) {
      const std::string entry_path = path + ".map[\"" + key + "\"]";
      const SubsetMask a = detail::parse_subset_at(frame, key, entry_path);
      if (std::find(plaintexts.begin(), plaintexts.end(), a) == plaintexts.end())
        fail_at(Errc::IncompleteCodebook, entry_path, to_string(a) + " is not a declared plaintext");
      const std::string q = detail::require_string(value, entry_path);
      if (!message_set.contains(q)) fail_at(Errc::UnknownLabel, entry_path, "unknown message '" + q + "'");
      wc.code.codebook.emplace(a, q);
    }
    for (const auto& a : plaintexts)
      if (!wc.code.codebook.contains(a))
        fail_at(Errc::IncompleteCodebook, path + ".map", "no message for plaintext " + to_string(a));
    codes.push_back(std::move(wc));
  }
  if (total != 1)
    fail_at(Errc::ProbabilitySumError, "codes", "probabilities sum to " + to_string(total) + ", not 1");

  std::optional<std::string> observed;
  if (const auto it = root.find("observed"); it != root.end()) {
    observed = detail::require_string(*it, "observed");
    if (!message_set.contains(*observed)) fail_at(Errc::UnknownLabel, "observed", "unknown message '" + *observed + "'");
  }

  try {
    return EvidenceModel(frame, messages, std::move(plaintexts), std::move(codes), std::move(observed));
  } catch (const Error& e) {
    fail_at(e.code(), "$", e.what());
  }
}

/// Canonical serialization: fixed key order, two-space indentation, trailing
/// newline. Codebook entries follow plaintext-domain order.
inline std::string serialize_model(const EvidenceModel& model) {
  detail::ordered_json root;
  root["frame"] = std::vector<std::string>(model.frame().labels().begin(), model.frame().labels().end());
  root["messages"] = model.messages();
  auto plaintexts = detail::ordered_json::array();
  for (const auto& a : model.plaintext_domain()) plaintexts.push_back(a.member_labels());
  root["plaintexts"] = std::move(plaintexts);
  auto codes = detail::ordered_json::array();
  for (const auto& [code, p] : model.codes()) {
    detail::ordered_json entry;
    entry["name"] = code.name;
    entry["prob"] = to_string(p);
    detail::ordered_json map = detail::ordered_json::object();
    for (const auto& a : model.plaintext_domain()) map[to_string(a)] = code.codebook.at(a);
    entry["map"] = std::move(map);
    codes.push_back(std::move(entry));
  }
  root["codes"] = std::move(codes);
  if (model.observed()) root["observed"] = *model.observed();
  return root.dump(2) + "\n";
}

struct Finding {
  std::string kind;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Advisory findings on a structurally valid model. An empty list means the
/// model is clean.
inline std::vector<Finding> validate_model(const EvidenceModel& model) {
  std::vector<Finding> findings;
  for (const auto& [code, p] : model.codes()) {
    for (const auto& q : model.messages()) {
      std::vector<std::string> sources;
      for (const auto& a : model.plaintext_domain())
        if (code.codebook.at(a) == q) sources.push_back(to_string(a));
      if (sources.size() < 2) continue;
      std::string joined;
      for (const auto& s : sources) joined += (joined.empty() ? "" : ", ") + s;
      findings.push_back({"non-injective", "code " + code.name + " non-injective on " + q + " (" + joined + ")"});
    }
  }
  for (const auto& q : model.messages()) {
    bool emitted = false;
    for (const auto& [code, p] : model.codes())
      for (const auto& [a, m] : code.codebook) emitted = emitted || m == q;
    if (!emitted) findings.push_back({"unused-message", "message " + q + " is emitted by no code"});
  }
  return findings;
}

/// Dense belief table document: {"frame": [...], "belief": {"{}": "0", ...}}.
struct BeliefTable {
  Frame frame;
  std::map<SubsetMask, Rational> belief;
};

inline BeliefTable parse_belief_table(std::string_view document) {
  using detail::fail_at;
  const auto root = detail::parse_json_document(document);
  if (!root.is_object()) fail_at(Errc::SyntaxError, "$", "belief document must be a JSON object");
  detail::reject_unknown_fields(root, {"frame", "belief"}, "$");
  BeliefTable table{detail::parse_frame_labels(detail::require_field(root, "frame", "$"), "frame"), {}};
  const auto& values = detail::require_field(root, "belief", "$");
  if (!values.is_object()) fail_at(Errc::SyntaxError, "belief", "expected an object");
  for (const auto& [key, value] : values.items()) {
    const std::string path = "belief[\"" + key + "\"]";
    const SubsetMask a = detail::parse_subset_at(table.frame, key, path);
    if (!table.belief.emplace(a, detail::require_rational(value, path)).second)
      fail_at(Errc::SyntaxError, path, "duplicate entry");
  }
  return table;
}

/// Prior weight document: {"weights": {"{no}": "1/2", ...}}.
inline PriorSpec parse_prior(const EvidenceModel& model, std::string_view document) {
  using detail::fail_at;
  const auto root = detail::parse_json_document(document);
  if (!root.is_object()) fail_at(Errc::SyntaxError, "$", "prior document must be a JSON object");
  detail::reject_unknown_fields(root, {"weights"}, "$");
  const auto& values = detail::require_field(root, "weights", "$");
  if (!values.is_object()) fail_at(Errc::SyntaxError, "weights", "expected an object");
  std::map<SubsetMask, Rational> weights;
  for (const auto& [key, value] : values.items()) {
    const std::string path = "weights[\"" + key + "\"]";
    const SubsetMask a = detail::parse_subset_at(model.frame(), key, path);
    if (!weights.emplace(a, detail::require_rational(value, path)).second)
      fail_at(Errc::SyntaxError, path, "duplicate entry");
  }
  try {
    return PriorSpec::from_weights(model, std::move(weights));
  } catch (const Error& e) {
    fail_at(e.code(), "weights", e.what());
  }
}

}  // namespace belief
