#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "belief/error.hpp"

namespace belief {

/// A finite frame of discernment: an ordered list of distinct labels.
///
/// Frames compare by content, so two independently parsed frames with the
/// same label sequence are interchangeable. Copies share the label storage.
class Frame {
 public:
  static constexpr std::size_t kMaxSize = 24;

  explicit Frame(std::vector<std::string> labels) {
    if (labels.empty() || labels.size() > kMaxSize)
      throw Error(Errc::InvalidFrame, "frame must hold between 1 and " +
                                          std::to_string(kMaxSize) + " labels, got " +
                                          std::to_string(labels.size()));
    std::unordered_set<std::string_view> seen;
    for (const auto& label : labels) {
      if (label.empty()) throw Error(Errc::InvalidFrame, "frame labels must be non-empty");
      if (!seen.insert(label).second)
        throw Error(Errc::InvalidFrame, "duplicate frame label '" + label + "'");
    }
    labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_->size(); }
  std::span<const std::string> labels() const noexcept { return *labels_; }
  const std::string& label(std::size_t i) const { return labels_->at(i); }

  /// Position of `name`, or -1 when absent.
  int index_of(std::string_view name) const noexcept {
    const auto it = std::find(labels_->begin(), labels_->end(), name);
    return it == labels_->end() ? -1 : static_cast<int>(it - labels_->begin());
  }

  std::uint32_t full_bits() const noexcept { return (1u << size()) - 1u; }

  friend bool operator==(const Frame& a, const Frame& b) noexcept {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

  friend std::strong_ordering operator<=>(const Frame& a, const Frame& b) noexcept {
    if (a.labels_ == b.labels_) return std::strong_ordering::equal;
    return *a.labels_ <=> *b.labels_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// A subset of a frame. Bit i is set iff label i of the frame is a member.
class SubsetMask {
 public:
  SubsetMask(Frame frame, std::uint32_t bits) : frame_(std::move(frame)), bits_(bits) {
    if ((bits_ & ~frame_.full_bits()) != 0)
      throw Error(Errc::InvalidFrame, "subset bits exceed frame size");
  }

  static SubsetMask empty(const Frame& frame) { return SubsetMask(frame, 0); }
  static SubsetMask full(const Frame& frame) { return SubsetMask(frame, frame.full_bits()); }

  const Frame& frame() const noexcept { return frame_; }
  std::uint32_t bits() const noexcept { return bits_; }
  bool is_empty() const noexcept { return bits_ == 0; }
  bool is_full() const noexcept { return bits_ == frame_.full_bits(); }
  int count() const noexcept { return std::popcount(bits_); }
  bool contains(std::size_t i) const noexcept { return i < 32 && ((bits_ >> i) & 1u) != 0; }

  std::vector<std::string> member_labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < frame_.size(); ++i)
      if (contains(i)) out.push_back(frame_.label(i));
    return out;
  }

  friend bool operator==(const SubsetMask& a, const SubsetMask& b) noexcept {
    return a.bits_ == b.bits_ && a.frame_ == b.frame_;
  }

  // Ascending mask-as-integer; the frame only breaks ties across frames.
  friend std::strong_ordering operator<=>(const SubsetMask& a, const SubsetMask& b) noexcept {
    if (auto c = a.bits_ <=> b.bits_; c != 0) return c;
    return a.frame_ <=> b.frame_;
  }

 private:
  Frame frame_;
  std::uint32_t bits_;
};

namespace detail {

inline void require_same_frame(const SubsetMask& a, const SubsetMask& b) {
  if (!(a.frame() == b.frame()))
    throw Error(Errc::FrameMismatch, "subsets belong to different frames");
}

}  // namespace detail

inline SubsetMask subset_from_labels(const Frame& frame, std::span<const std::string> names) {
  std::uint32_t bits = 0;
  for (const auto& name : names) {
    const int i = frame.index_of(name);
    if (i < 0) throw Error(Errc::UnknownLabel, "label '" + name + "' is not in the frame");
    bits |= 1u << i;
  }
  return SubsetMask(frame, bits);
}

inline SubsetMask subset_from_labels(const Frame& frame, std::initializer_list<std::string> names) {
  return subset_from_labels(frame, std::span<const std::string>(names.begin(), names.size()));
}

inline SubsetMask intersect(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_frame(a, b);
  return SubsetMask(a.frame(), a.bits() & b.bits());
}

inline SubsetMask union_of(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_frame(a, b);
  return SubsetMask(a.frame(), a.bits() | b.bits());
}

inline SubsetMask complement(const SubsetMask& a) {
  return SubsetMask(a.frame(), ~a.bits() & a.frame().full_bits());
}

inline bool is_subset(const SubsetMask& a, const SubsetMask& b) {
  detail::require_same_frame(a, b);
  return (a.bits() & ~b.bits()) == 0;
}

/// All subsets of `bound`, in ascending mask-as-integer order.
inline std::vector<SubsetMask> enumerate_subsets(const SubsetMask& bound) {
  std::vector<SubsetMask> out;
  out.reserve(std::size_t{1} << bound.count());
  const std::uint32_t b = bound.bits();
  // (sub - b) & b steps to the next larger submask and wraps to 0 after b.
  std::uint32_t sub = 0;
  do {
    out.emplace_back(bound.frame(), sub);
    sub = (sub - b) & b;
  } while (sub != 0);
  return out;
}

/// Canonical text form: members in frame order inside braces, e.g. "{yes,no}".
inline std::string to_string(const SubsetMask& s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < s.frame().size(); ++i) {
    if (!s.contains(i)) continue;
    if (!first) out += ',';
    out += s.frame().label(i);
    first = false;
  }
  out += '}';
  return out;
}

/// Parses the brace form. With `canonical` set, members must appear in frame
/// order without repetition; otherwise any order is accepted and repeats
/// collapse.
inline SubsetMask parse_subset(const Frame& frame, std::string_view text, bool canonical = true) {
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw Error(Errc::SyntaxError, "subset '" + std::string(text) + "' must be written as {a,b,...}");
  const std::string_view body = text.substr(1, text.size() - 2);
  std::uint32_t bits = 0;
  int last = -1;
  if (!body.empty()) {
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      const auto name = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
      const int i = frame.index_of(name);
      if (i < 0)
        throw Error(Errc::UnknownLabel,
                    "label '" + std::string(name) + "' in subset '" + std::string(text) + "' is not in the frame");
      if (canonical && i <= last)
        throw Error(Errc::SyntaxError,
                    "subset '" + std::string(text) + "' is not in canonical frame order");
      last = i;
      bits |= 1u << i;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return SubsetMask(frame, bits);
}

}  // namespace belief
