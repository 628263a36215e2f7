#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hsmc {

using PropId = std::uint32_t;

/// A subset of the proposition table of a structure, stored as a bitset.
/// Two sets compare equal iff they contain the same indices, regardless
/// of trailing zero words.
class PropSet {
 public:
  PropSet() = default;

  static PropSet of(std::initializer_list<PropId> ids) {
    PropSet s;
    for (PropId id : ids) s.insert(id);
    return s;
  }

  void insert(PropId id) {
    const std::size_t w = id / 64;
    if (words_.size() <= w) words_.resize(w + 1, 0);
    words_[w] |= std::uint64_t{1} << (id % 64);
  }

  void erase(PropId id) {
    const std::size_t w = id / 64;
    if (w < words_.size()) {
      words_[w] &= ~(std::uint64_t{1} << (id % 64));
      trim();
    }
  }

  bool contains(PropId id) const noexcept {
    const std::size_t w = id / 64;
    return w < words_.size() && ((words_[w] >> (id % 64)) & 1u) != 0;
  }

  bool empty() const noexcept { return words_.empty(); }

  std::size_t count() const noexcept {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }

  /// Members in increasing order.
  std::vector<PropId> members() const {
    std::vector<PropId> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        out.push_back(static_cast<PropId>(w * 64 + static_cast<std::size_t>(b)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (std::uint64_t w : words_) h = (h ^ std::hash<std::uint64_t>{}(w)) * 0x100000001b3ull;
    return h;
  }

  friend bool operator==(const PropSet& a, const PropSet& b) noexcept { return a.words_ == b.words_; }
  friend bool operator<(const PropSet& a, const PropSet& b) noexcept { return a.words_ < b.words_; }

 private:
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

}  // namespace hsmc

template <>
struct std::hash<hsmc::PropSet> {
  std::size_t operator()(const hsmc::PropSet& s) const noexcept { return s.hash(); }
};
