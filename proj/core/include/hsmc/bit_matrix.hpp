#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace hsmc {

/// Square boolean matrix used as a binary relation over automaton states.
/// Row q holds the set {q' | (q, q') in the relation}.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), stride_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  bool test(std::size_t from, std::size_t to) const noexcept {
    return ((bits_[from * stride_ + to / 64] >> (to % 64)) & 1u) != 0;
  }

  void set(std::size_t from, std::size_t to) noexcept {
    bits_[from * stride_ + to / 64] |= std::uint64_t{1} << (to % 64);
  }

  bool row_empty(std::size_t from) const noexcept {
    for (std::size_t w = 0; w < stride_; ++w)
      if (bits_[from * stride_ + w] != 0) return false;
    return true;
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (std::uint64_t w : bits_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  /// Relational composition: (q, q'') is in the result iff some q' has
  /// (q, q') in *this and (q', q'') in `rhs`.
  BitMatrix compose(const BitMatrix& rhs) const {
    BitMatrix out(n_);
    for (std::size_t q = 0; q < n_; ++q) {
      std::uint64_t* dst = &out.bits_[q * stride_];
      for (std::size_t w = 0; w < stride_; ++w) {
        std::uint64_t bits = bits_[q * stride_ + w];
        while (bits != 0) {
          const std::size_t mid = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
          bits &= bits - 1;
          const std::uint64_t* src = &rhs.bits_[mid * stride_];
          for (std::size_t k = 0; k < stride_; ++k) dst[k] |= src[k];
        }
      }
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t q = 0; q < n_; ++q)
      for (std::size_t r = 0; r < n_; ++r)
        if (test(q, r)) out.emplace_back(q, r);
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
    for (std::uint64_t w : bits_) h = (h ^ w) * 0x100000001b3ull;
    return h;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) noexcept {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace hsmc
