#pragma once

#include <cstdint>
#include <vector>

namespace leff {

// Dense square boolean matrix packed into 64-bit row words. Rows double as
// bitsets over column indices, which keeps relation algebra (closure,
// upper-bound intersection) word-parallel.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n)
      : n_(n), words_(wordsFor(n)),
        bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>(wordsFor(n)), 0) {}

  int size() const { return n_; }
  int words_per_row() const { return words_; }

  bool get(int i, int j) const {
    return (row(i)[j >> 6] >> (j & 63)) & 1u;
  }
  void set(int i, int j, bool v = true) {
    std::uint64_t& w = rowMutable(i)[j >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (j & 63);
    if (v)
      w |= bit;
    else
      w &= ~bit;
  }

  const std::uint64_t* row(int i) const {
    return bits_.data() + static_cast<std::size_t>(i) * words_;
  }
  std::uint64_t* rowMutable(int i) {
    return bits_.data() + static_cast<std::size_t>(i) * words_;
  }

  void close_reflexive() {
    for (int i = 0; i < n_; ++i) set(i, i, true);
  }

  // Warshall with word-parallel row merges.
  void close_transitive() {
    for (int k = 0; k < n_; ++k) {
      const std::uint64_t* rk = row(k);
      for (int i = 0; i < n_; ++i) {
        if (!get(i, k)) continue;
        std::uint64_t* ri = rowMutable(i);
        for (int w = 0; w < words_; ++w) ri[w] |= rk[w];
      }
    }
  }

  BitMatrix transposed() const {
    BitMatrix t(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (get(i, j)) t.set(j, i);
    return t;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

 private:
  static int wordsFor(int n) { return (n + 63) / 64; }

  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace leff
