//
// fragtok - Copyright 2026 The fragtok Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef FRAGTOK_SRC_ATOM_SET_H_
#define FRAGTOK_SRC_ATOM_SET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace fragtok::internal {

// Fixed-capacity bitset over the atoms of one molecule.
class AtomSet {
public:
  AtomSet() = default;
  explicit AtomSet(int num_atoms): words_((num_atoms + 63) / 64, 0) { }

  static AtomSet of(int num_atoms, std::span<const int> atoms) {
    AtomSet s(num_atoms);
    for (int a: atoms)
      s.insert(a);
    return s;
  }

  void insert(int a) { words_[a / 64] |= std::uint64_t { 1 } << (a % 64); }
  bool contains(int a) const { return (words_[a / 64] >> (a % 64)) & 1U; }

  AtomSet operator|(const AtomSet &o) const {
    AtomSet r = *this;
    for (std::size_t w = 0; w < words_.size(); ++w)
      r.words_[w] |= o.words_[w];
    return r;
  }

  bool intersects(const AtomSet &o) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & o.words_[w])
        return true;
    }
    return false;
  }

  bool subset_of(const AtomSet &o) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w] & ~o.words_[w])
        return false;
    }
    return true;
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w: words_)
      c += __builtin_popcountll(w);
    return c;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        out.push_back(static_cast<int>(w * 64 + __builtin_ctzll(bits)));
        bits &= bits - 1;
      }
    }
    return out;
  }

  bool operator==(const AtomSet &o) const { return words_ == o.words_; }
  bool operator<(const AtomSet &o) const { return words_ < o.words_; }

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t w: words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

private:
  std::vector<std::uint64_t> words_;
};

struct AtomSetHash {
  std::size_t operator()(const AtomSet &s) const { return s.hash(); }
};

}  // namespace fragtok::internal

#endif  // FRAGTOK_SRC_ATOM_SET_H_
