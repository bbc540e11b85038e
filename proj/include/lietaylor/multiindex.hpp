#pragma once

// Multi-indices (words in basis directions 1..d) and their lexicographic
// enumeration. Dense per-order coefficient blocks are addressed by the rank
// of the word in that enumeration.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lietaylor/linalg.hpp"

namespace lietaylor {

using MultiIndex = std::vector<int>;  // entries in 1..d

inline std::int64_t pow_i64(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// Rank of alpha among words of its length, lexicographic, zero-based.
inline std::int64_t multiindex_rank(const MultiIndex& alpha, int d) {
  std::int64_t r = 0;
  for (int a : alpha) {
    if (a < 1 || a > d) throw config_error("multi-index entry out of range 1..d");
    r = r * d + (a - 1);
  }
  return r;
}

inline MultiIndex multiindex_unrank(std::int64_t rank, int n, int d) {
  MultiIndex alpha(n);
  for (int i = n - 1; i >= 0; --i) {
    alpha[i] = int(rank % d) + 1;
    rank /= d;
  }
  return alpha;
}

// All length-n words over 1..d in lexicographic order (d^n of them).
inline std::vector<MultiIndex> enumerate_multiindices(int d, int n) {
  if (d < 0) throw config_error("enumerate_multiindices: d must be >= 0");
  if (n < 0) throw config_error("enumerate_multiindices: n must be >= 0");
  if (d == 0) return n == 0 ? std::vector<MultiIndex>{MultiIndex{}} : std::vector<MultiIndex>{};
  std::int64_t total = pow_i64(d, n);
  std::vector<MultiIndex> out;
  out.reserve(size_t(total));
  for (std::int64_t r = 0; r < total; ++r) out.push_back(multiindex_unrank(r, n, d));
  return out;
}

inline std::string multiindex_str(const MultiIndex& alpha) {
  std::string s = "(";
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(alpha[i]);
  }
  s += ")";
  return s;
}

inline double factorial(int n) {
  double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace lietaylor
