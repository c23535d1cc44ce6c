#pragma once
// Small independent reference computations used as test oracles.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <vector>

#include "reglab/exactla/int_matrix.hpp"

namespace oracle {

using reglab::Int;
using reglab::IntMatrix;

// Cofactor expansion; only for tiny matrices.
inline Int cofactor_det(const IntMatrix& A) {
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  if (n == 1) return A(0, 0);
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (A(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    Int m = cofactor_det(A.select_rows(rows).select_cols(cols));
    d += (j % 2 ? -1 : 1) * A(0, j) * m;
  }
  return d;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Elementary divisors as ratios of determinantal divisors (gcd of k×k minors).
inline std::vector<Int> determinantal_divisors(const IntMatrix& A) {
  std::vector<Int> out;
  Int prev = 1;
  for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(A.rows(), k, 0, cur, rs);
    subsets(A.cols(), k, 0, cur, cs);
    Int g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Int m = cofactor_det(A.select_rows(r).select_cols(c));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
      }
    if (g == 0) break;
    Int d = g / prev;
    out.push_back(d);
    prev = g;
  }
  return out;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace oracle
