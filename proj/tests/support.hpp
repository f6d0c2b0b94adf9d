#pragma once

// Test-side oracles. These deliberately use different algorithms from the
// library so agreement means something.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "polbeta/exactmath.hpp"

namespace testing_support {

using polbeta::Integer;
using polbeta::IntMatrix;

inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed'b37a'0000'0000ULL + salt); }

inline long uniform(std::mt19937_64& gen, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }

inline IntMatrix random_alternating(std::mt19937_64& gen, std::size_t n, long bound) {
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = uniform(gen, -bound, bound);
      a(j, i) = -a(i, j);
    }
  return a;
}

inline IntMatrix random_matrix(std::mt19937_64& gen, std::size_t r, std::size_t c, long bound) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = uniform(gen, -bound, bound);
  return m;
}

// Cofactor expansion along the first row.
inline Integer laplace_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Integer term = m(0, j) * laplace_det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

// Sum over perfect matchings, sign from the crossing count.
inline Integer matching_pfaffian(const IntMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> used(n, false);
  Integer total = 0;
  auto crossings = [&]() {
    int cnt = 0;
    for (std::size_t x = 0; x < pairs.size(); ++x)
      for (std::size_t y = 0; y < pairs.size(); ++y) {
        auto [i, j] = pairs[x];
        auto [k, l] = pairs[y];
        if (i < k && k < j && j < l) ++cnt;
      }
    return cnt;
  };
  auto rec = [&](auto&& self) -> void {
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      Integer prod = 1;
      for (auto [p, q] : pairs) prod *= a(p, q);
      total += (crossings() % 2 == 0) ? prod : Integer(-prod);
      return;
    }
    used[i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      pairs.emplace_back(i, j);
      self(self);
      pairs.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec(rec);
  return total;
}

// Invariant factors from determinantal divisors: d_k = gcd of all k x k minors.
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols(), n = std::min(r, c);
  std::vector<Integer> dk(n + 1);
  dk[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    Integer g = 0;
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + k, true);
      do {
        IntMatrix sub(k, k);
        std::size_t ri = 0;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rsel[i]) continue;
          std::size_t ci = 0;
          for (std::size_t j = 0; j < c; ++j)
            if (csel[j]) sub(ri, ci++) = m(i, j);
          ++ri;
        }
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Integer(abs(laplace_det(sub))).get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    dk[k] = g;
  }
  std::vector<Integer> s(n);
  for (std::size_t k = 1; k <= n; ++k) s[k - 1] = (dk[k - 1] == 0) ? Integer(0) : Integer(dk[k] / dk[k - 1]);
  return s;
}

// chi = prod a + c * sum_i k_i prod_{j != i} a_j with k_g = 1.
inline long closed_form_chi(const std::vector<long>& a, long c, const std::vector<long>& k) {
  long prod = 1;
  for (long x : a) prod *= x;
  long sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    long term = (i + 1 == a.size()) ? 1 : k[i];
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) term *= a[j];
    sum += term;
  }
  return prod + c * sum;
}

}  // namespace testing_support
