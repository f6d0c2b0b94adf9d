#include "polbeta/exactmath.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>

namespace polbeta {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  const std::size_t n = std::min(S.rows(), S.cols());
  for (std::size_t i = 0; i < n; ++i) d.push_back(S(i, i));
  return d;
}

namespace {

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void sub_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

// col[dst] -= q * col[src]
void sub_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

// Truncated quotient; the remainder is strictly smaller than |b|.
Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  if (m.empty()) throw std::invalid_argument("smith_normal_form: empty matrix");
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix S = m;
  IntMatrix U = IntMatrix::identity(rows);
  IntMatrix V = IntMatrix::identity(cols);

  const std::size_t n = std::min(rows, cols);
  bool exhausted = false;
  for (std::size_t t = 0; t < n && !exhausted; ++t) {
    for (;;) {
      // Pivot: smallest nonzero |entry| in the active block.
      bool found = false;
      std::size_t pr = t, pc = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (S(i, j) == 0) continue;
          Integer v = abs(S(i, j));
          if (!found || v < best) {
            found = true;
            best = v;
            pr = i;
            pc = j;
          }
        }
      if (!found) {
        exhausted = true;
        break;
      }

      swap_rows(S, t, pr);
      swap_rows(U, t, pr);
      swap_cols(S, t, pc);
      swap_cols(V, t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = tdiv(S(i, t), S(t, t));
        sub_row(S, i, t, q);
        sub_row(U, i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = tdiv(S(t, j), S(t, t));
        sub_col(S, j, t, q);
        sub_col(V, j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold a row carrying a non-multiple into row t and retry.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (S(i, j) % S(t, t) != 0) {
            sub_row(S, t, i, Integer(-1));
            sub_row(U, t, i, Integer(-1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (!exhausted && S(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) {
        S(t, j) = -S(t, j);
      }
      for (std::size_t j = 0; j < rows; ++j) U(t, j) = -U(t, j);
    }
  }
  return SmithForm{std::move(U), std::move(S), std::move(V)};
}

Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(a, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_alternating(const IntMatrix& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (a(i, i) != 0) return false;
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != -a(j, i)) return false;
  }
  return true;
}

namespace {

class PfaffianExpander {
 public:
  explicit PfaffianExpander(const IntMatrix& a) : a_(a) {}

  Integer eval(std::uint32_t mask) {
    if (mask == 0) return 1;
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    const int first = __builtin_ctz(mask);
    const std::uint32_t rest = mask & ~(1u << first);
    Integer total = 0;
    int position = 0;  // position of j among the remaining indices, 0-based
    for (std::uint32_t bits = rest; bits != 0; bits &= bits - 1) {
      const int j = __builtin_ctz(bits);
      const Integer& entry = a_(first, j);
      if (entry != 0) {
        Integer minor = eval(rest & ~(1u << j));
        if (position % 2 == 0)
          total += entry * minor;
        else
          total -= entry * minor;
      }
      ++position;
    }
    memo_.emplace(mask, total);
    return total;
  }

 private:
  const IntMatrix& a_;
  std::unordered_map<std::uint32_t, Integer> memo_;
};

}  // namespace

Integer pfaffian(const IntMatrix& a) {
  if (!a.square() || a.rows() % 2 != 0) throw std::invalid_argument("pfaffian: matrix must be square of even dimension");
  if (a.rows() > 16) throw std::invalid_argument("pfaffian: dimension above 16 not supported");
  if (!is_alternating(a)) throw std::invalid_argument("pfaffian: matrix is not alternating");
  if (a.rows() == 0) return 1;
  PfaffianExpander expander(a);
  return expander.eval((1u << a.rows()) - 1);
}

bool is_symmetric(const RatMatrix& s) {
  if (!s.square()) return false;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = i + 1; j < s.cols(); ++j)
      if (s(i, j) != s(j, i)) return false;
  return true;
}

namespace {

Rational rational_determinant(RatMatrix a) {
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

}  // namespace

std::vector<Rational> leading_principal_minors(const RatMatrix& s) {
  if (!s.square()) throw std::invalid_argument("leading_principal_minors: matrix not square");
  std::vector<Rational> minors;
  for (std::size_t k = 1; k <= s.rows(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    minors.push_back(rational_determinant(s.principal(idx)));
  }
  return minors;
}

bool is_positive_definite(const RatMatrix& s) {
  if (!is_symmetric(s)) throw std::invalid_argument("is_positive_definite: matrix is not symmetric");
  const std::size_t n = s.rows();
  RatMatrix a = s;
  for (std::size_t k = 0; k < n; ++k) {
    // Pivot k equals D_k / D_{k-1}; all minors positive iff all pivots positive.
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return true;
}

Integer ipow(const Integer& base, unsigned exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Integer integer_root(const Integer& n, unsigned g) {
  if (n < 1) throw std::invalid_argument("integer_root: n must be positive");
  if (g < 1) throw std::invalid_argument("integer_root: degree must be positive");
  // Invariant: lo^g <= n < hi^g.
  Integer lo = 1;
  Integer hi = 2;
  while (ipow(hi, g) <= n) hi *= 2;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (ipow(mid, g) <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

}  // namespace polbeta
