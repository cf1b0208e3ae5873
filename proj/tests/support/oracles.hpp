// Independent reference implementations used only by the tests. They are slow
// and simple on purpose and share no code with the library beyond Matrix.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "linkcanon/cyclotomic.hpp"
#include "linkcanon/matrix.hpp"

namespace oracle {

using linkcanon::IntMatrix;
using linkcanon::RatMatrix;

// Leibniz expansion; fine up to n = 7.
inline mpz_class leibniz_det(const IntMatrix& A) {
  const std::size_t n = A.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  mpz_class total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    mpz_class term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= A(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void combinations(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
                         std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    combinations(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Invariant factors s_1 | s_2 | ... as quotients of determinantal divisors
// (gcd of all k x k minors). Zero factors are included, matching rank deficit.
inline std::vector<mpz_class> invariant_factors_by_minors(const IntMatrix& A) {
  const std::size_t n = std::min(A.rows(), A.cols());
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    combinations(A.rows(), k, 0, cur, rows);
    combinations(A.cols(), k, 0, cur, cols);
    mpz_class g = 0;
    for (const auto& r : rows)
      for (const auto& c : cols) {
        IntMatrix M(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) M(i, j) = A(r[i], c[j]);
        const mpz_class d = leibniz_det(M);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) {
      for (; k <= n; ++k) out.push_back(0);
      break;
    }
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

// Characteristic polynomial coefficients c_0..c_n of det(tI - A), c_n = 1,
// by Faddeev-LeVerrier over Q.
inline std::vector<mpq_class> char_poly(const IntMatrix& A) {
  const std::size_t n = A.rows();
  RatMatrix Aq(n, n), M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) Aq(i, j) = A(i, j);
  std::vector<mpq_class> c(n + 1, 0);
  c[n] = 1;
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix AM = Aq * M;
    for (std::size_t i = 0; i < n; ++i) AM(i, i) += c[n - k + 1];
    M = AM;
    RatMatrix AMk = Aq * M;
    mpq_class tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AMk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

struct Sig {
  std::size_t plus = 0, minus = 0, zero = 0;
};

// Real-rooted polynomial: Descartes' count of sign changes is exact.
inline Sig signature_by_descartes(const IntMatrix& A) {
  const auto c = char_poly(A);
  Sig s;
  std::size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  s.zero = low;
  int last = 0;
  for (std::size_t i = low; i < c.size(); ++i) {
    const int sg = sgn(c[i]);
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++s.plus;
    last = sg;
  }
  s.minus = A.rows() - s.zero - s.plus;
  return s;
}

// Gauss-Jordan inverse over Q.
inline RatMatrix gauss_jordan_inverse(const IntMatrix& A) {
  const std::size_t n = A.rows();
  RatMatrix M(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n + i) = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && M(piv, c) == 0) ++piv;
    if (piv == n) throw std::runtime_error("oracle: singular");
    M.swap_rows(piv, c);
    const mpq_class inv = 1 / M(c, c);
    for (std::size_t j = 0; j < 2 * n; ++j) M(c, j) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M(r, c) == 0) continue;
      const mpq_class f = M(r, c);
      for (std::size_t j = 0; j < 2 * n; ++j) M(r, j) -= f * M(c, j);
    }
  }
  RatMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = M(i, n + j);
  return out;
}

inline mpq_class frac(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  mpq_class r = q - f;
  r.canonicalize();
  return r;
}

// x^T A^{-1} y mod 1.
inline mpq_class link(const IntMatrix& A, const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
  const RatMatrix inv = gauss_jordan_inverse(A);
  mpq_class s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * inv(i, j) * y[j];
  return frac(s);
}

// Tridiagonal elimination from the top: determinant as the product of pivots,
// and the (0,0) entry of the inverse from a solve against e_0.
struct TridiagonalCheck {
  mpq_class det;
  mpq_class inv00;
};

inline TridiagonalCheck tridiagonal(const IntMatrix& C) {
  const std::size_t r = C.rows();
  std::vector<mpq_class> diag(r), rhs(r, 0);
  rhs[0] = 1;
  for (std::size_t i = 0; i < r; ++i) diag[i] = C(i, i);
  mpq_class det = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (i > 0) {
      const mpq_class f = mpq_class(C(i, i - 1)) / diag[i - 1];
      diag[i] -= f * C(i - 1, i);
      rhs[i] -= f * rhs[i - 1];
    }
    det *= diag[i];
  }
  std::vector<mpq_class> x(r);
  for (std::size_t i = r; i-- > 0;) {
    x[i] = rhs[i];
    if (i + 1 < r) x[i] -= C(i, i + 1) * x[i + 1];
    x[i] /= diag[i];
  }
  return {det, x[0]};
}

// a_1 - 1/(a_2 - 1/(...)).
inline mpq_class continued_fraction(const std::vector<mpz_class>& a) {
  mpq_class v = a.back();
  for (std::size_t i = a.size() - 1; i-- > 0;) v = a[i] - 1 / v;
  return v;
}

inline std::complex<double> to_complex(const linkcanon::CycInt& z) {
  const double n = std::ldexp(1.0, static_cast<int>(z.conductor_exponent()));
  std::complex<double> s = 0;
  for (std::size_t j = 0; j < z.coeffs().size(); ++j)
    s += z.coeffs()[j].get_d() * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / n);
  return s;
}

inline std::complex<double> e(const mpq_class& q) { return std::polar(1.0, 2 * std::numbers::pi * frac(q).get_d()); }

inline IntMatrix random_symmetric(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) A(i, j) = A(j, i) = d(rng);
  return A;
}

}  // namespace oracle
