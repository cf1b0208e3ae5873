#include "linkcanon/exact.hpp"

#include <utility>

namespace linkcanon {

namespace {

void guard(const mpz_class& x, const ExactLimits& limits) {
  if (x != 0 && mpz_sizeinbase(x.get_mpz_t(), 2) > limits.max_bits) throw EntryOverflow(limits.max_bits);
}

void guard(const mpq_class& x, const ExactLimits& limits) {
  guard(x.get_num(), limits);
  guard(x.get_den(), limits);
}

// Position of the nonzero entry of smallest absolute value in D[t.., t..].
bool find_min_pivot(const IntMatrix& D, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  mpz_class best;
  for (std::size_t i = t; i < D.rows(); ++i)
    for (std::size_t j = t; j < D.cols(); ++j) {
      if (D(i, j) == 0) continue;
      mpz_class a = abs(D(i, j));
      if (!found || a < best) {
        best = a;
        pi = i;
        pj = j;
        found = true;
      }
    }
  return found;
}

// Row and column operations on the working matrix with U, U_inv and V kept in step.
struct SmithWork {
  IntMatrix D, U, U_inv, V;

  void swap_rows(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    U_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
  }
  // row_i += q * row_t
  void add_row(std::size_t i, std::size_t t, const mpz_class& q) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(i, j) += q * D(t, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) += q * U(t, j);
    for (std::size_t r = 0; r < U_inv.rows(); ++r) U_inv(r, t) -= q * U_inv(r, i);
  }
  // col_j += q * col_t
  void add_col(std::size_t j, std::size_t t, const mpz_class& q) {
    for (std::size_t i = 0; i < D.rows(); ++i) D(i, j) += q * D(i, t);
    for (std::size_t i = 0; i < V.rows(); ++i) V(i, j) += q * V(i, t);
  }
  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(t, j) = -D(t, j);
    for (std::size_t j = 0; j < U.cols(); ++j) U(t, j) = -U(t, j);
    for (std::size_t r = 0; r < U_inv.rows(); ++r) U_inv(r, t) = -U_inv(r, t);
  }
};

}  // namespace

std::size_t SmithData::rank() const {
  std::size_t r = 0;
  const std::size_t m = std::min(D.rows(), D.cols());
  while (r < m && D(r, r) != 0) ++r;
  return r;
}

std::vector<mpz_class> SmithData::diagonal() const {
  std::vector<mpz_class> d;
  const std::size_t m = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < m; ++i) d.push_back(D(i, i));
  return d;
}

mpz_class det(const IntMatrix& A, const ExactLimits& limits) {
  if (!A.is_square()) throw NotSquare();
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  IntMatrix M = A;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && M(r, k) == 0) ++r;
      if (r == n) return 0;
      M.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = M(k, k) * M(i, j) - M(i, k) * M(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        guard(v, limits);
        M(i, j) = std::move(v);
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

SmithData smith_normal_form(const IntMatrix& A, const ExactLimits& limits) {
  const std::size_t m = A.rows();
  const std::size_t n = A.cols();
  SmithWork w{A, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};
  IntMatrix& D = w.D;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = 0, pj = 0;
    if (!find_min_pivot(D, t, pi, pj)) break;
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        w.add_col(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      for (std::size_t i = t; i < m; ++i) guard(D(i, t), limits);
      for (std::size_t j = t; j < n; ++j) guard(D(t, j), limits);

      if (!clean) {
        // A remainder smaller than the pivot survived; promote it and repeat.
        std::size_t bi = t, bj = t;
        mpz_class best = abs(D(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < best) best = abs(D(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < best) best = abs(D(t, j)), bi = t, bj = j;
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        continue;
      }

      // Pivot must divide the whole trailing block.
      std::size_t bad_row = m;
      for (std::size_t i = t + 1; i < m && bad_row == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == m) break;
      w.add_row(t, bad_row, 1);
    }
    if (D(t, t) < 0) w.negate_row(t);
  }
  return SmithData{std::move(w.U), std::move(w.U_inv), std::move(w.V), std::move(w.D)};
}

RatMatrix rational_inverse(const IntMatrix& A) {
  if (!A.is_square()) throw NotSquare();
  const std::size_t n = A.rows();
  RatMatrix M = to_rational(A);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M(p, c) == 0) ++p;
    if (p == n) throw SingularMatrix();
    M.swap_rows(c, p);
    inv.swap_rows(c, p);
    const mpq_class piv = M(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      M(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M(r, c) == 0) continue;
      const mpq_class f = M(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        M(r, j) -= f * M(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  if (to_rational(A) * inv != RatMatrix::identity(n))
    throw InvariantViolation("rational_inverse: A * A^-1 != I");
  return inv;
}

void require_symmetric(const IntMatrix& A) {
  if (!A.is_square()) throw NotSquare();
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = i + 1; j < A.cols(); ++j)
      if (A(i, j) != A(j, i)) throw NotSymmetric(i, j);
}

Signature signature(const IntMatrix& A, const ExactLimits& limits) {
  require_symmetric(A);
  RatMatrix M = to_rational(A);
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < A.rows(); ++i) live.push_back(i);
  Signature sig;

  auto drop = [&live](std::size_t idx) { live.erase(std::find(live.begin(), live.end(), idx)); };

  while (!live.empty()) {
    std::size_t piv = A.rows();
    for (std::size_t i : live)
      if (M(i, i) != 0) {
        piv = i;
        break;
      }
    if (piv != A.rows()) {
      const mpq_class a = M(piv, piv);
      (a > 0 ? sig.b_plus : sig.b_minus) += 1;
      drop(piv);
      for (std::size_t r : live)
        for (std::size_t s : live) {
          M(r, s) -= M(r, piv) * M(piv, s) / a;
          guard(M(r, s), limits);
        }
      continue;
    }
    // Zero diagonal: look for a hyperbolic 2x2 pivot.
    std::size_t hi = A.rows(), hj = A.rows();
    for (std::size_t a = 0; a < live.size() && hi == A.rows(); ++a)
      for (std::size_t b = a + 1; b < live.size(); ++b)
        if (M(live[a], live[b]) != 0) {
          hi = live[a];
          hj = live[b];
          break;
        }
    if (hi == A.rows()) break;  // remaining block is zero
    sig.b_plus += 1;
    sig.b_minus += 1;
    const mpq_class b = M(hi, hj);
    drop(hi);
    drop(hj);
    for (std::size_t r : live)
      for (std::size_t s : live) {
        M(r, s) -= (M(r, hi) * M(hj, s) + M(r, hj) * M(hi, s)) / b;
        guard(M(r, s), limits);
      }
  }
  sig.b_zero = live.size();
  return sig;
}

IntMatrix kernel_basis(const IntMatrix& A) {
  const SmithData s = smith_normal_form(A);
  const std::size_t r = s.rank();
  const std::size_t n = A.cols();
  return s.V.submatrix(0, r, n, n - r);
}

IntMatrix complete_to_unimodular(const IntMatrix& K) {
  const std::size_t n = K.rows();
  const std::size_t b = K.cols();
  if (b > n) throw NotSaturated();
  const SmithData s = smith_normal_form(K);
  for (std::size_t i = 0; i < b; ++i)
    if (s.D(i, i) != 1) throw NotSaturated();
  IntMatrix P = s.U_inv;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b; ++j) P(i, j) = K(i, j);
  if (!is_unimodular(P)) throw InvariantViolation("complete_to_unimodular: |det P| != 1");
  return P;
}

bool is_unimodular(const IntMatrix& P) {
  if (!P.is_square()) return false;
  const mpz_class d = det(P);
  return d == 1 || d == -1;
}

int legendre(const mpz_class& a, const mpz_class& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()) || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    throw NotOddPrime(p.get_str());
  const mpz_class r = mod_floor(a, p);
  if (r == 0) return 0;
  mpz_class e = (p - 1) / 2;
  mpz_class out;
  mpz_powm(out.get_mpz_t(), r.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  return out == 1 ? 1 : -1;
}

mpq_class frac01(const mpq_class& q) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  mpq_class r = q - mpq_class(fl);
  r.canonicalize();
  return r;
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::size_t p_valuation(mpz_class n, const mpz_class& p) {
  if (n == 0) throw Error("p_valuation of zero");
  std::size_t v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

std::vector<mpz_class> prime_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> primes;
  for (mpz_class f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) break;
    if (mpz_divisible_p(n.get_mpz_t(), f.get_mpz_t())) {
      primes.push_back(f);
      while (mpz_divisible_p(n.get_mpz_t(), f.get_mpz_t())) n /= f;
    }
  }
  if (n > 1) primes.push_back(n);
  return primes;
}

}  // namespace linkcanon
