#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "linkcanon/matrix.hpp"

namespace linkcanon {

// Bit-size guard for elimination routines. Entries larger than max_bits raise
// EntryOverflow instead of letting a computation crawl.
struct ExactLimits {
  std::size_t max_bits = 1'000'000;
};

// U * A * V = D with U, V unimodular and D diagonal. Nonzero invariant factors
// come first, in divisibility order, followed by zeros. U_inv is carried along
// so callers never need to invert U.
struct SmithData {
  IntMatrix U;
  IntMatrix U_inv;
  IntMatrix V;
  IntMatrix D;

  std::size_t rank() const;
  std::vector<mpz_class> diagonal() const;
};

struct Signature {
  std::size_t b_plus = 0;
  std::size_t b_minus = 0;
  std::size_t b_zero = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
mpz_class det(const IntMatrix& A, const ExactLimits& limits = {});

SmithData smith_normal_form(const IntMatrix& A, const ExactLimits& limits = {});

/// Exact inverse over Q. Throws SingularMatrix when det(A) = 0.
RatMatrix rational_inverse(const IntMatrix& A);

/// Inertia of a symmetric matrix, by congruence diagonalization over Q.
/// Throws NotSymmetric.
Signature signature(const IntMatrix& A, const ExactLimits& limits = {});

/// Saturated Z-basis of ker(A), one basis vector per column (n x b1).
IntMatrix kernel_basis(const IntMatrix& A);

/// Unimodular P whose leading columns are the columns of K.
/// Throws NotSaturated when K does not extend to a basis of Z^n.
IntMatrix complete_to_unimodular(const IntMatrix& K);

/// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
int legendre(const mpz_class& a, const mpz_class& p);

bool is_unimodular(const IntMatrix& P);

/// Representative of q mod 1 in [0, 1).
mpq_class frac01(const mpq_class& q);

/// Floor-mod into [0, m).
mpz_class mod_floor(const mpz_class& a, const mpz_class& m);

std::size_t p_valuation(mpz_class n, const mpz_class& p);

/// Distinct prime divisors of |n| in ascending order (trial division).
std::vector<mpz_class> prime_divisors(mpz_class n);

void require_symmetric(const IntMatrix& A);

}  // namespace linkcanon
