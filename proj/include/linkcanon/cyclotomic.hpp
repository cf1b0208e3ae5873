#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <ostream>
#include <vector>

namespace linkcanon {

/**
 * Element of Z[zeta] for zeta a primitive 2^m-th root of unity.
 *
 * Stored in the power basis 1, zeta, ..., zeta^(L-1) with L = 2^(m-1); the
 * minimal polynomial is x^L + 1, so zeta^L = -zeta^0 is the only rewrite and
 * the coefficient vector is unique. Operands of different conductor are
 * embedded into the larger ring before combining (zeta_{2^m} = zeta_{2^{m+1}}^2).
 */
class CycInt {
 public:
  /// Zero of Z[zeta_{2^m}]; m >= 1.
  explicit CycInt(unsigned m = 3);
  CycInt(unsigned m, const mpz_class& integer);

  /// zeta_{2^m}^j for any integer j.
  static CycInt root(unsigned m, long long j);

  unsigned conductor_exponent() const { return m_; }
  std::size_t degree() const { return coeffs_.size(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  /// Same element written in Z[zeta_{2^target}], target >= m.
  CycInt embed(unsigned target) const;

  /// Image under zeta -> zeta^{-1} (complex conjugation).
  CycInt conj() const;

  /// c * zeta^j added in place; j taken mod 2^m.
  void add_term(long long j, const mpz_class& c);

  friend CycInt operator+(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a, const CycInt& b);
  friend CycInt operator-(const CycInt& a);
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  friend bool operator==(const CycInt& a, const CycInt& b);

  friend std::ostream& operator<<(std::ostream& os, const CycInt& z);

 private:
  unsigned m_;
  std::vector<mpz_class> coeffs_;
};

/// sqrt(N) in Z[zeta_8] for N a power of two.
CycInt sqrt_power_of_two(const mpz_class& N);

/// The unique u in Z/8 with S = sqrt(N) * zeta_8^u. Throws NoMatch.
int match_eighth_root(const CycInt& S, const mpz_class& N);

}  // namespace linkcanon
