#include "linkcanon/cyclotomic.hpp"

#include <algorithm>

#include "linkcanon/errors.hpp"

namespace linkcanon {

CycInt::CycInt(unsigned m) : m_(m) {
  if (m == 0) throw Error("CycInt: conductor exponent must be at least 1");
  coeffs_.assign(std::size_t{1} << (m - 1), mpz_class(0));
}

CycInt::CycInt(unsigned m, const mpz_class& integer) : CycInt(m) { coeffs_[0] = integer; }

CycInt CycInt::root(unsigned m, long long j) {
  CycInt z(m);
  z.add_term(j, 1);
  return z;
}

bool CycInt::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c == 0; });
}

void CycInt::add_term(long long j, const mpz_class& c) {
  const long long order = 1LL << m_;
  const long long half = order / 2;
  long long r = j % order;
  if (r < 0) r += order;
  if (r < half)
    coeffs_[static_cast<std::size_t>(r)] += c;
  else
    coeffs_[static_cast<std::size_t>(r - half)] -= c;
}

CycInt CycInt::embed(unsigned target) const {
  if (target < m_) throw Error("CycInt::embed: target conductor is smaller");
  if (target == m_) return *this;
  CycInt out(target);
  const std::size_t stride = std::size_t{1} << (target - m_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i * stride] = coeffs_[i];
  return out;
}

CycInt CycInt::conj() const {
  CycInt out(m_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) out.add_term(-static_cast<long long>(i), coeffs_[i]);
  return out;
}

CycInt operator+(const CycInt& a, const CycInt& b) {
  const unsigned m = std::max(a.m_, b.m_);
  CycInt out = a.embed(m);
  const CycInt bb = b.embed(m);
  for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] += bb.coeffs_[i];
  return out;
}

CycInt operator-(const CycInt& a) {
  CycInt out = a;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycInt operator-(const CycInt& a, const CycInt& b) { return a + (-b); }

CycInt operator*(const CycInt& a, const CycInt& b) {
  const unsigned m = std::max(a.m_, b.m_);
  const CycInt aa = a.embed(m);
  const CycInt bb = b.embed(m);
  CycInt out(m);
  for (std::size_t i = 0; i < aa.coeffs_.size(); ++i) {
    if (aa.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < bb.coeffs_.size(); ++j) {
      if (bb.coeffs_[j] == 0) continue;
      out.add_term(static_cast<long long>(i + j), aa.coeffs_[i] * bb.coeffs_[j]);
    }
  }
  return out;
}

bool operator==(const CycInt& a, const CycInt& b) {
  const unsigned m = std::max(a.m_, b.m_);
  return a.embed(m).coeffs_ == b.embed(m).coeffs_;
}

std::ostream& operator<<(std::ostream& os, const CycInt& z) {
  bool first = true;
  for (std::size_t i = 0; i < z.coeffs_.size(); ++i) {
    if (z.coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    os << z.coeffs_[i];
    if (i) os << "*z" << (1u << z.m_) << "^" << i;
    first = false;
  }
  if (first) os << 0;
  return os;
}

CycInt sqrt_power_of_two(const mpz_class& N) {
  if (N <= 0 || mpz_popcount(N.get_mpz_t()) != 1) throw Error("sqrt_power_of_two: N is not a power of two");
  const std::size_t e = mpz_sizeinbase(N.get_mpz_t(), 2) - 1;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, e / 2);
  if (e % 2 == 0) return CycInt(3, scale);
  // sqrt(2) = zeta_8 + zeta_8^{-1}
  CycInt r(3);
  r.add_term(1, scale);
  r.add_term(-1, scale);
  return r;
}

int match_eighth_root(const CycInt& S, const mpz_class& N) {
  const CycInt base = sqrt_power_of_two(N);
  for (int u = 0; u < 8; ++u)
    if (S == base * CycInt::root(3, u)) return u;
  throw NoMatch("Gauss sum is not sqrt(" + N.get_str() + ") times an eighth root of unity");
}

}  // namespace linkcanon
