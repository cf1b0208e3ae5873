#include "linkcanon/dictionary.hpp"

#include <sstream>

namespace linkcanon {

HJExpansion hj_expansion(const mpz_class& m, const mpz_class& q) {
  if (!(m > q && q > 0)) throw BadFraction("hj_expansion: need m > q > 0, got " + m.get_str() + "/" + q.get_str());
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), q.get_mpz_t());
  if (g != 1) throw BadFraction("hj_expansion: " + m.get_str() + "/" + q.get_str() + " is not in lowest terms");

  HJExpansion e{m, q, {}};
  mpz_class a = m, b = q;
  while (b != 0) {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    e.coeffs.push_back(c);
    const mpz_class r = c * b - a;  // a/b = c - r/b
    a = b;
    b = r;
  }
  return e;
}

IntMatrix plumbing_matrix(const HJExpansion& e) {
  const std::size_t r = e.coeffs.size();
  IntMatrix C(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    C(i, i) = e.coeffs[i];
    if (i + 1 < r) C(i, i + 1) = C(i + 1, i) = 1;
  }
  // Continuants from the bottom: K_i = det of the trailing block starting at i.
  // det C = K_0 and (C^{-1})_{11} = K_1 / K_0 by Cramer's rule.
  mpz_class next = 0, cur = 1;
  mpz_class k1 = 1;
  for (std::size_t i = r; i-- > 0;) {
    const mpz_class k = e.coeffs[i] * cur - next;
    next = cur;
    cur = k;
    if (i == 1) k1 = cur;
  }
  if (r == 1) k1 = 1;
  if (cur != e.m) throw InvariantViolation("plumbing_matrix: determinant is not m");
  if (k1 * e.m != e.q * cur)
    throw InvariantViolation("plumbing_matrix: top-left inverse entry is not q/m");
  return C;
}

mpz_class least_nonresidue(const mpz_class& p) {
  for (mpz_class a = 2; a < p; ++a)
    if (legendre(a, p) == -1) return a;
  throw NotOddPrime(p.get_str());
}

std::string GeneratorLabel::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::APlus: os << "A(" << p << '^' << k << ",+)"; break;
    case Kind::AMinus: os << "A(" << p << '^' << k << ",-)"; break;
    case Kind::ATwo: os << "A(2^" << k << ',' << q << ')'; break;
    case Kind::E: os << "E(2^" << k << ')'; break;
    case Kind::F: os << "F(2^" << k << ')'; break;
    case Kind::Zero: os << "ZERO"; break;
  }
  return os.str();
}

GeneratorBlock block_for(const GeneratorLabel& label) {
  using K = GeneratorLabel::Kind;
  mpz_class pk;
  mpz_pow_ui(pk.get_mpz_t(), (label.kind == K::APlus || label.kind == K::AMinus ? label.p : mpz_class(2)).get_mpz_t(),
             label.k);
  switch (label.kind) {
    case K::APlus: return {label, IntMatrix{{pk}}};
    case K::AMinus: return {label, plumbing_matrix(hj_expansion(pk, least_nonresidue(label.p)))};
    case K::ATwo: return {label, plumbing_matrix(hj_expansion(pk, label.q))};
    case K::E: return {label, IntMatrix{{0, pk}, {pk, 0}}};
    case K::F: return {label, IntMatrix{{0, pk}, {pk, 2 * pk}}};
    case K::Zero: return {label, IntMatrix(1, 1)};
  }
  throw Error("block_for: unknown label");
}

std::vector<GeneratorBlock> assembly_blocks(const TokenPackage& T) {
  using K = GeneratorLabel::Kind;
  std::vector<GeneratorBlock> blocks;
  for (std::size_t i = 0; i < T.b1; ++i) blocks.push_back(block_for({K::Zero, 0, 0, 1}));
  for (const LayerRecord& L : T.layers) {
    if (const auto* o = std::get_if<OddPayload>(&L.payload)) {
      const std::size_t plus = o->x == 1 ? L.n : L.n - 1;
      for (std::size_t c = 0; c < plus; ++c) blocks.push_back(block_for({K::APlus, L.p, L.k, 1}));
      if (o->x == -1) blocks.push_back(block_for({K::AMinus, L.p, L.k, 1}));
    } else if (const auto* a = std::get_if<TwoAPayload>(&L.payload)) {
      for (std::size_t c = 0; c + 1 < L.n; ++c) blocks.push_back(block_for({K::ATwo, 2, L.k, 1}));
      blocks.push_back(block_for({K::ATwo, 2, L.k, a->delta.value_or(1)}));
    } else {
      const int u = std::get<TwoEPayload>(L.payload).u;
      if (u != 0 && u != 4) throw UnrealizableU(L.k, u);
      const std::size_t t = u == 4 ? 1 : 0;
      for (std::size_t c = 0; c < L.n / 2 - t; ++c) blocks.push_back(block_for({K::E, 2, L.k, 1}));
      for (std::size_t c = 0; c < t; ++c) blocks.push_back(block_for({K::F, 2, L.k, 1}));
    }
  }
  return blocks;
}

namespace {

IntMatrix block_sum(const std::vector<GeneratorBlock>& blocks) {
  IntMatrix B(0, 0);
  for (const auto& b : blocks) B = direct_sum(B, b.matrix);
  return B;
}

}  // namespace

IntMatrix assemble(const TokenPackage& T, const CanonOptions& options) {
  IntMatrix B = block_sum(assembly_blocks(T));
  TokenPackage back = canon(B, options);
  if (!strict_equal(back, T)) throw RealizationMismatch(T, std::move(back));
  return B;
}

long shift(const IntMatrix& B) {
  const Signature s = signature(B);
  return 3 * static_cast<long>(s.b_plus) - 2 * static_cast<long>(s.b_minus);
}

RealizationDescriptor realize(const TokenPackage& T, const CanonOptions& options) {
  RealizationDescriptor R;
  R.B = assemble(T, options);
  R.shift = shift(R.B);
  for (std::size_t i = 0; i < T.b1; ++i) R.factors.push_back({kFreeFactorLabel, 0});
  for (const auto& b : assembly_blocks(T))
    if (b.label.kind != GeneratorLabel::Kind::Zero) R.factors.push_back({b.label.str(), shift(b.matrix)});
  long total = 0;
  for (const auto& f : R.factors) total += f.shift;
  if (total != R.shift) throw InvariantViolation("realize: factor shifts do not add up to the global shift");
  return R;
}

StabilizeReport stabilize_shift_check(const IntMatrix& B) {
  StabilizeReport r;
  r.shift = shift(B);
  r.shift_plus = shift(direct_sum(B, IntMatrix{{1}}));
  r.shift_minus = shift(direct_sum(B, IntMatrix{{-1}}));
  r.ok = r.shift_plus == r.shift + 3 && r.shift_minus == r.shift - 2;
  if (!r.ok) throw InvariantViolation("stabilize_shift_check: shift is not additive under stabilization");
  return r;
}

DualityRecord dual_rank_one(long n) {
  DualityRecord d;
  d.lhs = "L(" + std::to_string(-n) + ")";
  d.rhs = "L(" + std::to_string(n) + ")^∨[1]";
  if (n == 2 || n == -2) d.note = "L(2)^∨ ≃ L(2)[4]";
  return d;
}

}  // namespace linkcanon
