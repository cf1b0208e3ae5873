#include "linkcanon/canon.hpp"

#include <algorithm>

#include "linkcanon/errors.hpp"

namespace linkcanon {

namespace {

mpz_class pow_mpz(const mpz_class& base, unsigned e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

bool is_odd(const mpz_class& a) { return mpz_odd_p(a.get_mpz_t()) != 0; }

}  // namespace

bool strict_equal(const TokenPackage& a, const TokenPackage& b) {
  return a.b1 == b.b1 && a.torsion_order == b.torsion_order && a.invariant_factors == b.invariant_factors &&
         a.layers == b.layers;
}

TokenPackage strip_extended(TokenPackage t) {
  t.extended_gauss.clear();
  return t;
}

std::vector<PrimaryGenerator> primary_generators(const std::vector<mpz_class>& d, const mpz_class& p) {
  std::vector<PrimaryGenerator> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    mpz_class s = d[i];
    unsigned e = 0;
    while (s != 0 && mpz_divisible_p(s.get_mpz_t(), p.get_mpz_t())) {
      mpz_divexact(s.get_mpz_t(), s.get_mpz_t(), p.get_mpz_t());
      ++e;
    }
    if (e > 0) out.push_back({i, e, s});
  }
  return out;
}

LayerMatrix layer_matrix(const PairingGram& gram, const std::vector<mpz_class>& d, const mpz_class& p,
                         unsigned k) {
  if (gram.size() != d.size()) throw DimensionMismatch("layer_matrix: gram and factor list differ in size");
  LayerMatrix out;
  out.p = p;
  out.k = k;
  std::vector<mpz_class> s;
  for (const auto& g : primary_generators(d, p))
    if (g.e == k) {
      out.indices.push_back(g.index);
      s.push_back(g.s);
    }
  const std::size_t n = out.indices.size();
  const mpz_class pk = pow_mpz(p, k);
  out.B = IntMatrix(n, n);
  out.C = IntMatrix(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const mpq_class v = pk * s[a] * s[b] * gram(out.indices[a], out.indices[b]);
      if (v.get_den() != 1)
        throw NonIntegral("layer_matrix: p^k s_i s_j lambda_ij is not an integer at (" + std::to_string(a) +
                          "," + std::to_string(b) + ")");
      out.C(a, b) = mod_floor(v.get_num(), pk);
      out.B(a, b) = mod_floor(v.get_num(), p);
    }
  return out;
}

int odd_layer_invariant(const LayerMatrix& layer) {
  if (layer.p == 2) throw NotOddPrime("2");
  if (layer.dimension() == 0) throw DegenerateLayer("odd_layer_invariant: empty layer");
  const mpz_class dt = mod_floor(det(layer.B), layer.p);
  if (dt == 0)
    throw DegenerateLayer("odd_layer_invariant: layer (" + layer.p.get_str() + "," + std::to_string(layer.k) +
                          ") is singular mod p");
  return legendre(dt, layer.p);
}

TwoType two_layer_type(const IntMatrix& C) {
  for (std::size_t i = 0; i < C.rows(); ++i)
    if (is_odd(C(i, i))) return TwoType::A;
  return TwoType::E;
}

std::optional<int> two_typeA_delta(const IntMatrix& C, unsigned k) {
  if (two_layer_type(C) != TwoType::A) throw WrongType("two_typeA_delta: layer is of type E");
  const mpz_class dt = det(C);
  if (!is_odd(dt)) throw EvenDeterminant("two_typeA_delta: layer determinant is even");
  if (k == 1) return std::nullopt;
  const mpz_class r = mod_floor(dt, k == 2 ? 4 : 8);
  return static_cast<int>(r.get_si());
}

QuotientEnumeration::QuotientEnumeration(std::vector<unsigned> exponents, unsigned k, std::uint64_t cap) {
  if (k == 0) throw Error("enumerate_quotient_H: k must be at least 1");
  unsigned bits = 0;
  for (unsigned e : exponents) {
    const unsigned b = e > k ? e - k : 0;
    bits += b;
    if (bits > 63) throw CapExceeded("enumerate_quotient_H: |H_k| exceeds 2^63");
    moduli_.push_back(std::uint64_t{1} << b);
  }
  size_ = std::uint64_t{1} << bits;
  if (size_ > cap)
    throw CapExceeded("enumerate_quotient_H: |H_" + std::to_string(k) + "| = 2^" + std::to_string(bits) +
                      " exceeds the cap of " + std::to_string(cap));
}

QuotientEnumeration enumerate_quotient_H(const std::vector<unsigned>& exponents, unsigned k, std::uint64_t cap) {
  return QuotientEnumeration(exponents, k, cap);
}

GaussSum gauss_sum(const PairingGram& gram, const std::vector<mpz_class>& d, unsigned k, std::uint64_t cap) {
  if (gram.size() != d.size()) throw DimensionMismatch("gauss_sum: gram and factor list differ in size");
  const auto gens = primary_generators(d, 2);
  std::vector<unsigned> exps;
  unsigned top = 0;
  for (const auto& g : gens) {
    exps.push_back(g.e);
    top = std::max(top, g.e);
  }
  const QuotientEnumeration H = enumerate_quotient_H(exps, k, cap);
  GaussSum out{CycInt(3, 1), mpz_class(static_cast<unsigned long>(H.size()))};
  if (H.size() == 1) return out;

  // q_k(x) = 2^{k-1} x^T P x with P having denominators dividing 2^top, so
  // q_k takes values in 2^{-M} Z / Z for M = top - k + 1 (<= log2|H_k| + 1).
  const unsigned M = top - k + 1;
  const std::uint64_t mask = (std::uint64_t{1} << M) - 1;
  const std::size_t n = gens.size();
  std::vector<std::uint64_t> W(n * n);
  const mpz_class scale = pow_mpz(2, top);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const mpq_class v = scale * gens[a].s * gens[b].s * gram(gens[a].index, gens[b].index);
      if (v.get_den() != 1) throw NonIntegral("gauss_sum: 2-primary pairing has an unexpected denominator");
      W[a * n + b] = mod_floor(v.get_num(), mpz_class(static_cast<unsigned long>(mask) + 1)).get_ui();
    }

  std::vector<std::uint64_t> counts(std::size_t{1} << M, 0);
  H.for_each([&](const std::vector<std::uint64_t>& x) {
    std::uint64_t r = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (x[a] == 0) continue;
      const std::uint64_t xa = x[a] & mask;
      for (std::size_t b = 0; b < n; ++b) {
        if (x[b] == 0) continue;
        r = (r + ((xa * (x[b] & mask)) & mask) * W[a * n + b]) & mask;
      }
    }
    ++counts[r];
  });

  const unsigned m = std::max(3u, M);
  CycInt S(m);
  for (std::size_t j = 0; j < counts.size(); ++j)
    if (counts[j]) S.add_term(static_cast<long long>(j) << (m - M), mpz_class(static_cast<unsigned long>(counts[j])));
  out.sum = std::move(S);
  return out;
}

int gauss_u(const PairingGram& gram, const std::vector<mpz_class>& d, unsigned k, std::uint64_t cap) {
  const GaussSum g = gauss_sum(gram, d, k, cap);
  return match_eighth_root(g.sum, g.order);
}

namespace {

// With a single nontrivial 2-layer the layer determinant is basis-free. With
// several, det(C_k) of a type A layer depends on the splitting, so delta is read
// from the canonical orthogonal model instead.
void canonicalize_two_deltas(TokenPackage& T, const DiscriminantPresentation& disc, const CanonOptions& options) {
  std::size_t two_layers = 0;
  bool needs_model = false;
  for (const auto& L : T.layers) {
    if (L.p != 2) continue;
    ++two_layers;
    if (L.is_type_a() && L.k >= 2) needs_model = true;
  }
  if (two_layers < 2 || !needs_model) return;
  const TwoPrimaryModel model = canonical_two_model(disc.gram, disc.factors, options.gauss_cap);
  for (auto& L : T.layers) {
    if (L.p != 2 || !L.is_type_a()) continue;
    for (const auto& M : model)
      if (M.k == L.k) std::get<TwoAPayload>(L.payload).delta = model_delta(M);
  }
}

}  // namespace

TokenPackage canon_from_presentation(const DiscriminantPresentation& disc, const CanonOptions& options) {
  TokenPackage T;
  T.b1 = disc.b1;
  T.invariant_factors = disc.factors;
  T.torsion_order = disc.torsion_order();
  if (disc.factors.empty()) return T;

  for (const mpz_class& p : prime_divisors(disc.factors.back())) {
    const auto gens = primary_generators(disc.factors, p);
    unsigned top = 0;
    for (const auto& g : gens) top = std::max(top, g.e);
    for (unsigned k = 1; k <= top; ++k) {
      const LayerMatrix L = layer_matrix(disc.gram, disc.factors, p, k);
      const std::size_t n = L.dimension();
      if (p != 2) {
        if (n > 0) T.layers.push_back({p, k, n, OddPayload{odd_layer_invariant(L)}});
        continue;
      }
      if (n > 0 && !is_odd(det(L.C)))
        throw DegenerateLayer("canon: 2-primary layer " + std::to_string(k) + " is singular mod 2");
      const TwoType type = two_layer_type(L.C);
      if (type == TwoType::A) {
        T.layers.push_back({p, k, n, TwoAPayload{two_typeA_delta(L.C, k)}});
        continue;
      }
      const int u = gauss_u(disc.gram, disc.factors, k, options.gauss_cap);
      if (n > 0) {
        if (n % 2 != 0) throw InvariantViolation("canon: type E layer of odd dimension");
        T.layers.push_back({p, k, n, TwoEPayload{u}});
      }
      T.extended_gauss.push_back({k, u});
    }
  }
  canonicalize_two_deltas(T, disc, options);
  return T;
}

TokenPackage canon(const IntMatrix& A, const CanonOptions& options) {
  return canon_from_presentation(discriminant(A, options.exact), options);
}

}  // namespace linkcanon
