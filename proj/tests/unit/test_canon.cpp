#include <doctest.h>

#include <random>

#include "linkcanon/canon.hpp"
#include "linkcanon/errors.hpp"
#include "linkcanon/kirby.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace linkcanon;

namespace {

PairingGram gram_of(std::initializer_list<std::initializer_list<mpq_class>> rows) {
  PairingGram g;
  g.entries = RatMatrix(rows.size(), rows.size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (const auto& v : r) g.entries(i, j++) = v;
    ++i;
  }
  return g;
}

std::vector<unsigned> two_exponents(const std::vector<mpz_class>& d) {
  std::vector<unsigned> e;
  for (const auto& g : primary_generators(d, 2)) e.push_back(g.e);
  return e;
}

// Sum of exp(2 pi i 2^{k-1} lambda(x, x)) over the whole 2-primary part, in
// floating point, divided by |G[2^k]|.
std::complex<double> brute_gauss(const DiscriminantPresentation& disc, unsigned k) {
  const auto gens = primary_generators(disc.factors, 2);
  std::vector<unsigned long> x(gens.size(), 0);
  std::complex<double> s = 0;
  double kernel = 1;
  for (const auto& g : gens) kernel *= std::ldexp(1.0, static_cast<int>(std::min(g.e, k)));
  while (true) {
    mpq_class q = 0;
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = 0; b < gens.size(); ++b)
        q += mpz_class(x[a]) * x[b] * gens[a].s * gens[b].s * disc.gram(gens[a].index, gens[b].index);
    s += oracle::e(q * (mpz_class(1) << (k - 1)));
    std::size_t a = 0;
    for (; a < x.size(); ++a) {
      if (++x[a] < (1ul << gens[a].e)) break;
      x[a] = 0;
    }
    if (a == x.size()) break;
  }
  return s / kernel;
}

}  // namespace

TEST_CASE("primary generators") {
  CHECK(primary_generators({12}, 2) == std::vector<PrimaryGenerator>{{0, 2, 3}});
  CHECK(primary_generators({12}, 3) == std::vector<PrimaryGenerator>{{0, 1, 4}});
  CHECK(primary_generators({3, 3}, 2).empty());
  CHECK(primary_generators({2, 12, 24}, 2) ==
        std::vector<PrimaryGenerator>{{0, 1, 1}, {1, 2, 3}, {2, 3, 3}});
}

TEST_CASE("layer matrices") {
  {
    const auto d = discriminant(IntMatrix{{0, 3}, {3, 0}});
    const LayerMatrix L = layer_matrix(d.gram, d.factors, 3, 1);
    CHECK(L.dimension() == 2);
    CHECK(L.B(0, 0) == 0);
    CHECK(L.B(1, 1) == 0);
    CHECK(L.B(0, 1) != 0);
    CHECK(L.B(0, 1) == L.B(1, 0));
    CHECK(odd_layer_invariant(L) == -1);
  }
  {
    const auto d = discriminant(IntMatrix{{2, 0}, {0, 2}});
    const LayerMatrix L = layer_matrix(d.gram, d.factors, 2, 1);
    CHECK(L.C == IntMatrix{{1, 0}, {0, 1}});
    CHECK(two_layer_type(L.C) == TwoType::A);
  }
  {
    const auto d = discriminant(IntMatrix{{1}});
    for (unsigned k = 1; k <= 3; ++k) CHECK(layer_matrix(d.gram, d.factors, 3, k).dimension() == 0);
  }
  CHECK_THROWS_AS(layer_matrix(gram_of({{mpq_class(1, 4)}}), {2}, 2, 1), NonIntegral);
  CHECK_THROWS_AS(layer_matrix(gram_of({{mpq_class(1, 2)}}), {2, 2}, 2, 1), DimensionMismatch);
}

TEST_CASE("odd layer invariant") {
  LayerMatrix L;
  L.p = 3;
  L.k = 1;
  L.indices = {0};
  L.B = IntMatrix{{1}};
  CHECK(odd_layer_invariant(L) == 1);
  L.indices = {0, 1};
  L.B = IntMatrix{{0, 1}, {1, 0}};
  CHECK(odd_layer_invariant(L) == -1);
  L.p = 5;
  L.B = IntMatrix{{1, 0}, {0, 1}};
  CHECK(odd_layer_invariant(L) == 1);
  L.indices = {0};
  L.B = IntMatrix{{5}};
  CHECK_THROWS_AS(odd_layer_invariant(L), DegenerateLayer);
  L.p = 2;
  L.B = IntMatrix{{1}};
  CHECK_THROWS_AS(odd_layer_invariant(L), NotOddPrime);
}

TEST_CASE("odd layers have exactly two classes per dimension") {
  // <a/p> for a a residue or a nonresidue, on one and two generators
  for (int p : {3, 5, 7, 11, 13}) {
    for (int a = 1; a < p; ++a) {
      const IntMatrix C = a == 1 ? IntMatrix{{p}} : plumbing_matrix(hj_expansion(p, a));
      const TokenPackage t = canon(C);
      REQUIRE(t.layers.size() == 1);
      CHECK(std::get<OddPayload>(t.layers[0].payload).x == legendre(a, p));
      for (int b = 1; b < p; ++b) {
        const IntMatrix D = b == 1 ? IntMatrix{{p}} : plumbing_matrix(hj_expansion(p, b));
        const TokenPackage t2 = canon(direct_sum(C, D));
        REQUIRE(t2.layers.size() == 1);
        CHECK(t2.layers[0].n == 2);
        CHECK(std::get<OddPayload>(t2.layers[0].payload).x == legendre(a * b, p));
      }
    }
  }
}

TEST_CASE("2-adic layer type and determinant class") {
  CHECK(two_layer_type(IntMatrix{{1, 0}, {0, 1}}) == TwoType::A);
  CHECK(two_layer_type(IntMatrix{{0, 1}, {1, 0}}) == TwoType::E);
  CHECK(two_layer_type(IntMatrix(0, 0)) == TwoType::E);
  CHECK(two_typeA_delta(IntMatrix{{1}}, 2) == 1);
  CHECK(two_typeA_delta(IntMatrix{{3}}, 2) == 3);
  CHECK(two_typeA_delta(IntMatrix{{1}}, 3) == 1);
  CHECK(two_typeA_delta(IntMatrix{{5}}, 4) == 5);
  CHECK_FALSE(two_typeA_delta(IntMatrix{{1}}, 1).has_value());
  CHECK_THROWS_AS(two_typeA_delta(IntMatrix{{0, 1}, {1, 0}}, 2), WrongType);
  CHECK_THROWS_AS(two_typeA_delta(IntMatrix{{1, 1}, {1, 1}}, 2), EvenDeterminant);
}

TEST_CASE("quotient enumeration") {
  CHECK(enumerate_quotient_H({1, 1}, 1, 1 << 20).size() == 1);
  const auto H = enumerate_quotient_H({3}, 2, 1 << 20);
  CHECK(H.size() == 2);
  std::vector<std::uint64_t> seen;
  H.for_each([&](const std::vector<std::uint64_t>& c) { seen.push_back(c[0]); });
  CHECK(seen == std::vector<std::uint64_t>{0, 1});
  CHECK(enumerate_quotient_H({}, 3, 1 << 20).size() == 1);
  CHECK(enumerate_quotient_H({4, 2, 5}, 1, 1 << 20).size() == (1u << (3 + 1 + 4)));
  CHECK_THROWS_AS(enumerate_quotient_H({12}, 1, 1 << 10), CapExceeded);
  CHECK_THROWS_AS(enumerate_quotient_H({40, 40}, 1, ~std::uint64_t{0}), CapExceeded);
}

TEST_CASE("gauss sums: worked values") {
  const auto d = discriminant(IntMatrix{{0, 2}, {2, 0}});
  CHECK(gauss_u(d.gram, d.factors, 1, 1 << 20) == 0);
  const GaussSum g = gauss_sum(d.gram, d.factors, 1, 1 << 20);
  CHECK(g.order == 1);
  // the full quadratic refinement table of the hyperbolic plane sums to 2
  const auto e = discriminant(IntMatrix{{0, 4}, {4, 0}});
  const GaussSum h = gauss_sum(e.gram, e.factors, 1, 1 << 20);
  CHECK(h.order == 4);
  CHECK(h.sum == CycInt(3, 2));
  CHECK(match_eighth_root(h.sum, h.order) == 0);
}

TEST_CASE("gauss sums agree with a floating point sum over the whole group") {
  std::mt19937_64 rng(41);
  int compared = 0;
  for (int t = 0; t < 150; ++t) {
    const IntMatrix A = gen::random_two_primary(rng, 3, 3);
    const auto disc = discriminant(A);
    if (disc.torsion_order() > (1 << 12)) continue;
    const TokenPackage T = canon_from_presentation(disc);
    for (const auto& g : T.extended_gauss) {
      const GaussSum S = gauss_sum(disc.gram, disc.factors, g.k, 1 << 20);
      const std::complex<double> want = brute_gauss(disc, g.k);
      CAPTURE(A);
      CHECK(std::abs(oracle::to_complex(S.sum) - want) < 1e-6 * (1 + std::abs(want)));
      CHECK(S.sum * S.sum.conj() == CycInt(S.sum.conductor_exponent(), S.order));
      CHECK(match_eighth_root(S.sum, S.order) == g.u);
      ++compared;
    }
  }
  CHECK(compared > 50);
}

TEST_CASE("canon: worked values") {
  CHECK(serialize(canon(IntMatrix{{1}})) == "b1=0");
  CHECK(serialize(canon(IntMatrix{{0, 3}, {3, 0}})) == "b1=0;3:{k=1,n=2,x=-1}");
  CHECK(serialize(canon(IntMatrix{{4, 0}, {0, 3}}), false) == "b1=0;2:{k=2,n=1,A,d=1};3:{k=1,n=1,x=1}");
  CHECK(serialize(canon(IntMatrix{{-4}}), false) == "b1=0;2:{k=2,n=1,A,d=3}");
  CHECK(serialize(canon(IntMatrix{{8}}), false) == "b1=0;2:{k=3,n=1,A,d=1}");
  CHECK(serialize(canon(IntMatrix{{0, 2}, {2, 0}})) == "b1=0;2:{k=1,n=2,E,u=0};xg2=[(1,0)]");
  CHECK(serialize(canon(IntMatrix(2, 2))) == "b1=2");
  const TokenPackage t = canon(IntMatrix{{4, 0}, {0, 3}});
  CHECK(t.torsion_order == 12);
  CHECK(t.invariant_factors == std::vector<mpz_class>{12});
}

TEST_CASE("canon: structural properties on random inputs") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 400; ++t) {
    const IntMatrix A = t % 2 ? oracle::random_symmetric(rng, 1 + t % 5, 6) : gen::random_two_primary(rng, 4, 3);
    TokenPackage T;
    try {
      T = canon(A);
    } catch (const CapExceeded&) {
      continue;
    }
    CAPTURE(A);
    const auto disc = discriminant(A);
    CHECK(T.torsion_order == disc.torsion_order());
    CHECK(invariant_factors_from_layers(T.layers) == T.invariant_factors);
    for (const auto& L : T.layers) {
      CHECK(L.n > 0);
      if (L.is_type_e()) CHECK(L.n % 2 == 0);
      if (L.p != 2) CHECK(std::holds_alternative<OddPayload>(L.payload));
      if (const auto* a = std::get_if<TwoAPayload>(&L.payload)) CHECK(a->delta.has_value() == (L.k >= 2));
    }
    // primary components are orthogonal
    const auto primes = prime_divisors(disc.factors.empty() ? mpz_class(1) : disc.factors.back());
    for (std::size_t i = 0; i < primes.size(); ++i)
      for (std::size_t j = i + 1; j < primes.size(); ++j)
        for (const auto& a : primary_generators(disc.factors, primes[i]))
          for (const auto& b : primary_generators(disc.factors, primes[j]))
            CHECK(frac01(a.s * b.s * disc.gram(a.index, b.index)) == 0);
    // invariance under one unimodular congruence and one stabilization
    const IntMatrix P = random_unimodular(A.rows(), rng, 6);
    CHECK(canon(P.transpose() * A * P) == T);
    CHECK(canon(direct_sum(A, IntMatrix{{t % 3 ? 1 : -1}})) == T);
  }
}

TEST_CASE("canon: errors") {
  CHECK_THROWS_AS(canon(IntMatrix{{1, 2}, {3, 4}}), NotSymmetric);
  CHECK_THROWS_AS(canon(IntMatrix(2, 3)), NotSquare);
  CanonOptions tight;
  tight.gauss_cap = 2;
  CHECK_THROWS_AS(canon(direct_sum(IntMatrix{{0, 2}, {2, 0}}, IntMatrix{{0, 16}, {16, 0}}), tight), CapExceeded);
}
