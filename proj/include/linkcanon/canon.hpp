#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "linkcanon/cyclotomic.hpp"
#include "linkcanon/exact.hpp"
#include "linkcanon/linkform.hpp"

namespace linkcanon {

// ---------------------------------------------------------------------------
// Token package
// ---------------------------------------------------------------------------

struct OddPayload {
  int x = 1;  // Legendre symbol of the layer determinant
  friend bool operator==(const OddPayload&, const OddPayload&) = default;
};

struct TwoAPayload {
  std::optional<int> delta;  // nullopt at k = 1
  friend bool operator==(const TwoAPayload&, const TwoAPayload&) = default;
};

struct TwoEPayload {
  int u = 0;  // phase of the normalized Gauss sum, in Z/8
  friend bool operator==(const TwoEPayload&, const TwoEPayload&) = default;
};

using LayerPayload = std::variant<OddPayload, TwoAPayload, TwoEPayload>;

struct LayerRecord {
  mpz_class p;
  unsigned k = 1;
  std::size_t n = 0;
  LayerPayload payload;

  bool is_type_a() const { return std::holds_alternative<TwoAPayload>(payload); }
  bool is_type_e() const { return std::holds_alternative<TwoEPayload>(payload); }

  friend bool operator==(const LayerRecord&, const LayerRecord&) = default;
};

struct GaussRecord {
  unsigned k = 1;
  int u = 0;
  friend bool operator==(const GaussRecord&, const GaussRecord&) = default;
};

// Canonical invariant of (b1, torsion linking pairing). Layers are sorted by
// (p, k). `extended_gauss` holds u_{2,k} for every k up to the top 2-exponent at
// which the layer is of type E, including empty layers.
struct TokenPackage {
  std::size_t b1 = 0;
  mpz_class torsion_order = 1;
  std::vector<mpz_class> invariant_factors;
  std::vector<LayerRecord> layers;
  std::vector<GaussRecord> extended_gauss;

  friend bool operator==(const TokenPackage&, const TokenPackage&) = default;
};

/// Equality on the fields of the canonical tuple only (extended_gauss ignored).
bool strict_equal(const TokenPackage& a, const TokenPackage& b);

TokenPackage strip_extended(TokenPackage t);

/// Whitespace-free canonical text, usable as a cache key.
std::string serialize(const TokenPackage& t, bool include_extended = true);

/// Inverse of serialize. Throws ParseError carrying the offending offset.
TokenPackage parse_tokens(const std::string& text);

/// Invariant factors of the group whose elementary divisors are p^k with
/// multiplicity n_{p,k}, in divisibility order.
std::vector<mpz_class> invariant_factors_from_layers(const std::vector<LayerRecord>& layers);

// ---------------------------------------------------------------------------
// Layer machinery
// ---------------------------------------------------------------------------

struct PrimaryGenerator {
  std::size_t index = 0;  // position among the Smith generators
  unsigned e = 0;         // v_p(d_i)
  mpz_class s;            // d_i / p^e
  friend bool operator==(const PrimaryGenerator&, const PrimaryGenerator&) = default;
};

std::vector<PrimaryGenerator> primary_generators(const std::vector<mpz_class>& d, const mpz_class& p);

// Homogeneous p^k piece of the pairing. C = p^k * P^(p) on I_{p,k}, reduced
// mod p^k; B = C mod p.
struct LayerMatrix {
  mpz_class p;
  unsigned k = 1;
  std::vector<std::size_t> indices;
  IntMatrix B;
  IntMatrix C;

  std::size_t dimension() const { return indices.size(); }
};

LayerMatrix layer_matrix(const PairingGram& gram, const std::vector<mpz_class>& d, const mpz_class& p,
                         unsigned k);

/// Legendre symbol of det(B) over F_p. Throws DegenerateLayer, NotOddPrime.
int odd_layer_invariant(const LayerMatrix& layer);

enum class TwoType { A, E };

TwoType two_layer_type(const IntMatrix& C);

/// det(C) mod 4 (k = 2) or mod 8 (k >= 3); nullopt at k = 1.
/// Throws WrongType for an alternating layer and EvenDeterminant for a
/// degenerate one.
std::optional<int> two_typeA_delta(const IntMatrix& C, unsigned k);

// Coset representatives of H_k = G/G[2^k] for G = ⊕ Z/2^{e_i}: coefficient
// vectors c with 0 <= c_i < 2^{max(e_i - k, 0)}.
class QuotientEnumeration {
 public:
  QuotientEnumeration(std::vector<unsigned> exponents, unsigned k, std::uint64_t cap);

  std::uint64_t size() const { return size_; }
  const std::vector<std::uint64_t>& moduli() const { return moduli_; }

  // Calls f(coeffs) once per representative, in odometer order from zero.
  template <class F>
  void for_each(F&& f) const {
    std::vector<std::uint64_t> c(moduli_.size(), 0);
    for (std::uint64_t count = 0; count < size_; ++count) {
      f(static_cast<const std::vector<std::uint64_t>&>(c));
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (++c[i] < moduli_[i]) break;
        c[i] = 0;
      }
    }
  }

 private:
  std::vector<std::uint64_t> moduli_;
  std::uint64_t size_ = 1;
};

/// Throws CapExceeded if |H_k| > cap.
QuotientEnumeration enumerate_quotient_H(const std::vector<unsigned>& exponents, unsigned k,
                                         std::uint64_t cap);

struct GaussSum {
  CycInt sum;
  mpz_class order;  // |H_k|
};

/// Unnormalized sum of exp(2 pi i q_k(z)) over H_k, q_k(z) = 2^{k-1} lambda(z, z).
GaussSum gauss_sum(const PairingGram& gram, const std::vector<mpz_class>& d, unsigned k, std::uint64_t cap);

/// u in Z/8 with sum = sqrt|H_k| zeta_8^u. Throws NoMatch, CapExceeded.
int gauss_u(const PairingGram& gram, const std::vector<mpz_class>& d, unsigned k, std::uint64_t cap);

// ---------------------------------------------------------------------------
// 2-primary models
// ---------------------------------------------------------------------------

// One homogeneous layer of an orthogonal model: cyclic blocks <a/2^k> for a
// type A layer, hyperbolic planes of the two even kinds for a type E layer.
struct TwoLayerModel {
  unsigned k = 1;
  TwoType type = TwoType::A;
  std::vector<int> numerators;  // type A: odd residues mod 2^min(k, 3), ascending
  std::size_t plain = 0;        // type E: planes (1/2^k)[[0,1],[1,0]]
  std::size_t twisted = 0;      // type E: planes (1/2^k)[[2,1],[1,2]]

  std::size_t dimension() const { return type == TwoType::A ? numerators.size() : 2 * (plain + twisted); }
  friend bool operator==(const TwoLayerModel&, const TwoLayerModel&) = default;
};

using TwoPrimaryModel = std::vector<TwoLayerModel>;

/// Generator exponents and 2-primary Gram (on the generators of order 2^e)
/// of the model, block by block.
std::pair<std::vector<unsigned>, RatMatrix> model_gram(const TwoPrimaryModel& model);

/// Number of x in the 2-primary part with order 2^j and lambda(x, x) = r / 2^top,
/// keyed by (j, r); top is the largest exponent. An isometry invariant.
/// Throws CapExceeded when the 2-primary part has more than `cap` elements.
std::vector<std::pair<std::pair<unsigned, std::uint64_t>, std::uint64_t>> self_linking_distribution(
    const std::vector<unsigned>& exponents, const RatMatrix& gram2, std::uint64_t cap);

/// First orthogonal model, in a fixed order, whose self-linking distribution
/// matches the 2-primary part of the pairing. Models built from the assembly
/// inventory (numerators 1 except the last, plain planes only) are tried
/// before general ones; within each pass the order is lexicographic in the
/// layer determinants. Throws NoMatch, CapExceeded.
TwoPrimaryModel canonical_two_model(const PairingGram& gram, const std::vector<mpz_class>& d, std::uint64_t cap);

/// Determinant class of a type A model layer (nullopt at k = 1).
std::optional<int> model_delta(const TwoLayerModel& layer);

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

struct CanonOptions {
  std::uint64_t gauss_cap = std::uint64_t{1} << 20;
  ExactLimits exact;
};

TokenPackage canon(const IntMatrix& A, const CanonOptions& options = {});

/// Layer extraction from an already computed presentation.
TokenPackage canon_from_presentation(const DiscriminantPresentation& disc, const CanonOptions& options = {});

}  // namespace linkcanon
