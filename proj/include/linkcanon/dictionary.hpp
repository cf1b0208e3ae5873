#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "linkcanon/canon.hpp"
#include "linkcanon/errors.hpp"

namespace linkcanon {

class RealizationMismatch : public Error {
 public:
  RealizationMismatch(TokenPackage want, TokenPackage got)
      : Error("assembled matrix does not reproduce its token package: wanted " + serialize(want, false) +
              ", got " + serialize(got, false)),
        expected(std::move(want)),
        actual(std::move(got)) {}
  TokenPackage expected;
  TokenPackage actual;
};

class UnrealizableU : public Error {
 public:
  UnrealizableU(unsigned k, int u)
      : Error("type E layer at k=" + std::to_string(k) + " has u=" + std::to_string(u) +
              "; only u in {0,4} can be assembled"),
        k(k),
        u(u) {}
  unsigned k;
  int u;
};

// Negative (Hirzebruch-Jung) continued fraction m/q = a1 - 1/(a2 - 1/(...)).
struct HJExpansion {
  mpz_class m;
  mpz_class q;
  std::vector<mpz_class> coeffs;
};

/// Throws BadFraction unless m > q > 0 and gcd(m, q) = 1.
HJExpansion hj_expansion(const mpz_class& m, const mpz_class& q);

/// Tridiagonal plumbing matrix with det = m and (C^{-1})_{11} = q/m.
IntMatrix plumbing_matrix(const HJExpansion& e);

/// Smallest a >= 2 that is a quadratic nonresidue mod p.
mpz_class least_nonresidue(const mpz_class& p);

struct GeneratorLabel {
  enum class Kind { APlus, AMinus, ATwo, E, F, Zero };
  Kind kind = Kind::Zero;
  mpz_class p = 0;
  unsigned k = 0;
  mpz_class q = 1;  // numerator for ATwo

  std::string str() const;
  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

struct GeneratorBlock {
  GeneratorLabel label;
  IntMatrix matrix;
};

GeneratorBlock block_for(const GeneratorLabel& label);

/// The blocks of B(T) in order, before verification. Throws UnrealizableU.
std::vector<GeneratorBlock> assembly_blocks(const TokenPackage& T);

/// Block sum B(T), verified by recomputing its package (strict comparison).
/// Throws RealizationMismatch, UnrealizableU.
IntMatrix assemble(const TokenPackage& T, const CanonOptions& options = {});

/// 3 b+ - 2 b-.
long shift(const IntMatrix& B);

struct RealizationFactor {
  std::string label;
  long shift = 0;
};

struct RealizationDescriptor {
  IntMatrix B;
  long shift = 0;
  std::vector<RealizationFactor> factors;
};

RealizationDescriptor realize(const TokenPackage& T, const CanonOptions& options = {});

struct StabilizeReport {
  long shift = 0;
  long shift_plus = 0;   // sh(B ⊕ (1))
  long shift_minus = 0;  // sh(B ⊕ (-1))
  bool ok = false;
};

StabilizeReport stabilize_shift_check(const IntMatrix& B);

struct DualityRecord {
  std::string lhs;
  std::string rhs;
  std::string sign_ambiguity = "±1";
  std::optional<std::string> note;
};

DualityRecord dual_rank_one(long n);

inline const char* const kFreeFactorLabel = "Z(S²×S¹)";

}  // namespace linkcanon
