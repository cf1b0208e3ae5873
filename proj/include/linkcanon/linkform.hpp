#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

#include "linkcanon/exact.hpp"

namespace linkcanon {

// Symmetric matrix of classes in Q/Z, each stored reduced in [0, 1).
struct PairingGram {
  RatMatrix entries;

  std::size_t size() const { return entries.rows(); }
  const mpq_class& operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

// Result of splitting the kernel off a symmetric matrix: P^T A P = 0_{b1} ⊕ A_red.
struct FreeSplit {
  std::size_t b1 = 0;
  IntMatrix A_red;
  IntMatrix P;
};

// Torsion linking pairing of coker(A), presented on Smith generators.
//
// `factors` are the invariant factors d_i > 1 of coker(A_red) in divisibility
// order, `generators` are their positions on the Smith diagonal, and
// gram(a, b) = lambda(e_a, e_b) for the generators e_a of order factors[a].
struct DiscriminantPresentation {
  std::size_t b1 = 0;
  IntMatrix A_red;
  SmithData smith;
  std::vector<mpz_class> factors;
  std::vector<std::size_t> generators;
  PairingGram gram;

  mpz_class torsion_order() const;
};

FreeSplit split_free_part(const IntMatrix& A);

/// x^T A^{-1} y mod 1, in [0, 1). Throws SingularMatrix.
mpq_class linking_value(const IntMatrix& A_red, const std::vector<mpz_class>& x,
                        const std::vector<mpz_class>& y);

DiscriminantPresentation discriminant(const IntMatrix& A, const ExactLimits& limits = {});

/// Gram of the pairing on all Smith generators of a nonsingular A:
/// U^{-T} A^{-1} U^{-1}, reduced into [0, 1).
RatMatrix transported_gram(const IntMatrix& A, const SmithData& smith);

}  // namespace linkcanon
