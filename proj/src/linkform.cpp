#include "linkcanon/linkform.hpp"

namespace linkcanon {

mpz_class DiscriminantPresentation::torsion_order() const {
  mpz_class t = 1;
  for (const auto& d : factors) t *= d;
  return t;
}

FreeSplit split_free_part(const IntMatrix& A) {
  require_symmetric(A);
  const std::size_t n = A.rows();
  const IntMatrix K = kernel_basis(A);
  const std::size_t b1 = K.cols();
  IntMatrix P = complete_to_unimodular(K);
  const IntMatrix C = P.transpose() * A * P;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b1; ++j)
      if (C(i, j) != 0 || C(j, i) != 0)
        throw InvariantViolation("split_free_part: kernel block did not split off");
  return FreeSplit{b1, C.submatrix(b1, b1, n - b1, n - b1), std::move(P)};
}

mpq_class linking_value(const IntMatrix& A_red, const std::vector<mpz_class>& x,
                        const std::vector<mpz_class>& y) {
  const std::size_t n = A_red.rows();
  if (x.size() != n || y.size() != n) throw DimensionMismatch("linking_value: vector length mismatch");
  const RatMatrix inv = rational_inverse(A_red);
  mpq_class acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    mpq_class row = 0;
    for (std::size_t j = 0; j < n; ++j) row += inv(i, j) * y[j];
    acc += x[i] * row;
  }
  return frac01(acc);
}

RatMatrix transported_gram(const IntMatrix& A, const SmithData& smith) {
  const RatMatrix inv = rational_inverse(A);
  const RatMatrix W = to_rational(smith.U_inv);
  RatMatrix P = W.transpose() * inv * W;
  for (std::size_t i = 0; i < P.rows(); ++i)
    for (std::size_t j = 0; j < P.cols(); ++j) P(i, j) = frac01(P(i, j));
  return P;
}

DiscriminantPresentation discriminant(const IntMatrix& A, const ExactLimits& limits) {
  FreeSplit split = split_free_part(A);
  DiscriminantPresentation out;
  out.b1 = split.b1;
  out.A_red = std::move(split.A_red);
  out.smith = smith_normal_form(out.A_red, limits);
  if (out.smith.rank() != out.A_red.rows()) throw InvariantViolation("discriminant: reduced block is singular");

  const auto diag = out.smith.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i)
    if (diag[i] > 1) {
      out.factors.push_back(diag[i]);
      out.generators.push_back(i);
    }
  if (out.generators.empty()) {
    out.gram.entries = RatMatrix(0, 0);
    return out;
  }
  const RatMatrix full = transported_gram(out.A_red, out.smith);
  out.gram.entries = full.restrict(out.generators);
  return out;
}

}  // namespace linkcanon
