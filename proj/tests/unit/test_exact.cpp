#include <doctest.h>

#include <random>

#include "linkcanon/errors.hpp"
#include "linkcanon/exact.hpp"
#include "support/oracles.hpp"

using namespace linkcanon;

namespace {

RatMatrix rat(std::initializer_list<std::initializer_list<mpq_class>> rows) {
  RatMatrix M(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (const auto& v : r) M(i, j++) = v;
    ++i;
  }
  return M;
}

bool is_diagonal_chain(const IntMatrix& D) {
  std::vector<mpz_class> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j)
      if (i != j && D(i, j) != 0) return false;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (d[i] == 0 && d[i + 1] != 0) return false;
    if (d[i] != 0 && d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("det: worked values") {
  CHECK(det(IntMatrix{{0, 3}, {3, 0}}) == -9);
  CHECK(det(IntMatrix{{1}}) == 1);
  CHECK(det(IntMatrix{{0, 2}, {2, 0}}) == -4);
  CHECK(det(IntMatrix(0, 0)) == 1);
  CHECK(det(IntMatrix(3, 3)) == 0);
  CHECK_THROWS_AS(det(IntMatrix(2, 3)), NotSquare);
}

TEST_CASE("det agrees with the Leibniz expansion") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 6;
    IntMatrix A(n, n);
    std::uniform_int_distribution<int> d(-9, 9);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = d(rng);
    CHECK(det(A) == oracle::leibniz_det(A));
  }
}

TEST_CASE("smith normal form: worked values") {
  {
    const auto s = smith_normal_form(IntMatrix{{3}});
    CHECK(s.D == IntMatrix{{3}});
    CHECK(s.U == IntMatrix{{1}});
    CHECK(s.V == IntMatrix{{1}});
  }
  CHECK(smith_normal_form(IntMatrix{{0, 3}, {3, 0}}).diagonal() == std::vector<mpz_class>{3, 3});
  CHECK(smith_normal_form(IntMatrix{{4, 0}, {0, 3}}).diagonal() == std::vector<mpz_class>{1, 12});
}

TEST_CASE("smith normal form matches determinantal divisors and its transforms") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 250; ++t) {
    const std::size_t rows = 1 + t % 4, cols = 1 + (t / 4) % 4;
    IntMatrix A(rows, cols);
    std::uniform_int_distribution<int> d(-8, 8);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) A(i, j) = t % 7 == 0 ? 2 * d(rng) : d(rng);
    const SmithData s = smith_normal_form(A);
    CAPTURE(A);
    CHECK(s.U * A * s.V == s.D);
    CHECK(s.U * s.U_inv == IntMatrix::identity(rows));
    CHECK(is_unimodular(s.U));
    CHECK(is_unimodular(s.V));
    CHECK(is_diagonal_chain(s.D));
    CHECK(s.diagonal() == oracle::invariant_factors_by_minors(A));
  }
}

TEST_CASE("rational inverse") {
  CHECK(rational_inverse(IntMatrix{{0, 2}, {2, 0}}) == rat({{0, mpq_class(1, 2)}, {mpq_class(1, 2), 0}}));
  CHECK(rational_inverse(IntMatrix{{1}}) == rat({{1}}));
  CHECK(rational_inverse(IntMatrix{{2, 1}, {1, 2}}) ==
        rat({{mpq_class(2, 3), mpq_class(-1, 3)}, {mpq_class(-1, 3), mpq_class(2, 3)}}));
  CHECK_THROWS_AS(rational_inverse(IntMatrix{{1, 1}, {1, 1}}), SingularMatrix);

  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const IntMatrix A = oracle::random_symmetric(rng, 1 + t % 5, 6);
    if (det(A) == 0) continue;
    CHECK(rational_inverse(A) == oracle::gauss_jordan_inverse(A));
  }
}

TEST_CASE("signature: worked values") {
  CHECK(signature(IntMatrix{{2, 0}, {0, 2}}) == Signature{2, 0, 0});
  CHECK(signature(IntMatrix{{0, 2}, {2, 0}}) == Signature{1, 1, 0});
  CHECK(signature(IntMatrix(2, 2)) == Signature{0, 0, 2});
  CHECK(signature(IntMatrix(0, 0)) == Signature{0, 0, 0});
  CHECK_THROWS_AS(signature(IntMatrix{{0, 1}, {2, 0}}), NotSymmetric);
}

TEST_CASE("signature agrees with Descartes on the characteristic polynomial") {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 300; ++t) {
    const IntMatrix A = oracle::random_symmetric(rng, 1 + t % 6, t % 3 == 0 ? 1 : 6);
    const Signature s = signature(A);
    const oracle::Sig o = oracle::signature_by_descartes(A);
    CAPTURE(A);
    CHECK(s.b_plus == o.plus);
    CHECK(s.b_minus == o.minus);
    CHECK(s.b_zero == o.zero);
  }
}

TEST_CASE("kernel basis and completion") {
  CHECK(kernel_basis(IntMatrix(2, 2)).cols() == 2);
  CHECK(abs(det(kernel_basis(IntMatrix(2, 2)))) == 1);
  CHECK(kernel_basis(IntMatrix{{1}}).cols() == 0);
  const IntMatrix K = kernel_basis(IntMatrix{{1, 1}, {1, 1}});
  REQUIRE(K.cols() == 1);
  CHECK(K(0, 0) == -K(1, 0));
  CHECK(abs(K(0, 0)) == 1);

  CHECK(complete_to_unimodular(IntMatrix{{1}, {0}}) == IntMatrix::identity(2));
  const IntMatrix P = complete_to_unimodular(IntMatrix{{1}, {-1}});
  CHECK(abs(det(P)) == 1);
  CHECK(P(0, 0) == 1);
  CHECK(P(1, 0) == -1);
  CHECK_THROWS_AS(complete_to_unimodular(IntMatrix{{2}, {0}}), NotSaturated);

  std::mt19937_64 rng(15);
  for (int t = 0; t < 100; ++t) {
    IntMatrix A = oracle::random_symmetric(rng, 2 + t % 4, 3);
    // force a kernel by repeating a row and column
    for (std::size_t j = 0; j < A.cols(); ++j) A(A.rows() - 1, j) = A(0, j);
    for (std::size_t i = 0; i < A.rows(); ++i) A(i, A.cols() - 1) = A(i, 0);
    const IntMatrix Kt = kernel_basis(A);
    CHECK(Kt.cols() >= 1);
    const IntMatrix zero(A.rows(), Kt.cols());
    CHECK(A * Kt == zero);
    const IntMatrix Q = complete_to_unimodular(Kt);
    CHECK(abs(det(Q)) == 1);
    for (std::size_t i = 0; i < Kt.rows(); ++i)
      for (std::size_t j = 0; j < Kt.cols(); ++j) CHECK(Q(i, j) == Kt(i, j));
  }
}

TEST_CASE("legendre symbol") {
  CHECK(legendre(1, 3) == 1);
  CHECK(legendre(2, 3) == -1);
  CHECK(legendre(4, 5) == 1);
  CHECK(legendre(10, 5) == 0);
  CHECK(legendre(-1, 7) == -1);
  CHECK_THROWS_AS(legendre(1, 2), NotOddPrime);
  CHECK_THROWS_AS(legendre(1, 9), NotOddPrime);
  for (int p : {3, 5, 7, 11, 13, 101}) {
    std::vector<int> squares(p, 0);
    for (int a = 1; a < p; ++a) squares[(a * a) % p] = 1;
    for (int a = 1; a < p; ++a) CHECK(legendre(a, p) == (squares[a] ? 1 : -1));
  }
}

TEST_CASE("small number theory helpers") {
  CHECK(frac01(mpq_class(-1, 4)) == mpq_class(3, 4));
  CHECK(frac01(mpq_class(7, 3)) == mpq_class(1, 3));
  CHECK(mod_floor(-7, 3) == 2);
  CHECK(p_valuation(48, 2) == 4);
  CHECK(p_valuation(48, 3) == 1);
  CHECK(prime_divisors(360) == std::vector<mpz_class>{2, 3, 5});
  CHECK(prime_divisors(1).empty());
  CHECK_NOTHROW(require_symmetric(IntMatrix{{1, 2}, {2, 1}}));
  try {
    require_symmetric(IntMatrix{{1, 2}, {3, 1}});
    FAIL("expected NotSymmetric");
  } catch (const NotSymmetric& e) {
    CHECK(e.row + e.col == 1);
  }
}
