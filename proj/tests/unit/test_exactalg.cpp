#include <gtest/gtest.h>

#include <random>

#include "modstrat/common/error.hpp"
#include "modstrat/exactalg/linear.hpp"

using namespace modstrat;

namespace {

const CoeffRing ZZ = CoeffRing::integers();

Matrix random_matrix(const CoeffRing& ring, std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi,
                     double zero_prob = 0.3) {
  std::uniform_int_distribution<int> val(lo, hi);
  std::uniform_real_distribution<double> coin(0, 1);
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (coin(rng) > zero_prob) m.set(i, j, Scalar(val(rng)));
  return m;
}

// Oracle: determinant by cofactor expansion (small sizes only).
Integer det(const std::vector<std::vector<Integer>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j] == 0) continue;
    std::vector<std::vector<Integer>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    Integer term = a[0][j] * det(minor);
    total += (j % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Oracle: k-th determinantal divisor = gcd of all k x k minors; the
// elementary divisors are the successive quotients.
std::vector<Integer> divisors_by_minors(const Matrix& A) {
  const std::size_t m = std::min(A.rows(), A.cols());
  std::vector<Integer> dk(m + 1, 0);
  dk[0] = 1;
  for (std::size_t k = 1; k <= m; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(A.rows(), k, 0, cur, rs);
    subsets(A.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = numerator(A.at(r[i], c[j]));
        g = gcd(g, det(sub));
      }
    dk[k] = abs(g);
  }
  std::vector<Integer> out(m, 0);
  for (std::size_t k = 1; k <= m; ++k) out[k - 1] = dk[k] == 0 ? Integer(0) : Integer(dk[k] / dk[k - 1]);
  return out;
}

Integer det_of(const Matrix& M) {
  std::vector<std::vector<Integer>> a(M.rows(), std::vector<Integer>(M.cols()));
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) a[i][j] = numerator(M.at(i, j));
  return det(a);
}

void check_smith(const Matrix& A) {
  SmithDecomposition s = smith_normal_form(A);
  ASSERT_EQ(s.U * A * s.V, s.D) << A.to_string();
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) ASSERT_EQ(s.D.at(i, j), 0);
  for (std::size_t k = 0; k + 1 < s.elementary_divisors.size(); ++k) {
    const Scalar& a = s.elementary_divisors[k];
    const Scalar& b = s.elementary_divisors[k + 1];
    if (a == 0) {
      ASSERT_EQ(b, 0);
    } else if (A.ring().kind() == CoeffRing::Kind::Integers) {
      ASSERT_EQ(numerator(b) % numerator(a), 0);
    }
  }
  if (A.ring().kind() == CoeffRing::Kind::Integers) {
    ASSERT_EQ(abs(det_of(s.U)), 1);
    ASSERT_EQ(abs(det_of(s.V)), 1);
  }
}

}  // namespace

TEST(Smith, IdentityStaysIdentity) {
  SmithDecomposition s = smith_normal_form(Matrix::identity(ZZ, 3));
  EXPECT_TRUE(s.D.is_identity());
  EXPECT_EQ(s.elementary_divisors, (std::vector<Scalar>{1, 1, 1}));
}

TEST(Smith, DiagTwoThree) {
  Matrix A = Matrix::from_ints(ZZ, {{2, 0}, {0, 3}});
  SmithDecomposition s = smith_normal_form(A);
  EXPECT_EQ(s.elementary_divisors, (std::vector<Scalar>{1, 6}));
  check_smith(A);
}

TEST(Smith, ZeroMatrix) {
  SmithDecomposition s = smith_normal_form(Matrix::zero(ZZ, 2, 2));
  EXPECT_EQ(s.elementary_divisors, (std::vector<Scalar>{0, 0}));
  EXPECT_EQ(s.rank, 0u);
}

TEST(Smith, FieldDivisorsAreZeroOne) {
  const CoeffRing F3 = CoeffRing::prime_field(3);
  Matrix A = Matrix::from_ints(F3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 2}});
  SmithDecomposition s = smith_normal_form(A);
  EXPECT_EQ(s.U * A * s.V, s.D);
  EXPECT_EQ(s.elementary_divisors, (std::vector<Scalar>{1, 1, 0}));
}

TEST(Smith, LocalizedDivisorsArePrimePowers) {
  const CoeffRing Z2 = CoeffRing::localized(2);
  Matrix A = Matrix::from_ints(Z2, {{6, 0}, {0, 12}});
  SmithDecomposition s = smith_normal_form(A);
  EXPECT_EQ(s.U * A * s.V, s.D);
  EXPECT_EQ(s.elementary_divisors, (std::vector<Scalar>{2, 4}));
}

TEST(Smith, CompositeModulusRejected) {
  try {
    smith_normal_form(Matrix::identity(CoeffRing::integers_mod(4), 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedRing);
  }
}

TEST(Smith, RandomMatchesDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    Matrix A = random_matrix(ZZ, rng, r, c, -9, 9);
    check_smith(A);
    std::vector<Integer> oracle = divisors_by_minors(A);
    SmithDecomposition s = smith_normal_form(A);
    for (std::size_t k = 0; k < oracle.size(); ++k) ASSERT_EQ(numerator(s.elementary_divisors[k]), oracle[k]);
  }
}

TEST(Smith, LargeEntriesFallBackToBigIntegers) {
  Matrix A(ZZ, 3, 3);
  Integer big = Integer(1) << 62;
  A.set(0, 0, Scalar(big));
  A.set(0, 1, Scalar(big + 1));
  A.set(1, 0, Scalar(big - 1));
  A.set(1, 1, Scalar(big));
  A.set(2, 2, Scalar(big * 3));
  check_smith(A);
}

TEST(Solve, Examples) {
  auto x = solve_linear(Matrix::from_ints(ZZ, {{2}}), std::vector<Scalar>{4});
  ASSERT_TRUE(x);
  EXPECT_EQ((*x)[0], 2);
  EXPECT_FALSE(solve_linear(Matrix::from_ints(ZZ, {{2}}), std::vector<Scalar>{1}));
  auto q = solve_linear(Matrix::from_ints(CoeffRing::rationals(), {{2}}), std::vector<Scalar>{1});
  ASSERT_TRUE(q);
  EXPECT_EQ((*q)[0], Scalar(1, 2));
}

TEST(Solve, ObstructionCertificate) {
  Matrix A = Matrix::from_ints(ZZ, {{2, 4}, {0, 6}});
  std::vector<Scalar> b{1, 0};
  SolveOutcome o = LinearSolver(A).solve(b);
  ASSERT_FALSE(o.solvable);
  Scalar phib = 0;
  for (std::size_t i = 0; i < 2; ++i) phib += o.obstruction[i] * b[i];
  for (std::size_t j = 0; j < 2; ++j) {
    Scalar s = o.obstruction[0] * A.at(0, j) + o.obstruction[1] * A.at(1, j);
    if (o.modulus == 0)
      EXPECT_EQ(s, 0);
    else
      EXPECT_EQ(numerator(s) % numerator(o.modulus), 0);
  }
  if (o.modulus == 0)
    EXPECT_NE(phib, 0);
  else
    EXPECT_NE(numerator(phib) % numerator(o.modulus), 0);
}

TEST(Solve, RandomSubstitutionAcrossRings) {
  std::mt19937_64 rng(5);
  const std::vector<CoeffRing> rings{ZZ, CoeffRing::rationals(), CoeffRing::prime_field(5), CoeffRing::localized(3),
                                     CoeffRing::integers_mod(4), CoeffRing::integers_mod(9)};
  for (const auto& ring : rings) {
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
      Matrix A = random_matrix(ring, rng, r, c, -6, 6);
      std::vector<Scalar> x0(c);
      for (auto& v : x0) v = ring.reduce(Scalar(static_cast<int>(rng() % 11) - 5));
      std::vector<Scalar> b = A.apply(x0);
      LinearSolver solver(A);
      SolveOutcome o = solver.solve(b);
      ASSERT_TRUE(o.solvable) << ring.to_string();
      ASSERT_EQ(A.apply(o.solution), b);
      const Matrix& K = solver.kernel();
      ASSERT_TRUE((A * K).is_zero());
    }
  }
}

TEST(Solve, KernelOverIntegersModFour) {
  const CoeffRing Z4 = CoeffRing::integers_mod(4);
  Matrix A = Matrix::from_ints(Z4, {{2}});
  LinearSolver s(A);
  ASSERT_GE(s.kernel().cols(), 1u);
  EXPECT_EQ(s.kernel().at(0, 0), 2);
  EXPECT_FALSE(s.in_image(std::vector<Scalar>{1}));
  EXPECT_TRUE(s.in_image(std::vector<Scalar>{2}));
}

TEST(Subquotient, CyclicOfOrderTwo) {
  // 0 -> Z --2--> Z -> 0 : H = Z/2 at the middle.
  Matrix A = Matrix::from_ints(ZZ, {{2}});
  Matrix B(ZZ, 0, 1);
  Subquotient h(A, B);
  EXPECT_EQ(h.group().to_string(), "Z/2");
  EXPECT_EQ(h.coordinates(std::vector<Scalar>{3})[0], 1);
  EXPECT_TRUE(h.is_boundary(std::vector<Scalar>{4}));
}

TEST(Subquotient, ModularCoefficients) {
  // Over Z/4: ker(2) / im(0) = {0,2} = Z/2.
  const CoeffRing Z4 = CoeffRing::integers_mod(4);
  Subquotient h(Matrix(Z4, 1, 0), Matrix::from_ints(Z4, {{2}}));
  EXPECT_EQ(h.group().torsion, std::vector<Integer>{2});
  // ker(0)/im(2) = Z/4 / 2 = Z/2
  Subquotient h2(Matrix::from_ints(Z4, {{2}}), Matrix(Z4, 0, 1));
  EXPECT_EQ(h2.group().torsion, std::vector<Integer>{2});
}

TEST(Subquotient, PreimageOfImage) {
  Matrix A = Matrix::from_ints(ZZ, {{2, 0}, {0, 3}});
  Matrix W = Matrix::from_ints(ZZ, {{1}, {1}});
  Matrix P = preimage_of_image(A, W);
  ASSERT_EQ(P.cols(), 1u);
  EXPECT_EQ(abs(numerator(P.at(0, 0))), 6);
  std::vector<bool> in = columns_in_image(A, Matrix::from_ints(ZZ, {{2, 1}, {3, 3}}));
  EXPECT_TRUE(in[0]);
  EXPECT_FALSE(in[1]);
}
