#include <gtest/gtest.h>

#include <random>
#include <set>

#include "modstrat/common/error.hpp"
#include "modstrat/exactalg/galois_field.hpp"
#include "modstrat/exactalg/linear.hpp"
#include "modstrat/exactalg/polynomial.hpp"

using namespace modstrat;

namespace {

PolyRingPtr f2xy() {
  return std::make_shared<PolyRing>(CoeffRing::prime_field(2), std::vector<int>{1, 1}, std::vector<std::string>{"x", "y"});
}

// Oracle: membership of a homogeneous f of degree d in the ideal generated
// by gens, by linear algebra on the span of all monomial multiples in degree d.
bool member_by_span(const PolyRingPtr& R, const std::vector<Polynomial>& gens, const Polynomial& f) {
  const int d = f.degree();
  if (f.is_zero()) return true;
  std::vector<Monomial> basis = R->monomials_of_degree(d);
  std::vector<Polynomial> span;
  for (const auto& g : gens) {
    if (g.is_zero() || g.degree() > d) continue;
    for (const auto& m : R->monomials_of_degree(d - g.degree())) span.push_back(g.times_monomial(m, Scalar(1)));
  }
  if (span.empty()) return false;
  Matrix A(R->coeffs(), basis.size(), span.size());
  for (std::size_t j = 0; j < span.size(); ++j)
    for (std::size_t i = 0; i < basis.size(); ++i) A.set(i, j, span[j].coeff_of(basis[i]));
  std::vector<Scalar> b(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) b[i] = f.coeff_of(basis[i]);
  return LinearSolver(A).in_image(b);
}

}  // namespace

TEST(Groebner, SingleVariable) {
  auto R = f2xy();
  auto gb = groebner(R, {Polynomial::parse(R, "x")});
  ASSERT_EQ(gb.basis().size(), 1u);
  EXPECT_EQ(gb.basis()[0], Polynomial::parse(R, "x"));
}

TEST(Groebner, MembershipOfMultiple) {
  auto R = f2xy();
  auto gb = groebner(R, {Polynomial::parse(R, "x^2"), Polynomial::parse(R, "x*y")});
  EXPECT_TRUE(gb.contains(Polynomial::parse(R, "x^2*y")));
  EXPECT_FALSE(gb.contains(Polynomial::parse(R, "y^3")));
}

TEST(Groebner, LinearGeneratorsGiveVariables) {
  auto R = f2xy();
  auto gb = groebner(R, {Polynomial::parse(R, "x+y"), Polynomial::parse(R, "x")});
  ASSERT_EQ(gb.basis().size(), 2u);
  EXPECT_EQ(gb.basis()[0], Polynomial::parse(R, "x"));
  EXPECT_EQ(gb.basis()[1], Polynomial::parse(R, "y"));
}

TEST(Groebner, RejectsInhomogeneous) {
  auto R = f2xy();
  try {
    groebner(R, {Polynomial::parse(R, "x^2+y")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonHomogeneousInput);
  }
}

TEST(Groebner, WeightedDegrees) {
  auto R = std::make_shared<PolyRing>(CoeffRing::prime_field(3), std::vector<int>{1, 2}, std::vector<std::string>{"a", "b"});
  auto gb = groebner(R, {Polynomial::parse(R, "a^2 + b")});
  EXPECT_TRUE(gb.contains(Polynomial::parse(R, "a^4 - b^2")));
  EXPECT_EQ(gb.quotient_dimension(4), 1u);  // a^4, a^2 b, b^2 modulo (a^2+b)*{a^2, b}
}

TEST(Groebner, DeterministicAndReduced) {
  auto R = f2xy();
  std::vector<Polynomial> g{Polynomial::parse(R, "x^2+x*y"), Polynomial::parse(R, "y^2+x*y")};
  auto a = groebner(R, g);
  auto b = groebner(R, {g[1], g[0]});
  ASSERT_EQ(a.basis().size(), b.basis().size());
  for (std::size_t i = 0; i < a.basis().size(); ++i) EXPECT_EQ(a.basis()[i], b.basis()[i]);
  for (std::size_t i = 0; i < a.basis().size(); ++i)
    for (const auto& t : a.basis()[i].terms())
      for (std::size_t j = 0; j < a.basis().size(); ++j)
        if (i != j) EXPECT_FALSE(divides(a.basis()[j].leading_monomial(), t.mono));
}

TEST(Groebner, RandomMembershipMatchesSpanOracle) {
  std::mt19937_64 rng(3);
  for (std::int64_t p : {2, 3}) {
    auto R = std::make_shared<PolyRing>(CoeffRing::prime_field(p), std::vector<int>{1, 1});
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Polynomial> gens;
      std::size_t ng = 1 + rng() % 3;
      for (std::size_t k = 0; k < ng; ++k) {
        int d = 1 + static_cast<int>(rng() % 3);
        Polynomial f(R);
        for (const auto& m : R->monomials_of_degree(d)) f = f + Polynomial::monomial(R, m, Scalar(static_cast<int>(rng() % p)));
        gens.push_back(f);
      }
      auto gb = groebner(R, gens);
      for (int d = 0; d <= 6; ++d)
        for (const auto& m : R->monomials_of_degree(d)) {
          Polynomial f = Polynomial::monomial(R, m);
          ASSERT_EQ(gb.contains(f), member_by_span(R, gens, f));
        }
      // A few random combinations too.
      for (int d = 1; d <= 6; ++d) {
        Polynomial f(R);
        for (const auto& m : R->monomials_of_degree(d)) f = f + Polynomial::monomial(R, m, Scalar(static_cast<int>(rng() % p)));
        ASSERT_EQ(gb.contains(f), member_by_span(R, gens, f));
      }
    }
  }
}

TEST(GaloisField, FieldAxiomsSmall) {
  for (auto [p, n] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {2, 4}, {3, 2}, {5, 1}}) {
    GaloisField F(p, n);
    std::set<std::int64_t> powers;
    for (std::int64_t k = 0; k < F.size() - 1; ++k) powers.insert(F.pow(F.primitive(), k));
    EXPECT_EQ(static_cast<std::int64_t>(powers.size()), F.size() - 1);
    for (std::int64_t a = 0; a < F.size(); ++a) {
      if (a != 0) EXPECT_EQ(F.mul(a, F.inv(a)), 1);
      EXPECT_EQ(F.add(a, F.neg(a)), 0);
      for (std::int64_t b = 0; b < F.size(); ++b)
        for (std::int64_t c = 0; c < F.size(); c += 3)
          EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
    }
  }
}
