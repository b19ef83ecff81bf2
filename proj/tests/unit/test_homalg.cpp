#include <gtest/gtest.h>

#include "modstrat/common/error.hpp"
#include "modstrat/homalg/cohomology.hpp"

using namespace modstrat;

namespace {

const CoeffRing Z = CoeffRing::integers();
const CoeffRing F2 = CoeffRing::prime_field(2);
const CoeffRing F3 = CoeffRing::prime_field(3);

std::vector<CohomologyClass> basis_classes(const ResolutionPtr& res, int n) {
  Subquotient h = cohomology_subquotient(*res, trivial_lattice(res->group(), res->ring()), n);
  std::vector<CohomologyClass> out;
  for (std::size_t c = 0; c < h.num_generators(); ++c)
    out.emplace_back(res, n, h.generators().column_vector(c));
  return out;
}

AbelianGroup H(const ResolutionPtr& res, int n) {
  return cohomology(*res, trivial_lattice(res->group(), res->ring()), n);
}

AbelianGroup cyclic(const CoeffRing& r, std::vector<int> torsion, std::size_t free = 0) {
  AbelianGroup a;
  a.ring = r;
  a.free_rank = free;
  for (int t : torsion) a.torsion.emplace_back(t);
  return a;
}

Subgroup subgroup_of_order(const GroupPtr& g, int order) {
  for (const auto& h : all_subgroups(g))
    if (h.order() == order) return h;
  throw std::runtime_error("no such subgroup");
}

}  // namespace

TEST(Resolution, PeriodicC2) {
  auto res = Resolution::build(FiniteGroup::builtin("C2"), Z, 6, ResolutionStrategy::Periodic);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(res->rank(n), 1u);
  for (int n = 1; n <= 6; ++n) {
    const auto& c = res->d(n).at(0, 0);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0].second, Scalar(n % 2 ? -1 : 1));  // g - 1 then g + 1
    EXPECT_EQ(c[1].second, Scalar(1));
  }
}

TEST(Resolution, MinimalV4Ranks) {
  auto res = Resolution::build(FiniteGroup::builtin("V4"), F2, 6, ResolutionStrategy::Minimal);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(res->rank(n), static_cast<std::size_t>(n + 1));
}

TEST(Resolution, BarS3Ranks) {
  auto res = Resolution::build(FiniteGroup::builtin("S3"), Z, 3, ResolutionStrategy::Bar);
  EXPECT_EQ(res->ranks(), (std::vector<std::size_t>{1, 5, 25, 125}));
}

TEST(Resolution, MinimalRanksForNonabelian2Groups) {
  // dim H^n(D4; F2) = n + 1 and H*(Q8; F2) has Poincare series (1+t+t^2+t^3)/(1-t^4)
  auto d4 = Resolution::build(FiniteGroup::builtin("D4"), F2, 6);
  auto q8 = Resolution::build(FiniteGroup::builtin("Q8"), F2, 6);
  for (int n = 0; n <= 6; ++n) {
    EXPECT_EQ(d4->rank(n), static_cast<std::size_t>(n + 1));
    EXPECT_EQ(q8->rank(n), (n % 4 == 1 || n % 4 == 2) ? 2u : 1u);
  }
}

TEST(Resolution, StrategyAvailability) {
  auto s3 = FiniteGroup::builtin("S3");
  EXPECT_THROW(Resolution::build(s3, Z, 3, ResolutionStrategy::Periodic), Error);
  EXPECT_THROW(Resolution::build(s3, F2, 3, ResolutionStrategy::Minimal), Error);
  EXPECT_THROW(Resolution::build(FiniteGroup::builtin("C2"), Z, 3, ResolutionStrategy::Minimal), Error);
  EXPECT_THROW(Resolution::build(s3, Z, 3, ResolutionStrategy::TensorProduct), Error);
  EXPECT_NO_THROW(Resolution::build(s3, Z, 4));
}

TEST(Cohomology, C2Integral) {
  auto res = Resolution::build(FiniteGroup::builtin("C2"), Z, 6);
  EXPECT_EQ(H(res, 0), cyclic(Z, {}, 1));
  EXPECT_TRUE(H(res, 1).is_zero());
  EXPECT_EQ(H(res, 2), cyclic(Z, {2}));
  EXPECT_EQ(H(res, 5), cyclic(Z, {}));
  EXPECT_THROW(H(res, 6), Error);
}

TEST(Cohomology, IndependentOfStrategy) {
  using S = ResolutionStrategy;
  struct Case {
    const char* group;
    std::vector<S> strategies;
    int cap;
  };
  std::vector<Case> cases{
      {"C2", {S::Periodic, S::TensorProduct, S::KernelCover, S::Bar}, 6},
      {"C3", {S::Periodic, S::TensorProduct, S::KernelCover, S::Bar}, 6},
      {"C4", {S::Periodic, S::TensorProduct, S::KernelCover}, 6},
      {"C4", {S::Periodic, S::Bar}, 4},
      {"V4", {S::TensorProduct, S::KernelCover}, 6},
      {"V4", {S::TensorProduct, S::Bar}, 4},
  };
  for (const auto& c : cases)
    for (CoeffRing r : {Z, F2, F3}) {
      auto g = FiniteGroup::builtin(c.group);
      auto ref = Resolution::build(g, r, c.cap, c.strategies[0]);
      for (std::size_t s = 1; s < c.strategies.size(); ++s) {
        auto other = Resolution::build(g, r, c.cap, c.strategies[s]);
        for (int n = 0; n < c.cap; ++n)
          EXPECT_EQ(H(ref, n), H(other, n)) << c.group << " " << r.to_string() << " " << to_string(c.strategies[s])
                                            << " n=" << n;
      }
    }
}

TEST(Cohomology, ElementaryAbelianKilledByP) {
  for (auto [name, p] : {std::pair{"C2", 2}, {"C3", 3}, {"V4", 2}, {"E9", 3}}) {
    auto g = FiniteGroup::builtin(name);
    auto res = Resolution::build(g, CoeffRing::localized(p), 7);
    EXPECT_EQ(H(res, 0), cyclic(CoeffRing::localized(p), {}, 1));
    EXPECT_TRUE(H(res, 1).is_zero());
    for (int n = 1; n <= 6; ++n) EXPECT_TRUE(H(res, n).annihilated_by(p)) << name << " " << n;
  }
}

TEST(Cohomology, ModuleCoefficients) {
  // H^n(C2; sign) over Z: Z/2 in odd degrees, 0 in even
  auto g = FiniteGroup::builtin("C2");
  auto res = Resolution::build(g, Z, 6);
  Lattice sign = sign_lattice(Subgroup::make(g, {0}), Z);
  EXPECT_TRUE(cohomology(*res, sign, 0).is_zero());
  EXPECT_EQ(cohomology(*res, sign, 1), cyclic(Z, {2}));
  EXPECT_TRUE(cohomology(*res, sign, 2).is_zero());
  // Shapiro: regular module is cohomologically trivial in positive degrees
  auto s3 = FiniteGroup::builtin("S3");
  auto r3 = Resolution::build(s3, Z, 4);
  for (int n = 1; n < 4; ++n) EXPECT_TRUE(cohomology(*r3, regular_lattice(s3, Z), n).is_zero());
}

TEST(Tate, Examples) {
  auto c2 = FiniteGroup::builtin("C2");
  CompleteResolution cr2(Resolution::build(c2, Z, 5));
  Lattice t2 = trivial_lattice(c2, Z);
  EXPECT_EQ(tate_cohomology(cr2, t2, 0), cyclic(Z, {2}));
  auto c3 = FiniteGroup::builtin("C3");
  CompleteResolution cr3(Resolution::build(c3, Z, 5));
  Lattice t3 = trivial_lattice(c3, Z);
  EXPECT_TRUE(tate_cohomology(cr3, t3, -1).is_zero());
  for (int n = -5; n <= 4; ++n) {
    auto h = tate_cohomology(cr3, t3, n);
    if (n % 2 == 0)
      EXPECT_EQ(h, cyclic(Z, {3})) << n;
    else
      EXPECT_TRUE(h.is_zero()) << n;
  }
  EXPECT_THROW(tate_cohomology(cr3, t3, 5), Error);
  EXPECT_THROW(tate_cohomology(cr3, t3, -6), Error);
}

TEST(Tate, AgreesWithCohomologyAndKilledByOrder) {
  for (auto [name, p, r] : {std::tuple{"C2", 2, 1}, {"C3", 3, 1}, {"V4", 2, 2}, {"E9", 3, 2}}) {
    auto g = FiniteGroup::builtin(name);
    CoeffRing A = CoeffRing::localized(p);
    auto res = Resolution::build(g, A, 5);
    CompleteResolution cr(res);
    Lattice t = trivial_lattice(g, A);
    int pr = 1;
    for (int i = 0; i < r; ++i) pr *= p;
    for (int n = -4; n <= 4; ++n) {
      auto h = tate_cohomology(cr, t, n);
      EXPECT_TRUE(h.annihilated_by(pr)) << name << " " << n;
      if (n >= 1) EXPECT_EQ(h, cohomology(*res, t, n));
    }
    EXPECT_EQ(tate_cohomology(cr, t, 0).order(), Integer(pr));
  }
}

TEST(Tate, NormSplice) {
  auto g = FiniteGroup::builtin("S3");
  CompleteResolution cr(Resolution::build(g, Z, 3));
  const auto& n = cr.d(0);
  EXPECT_EQ(n.at(0, 0).size(), 6u);
  // d o d = 0 across the splice
  for (int k = -2; k <= 2; ++k) EXPECT_TRUE((cr.d(k).unroll() * cr.d(k + 1).unroll()).is_zero()) << k;
}

TEST(Lift, TrivialCases) {
  auto res = Resolution::build(FiniteGroup::builtin("C2"), Z, 6);
  auto z = lift_to_chain_map(CohomologyClass::zero(res, 2));
  for (const auto& f : z.lift()) EXPECT_TRUE(f.is_zero());
  auto one = lift_to_chain_map(CohomologyClass::identity(res));
  for (const auto& f : one.lift()) EXPECT_TRUE(f.unroll().is_identity());
  // generator of H^2(C2;Z) lifts to the degree-2 shift
  auto u = lift_to_chain_map(CohomologyClass(res, 2, {Scalar(1)}));
  for (const auto& f : u.lift()) EXPECT_TRUE(f.unroll().is_identity());
  EXPECT_EQ(u.lift().size(), 5u);
}

TEST(Lift, ChainMapCommutes) {
  auto res = Resolution::build(FiniteGroup::builtin("Q8"), F2, 6);
  for (int n = 1; n <= 3; ++n)
    for (auto c : basis_classes(res, n)) {
      c.lift_to(6 - n);
      for (int k = 1; k <= 6 - n; ++k)
        EXPECT_TRUE((res->unrolled(k) * c.lift()[k].unroll() - c.lift()[k - 1].unroll() * res->unrolled(n + k)).is_zero());
    }
}

TEST(Cup, UnitAndPeriodicity) {
  auto res = Resolution::build(FiniteGroup::builtin("C2"), Z, 6);
  CohomologyClass u(res, 2, {Scalar(1)});
  auto one = CohomologyClass::identity(res);
  EXPECT_EQ(cup_product(one, u).cocycle(), u.cocycle());
  EXPECT_EQ(cup_product(u, one).cocycle(), u.cocycle());
  auto u2 = cup_product(u, u);
  EXPECT_EQ(u2.degree(), 4);
  Subquotient h4 = cohomology_subquotient(*res, trivial_lattice(res->group(), Z), 4);
  EXPECT_EQ(h4.coordinates(u2.cocycle()), std::vector<Scalar>{Scalar(1)});
}

TEST(Cup, GradedCommutativity) {
  for (auto [name, r] : {std::pair{"V4", F2}, {"E9", F3}, {"C3", F3}, {"D4", F2}}) {
    auto res = Resolution::build(FiniteGroup::builtin(name), r, 6);
    for (int p = 1; p <= 2; ++p)
      for (int q = 1; q <= 2; ++q)
        for (const auto& a : basis_classes(res, p))
          for (const auto& b : basis_classes(res, q)) {
            auto ab = cup_product(a, b), ba = cup_product(b, a);
            Scalar sign = (p * q) % 2 ? -1 : 1;
            EXPECT_TRUE((ab + ba.scaled(-sign)).is_coboundary()) << name << " " << p << " " << q;
          }
  }
}

TEST(Cup, Associativity) {
  for (auto [name, r] : {std::pair{"V4", F2}, {"Q8", F2}, {"C3", F3}}) {
    auto res = Resolution::build(FiniteGroup::builtin(name), r, 7);
    std::vector<CohomologyClass> gens;
    for (int n = 1; n <= 2; ++n)
      for (auto& c : basis_classes(res, n)) gens.push_back(c);
    for (const auto& a : gens)
      for (const auto& b : gens)
        for (const auto& c : gens) {
          if (a.degree() + b.degree() + c.degree() > 6) continue;
          auto l = cup_product(cup_product(a, b), c), rr = cup_product(a, cup_product(b, c));
          EXPECT_TRUE((l + rr.scaled(-1)).is_coboundary()) << name;
        }
  }
}

TEST(Restriction, Basics) {
  auto s3 = FiniteGroup::builtin("S3");
  auto res = Resolution::build(s3, Z, 5);
  auto one = CohomologyClass::identity(res);
  Subgroup c3 = subgroup_of_order(s3, 3);
  auto sub = Resolution::build(c3.group(), Z, 5);
  auto r1 = restriction_map(one, sub, GroupHom::inclusion(c3));
  EXPECT_EQ(r1.cocycle(), std::vector<Scalar>{Scalar(1)});
  // H = G: restriction is the identity on classes
  auto whole = Subgroup::whole(s3);
  for (int n = 1; n <= 4; ++n)
    for (const auto& c : basis_classes(res, n)) {
      auto r = restriction_map(c, res, GroupHom::inclusion(whole));
      EXPECT_TRUE((r + c.scaled(-1)).is_coboundary());
    }
  // H^4(S3; Z) = Z/6; its 3-torsion restricts nontrivially to C3
  auto h4 = basis_classes(res, 4);
  ASSERT_EQ(H(res, 4), cyclic(Z, {6}));
  auto r4 = restriction_map(h4[0].scaled(2), sub, GroupHom::inclusion(c3));
  EXPECT_FALSE(r4.is_coboundary());
}

TEST(Carlson, V4Modules) {
  auto g = FiniteGroup::builtin("V4");
  auto res = Resolution::build(g, F2, 4);
  auto h1 = basis_classes(res, 1);
  ASSERT_EQ(h1.size(), 2u);
  Lattice l = carlson_module(h1[0]);
  EXPECT_EQ(l.rank(), 2u);
  EXPECT_THROW(carlson_module(CohomologyClass::zero(res, 1)), Error);
  // Omega(trivial F2) over C2 is trivial
  auto c2 = FiniteGroup::builtin("C2");
  Lattice om = syzygy_of_trivial(*Resolution::build(c2, F2, 3), 1);
  EXPECT_EQ(om, trivial_lattice(c2, F2));
}
