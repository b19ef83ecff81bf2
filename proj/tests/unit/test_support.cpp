#include <gtest/gtest.h>

#include "modstrat/common/error.hpp"
#include "modstrat/support/support.hpp"

using namespace modstrat;

namespace {

const CoeffRing Z = CoeffRing::integers();
const CoeffRing F2 = CoeffRing::prime_field(2);

GroupPtr grp(const char* name) { return FiniteGroup::builtin(name); }

struct V4Fixture {
  GroupPtr g = grp("V4");
  ModelPtr model = stmod_spectrum(g, F2, 4);
  FiberPtr fiber = model->fibers.at(2);
  PresentationPtr pres = fiber->presentation();

  CohomologyClass x(int i) const { return pres->generators()[i].cls; }
  Lattice carlson(const char* which) const {
    const std::string w = which;
    if (w == "x1") return carlson_module(x(0));
    if (w == "x2") return carlson_module(x(1));
    return carlson_module(x(0) + x(1));
  }
  Lattice omega(int n) const { return syzygy_of_trivial(*pres->resolution(), n); }
  SpecializationClosedSubset closed(const std::string& f) const {
    return SpecializationClosedSubset::closed(model, 2, {Polynomial::parse(fiber->ring(), f)});
  }
};

Truth support_is(const SupportResult& s, const SpecializationClosedSubset& expected) {
  return s.subset.equals(expected);
}

}  // namespace

TEST(Support, V4Examples) {
  V4Fixture v;
  auto full = SpecializationClosedSubset::full(v.model);
  auto none = SpecializationClosedSubset::empty(v.model);
  EXPECT_EQ(support_is(cohomological_support(trivial_lattice(v.g, F2), v.model, 4), full), Truth::True);
  EXPECT_EQ(support_is(cohomological_support(regular_lattice(v.g, F2), v.model, 4), none), Truth::True);
  EXPECT_EQ(support_is(cohomological_support(v.carlson("x1"), v.model, 4), v.closed("x1")), Truth::True);
  EXPECT_EQ(support_is(cohomological_support(v.carlson("x2"), v.model, 4), v.closed("x2")), Truth::True);
  EXPECT_EQ(support_is(cohomological_support(v.carlson("x1+x2"), v.model, 4), v.closed("x1+x2")), Truth::True);
  EXPECT_EQ(support_is(cohomological_support(v.omega(1), v.model, 4), full), Truth::True);
  EXPECT_EQ(support_is(cohomological_support(v.omega(2), v.model, 4), full), Truth::True);
}

TEST(Support, SumRuleOnV4) {
  V4Fixture v;
  std::vector<Lattice> mods{trivial_lattice(v.g, F2), regular_lattice(v.g, F2), v.carlson("x1"), v.carlson("x2")};
  for (const auto& a : mods)
    for (const auto& b : mods) {
      auto lhs = cohomological_support(direct_sum(a, b), v.model, 3).subset;
      auto rhs = cohomological_support(a, v.model, 3).subset.unite(cohomological_support(b, v.model, 3).subset);
      EXPECT_EQ(lhs.equals(rhs), Truth::True);
    }
}

TEST(RankVariety, Examples) {
  V4Fixture v;
  PolyRingPtr y = rank_variety_ring(v.g);
  auto strs = [](const std::vector<Polynomial>& ideal) {
    std::vector<std::string> out;
    for (const auto& f : ideal) out.push_back(f.to_string());
    return out;
  };
  EXPECT_TRUE(rank_variety(trivial_lattice(v.g, F2), y).empty());
  EXPECT_EQ(strs(rank_variety(regular_lattice(v.g, F2), y)), (std::vector<std::string>{"Y1^2", "Y1*Y2", "Y2^2"}));
  EXPECT_TRUE(rank_variety(v.omega(2), y).empty());  // odd rank is never free
  EXPECT_THROW(rank_variety_ring(grp("C4")), Error);
  EXPECT_THROW(rank_variety(trivial_lattice(grp("S3"), F2), y), Error);
}

// Brute-force oracle: alpha over F_4 lies in V^r(M) iff u_alpha has rank below
// rank(M)/2.
TEST(RankVariety, AgreesWithPointwiseFreenessOverF4) {
  V4Fixture v;
  PolyRingPtr y = rank_variety_ring(v.g);
  GaloisField f4(2, 2);
  const std::vector<int> gens = v.g->cyclic_decomposition();
  for (const char* w : {"x1", "x2", "x1+x2"}) {
    Lattice m = v.carlson(w);
    const auto ideal = rank_variety(m, y);
    for (std::int64_t a = 0; a < 4; ++a)
      for (std::int64_t b = 0; b < 4; ++b) {
        if (a == 0 && b == 0) continue;
        // u_alpha over F_4, entries as field elements; rank by elimination
        const std::size_t n = m.rank();
        std::vector<std::vector<std::int64_t>> u(n, std::vector<std::int64_t>(n, 0));
        const std::int64_t alpha[2] = {a, b};
        for (int i = 0; i < 2; ++i) {
          Matrix d = m.action(gens[i]) - Matrix::identity(F2, n);
          for (std::size_t r = 0; r < n; ++r)
            for (const auto& e : d.row(r))
              u[r][e.col] = f4.add(u[r][e.col], f4.mul(alpha[i], f4.from_prime(static_cast<std::int64_t>(
                                                                      boost::multiprecision::numerator(e.value)))));
        }
        std::size_t rank = 0;
        for (std::size_t c = 0; c < n && rank < n; ++c) {
          std::size_t piv = rank;
          while (piv < n && u[piv][c] == 0) ++piv;
          if (piv == n) continue;
          std::swap(u[piv], u[rank]);
          const std::int64_t s = f4.inv(u[rank][c]);
          for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || u[r][c] == 0) continue;
            const std::int64_t f = f4.mul(u[r][c], s);
            for (std::size_t k = 0; k < n; ++k) u[r][k] = f4.sub(u[r][k], f4.mul(f, u[rank][k]));
          }
          ++rank;
        }
        const bool not_free = rank < n / 2;
        bool in_variety = true;
        const std::int64_t pt[2] = {a, b};
        for (const auto& g : ideal)
          if (evaluate(f4, g, pt) != 0) in_variety = false;
        EXPECT_EQ(not_free, in_variety) << w << " alpha=(" << a << "," << b << ")";
      }
  }
}

TEST(Support, AvruninScottOnV4) {
  V4Fixture v;
  std::vector<Lattice> mods{trivial_lattice(v.g, F2), regular_lattice(v.g, F2), v.carlson("x1"),
                            v.carlson("x2"),          v.carlson("x1+x2"),       v.omega(1)};
  for (std::size_t i = 0; i < mods.size(); ++i) EXPECT_EQ(avrunin_scott_agree(mods[i], v.model, 4), Truth::True) << i;
  EXPECT_EQ(avrunin_scott_agree(v.omega(2), v.model, 4), Truth::True);
}

TEST(Support, DegreeOnePairingIsInvertible) {
  V4Fixture v;
  auto a = degree_one_pairing(*v.fiber);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ((a[0][0] * a[1][1] + a[0][1] * a[1][0]) % 2, 1);
}

TEST(Support, IntegralC6) {
  GroupPtr g = grp("C6");
  ModelPtr model = stmod_spectrum(g, Z, 4);
  auto full = SpecializationClosedSubset::full(model);
  auto at2 = SpecializationClosedSubset::closed(model, 2, {});
  auto at3 = SpecializationClosedSubset::closed(model, 3, {});
  EXPECT_EQ(support_for_integral_lattice(trivial_lattice(g, Z), model, 4).subset.equals(full), Truth::True);
  EXPECT_EQ(support_for_integral_lattice(regular_lattice(g, Z), model, 4).subset.is_empty(), Truth::True);
  // C2 acts trivially on C6/C2, so the 2-fiber sees three trivial summands
  Lattice mod_c2 = permutation_lattice(Subgroup::generated_by(g, {3}), Z);
  Lattice mod_c3 = permutation_lattice(Subgroup::generated_by(g, {2}), Z);
  ASSERT_EQ(mod_c2.rank(), 3u);
  EXPECT_EQ(support_for_integral_lattice(mod_c2, model, 4).subset.equals(at2), Truth::True);
  EXPECT_EQ(support_for_integral_lattice(mod_c3, model, 4).subset.equals(at3), Truth::True);
  EXPECT_THROW(support_for_integral_lattice(trivial_lattice(g, F2), model, 4), Error);
}

TEST(Support, Errors) {
  V4Fixture v;
  EXPECT_THROW(cohomological_support(trivial_lattice(v.g, F2), v.model, 9), Error);
  EXPECT_THROW(cohomological_support(trivial_lattice(grp("C4"), F2), v.model, 2), Error);
  EXPECT_THROW(cohomological_support(trivial_lattice(v.g, Z), v.model, 2), Error);
}

TEST(Support, JsonIsDeterministic) {
  V4Fixture v;
  auto a = cohomological_support(v.carlson("x1"), v.model, 4).to_json().dump();
  auto b = cohomological_support(v.carlson("x1"), v.model, 4).to_json().dump();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.find("specR_removed") != std::string::npos, true);
}
