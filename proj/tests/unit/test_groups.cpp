#include <gtest/gtest.h>

#include <algorithm>

#include "modstrat/common/error.hpp"
#include "modstrat/groups/group.hpp"

using namespace modstrat;

namespace {

// Oracle: brute-force subgroup enumeration over all subsets (|G| <= 8).
std::vector<std::vector<int>> subgroups_by_subsets(const FiniteGroup& g) {
  std::vector<std::vector<int>> out;
  const int n = g.order();
  for (unsigned mask = 1; mask < (1u << n); mask += 2) {  // must contain 0
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    bool closed = true;
    for (int a : s)
      for (int b : s)
        if (!(mask & (1u << g.mul(a, b)))) closed = false;
    if (closed) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> elab_by_subsets(const FiniteGroup& g, int p) {
  std::vector<std::vector<int>> out;
  for (const auto& s : subgroups_by_subsets(g)) {
    if (s.size() == 1) continue;
    bool ok = true;
    for (int a : s) {
      if (a != 0 && g.element_order(a) != p) ok = false;
      for (int b : s)
        if (g.mul(a, b) != g.mul(b, a)) ok = false;
    }
    if (ok) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> element_sets(const std::vector<Subgroup>& hs) {
  std::vector<std::vector<int>> out;
  for (const auto& h : hs) out.push_back(h.sorted_elements());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Groups, CyclicOfOrderTwo) {
  auto g = FiniteGroup::from_table({{0, 1}, {1, 0}});
  EXPECT_EQ(g->order(), 2);
  EXPECT_EQ(g->inv(1), 1);
}

TEST(Groups, SymmetricGroupFromPermutations) {
  auto g = FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}});
  EXPECT_EQ(g->order(), 6);
  EXPECT_FALSE(g->is_abelian());
}

TEST(Groups, ValidationNamesTheAxiom) {
  try {
    // Latin square with identity 0 that is not associative.
    FiniteGroup::from_table({{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAssociative);
  }
  try {
    FiniteGroup::from_table({{1, 0}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoIdentity);
  }
  try {
    FiniteGroup::from_table({{0, 1}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoInverse);
  }
}

TEST(Groups, BuiltinsHaveExpectedOrders) {
  std::vector<std::pair<std::string, int>> want{{"C2", 2}, {"C3", 3}, {"C4", 4}, {"C6", 6}, {"V4", 4},
                                                {"E9", 9}, {"S3", 6}, {"D4", 8}, {"Q8", 8}};
  for (const auto& [name, order] : want) EXPECT_EQ(FiniteGroup::builtin(name)->order(), order) << name;
  EXPECT_FALSE(FiniteGroup::builtin("Q8")->is_abelian());
  EXPECT_FALSE(FiniteGroup::builtin("D4")->is_abelian());
}

TEST(Groups, ElementaryAbelianSubgroupsOfS3) {
  auto g = FiniteGroup::builtin("S3");
  auto e2 = elementary_abelian_subgroups(g, 2);
  EXPECT_EQ(e2.size(), 3u);
  for (const auto& e : e2) EXPECT_EQ(e.order(), 2);
  EXPECT_EQ(element_sets(e2), elab_by_subsets(*g, 2));
  auto e3 = elementary_abelian_subgroups(g, 3);
  ASSERT_EQ(e3.size(), 1u);
  EXPECT_EQ(e3[0].order(), 3);
}

TEST(Groups, QuaternionHasOneInvolutionSubgroup) {
  auto g = FiniteGroup::builtin("Q8");
  auto e = elementary_abelian_subgroups(g, 2);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].order(), 2);
  EXPECT_EQ(element_sets(e), elab_by_subsets(*g, 2));
}

TEST(Groups, EnumerationMatchesSubsetOracle) {
  for (auto name : {"C4", "C6", "V4", "S3", "D4", "Q8"}) {
    auto g = FiniteGroup::builtin(name);
    EXPECT_EQ(element_sets(all_subgroups(g)), subgroups_by_subsets(*g)) << name;
    for (int p : g->prime_divisors())
      EXPECT_EQ(element_sets(elementary_abelian_subgroups(g, p)), elab_by_subsets(*g, p)) << name << " p=" << p;
  }
}

TEST(Groups, LagrangeAndClosure) {
  for (auto name : FiniteGroup::builtin_names()) {
    auto g = FiniteGroup::builtin(name);
    for (const auto& h : all_subgroups(g)) {
      EXPECT_EQ(g->order() % h.order(), 0);
      for (int a : h.elements())
        for (int b : h.elements()) EXPECT_TRUE(h.contains(g->mul(a, b)));
    }
  }
}

TEST(Groups, ElementaryAbelianSetIsConjugationClosed) {
  for (auto name : FiniteGroup::builtin_names()) {
    auto g = FiniteGroup::builtin(name);
    auto es = elementary_abelian_subgroups(g);
    for (const auto& e : es)
      for (int x = 0; x < g->order(); ++x) {
        auto c = e.conjugate(x);
        EXPECT_TRUE(std::any_of(es.begin(), es.end(), [&](const Subgroup& f) { return f.same_elements(c); }));
      }
  }
}

TEST(Groups, CountInvariantUnderRelabelling) {
  auto a = FiniteGroup::builtin("S3");
  // Same group from different generators: (123) and (12).
  auto b = FiniteGroup::from_permutations({{1, 2, 0}, {1, 0, 2}});
  for (int p : {2, 3}) EXPECT_EQ(elementary_abelian_subgroups(a, p).size(), elementary_abelian_subgroups(b, p).size());
}

TEST(Groups, OrbitCategoryShapes) {
  auto c2 = orbit_category(FiniteGroup::builtin("C2"));
  EXPECT_EQ(c2.objects.size(), 1u);
  ASSERT_EQ(c2.morphisms.size(), 1u);
  EXPECT_TRUE(c2.morphisms[0].is_inclusion());

  auto s3 = orbit_category(FiniteGroup::builtin("S3"));
  ASSERT_EQ(s3.objects.size(), 4u);
  int c2s = 0;
  for (std::size_t i = 0; i < s3.objects.size(); ++i) c2s += s3.objects[i].order() == 2;
  EXPECT_EQ(c2s, 3);
  // The three C2 are mutually connected by conjugations.
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      bool found = std::any_of(s3.morphisms.begin(), s3.morphisms.end(),
                               [&](const OrbitMorphism& m) { return m.source == i && m.target == j; });
      EXPECT_TRUE(found) << i << "->" << j;
    }

  auto v4 = orbit_category(FiniteGroup::builtin("V4"));
  ASSERT_EQ(v4.objects.size(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    bool incl = std::any_of(v4.morphisms.begin(), v4.morphisms.end(),
                            [&](const OrbitMorphism& m) { return m.source == i && m.target == 3 && m.is_inclusion(); });
    EXPECT_TRUE(incl);
  }
}

TEST(Groups, CyclicDecomposition) {
  for (auto name : {"C2", "C4", "C6", "V4", "E9"}) {
    auto g = FiniteGroup::builtin(name);
    auto gens = g->cyclic_decomposition();
    int prod = 1;
    for (int x : gens) prod *= g->element_order(x);
    EXPECT_EQ(prod, g->order()) << name;
    EXPECT_EQ(Subgroup::generated_by(g, gens).order(), g->order());
  }
}

TEST(Groups, JsonRoundTrip) {
  auto g = FiniteGroup::builtin("D4");
  auto h = FiniteGroup::from_json(g->to_json());
  EXPECT_EQ(h->table(), g->table());
  auto s = FiniteGroup::from_json(nlohmann::json::parse(R"({"permutation_generators": [[1,0,2],[1,2,0]]})"));
  EXPECT_EQ(s->order(), 6);
}
