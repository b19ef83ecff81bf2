#include <gtest/gtest.h>

#include <random>

#include "modstrat/common/error.hpp"
#include "modstrat/exactalg/linear.hpp"
#include "modstrat/lattices/lattice.hpp"

using namespace modstrat;

namespace {

const CoeffRing Z = CoeffRing::integers();

int element_of_order(const GroupPtr& g, int k) {
  for (int x = 0; x < g->order(); ++x)
    if (g->element_order(x) == k) return x;
  return -1;
}

Subgroup index_two(const GroupPtr& g) {
  for (const auto& h : all_subgroups(g))
    if (h.index() == 2) return h;
  throw std::runtime_error("no index-2 subgroup");
}

Subgroup trivial_subgroup(const GroupPtr& g) { return Subgroup::make(g, {0}); }

// Isomorphism test by brute force: some equivariant map in the span with
// small coefficients that is invertible. Enough for the tiny cases here.
bool isomorphic_small(const Lattice& a, const Lattice& b) {
  if (a.rank() != b.rank()) return false;
  auto basis = equivariant_hom_basis(a, b);
  const std::size_t k = basis.size();
  if (k == 0) return a.rank() == 0;
  std::vector<int> c(k, -1);
  while (true) {
    Matrix f(a.ring(), b.rank(), a.rank());
    for (std::size_t i = 0; i < k; ++i) f = f + basis[i].scaled(Scalar(c[i]));
    try {
      invert(f);
      return true;
    } catch (const Error&) {
    }
    std::size_t i = 0;
    while (i < k && c[i] == 1) c[i++] = -1;
    if (i == k) return false;
    ++c[i];
  }
}

}  // namespace

TEST(Lattices, SignOverC2) {
  auto g = FiniteGroup::builtin("C2");
  Lattice s = sign_lattice(trivial_subgroup(g), Z);
  EXPECT_EQ(s.rank(), 1u);
  EXPECT_EQ(s.action(1).at(0, 0), Scalar(-1));
  EXPECT_EQ(tensor(s, s), trivial_lattice(g, Z));
}

TEST(Lattices, RegularIsLeftTranslation) {
  for (const char* name : {"C3", "S3", "Q8", "D4"}) {
    auto g = FiniteGroup::builtin(name);
    Lattice r = regular_lattice(g, Z);
    ASSERT_EQ(r.rank(), static_cast<std::size_t>(g->order()));
    for (int x = 0; x < g->order(); ++x)
      for (int h = 0; h < g->order(); ++h) EXPECT_EQ(r.action(x).at(g->mul(x, h), h), Scalar(1));
    EXPECT_EQ(tensor(trivial_lattice(g, Z), r), r);
    EXPECT_EQ(tensor(r, trivial_lattice(g, Z)), r);
  }
}

TEST(Lattices, TensorRanks) {
  auto g = FiniteGroup::builtin("C2");
  Lattice r = regular_lattice(g, Z);
  EXPECT_EQ(tensor(r, r).rank(), 4u);
  EXPECT_EQ(hom_lattice(r, r).rank(), 4u);
  // validates as a homomorphism too
  Lattice t = tensor(r, r);
  EXPECT_NO_THROW(Lattice(t.group(), Z, 4, t.actions()));
}

TEST(Lattices, Mismatches) {
  auto c2 = FiniteGroup::builtin("C2");
  auto c3 = FiniteGroup::builtin("C3");
  EXPECT_THROW(
      {
        try {
          tensor(trivial_lattice(c2, Z), trivial_lattice(c2, CoeffRing::prime_field(2)));
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::RingMismatch);
          throw;
        }
      },
      Error);
  EXPECT_THROW(
      {
        try {
          tensor(trivial_lattice(c2, Z), trivial_lattice(c3, Z));
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::GroupMismatch);
          throw;
        }
      },
      Error);
}

TEST(Lattices, RejectsNonHomomorphism) {
  auto g = FiniteGroup::builtin("C3");
  std::vector<Matrix> act(3, Matrix::identity(Z, 1));
  act[1] = Matrix::from_ints(Z, {{-1}});
  EXPECT_THROW(Lattice(g, Z, 1, act), Error);
}

TEST(Lattices, RestrictRegularS3ToC3IsFree) {
  auto g = FiniteGroup::builtin("S3");
  Subgroup c3 = Subgroup::generated_by(g, {element_of_order(g, 3)});
  Lattice res = restrict(regular_lattice(g, Z), c3);
  EXPECT_EQ(res.rank(), 6u);
  Lattice free2 = direct_sum(regular_lattice(c3.group(), Z), regular_lattice(c3.group(), Z));
  EXPECT_TRUE(isomorphic_small(res, free2));
  // the translation matrices split into blocks by right cosets: every column
  // has a single 1 and the orbit of each basis vector has size 3
  for (std::size_t j = 0; j < 6; ++j) {
    std::set<std::size_t> orbit;
    for (int x = 0; x < 3; ++x)
      for (std::size_t i = 0; i < 6; ++i)
        if (res.action(x).at(i, j) != 0) orbit.insert(i);
    EXPECT_EQ(orbit.size(), 3u);
  }
  EXPECT_EQ(restrict(regular_lattice(g, Z), Subgroup::whole(g)), regular_lattice(g, Z));
}

TEST(Lattices, InduceTrivialIsPermutation) {
  for (const char* name : {"S3", "D4", "Q8", "V4"}) {
    auto g = FiniteGroup::builtin(name);
    for (const auto& h : all_subgroups(g)) {
      Lattice ind = induce(trivial_lattice(h.group(), Z), h);
      EXPECT_EQ(ind, permutation_lattice(h, Z)) << name << " " << h.to_string();
    }
    Lattice ind_reg = induce(trivial_lattice(trivial_subgroup(g).group(), Z), trivial_subgroup(g));
    EXPECT_EQ(ind_reg, regular_lattice(g, Z));
  }
}

TEST(Lattices, ProjectionFormulaExamples) {
  auto g = FiniteGroup::builtin("C2");
  Subgroup e = trivial_subgroup(g);
  Lattice sign = sign_lattice(e, Z);
  auto f = projection_formula_iso(sign, trivial_lattice(e.group(), Z), e);
  EXPECT_EQ(f.matrix().rows(), 2u);
  EXPECT_EQ(f.target(), tensor(sign, regular_lattice(g, Z)));

  // X trivial: the iso is the identity of ind(Y)
  auto s3 = FiniteGroup::builtin("S3");
  Subgroup c2 = Subgroup::generated_by(s3, {element_of_order(s3, 2)});
  Lattice y = sign_lattice(trivial_subgroup(c2.group()), Z);
  auto id = projection_formula_iso(trivial_lattice(s3, Z), y, c2);
  EXPECT_TRUE(id.matrix().is_identity());
}

TEST(Lattices, ProjectionFormulaRanks) {
  for (const char* name : {"S3", "D4", "C6"}) {
    auto g = FiniteGroup::builtin(name);
    std::vector<Lattice> xs{trivial_lattice(g, Z), regular_lattice(g, Z)};
    for (const auto& h : all_subgroups(g)) {
      if (h.index() == 2) xs.push_back(sign_lattice(h, Z));
    }
    for (const auto& h : all_subgroups(g)) {
      if (g->order() / h.index() > 4) continue;
      std::vector<Lattice> ys{trivial_lattice(h.group(), Z), regular_lattice(h.group(), Z)};
      for (const auto& x : xs) {
        if (x.rank() > 4) continue;
        for (const auto& y : ys) {
          auto f = projection_formula_iso(x, y, h);
          EXPECT_EQ(f.source().rank(), static_cast<std::size_t>(h.index()) * x.rank() * y.rank());
          EXPECT_EQ(f.target().rank(), f.source().rank());
        }
      }
    }
  }
}

TEST(Lattices, FrobeniusReciprocityDimension) {
  const CoeffRing F2 = CoeffRing::prime_field(2), F3 = CoeffRing::prime_field(3);
  for (const char* name : {"S3", "C6", "V4", "D4"}) {
    auto g = FiniteGroup::builtin(name);
    for (CoeffRing k : {F2, F3}) {
      std::vector<Lattice> ns{trivial_lattice(g, k)};
      for (const auto& h : all_subgroups(g))
        if (h.index() == 2) ns.push_back(sign_lattice(h, k));
      for (const auto& h : all_subgroups(g)) {
        if (h.index() <= 4) ns.push_back(permutation_lattice(h, k));
      }
      for (const auto& h : all_subgroups(g)) {
        std::vector<Lattice> ms{trivial_lattice(h.group(), k)};
        if (h.order() <= 4) ms.push_back(regular_lattice(h.group(), k));
        for (const auto& m : ms)
          for (const auto& n : ns) {
            if (m.rank() * h.index() > 8 || n.rank() > 4) continue;
            auto lhs = equivariant_hom_basis(induce(m, h), n).size();
            auto rhs = equivariant_hom_basis(m, restrict(n, h)).size();
            EXPECT_EQ(lhs, rhs) << name << " " << h.to_string();
          }
      }
    }
  }
}

TEST(Lattices, DoubleDualViaEvaluation) {
  // the canonical evaluation map M -> M** is the identity in these bases
  for (const char* name : {"S3", "Q8"}) {
    auto g = FiniteGroup::builtin(name);
    Lattice m = regular_lattice(g, Z);
    Lattice mm = dual(dual(m));
    EquivariantMap ev(m, mm, Matrix::identity(Z, m.rank()));
    EXPECT_NO_THROW(invert(ev.matrix()));
    Lattice s = sign_lattice(index_two(g), Z);
    EXPECT_EQ(dual(dual(s)), s);
    // dual is hom into the trivial lattice
    EXPECT_EQ(dual(m), hom_lattice(m, trivial_lattice(g, Z)));
  }
}

TEST(Lattices, JsonRoundTrip) {
  auto g = FiniteGroup::builtin("D4");
  Lattice m = direct_sum(regular_lattice(g, Z), sign_lattice(index_two(g), Z));
  EXPECT_EQ(Lattice::from_json(g, m.to_json()), m);
  // generators only
  nlohmann::json j = m.to_json();
  nlohmann::json gens = nlohmann::json::object();
  for (int s : g->generators()) gens[std::to_string(s)] = j["action"][std::to_string(s)];
  j["action"] = gens;
  EXPECT_EQ(Lattice::from_json(g, j), m);
}

TEST(Lattices, KernelAndCokernel) {
  auto g = FiniteGroup::builtin("C2");
  Lattice r = regular_lattice(g, Z);
  // augmentation Z[C2] -> Z, kernel is the sign lattice
  EquivariantMap aug(r, trivial_lattice(g, Z), Matrix::from_ints(Z, {{1, 1}}));
  Lattice k = kernel_lattice(aug);
  EXPECT_EQ(k.rank(), 1u);
  EXPECT_EQ(k.action(1).at(0, 0), Scalar(-1));
  // norm Z -> Z[C2], cokernel is sign
  EquivariantMap norm(trivial_lattice(g, Z), r, Matrix::from_ints(Z, {{1}, {1}}));
  Lattice c = cokernel_lattice(norm);
  EXPECT_EQ(c.action(1).at(0, 0), Scalar(-1));
  // multiplication by 2 has torsion cokernel
  EquivariantMap two(trivial_lattice(g, Z), trivial_lattice(g, Z), Matrix::from_ints(Z, {{2}}));
  EXPECT_THROW(cokernel_lattice(two), Error);
}

TEST(Lattices, InverseIsOracleChecked) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int t = 0; t < 50; ++t) {
    // unimodular by construction: product of elementary matrices
    Matrix a = Matrix::identity(Z, 4);
    for (int s = 0; s < 8; ++s) {
      Matrix e = Matrix::identity(Z, 4);
      int i = t % 4, j = (t + s + 1) % 4;
      if (i == j) continue;
      e.set(i, j, Scalar(d(rng)));
      a = a * e;
      std::swap(i, j);
    }
    EXPECT_TRUE((a * invert(a)).is_identity());
  }
}
