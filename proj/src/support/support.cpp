#include "modstrat/support/support.hpp"

#include <bit>
#include <optional>
#include <set>

#include "modstrat/common/error.hpp"
#include "modstrat/homalg/cohomology.hpp"

namespace modstrat {

nlohmann::json SupportResult::to_json() const {
  nlohmann::json ann = nlohmann::json::object();
  for (const auto& [p, ideal] : annihilators) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& f : ideal) gens.push_back(f.to_string());
    ann[std::to_string(p)] = gens;
  }
  return {{"group", model->group->name()},
          {"base", model->base.to_string()},
          {"support", subset.to_json()},
          {"annihilators", ann},
          {"certified_cap", certified_cap}};
}

SupportResult cohomological_support(const Lattice& m, const ModelPtr& model, int cap) {
  if (m.group()->table() != model->group->table()) fail(ErrorCode::GroupMismatch, "lattice and model over different groups");
  if (!(m.ring() == model->base)) fail(ErrorCode::RingMismatch, "lattice ring differs from the model base");
  if (cap > model->cap) fail(ErrorCode::CapExceeded, "support cap beyond the model cap");
  SupportResult out{model, SpecializationClosedSubset::empty(model), cap, {}};
  for (const auto& [p, fiber] : model->fibers) {
    const CoeffRing fp = CoeffRing::prime_field(p);
    const Lattice mp = m.ring() == fp ? m : m.over(fp);
    const Lattice end = hom_lattice(mp, mp);
    const std::size_t r = mp.rank(), er = end.rank();
    const PolyRingPtr& ring = fiber->ring();
    std::vector<Polynomial> ideal;
    // r annihilates H*(G; End M) iff r . id_M is a coboundary
    for (int d = 1; d <= cap; ++d) {
      const std::vector<Monomial> monos = ring->monomials_of_degree(d);
      if (monos.empty()) continue;
      const Resolution& res = *fiber->resolution();
      Matrix delta = cochain_differential(res, end, d);
      Matrix w(fp, res.rank(d) * er, monos.size());
      for (std::size_t j = 0; j < monos.size(); ++j) {
        const std::vector<Scalar> c = fiber->monomial_cocycle(monos[j]);
        for (std::size_t g = 0; g < c.size(); ++g)
          if (c[g] != 0)
            for (std::size_t i = 0; i < r; ++i) w.set(g * er + i * r + i, j, c[g]);
      }
      Matrix sol = preimage_of_image(delta, w);
      for (std::size_t col = 0; col < sol.cols(); ++col) {
        Polynomial f(ring);
        for (std::size_t j = 0; j < monos.size(); ++j)
          if (fp.reduce(sol.at(j, col)) != 0) f = f + Polynomial::monomial(ring, monos[j], fp.reduce(sol.at(j, col)));
        if (!f.is_zero()) ideal.push_back(f);
      }
    }
    out.annihilators[p] = groebner(ring, ideal).basis();
    out.subset = out.subset.unite(SpecializationClosedSubset::closed(model, p, out.annihilators[p]));
  }
  return out;
}

SupportResult support_for_integral_lattice(const Lattice& m, const ModelPtr& model, int cap) {
  const auto k = m.ring().kind();
  if (k != CoeffRing::Kind::Integers && k != CoeffRing::Kind::LocalizedIntegers)
    fail(ErrorCode::UnsupportedRing, "integral support needs Z or Z_(p)");
  return cohomological_support(m, model, cap);
}

PolyRingPtr rank_variety_ring(const GroupPtr& e) {
  int p = 0, r = 0;
  if (!is_elementary_abelian(*e, &p, &r) || r == 0) fail(ErrorCode::NotElementaryAbelian, "rank varieties need (Z/p)^r");
  std::vector<std::string> names;
  for (int i = 1; i <= r; ++i) names.push_back("Y" + std::to_string(i));
  return std::make_shared<PolyRing>(CoeffRing::prime_field(p), std::vector<int>(r, 1), names);
}

namespace {

// All k x k minors of a matrix of polynomials, by Laplace expansion over
// column subsets.
std::vector<Polynomial> minors(const std::vector<std::vector<Polynomial>>& u, std::size_t k, const PolyRingPtr& ring) {
  const std::size_t n = u.size();
  std::set<std::string> seen;
  std::vector<Polynomial> out;
  std::vector<std::size_t> rows(k);
  for (std::size_t i = 0; i < k; ++i) rows[i] = i;
  while (true) {
    // det[S] for |S| = t uses rows[0..t-1]
    std::vector<std::optional<Polynomial>> det(std::size_t{1} << n);
    det[0] = Polynomial::constant(ring, Scalar(1));
    for (std::uint32_t s = 1; s < (1u << n); ++s) {
      const std::size_t t = static_cast<std::size_t>(std::popcount(s));
      if (t > k) continue;
      Polynomial acc(ring);
      std::size_t pos = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (!(s >> c & 1)) continue;
        const Polynomial& entry = u[rows[t - 1]][c];
        const auto& sub = det[s & ~(1u << c)];
        if (!entry.is_zero() && sub && !sub->is_zero()) {
          Polynomial term = entry * *sub;
          acc = ((t - 1 + pos) % 2) ? acc - term : acc + term;
        }
        ++pos;
      }
      det[s] = std::move(acc);
      if (t == k && !det[s]->is_zero()) {
        Polynomial mono = det[s]->monic();
        if (seen.insert(mono.to_string()).second) out.push_back(std::move(mono));
      }
    }
    // next row subset
    std::size_t i = k;
    while (i > 0 && rows[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++rows[i - 1];
    for (std::size_t j = i; j < k; ++j) rows[j] = rows[j - 1] + 1;
  }
  return out;
}

}  // namespace

std::vector<Polynomial> rank_variety(const Lattice& m, const PolyRingPtr& ring) {
  const GroupPtr& e = m.group();
  int p = 0, r = 0;
  if (!is_elementary_abelian(*e, &p, &r)) fail(ErrorCode::NotElementaryAbelian, "rank varieties need (Z/p)^r");
  if (!(m.ring() == ring->coeffs()) || m.ring().kind() != CoeffRing::Kind::PrimeField)
    fail(ErrorCode::RingMismatch, "rank varieties need a lattice over the ring's prime field");
  if (ring->nvars() != static_cast<std::size_t>(r)) fail(ErrorCode::DimensionMismatch, "one variable per generator");
  const std::size_t n = m.rank();
  if (n % p != 0) return {};
  if (n > 12) fail(ErrorCode::CapExceeded, "rank variety minors limited to rank 12");
  const std::size_t k = n * (p - 1) / p;
  if (k == 0) return {};
  const std::vector<int> gens = e->cyclic_decomposition();
  std::vector<std::vector<Polynomial>> u(n, std::vector<Polynomial>(n, Polynomial(ring)));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Matrix a = m.action(gens[i]) - Matrix::identity(m.ring(), n);
    for (std::size_t row = 0; row < n; ++row)
      for (const auto& en : a.row(row))
        u[row][en.col] = u[row][en.col] + Polynomial::variable(ring, i).scaled(en.value);
  }
  return groebner(ring, minors(u, k, ring)).basis();
}

std::vector<std::vector<std::int64_t>> degree_one_pairing(const ProjFiber& fiber) {
  if (fiber.prime() != 2) fail(ErrorCode::UnsupportedRing, "the degree-one pairing is implemented for p = 2");
  const GroupPtr& g = fiber.group();
  const std::vector<int> gens = g->cyclic_decomposition();
  const CoeffRing f2 = CoeffRing::prime_field(2);
  const std::size_t nv = fiber.ring()->nvars();
  std::vector<std::vector<std::int64_t>> a(nv, std::vector<std::int64_t>(gens.size(), 0));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Subgroup h = Subgroup::generated_by(g, {gens[i]});
    ResolutionPtr sub = Resolution::build(h.group(), f2, 2);
    ComparisonMap cm(sub, fiber.resolution(), GroupHom::inclusion(h), 1);
    Subquotient h1 = cohomology_subquotient(*sub, trivial_lattice(h.group(), f2), 1);
    for (std::size_t k = 0; k < nv; ++k) {
      if (fiber.ring()->var_degree(k) != 1) fail(ErrorCode::InvalidInput, "fiber variables must have degree one");
      Monomial e(nv, 0);
      e[k] = 1;
      const std::vector<Scalar> c = h1.coordinates(cm.pull_back(1, fiber.monomial_cocycle(e)));
      a[k][i] = c.empty() ? 0 : static_cast<std::int64_t>(boost::multiprecision::numerator(c[0]));
    }
  }
  return a;
}

Truth avrunin_scott_agree(const Lattice& m, const ModelPtr& model, int cap) {
  auto it = model->fibers.find(2);
  if (it == model->fibers.end()) fail(ErrorCode::InvalidInput, "model has no fiber at 2");
  const ProjFiber& fiber = *it->second;
  SupportResult sup = cohomological_support(m, model, cap);
  PolyRingPtr y = rank_variety_ring(m.group());
  const auto a = degree_one_pairing(fiber);
  std::vector<Polynomial> images;
  for (const auto& row : a) {
    Polynomial f(y);
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i]) f = f + Polynomial::variable(y, i).scaled(Scalar(row[i]));
    images.push_back(f);
  }
  std::vector<std::vector<Polynomial>> comps;
  auto c = sup.subset.components().find(2);
  if (c != sup.subset.components().end())
    for (const auto& ideal : c->second) {
      std::vector<Polynomial> mapped;
      for (const auto& f : ideal) mapped.push_back(substitute(f, y, images));
      comps.push_back(std::move(mapped));
    }
  const std::vector<Polynomial> rank = rank_variety(m, y);
  std::vector<Polynomial> product{Polynomial::constant(y, Scalar(1))};
  for (const auto& comp : comps) {
    std::vector<Polynomial> next;
    for (const auto& u : product)
      for (const auto& v : comp) next.push_back(u * v);
    product = std::move(next);
  }
  std::vector<Truth> verdicts{projective_contained(y, rank, product)};
  for (const auto& comp : comps) verdicts.push_back(projective_contained(y, comp, rank));
  bool unknown = false;
  for (Truth t : verdicts) {
    if (t == Truth::False) return Truth::False;
    if (t == Truth::Indeterminate) unknown = true;
  }
  return unknown ? Truth::Indeterminate : Truth::True;
}

}  // namespace modstrat
