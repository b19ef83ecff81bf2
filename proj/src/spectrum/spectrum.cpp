#include "modstrat/spectrum/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "modstrat/common/error.hpp"

namespace modstrat {

namespace {

using Row = std::vector<std::int64_t>;

std::int64_t to_i64(const Scalar& x) {
  return static_cast<std::int64_t>(boost::multiprecision::numerator(x));
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// Reduced row echelon form over F_p; zero rows dropped.
void rref(std::vector<Row>& rows, std::int64_t p) {
  if (rows.empty()) return;
  const std::size_t ncols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const std::int64_t s = inv_mod(rows[r][c], p);
    for (auto& x : rows[r]) x = x * s % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::int64_t f = rows[i][c];
      for (std::size_t k = 0; k < ncols; ++k) rows[i][k] = ((rows[i][k] - f * rows[r][k]) % p + p) % p;
    }
    ++r;
  }
  rows.resize(r);
}

const GaloisField& field(std::int64_t p, int n) {
  static std::mutex mutex;
  static std::map<std::pair<std::int64_t, int>, std::unique_ptr<GaloisField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{p, n}];
  if (!slot) slot = std::make_unique<GaloisField>(p, n);
  return *slot;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

nlohmann::json ideal_json(const std::vector<Polynomial>& ideal) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : ideal) out.push_back(f.to_string());
  return out;
}

Truth all_of(const std::vector<Truth>& ts) {
  bool unknown = false;
  for (Truth t : ts) {
    if (t == Truth::False) return Truth::False;
    if (t == Truth::Indeterminate) unknown = true;
  }
  return unknown ? Truth::Indeterminate : Truth::True;
}

// Calls f on every nonzero tuple of length k over GF(q) until it returns false.
template <class F>
void for_each_tuple(std::int64_t q, std::size_t k, F&& f) {
  std::vector<std::int64_t> t(k, 0);
  while (true) {
    std::size_t i = 0;
    while (i < k && t[i] == q - 1) t[i++] = 0;
    if (i == k) return;
    ++t[i];
    if (!f(t)) return;
  }
}

double tuple_count(std::int64_t q, std::size_t k) { return std::pow(static_cast<double>(q), static_cast<double>(k)); }

}  // namespace

std::string to_string(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Indeterminate: return "indeterminate";
  }
  return "?";
}

// ---------------------------------------------------------------- ProjFiber

FiberPtr ProjFiber::from_presentation(const PresentationPtr& pres) {
  if (pres->ring().kind() != CoeffRing::Kind::PrimeField)
    fail(ErrorCode::UnsupportedRing, "fiber presentations live over a prime field");
  std::shared_ptr<ProjFiber> f(new ProjFiber());
  f->p_ = static_cast<int>(pres->ring().prime());
  f->cap_ = pres->cap();
  f->res_ = pres->resolution();
  f->pres_ = pres;
  std::vector<std::string> names;
  std::vector<int> degrees;
  const auto& gens = pres->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (f->p_ != 2 && gens[i].degree % 2) continue;
    f->pres_vars_.push_back(i);
    f->classes_.push_back(gens[i].cls);
    names.push_back(gens[i].name);
    degrees.push_back(gens[i].degree);
  }
  f->finish(std::move(names), std::move(degrees));
  return f;
}

FiberPtr ProjFiber::integral_image(const GroupPtr& g, int p, int cap) {
  PresentationPtr z = GradedRingPresentation::build(g, CoeffRing::integers(), cap);
  std::shared_ptr<ProjFiber> f(new ProjFiber());
  f->p_ = p;
  f->cap_ = cap;
  f->res_ = base_change(z->resolution(), CoeffRing::prime_field(p));
  std::vector<std::string> names;
  std::vector<int> degrees;
  for (const auto& gen : z->generators()) {
    if (p != 2 && gen.degree % 2) continue;
    CohomologyClass c(f->res_, gen.degree, gen.cls.cocycle());
    if (c.is_coboundary()) continue;
    c.lift_to(cap - gen.degree);
    f->classes_.push_back(std::move(c));
    names.push_back(gen.name);
    degrees.push_back(gen.degree);
  }
  f->finish(std::move(names), std::move(degrees));
  return f;
}

void ProjFiber::finish(std::vector<std::string> names, std::vector<int> degrees) {
  const CoeffRing fp = CoeffRing::prime_field(p_);
  ring_ = std::make_shared<PolyRing>(fp, std::move(degrees), std::move(names));
  const Lattice triv = trivial_lattice(res_->group(), fp);
  std::vector<Polynomial> kernel;
  if (ring_->nvars() > 0)
    for (int n = 1; n <= cap_; ++n) {
      const std::vector<Monomial> monos = ring_->monomials_of_degree(n);
      if (monos.empty()) continue;
      Subquotient h = cohomology_subquotient(*res_, triv, n);
      Matrix eval(fp, h.num_generators(), monos.size());
      for (std::size_t j = 0; j < monos.size(); ++j) {
        std::vector<Scalar> c = h.coordinates(monomial_cocycle(monos[j]));
        for (std::size_t i = 0; i < c.size(); ++i)
          if (c[i] != 0) eval.set(i, j, c[i]);
      }
      Matrix k = eval.rows() == 0 ? Matrix::identity(fp, monos.size()) : LinearSolver(eval).kernel();
      for (std::size_t c = 0; c < k.cols(); ++c) {
        Polynomial rel(ring_);
        for (std::size_t j = 0; j < monos.size(); ++j)
          if (k.at(j, c) != 0) rel = rel + Polynomial::monomial(ring_, monos[j], k.at(j, c));
        if (!rel.is_zero()) kernel.push_back(rel);
      }
    }
  ideal_.emplace(groebner(ring_, kernel));
  relations_ = ideal_->basis();
}

Polynomial ProjFiber::from_presentation(const Polynomial& f) const {
  if (!pres_) fail(ErrorCode::PresentationMissing, "fiber has no presentation");
  Polynomial out(ring_);
  for (const auto& t : f.terms()) {
    Monomial m(ring_->nvars(), 0);
    bool keep = true;
    for (std::size_t i = 0; i < t.mono.size() && keep; ++i) {
      if (t.mono[i] == 0) continue;
      auto it = std::find(pres_vars_.begin(), pres_vars_.end(), i);
      if (it == pres_vars_.end())
        keep = false;
      else
        m[static_cast<std::size_t>(it - pres_vars_.begin())] = t.mono[i];
    }
    if (keep) out = out + Polynomial::monomial(ring_, std::move(m), ring_->coeffs().reduce(t.coeff));
  }
  return out;
}

std::vector<Scalar> ProjFiber::monomial_cocycle(const Monomial& m0) const {
  Monomial m = m0;
  while (!m.empty() && m.back() == 0) m.pop_back();
  if (m.empty()) return {Scalar(1)};
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
  }
  std::size_t i = 0;
  while (m[i] == 0) ++i;
  if (i >= classes_.size()) fail(ErrorCode::InvalidInput, "monomial uses an unknown variable");
  Monomial rest = m;
  --rest[i];
  int rest_degree = 0;
  for (std::size_t k = 0; k < rest.size(); ++k) rest_degree += rest[k] * ring_->var_degree(k);
  if (rest_degree + ring_->var_degree(i) > cap_) fail(ErrorCode::CapExceeded, "monomial beyond the fiber cap");
  CohomologyClass r(res_, rest_degree, monomial_cocycle(rest));
  std::vector<Scalar> out = cup_product(classes_[i], r).cocycle();
  std::lock_guard lock(mutex_);
  cache_.emplace(m, out);
  return out;
}

std::vector<std::size_t> ProjFiber::hilbert() const {
  std::vector<std::size_t> out;
  for (int n = 0; n <= cap_; ++n) out.push_back(ideal_->quotient_dimension(n));
  return out;
}

int ProjFiber::point_degree() const {
  int l = 1;
  for (int d : ring_->degrees()) l = std::lcm(l, d);
  return l;
}

std::string ProjFiber::to_string() const {
  std::string out = "F" + std::to_string(p_) + "[" + join(ring_->names()) + "]";
  if (!relations_.empty()) {
    std::vector<std::string> rels;
    for (const auto& r : relations_) rels.push_back(r.to_string());
    out += "/(" + join(rels) + ")";
  }
  return out;
}

nlohmann::json ProjFiber::to_json() const {
  nlohmann::json vars = nlohmann::json::array();
  for (std::size_t i = 0; i < ring_->nvars(); ++i) vars.push_back({{"name", ring_->name(i)}, {"degree", ring_->var_degree(i)}});
  return {{"p", p_},          {"ring", to_string()},       {"variables", vars},
          {"relations", ideal_json(relations_)}, {"hilbert", hilbert()}, {"certified_cap", cap_}};
}

// ------------------------------------------------------------------- points

std::int64_t evaluate(const GaloisField& f, const Polynomial& poly, std::span<const std::int64_t> x) {
  std::int64_t acc = 0;
  for (const auto& t : poly.terms()) {
    std::int64_t v = f.from_prime(((to_i64(t.coeff) % f.p()) + f.p()) % f.p());
    for (std::size_t i = 0; i < t.mono.size() && v != 0; ++i)
      if (t.mono[i]) v = f.mul(v, f.pow(x[i], t.mono[i]));
    acc = f.add(acc, v);
  }
  return acc;
}

FiberPoint point_of(const ProjFiber& fiber, const GaloisField& f, std::vector<std::int64_t> tuple) {
  FiberPoint pt;
  pt.field_degree = f.degree();
  const int l = fiber.point_degree();
  const auto& ring = fiber.ring();
  // the F_p-span of the evaluation functionals in degree j*l determines the
  // vanishing ideal there; four multiples separate points of degree <= 4
  for (int j = 1; j <= 4; ++j) {
    const std::vector<Monomial> monos = ring->monomials_of_degree(j * l);
    std::vector<Row> rows(f.degree(), Row(monos.size(), 0));
    for (std::size_t c = 0; c < monos.size(); ++c) {
      std::int64_t v = 1;
      for (std::size_t i = 0; i < monos[c].size() && v != 0; ++i)
        if (monos[c][i]) v = f.mul(v, f.pow(tuple[i], monos[c][i]));
      const Row co = f.coords(v);
      for (int r = 0; r < f.degree(); ++r) rows[r][c] = co[r];
    }
    rref(rows, f.p());
    for (auto& r : rows) pt.key.push_back(std::move(r));
    pt.key.push_back({});  // degree separator
  }
  pt.coords = std::move(tuple);
  return pt;
}

std::vector<FiberPoint> rational_points(const ProjFiber& fiber, int n) {
  const GaloisField& f = field(fiber.prime(), n);
  std::map<std::vector<Row>, FiberPoint> found;
  const std::size_t k = fiber.ring()->nvars();
  if (k == 0) return {};
  if (tuple_count(f.size(), k) > 2e6) fail(ErrorCode::CapExceeded, "point enumeration too large");
  for_each_tuple(f.size(), k, [&](const std::vector<std::int64_t>& t) {
    for (const auto& r : fiber.relations())
      if (evaluate(f, r, t) != 0) return true;
    FiberPoint pt = point_of(fiber, f, t);
    found.emplace(pt.key, std::move(pt));
    return true;
  });
  std::vector<FiberPoint> out;
  for (auto& [key, pt] : found) out.push_back(std::move(pt));
  return out;
}

// -------------------------------------------------------------------- model

nlohmann::json SpecHModel::to_json() const {
  nlohmann::json fib = nlohmann::json::object();
  for (const auto& [p, f] : fibers) fib[std::to_string(p)] = f->to_json();
  return {{"group", group->name()}, {"base", base.to_string()}, {"cap", cap},
          {"fibers", fib},          {"specR_removed", specR_removed}};
}

std::vector<int> fiber_primes(const GroupPtr& g, const CoeffRing& base) {
  const std::vector<int> all = g->prime_divisors();
  std::vector<int> out;
  for (int p : all) {
    switch (base.kind()) {
      case CoeffRing::Kind::Rationals: break;
      case CoeffRing::Kind::Integers: out.push_back(p); break;
      case CoeffRing::Kind::LocalizedIntegers:
      case CoeffRing::Kind::PrimeField:
      case CoeffRing::Kind::FiniteField:
        if (base.prime() == p) out.push_back(p);
        break;
      case CoeffRing::Kind::IntegersMod:
        if (base.modulus() % p == 0) out.push_back(p);
        break;
    }
  }
  return out;
}

ModelPtr stmod_spectrum(const GroupPtr& g, const CoeffRing& base, int cap) {
  std::map<int, PresentationPtr> pres;
  for (int p : fiber_primes(g, base)) pres[p] = GradedRingPresentation::build(g, CoeffRing::prime_field(p), cap);
  return stmod_spectrum(g, base, cap, pres);
}

ModelPtr stmod_spectrum(const GroupPtr& g, const CoeffRing& base, int cap,
                        const std::map<int, PresentationPtr>& presentations) {
  auto model = std::make_shared<SpecHModel>();
  model->base = base;
  model->group = g;
  model->cap = cap;
  for (int p : fiber_primes(g, base)) {
    auto it = presentations.find(p);
    if (it == presentations.end() || !it->second)
      fail(ErrorCode::PresentationMissing, "no presentation at p = " + std::to_string(p));
    if (it->second->cap() < cap) fail(ErrorCode::CapTooSmall, "presentation certified below the model cap");
    model->fibers.emplace(p, ProjFiber::from_presentation(it->second));
  }
  return model;
}

// ------------------------------------------------------------------ subsets

Truth projective_contained(const PolyRingPtr& ring, const std::vector<Polynomial>& i,
                           const std::vector<Polynomial>& k) {
  const CoeffRing& fp = ring->coeffs();
  if (fp.kind() != CoeffRing::Kind::PrimeField) fail(ErrorCode::UnsupportedRing, "projective tests need F_p");
  const int p = static_cast<int>(fp.prime());
  GroebnerBasis gb = groebner(ring, i);
  bool proved = true;
  for (const auto& kk : k) {
    for (std::size_t v = 0; v < ring->nvars() && proved; ++v) {
      Polynomial h = gb.normal_form(kk * Polynomial::variable(ring, v));
      for (int s = 0; s < 4 && !h.is_zero(); ++s) h = gb.normal_form(h.pow(p));
      if (!h.is_zero()) proved = false;
    }
    if (!proved) break;
  }
  if (proved) return Truth::True;
  // look for a point of V(I) outside V(K)
  const std::size_t nv = ring->nvars();
  for (int e = 1; e <= 2; ++e) {
    const GaloisField& f = field(p, e);
    if (tuple_count(f.size(), nv) > 2e5) break;
    bool witness = false;
    for_each_tuple(f.size(), nv, [&](const std::vector<std::int64_t>& t) {
      for (const auto& g : gb.basis())
        if (evaluate(f, g, t) != 0) return true;
      for (const auto& kk : k)
        if (evaluate(f, kk, t) != 0) {
          witness = true;
          return false;
        }
      return true;
    });
    if (witness) return Truth::False;
  }
  return Truth::Indeterminate;
}

Truth proj_contained(const ProjFiber& fiber, const std::vector<Polynomial>& i, const std::vector<Polynomial>& k) {
  std::vector<Polynomial> gens = fiber.relations();
  gens.insert(gens.end(), i.begin(), i.end());
  return projective_contained(fiber.ring(), gens, k);
}

Polynomial substitute(const Polynomial& f, const PolyRingPtr& target, const std::vector<Polynomial>& images) {
  Polynomial out(target);
  for (const auto& t : f.terms()) {
    Polynomial term = Polynomial::constant(target, target->coeffs().reduce(t.coeff));
    for (std::size_t v = 0; v < t.mono.size(); ++v)
      if (t.mono[v]) term = term * images.at(v).pow(t.mono[v]);
    out = out + term;
  }
  return out;
}

namespace {

const ProjFiber& fiber_at(const SpecHModel& m, int p) {
  auto it = m.fibers.find(p);
  if (it == m.fibers.end()) fail(ErrorCode::InvalidInput, "no fiber at p = " + std::to_string(p));
  return *it->second;
}

std::string ideal_key(const std::vector<Polynomial>& ideal) {
  std::vector<std::string> s;
  for (const auto& f : ideal) s.push_back(f.to_string());
  return join(s);
}

}  // namespace

SpecializationClosedSubset SpecializationClosedSubset::empty(ModelPtr model) {
  return SpecializationClosedSubset(std::move(model));
}

SpecializationClosedSubset SpecializationClosedSubset::full(ModelPtr model) {
  SpecializationClosedSubset s(std::move(model));
  for (const auto& [p, f] : s.model_->fibers) s.components_[p].push_back({});
  s.canonicalize();
  return s;
}

SpecializationClosedSubset SpecializationClosedSubset::closed(ModelPtr model, int p, Ideal ideal) {
  SpecializationClosedSubset s(std::move(model));
  const ProjFiber& f = fiber_at(*s.model_, p);
  for (const auto& g : ideal) {
    if (g.ring()->nvars() != f.ring()->nvars()) fail(ErrorCode::DimensionMismatch, "ideal outside the fiber ring");
    if (!g.is_zero() && !g.is_homogeneous()) fail(ErrorCode::NonHomogeneousInput, "ideal generators must be homogeneous");
  }
  s.components_[p].push_back(std::move(ideal));
  s.canonicalize();
  return s;
}

void SpecializationClosedSubset::canonicalize() {
  for (auto it = components_.begin(); it != components_.end();) {
    const ProjFiber& f = fiber_at(*model_, it->first);
    const Ideal unit{Polynomial::constant(f.ring(), Scalar(1))};
    std::map<std::string, Ideal> unique;
    for (const auto& comp : it->second) {
      std::vector<Polynomial> gens = f.relations();
      for (const auto& g : comp)
        if (!g.is_zero()) gens.push_back(Polynomial(f.ring()) + g);
      Ideal basis = groebner(f.ring(), gens).basis();
      if (proj_contained(f, basis, unit) == Truth::True) continue;
      unique.emplace(ideal_key(basis), std::move(basis));
    }
    std::vector<Ideal> comps;
    for (auto& [k, v] : unique) comps.push_back(std::move(v));
    std::vector<bool> removed(comps.size(), false);
    for (std::size_t a = 0; a < comps.size(); ++a)
      for (std::size_t b = 0; b < comps.size(); ++b) {
        if (a == b || removed[b]) continue;
        if (proj_contained(f, comps[a], comps[b]) == Truth::True) {
          removed[a] = true;
          break;
        }
      }
    std::vector<Ideal> kept;
    for (std::size_t a = 0; a < comps.size(); ++a)
      if (!removed[a]) kept.push_back(std::move(comps[a]));
    if (kept.empty()) {
      it = components_.erase(it);
    } else {
      it->second = std::move(kept);
      ++it;
    }
  }
}

void SpecializationClosedSubset::check_model(const SpecializationClosedSubset& o) const {
  if (model_ != o.model_) fail(ErrorCode::ModelMismatch, "subsets of different spectrum models");
}

SpecializationClosedSubset SpecializationClosedSubset::unite(const SpecializationClosedSubset& o) const {
  check_model(o);
  SpecializationClosedSubset s = *this;
  for (const auto& [p, comps] : o.components_)
    for (const auto& c : comps) s.components_[p].push_back(c);
  s.canonicalize();
  return s;
}

SpecializationClosedSubset SpecializationClosedSubset::intersect(const SpecializationClosedSubset& o) const {
  check_model(o);
  SpecializationClosedSubset s(model_);
  for (const auto& [p, comps] : components_) {
    auto it = o.components_.find(p);
    if (it == o.components_.end()) continue;
    for (const auto& a : comps)
      for (const auto& b : it->second) {
        Ideal sum = a;
        sum.insert(sum.end(), b.begin(), b.end());
        s.components_[p].push_back(std::move(sum));
      }
  }
  s.canonicalize();
  return s;
}

Truth SpecializationClosedSubset::includes(const SpecializationClosedSubset& o) const {
  check_model(o);
  std::vector<Truth> verdicts;
  for (const auto& [p, comps] : o.components_) {
    const ProjFiber& f = fiber_at(*model_, p);
    const GroebnerBasis& j = f.ideal();
    auto it = components_.find(p);
    // V(K_1) u ... u V(K_m) = V(K_1 ... K_m); generators lying in J are dropped
    std::vector<Ideal> targets;
    bool everything = false;
    if (it != components_.end())
      for (const auto& c : it->second) {
        Ideal t;
        for (const auto& g : c)
          if (!j.contains(g)) t.push_back(g);
        if (t.empty()) everything = true;
        targets.push_back(std::move(t));
      }
    if (everything) continue;
    Ideal product{Polynomial::constant(f.ring(), Scalar(1))};
    for (const auto& t : targets) {
      Ideal next;
      for (const auto& a : product)
        for (const auto& b : t) next.push_back(a * b);
      product = std::move(next);
    }
    for (const auto& c : comps) verdicts.push_back(proj_contained(f, c, product));
  }
  return all_of(verdicts);
}

Truth SpecializationClosedSubset::equals(const SpecializationClosedSubset& o) const {
  return all_of({includes(o), o.includes(*this)});
}

Truth SpecializationClosedSubset::is_empty() const { return SpecializationClosedSubset(model_).includes(*this); }

std::vector<FiberPoint> SpecializationClosedSubset::points(int p, int n) const {
  const ProjFiber& f = fiber_at(*model_, p);
  std::vector<FiberPoint> out;
  auto it = components_.find(p);
  if (it == components_.end()) return out;
  for (auto& pt : rational_points(f, n)) {
    const GaloisField& gf = field(p, pt.field_degree);
    bool inside = false;
    for (const auto& c : it->second) {
      bool all_zero = true;
      for (const auto& g : c)
        if (evaluate(gf, g, pt.coords) != 0) all_zero = false;
      if (all_zero) inside = true;
    }
    if (inside) out.push_back(std::move(pt));
  }
  return out;
}

nlohmann::json SpecializationClosedSubset::to_json() const {
  nlohmann::json fib = nlohmann::json::object();
  for (const auto& [p, comps] : components_) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : comps) cs.push_back(ideal_json(c));
    fib[std::to_string(p)] = cs;
  }
  return {{"fibers", fib}, {"specR_removed", model_->specR_removed}};
}

// ------------------------------------------------------------------ Quillen

nlohmann::json QuillenReport::to_json() const {
  return {{"check", "quillen"},
          {"inputs", {{"group", group}, {"p", p}, {"cap", cap}, {"nil_bound", nil_bound}}},
          {"kernel_nilpotent", kernel_nilpotent},
          {"points_surjective", points_surjective},
          {"orbits_identified", orbits_identified},
          {"passed", passed()},
          {"details", details}};
}

namespace {

// Image of a point of the source fiber under the map induced by a ring map
// H*(target group) -> H*(source group), as a tuple for the target fiber.
std::optional<FiberPoint> map_point(const RingMap& r, const ProjFiber& src, const ProjFiber& dst,
                                    const FiberPoint& pt) {
  const GaloisField& f = field(src.prime(), pt.field_degree);
  std::vector<std::int64_t> tuple;
  bool nonzero = false;
  for (std::size_t v : dst.presentation_variables()) {
    const std::int64_t x = evaluate(f, src.from_presentation(r.images[v]), pt.coords);
    nonzero = nonzero || x != 0;
    tuple.push_back(x);
  }
  if (!nonzero) return std::nullopt;
  return point_of(dst, f, std::move(tuple));
}

struct UnionFind {
  std::vector<std::size_t> parent;
  std::size_t add() {
    parent.push_back(parent.size());
    return parent.size() - 1;
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Smallest p^s <= bound with x^(p^s) zero in cohomology, computed on a
// resolution extended far enough; nullopt when none is found.
std::optional<int> nil_exponent(const GroupPtr& g, int p, ResolutionStrategy flavor, int n,
                                std::span<const Scalar> cocycle, int bound) {
  int reach = 1;
  while (reach * p <= bound) reach *= p;
  ResolutionPtr res = Resolution::build(g, CoeffRing::prime_field(p), n * reach + 1, flavor);
  CohomologyClass y(res, n, std::vector<Scalar>(cocycle.begin(), cocycle.end()));
  for (int e = 1; e <= reach; e *= p) {
    if (y.is_coboundary()) return e;
    if (e * p > reach) break;
    CohomologyClass z = y;
    for (int t = 1; t < p; ++t) z = cup_product(y, z);
    y = std::move(z);
  }
  return std::nullopt;
}

}  // namespace

QuillenReport quillen_check(const GroupPtr& g, int p, int cap, int nil_bound) {
  if (!is_prime(p) || g->order() % p != 0) fail(ErrorCode::InvalidInput, "p must be a prime dividing |G|");
  if (nil_bound < 1) fail(ErrorCode::InvalidInput, "nil bound must be positive");
  QuillenReport rep;
  rep.group = g->name();
  rep.p = p;
  rep.cap = cap;
  rep.nil_bound = nil_bound;
  const CoeffRing fp = CoeffRing::prime_field(p);

  ElabOrbitCategory cat = orbit_category(g);
  std::vector<std::size_t> objs;
  for (std::size_t i = 0; i < cat.objects.size(); ++i)
    if (cat.primes[i] == p) objs.push_back(i);

  PresentationPtr pg = GradedRingPresentation::build(g, fp, cap);
  FiberPtr fg = ProjFiber::from_presentation(pg);
  std::map<std::size_t, PresentationPtr> pe;
  std::map<std::size_t, FiberPtr> fe;
  std::map<std::size_t, RingMap> res_maps;
  for (std::size_t i : objs) {
    pe[i] = GradedRingPresentation::build(cat.objects[i].group(), fp, cap);
    fe[i] = ProjFiber::from_presentation(pe[i]);
    res_maps.emplace(i, restriction_ring_map(pg, pe[i], GroupHom::inclusion(cat.objects[i])));
  }

  // (i) kernel of restriction to all elementary abelian subgroups
  rep.kernel_nilpotent = true;
  nlohmann::json kernel_dims = nlohmann::json::array();
  for (int n = 1; n <= cap; ++n) {
    const Subquotient& h = pg->degree_group(n);
    std::size_t rows = 0;
    for (std::size_t i : objs) rows += pe[i]->degree_group(n).num_generators();
    Matrix m(fp, rows, h.num_generators());
    for (std::size_t c = 0; c < h.num_generators(); ++c) {
      const std::vector<Scalar> cocycle = h.generators().column_vector(c);
      std::size_t off = 0;
      for (std::size_t i : objs) {
        const std::vector<Scalar> img = res_maps.at(i).apply(n, cocycle);
        for (std::size_t r = 0; r < img.size(); ++r)
          if (img[r] != 0) m.set(off + r, c, img[r]);
        off += img.size();
      }
    }
    Matrix k = rows == 0 ? Matrix::identity(fp, h.num_generators()) : LinearSolver(m).kernel();
    kernel_dims.push_back(k.cols());
    for (std::size_t c = 0; c < k.cols(); ++c) {
      auto e = nil_exponent(g, p, pg->resolution()->flavor(), n, h.representative(k.column_vector(c)), nil_bound);
      if (!e) {
        rep.kernel_nilpotent = false;
        rep.details["non_nilpotent_degree"] = n;
      }
    }
  }
  rep.details["kernel_dims"] = kernel_dims;

  // (ii) every F_q-point of the G-fiber comes from an E-point
  UnionFind uf;
  std::map<std::pair<std::size_t, std::vector<Row>>, std::size_t> node;
  std::map<std::size_t, std::vector<Row>> node_image;  // node -> G-point key
  std::map<std::pair<std::size_t, int>, std::vector<FiberPoint>> e_points;
  auto node_of = [&](std::size_t obj, const FiberPoint& pt) {
    auto [it, fresh] = node.try_emplace({obj, pt.key}, 0);
    if (fresh) it->second = uf.add();
    return it->second;
  };
  rep.points_surjective = true;
  nlohmann::json point_counts = nlohmann::json::array();
  for (int qdeg = 1; qdeg <= 2; ++qdeg) {
    std::set<std::vector<Row>> covered;
    for (std::size_t i : objs)
      for (int k = 1; k <= 2; ++k) {
        const int n = qdeg * k;
        auto [slot, fresh] = e_points.try_emplace({i, n});
        if (fresh) slot->second = rational_points(*fe[i], n);
        for (const auto& pt : slot->second) {
          auto img = map_point(res_maps.at(i), *fe[i], *fg, pt);
          if (!img) continue;
          covered.insert(img->key);
          node_image[node_of(i, pt)] = img->key;
        }
      }
    const std::vector<FiberPoint> gpts = rational_points(*fg, qdeg);
    std::size_t missing = 0;
    for (const auto& pt : gpts)
      if (!covered.count(pt.key)) ++missing;
    if (missing) rep.points_surjective = false;
    point_counts.push_back({{"q", qdeg == 1 ? p : p * p}, {"g_points", gpts.size()}, {"uncovered", missing}});
  }
  rep.details["points"] = point_counts;

  // (iii) E-points over the same G-point are linked by orbit-category morphisms
  std::size_t used = 0;
  for (const auto& mor : cat.morphisms) {
    if (cat.primes[mor.source] != p) continue;
    ++used;
    GroupHom alpha{cat.objects[mor.source].group(), cat.objects[mor.target].group(), mor.map};
    RingMap r = restriction_ring_map(pe[mor.target], pe[mor.source], alpha);
    for (const auto& [key, pts] : e_points) {
      if (key.first != mor.source) continue;
      for (const auto& pt : pts) {
        auto img = map_point(r, *fe[mor.source], *fe[mor.target], pt);
        if (img) uf.unite(node_of(mor.source, pt), node_of(mor.target, *img));
      }
    }
  }
  std::map<std::vector<Row>, std::set<std::size_t>> roots;
  for (const auto& [n, key] : node_image) roots[key].insert(uf.find(n));
  rep.orbits_identified = true;
  std::size_t split = 0;
  for (const auto& [key, r] : roots)
    if (r.size() > 1) ++split;
  if (split) rep.orbits_identified = false;
  rep.details["objects"] = objs.size();
  rep.details["morphisms"] = used;
  rep.details["e_nodes"] = node.size();
  rep.details["split_g_points"] = split;
  return rep;
}

}  // namespace modstrat
