#include "modstrat/cohomring/presentation.hpp"

#include "modstrat/common/error.hpp"

namespace modstrat {

namespace {

Monomial trimmed(Monomial m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
  return m;
}

Monomial padded(Monomial m, std::size_t n) {
  m.resize(n, 0);
  return m;
}

Polynomial pad(const Polynomial& f, const PolyRingPtr& ring) {
  Polynomial out(ring);
  for (const auto& t : f.terms()) out = out + Polynomial::monomial(ring, padded(t.mono, ring->nvars()), t.coeff);
  return out;
}

CoeffRing work_ring(const CoeffRing& r) {
  if (r.kind() == CoeffRing::Kind::IntegersMod && !r.is_field()) return CoeffRing::integers();
  return r;
}

Matrix columns_to_matrix(const CoeffRing& ring, std::size_t rows, const std::vector<std::vector<Scalar>>& cols) {
  Matrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i)
      if (cols[j][i] != 0) m.set(i, j, cols[j][i]);
  return m;
}

Matrix torsion_columns(const CoeffRing& work, const Subquotient& h) {
  std::vector<std::vector<Scalar>> cols;
  for (std::size_t i = 0; i < h.num_generators(); ++i) {
    const Integer& o = h.orders()[i];
    if (o == 0 || work.is_unit(Scalar(o))) continue;
    std::vector<Scalar> c(h.num_generators());
    c[i] = Scalar(o);
    cols.push_back(std::move(c));
  }
  return columns_to_matrix(work, h.num_generators(), cols);
}

// x in the span of the columns of A?
bool in_span(const Matrix& a, std::span<const Scalar> x) {
  if (a.cols() == 0) return vec_is_zero(x);
  return LinearSolver(a).in_image(x);
}

std::vector<Scalar> to_work(const CoeffRing& work, std::span<const Scalar> v) {
  std::vector<Scalar> out;
  for (const auto& x : v) out.push_back(work.reduce(x));
  return out;
}

// Generators of {c : A c in span(D)}.
Matrix relation_module(const CoeffRing& work, const Matrix& a, const Matrix& d) {
  if (a.rows() == 0 || a.is_zero()) return Matrix::identity(work, a.cols());
  if (d.cols() == 0) return LinearSolver(a).kernel();
  return preimage_of_image(d, a);
}

}  // namespace

int GradedRingPresentation::product_sign(const std::vector<int>& degrees, const Monomial& a, const Monomial& b) {
  long parity = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < i && j < b.size(); ++j)
      parity += static_cast<long>(a[i]) * b[j] * degrees[i] * degrees[j];
  return parity % 2 ? -1 : 1;
}

PresentationPtr GradedRingPresentation::build(GroupPtr group, CoeffRing ring, int cap, ResolutionStrategy strategy) {
  if (cap < 2) fail(ErrorCode::CapTooSmall, "ring presentations need cap >= 2");
  return build(Resolution::build(std::move(group), ring, cap + 1, strategy), cap);
}

PresentationPtr GradedRingPresentation::build(ResolutionPtr res, int cap) {
  if (cap < 2) fail(ErrorCode::CapTooSmall, "ring presentations need cap >= 2");
  if (res->cap() < cap + 1) fail(ErrorCode::CapTooSmall, "resolution too short for the requested cap");
  std::shared_ptr<GradedRingPresentation> p(new GradedRingPresentation(std::move(res), cap));
  p->compute();
  return p;
}

GradedRingPresentation::GradedRingPresentation(ResolutionPtr res, int cap)
    : res_(std::move(res)), cap_(cap), work_(work_ring(res_->ring())) {}

Matrix GradedRingPresentation::coordinate_matrix(int n, const std::vector<Monomial>& monos) const {
  const Subquotient& h = degrees_.at(n).group;
  std::vector<std::vector<Scalar>> cols;
  for (const auto& m : monos) cols.push_back(to_work(work_, h.coordinates(monomial_cocycle(m))));
  return columns_to_matrix(work_, h.num_generators(), cols);
}

void GradedRingPresentation::compute() {
  const Lattice triv = trivial_lattice(group(), ring());
  poly_ = std::make_shared<PolyRing>(ring(), std::vector<int>{});
  for (int n = 0; n <= cap_; ++n) {
    Degree deg{cohomology_subquotient(*res_, triv, n), {}, Matrix(work_, 0, 0), Matrix(work_, 0, 0)};
    deg.torsion = torsion_columns(work_, deg.group);
    degrees_.push_back(std::move(deg));
    const Subquotient& h = degrees_.back().group;
    if (n > 0) {
      Matrix span = coordinate_matrix(n, poly_->monomials_of_degree(n)).hstack(degrees_[n].torsion);
      const Matrix& basis = h.generators();
      for (std::size_t i = 0; i < h.num_generators(); ++i) {
        std::vector<Scalar> e(h.num_generators());
        e[i] = 1;
        if (in_span(span, e)) continue;
        CohomologyClass c(res_, n, basis.column_vector(i));
        c.lift_to(cap_ - n);
        generators_.push_back({"x" + std::to_string(generators_.size() + 1), n, std::move(c)});
        span = span.hstack(columns_to_matrix(work_, e.size(), {e}));
      }
      std::vector<int> degs;
      std::vector<std::string> names;
      for (const auto& g : generators_) {
        degs.push_back(g.degree);
        names.push_back(g.name);
      }
      poly_ = std::make_shared<PolyRing>(ring(), degs, names);
      for (auto& r : relations_) r = pad(r, poly_);
    }
    Degree& d = degrees_[n];
    d.monomials = n == 0 ? std::vector<Monomial>{Monomial(poly_->nvars(), 0)} : poly_->monomials_of_degree(n);
    d.eval = coordinate_matrix(n, d.monomials);
    if (n == 0) continue;

    // relations: kernel of monomial evaluation, minus what lower relations generate
    std::vector<std::vector<Scalar>> ideal;
    const std::size_t nm = d.monomials.size();
    auto index_of = [&](const Monomial& m) {
      return static_cast<std::size_t>(std::find(d.monomials.begin(), d.monomials.end(), m) - d.monomials.begin());
    };
    for (const auto& r : relations_) {
      const int e = r.degree();
      if (e > n) continue;
      std::vector<Monomial> mult =
          e == n ? std::vector<Monomial>{Monomial(poly_->nvars(), 0)} : poly_->monomials_of_degree(n - e);
      for (const auto& m : mult) {
        std::vector<Scalar> v(nm);
        for (const auto& t : r.terms()) {
          Monomial prod = t.mono;
          for (std::size_t k = 0; k < prod.size(); ++k) prod[k] += m[k];
          Scalar c = work_.reduce(t.coeff) * product_sign(poly_->degrees(), t.mono, m);
          std::size_t idx = index_of(prod);
          v[idx] = work_.add(v[idx], c);
        }
        ideal.push_back(std::move(v));
      }
    }
    if (!(work_ == ring()))
      for (std::size_t j = 0; j < nm; ++j) {
        std::vector<Scalar> v(nm);
        v[j] = Scalar(ring().modulus());
        ideal.push_back(std::move(v));
      }
    Matrix kernel = relation_module(work_, d.eval, d.torsion);
    Matrix span = columns_to_matrix(work_, nm, ideal);
    for (std::size_t c = 0; c < kernel.cols(); ++c) {
      std::vector<Scalar> k = kernel.column_vector(c);
      if (in_span(span, k)) continue;
      Polynomial rel(poly_);
      for (std::size_t j = 0; j < nm; ++j)
        if (k[j] != 0) rel = rel + Polynomial::monomial(poly_, d.monomials[j], ring().reduce(k[j]));
      if (rel.is_zero()) continue;
      if (ring().is_field())
        rel = rel.monic();
      else if (rel.leading_coeff() < 0)
        rel = rel.scaled(Scalar(-1));
      relations_.push_back(rel);
      span = span.hstack(columns_to_matrix(work_, nm, {k}));
    }
  }
}

std::vector<AbelianGroup> GradedRingPresentation::hilbert() const {
  std::vector<AbelianGroup> out;
  for (const auto& d : degrees_) out.push_back(d.group.group());
  return out;
}

std::vector<Scalar> GradedRingPresentation::monomial_cocycle(const Monomial& m0) const {
  Monomial m = trimmed(m0);
  if (m.empty()) return {Scalar(1)};
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
  }
  std::size_t i = 0;
  while (m[i] == 0) ++i;
  if (i >= generators_.size()) fail(ErrorCode::InvalidInput, "monomial uses an unknown generator");
  Monomial rest = m;
  --rest[i];
  int rest_degree = 0;
  for (std::size_t k = 0; k < rest.size(); ++k) rest_degree += rest[k] * generators_[k].degree;
  if (rest_degree + generators_[i].degree > cap_) fail(ErrorCode::CapExceeded, "monomial beyond the certified cap");
  CohomologyClass r(res_, rest_degree, monomial_cocycle(rest));
  std::vector<Scalar> out = cup_product(generators_[i].cls, r).cocycle();
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(m, out);
  return out;
}

std::vector<Scalar> GradedRingPresentation::cocycle_of(const Polynomial& f) const {
  if (f.is_zero()) fail(ErrorCode::InvalidInput, "degree of the zero polynomial is undefined");
  if (!f.is_homogeneous()) fail(ErrorCode::NonHomogeneousInput, "cocycle of an inhomogeneous polynomial");
  std::vector<Scalar> out(res_->rank(f.degree()));
  for (const auto& t : f.terms()) out = vec_add(ring(), out, vec_scale(ring(), t.coeff, monomial_cocycle(t.mono)));
  return out;
}

std::vector<Scalar> GradedRingPresentation::coordinates(const Polynomial& f) const {
  return degrees_.at(f.degree()).group.coordinates(cocycle_of(f));
}

Polynomial GradedRingPresentation::express(int n, std::span<const Scalar> coords) const {
  const Degree& d = degrees_.at(n);
  Matrix a = d.eval.hstack(d.torsion);
  Polynomial out(poly_);
  if (vec_is_zero(coords)) return out;
  SolveOutcome s = LinearSolver(a).solve(to_work(work_, coords));
  if (!s.solvable) fail(ErrorCode::CapTooSmall, "class not spanned by monomials in degree " + std::to_string(n));
  for (std::size_t j = 0; j < d.monomials.size(); ++j)
    if (ring().reduce(s.solution[j]) != 0)
      out = out + Polynomial::monomial(poly_, d.monomials[j], ring().reduce(s.solution[j]));
  return out;
}

bool GradedRingPresentation::relations_vanish() const {
  for (const auto& r : relations_)
    if (!CohomologyClass(res_, r.degree(), cocycle_of(r)).is_coboundary()) return false;
  return true;
}

nlohmann::json GradedRingPresentation::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& g : generators_) gens.push_back({{"name", g.name}, {"degree", g.degree}});
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : relations_) rels.push_back(r.to_string());
  nlohmann::json hil = nlohmann::json::array();
  for (const auto& d : degrees_) hil.push_back(d.group.group().to_string());
  return {{"group", group()->name()},   {"ring", ring().to_string()}, {"resolution", to_string(res_->flavor())},
          {"generators", gens},          {"relations", rels},          {"certified_cap", cap_},
          {"hilbert", hil}};
}

std::vector<Scalar> act_on_cochain(const CohomologyClass& r, const Lattice& e, int mu_degree,
                                   std::span<const Scalar> mu) {
  const GroupRingMatrix* f = nullptr;
  std::optional<CohomologyClass> lifted;
  if (static_cast<int>(r.lift().size()) > mu_degree) {
    f = &r.lift()[mu_degree];
  } else {
    lifted = lift_to_chain_map(r, mu_degree);
    f = &lifted->lift()[mu_degree];
  }
  return f->cochain_matrix(e).apply(mu);
}

GradedModulePresentation end_module_presentation(const Lattice& m, const PresentationPtr& base, int cap) {
  if (cap > base->cap()) fail(ErrorCode::CapExceeded, "module cap beyond the base presentation");
  if (!(m.ring() == base->ring())) fail(ErrorCode::RingMismatch, "module and base over different rings");
  GradedModulePresentation out{base, hom_lattice(m, m), cap, {}, {}, {}};
  const CoeffRing work = work_ring(base->ring());
  for (int n = 0; n <= cap; ++n) out.degrees.push_back(cohomology_subquotient(*base->resolution(), out.end, n));
  const auto& gens = base->generators();
  out.action.assign(gens.size(), {});
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (int n = 0; n + gens[k].degree <= cap; ++n) {
      const Subquotient& src = out.degrees[n];
      const Subquotient& dst = out.degrees[n + gens[k].degree];
      std::vector<std::vector<Scalar>> cols;
      for (std::size_t c = 0; c < src.num_generators(); ++c)
        cols.push_back(to_work(work, dst.coordinates(act_on_cochain(gens[k].cls, out.end, n,
                                                                    src.generators().column_vector(c)))));
      out.action[k].push_back(columns_to_matrix(work, dst.num_generators(), cols));
    }
  for (int n = 0; n <= cap; ++n) {
    const Subquotient& h = out.degrees[n];
    Matrix span = torsion_columns(work, h);
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (gens[k].degree <= n) span = span.hstack(out.action[k][n - gens[k].degree]);
    for (std::size_t i = 0; i < h.num_generators(); ++i) {
      std::vector<Scalar> e(h.num_generators());
      e[i] = 1;
      if (in_span(span, e)) continue;
      out.generators.emplace_back(n, h.generators().column_vector(i));
      span = span.hstack(columns_to_matrix(work, e.size(), {e}));
    }
  }
  return out;
}

nlohmann::json GradedModulePresentation::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& [d, c] : generators) gens.push_back({{"degree", d}});
  nlohmann::json hil = nlohmann::json::array();
  for (const auto& d : degrees) hil.push_back(d.group().to_string());
  return {{"generators", gens}, {"certified_cap", cap}, {"hilbert", hil}};
}

RingMap restriction_ring_map(const PresentationPtr& g, const PresentationPtr& e, const GroupHom& iota) {
  const int upto = std::min(g->cap(), e->cap());
  RingMap out{g, e, std::make_shared<ComparisonMap>(e->resolution(), g->resolution(), iota, upto), {}};
  for (const auto& gen : g->generators()) {
    if (gen.degree > upto) fail(ErrorCode::CapExceeded, "generator beyond the target cap");
    out.images.push_back(e->express(gen.degree, out.apply(gen.degree, gen.cls.cocycle())));
  }
  return out;
}

std::vector<Scalar> RingMap::apply(int n, std::span<const Scalar> cocycle) const {
  return target->degree_group(n).coordinates(comparison->pull_back(n, cocycle));
}

}  // namespace modstrat
