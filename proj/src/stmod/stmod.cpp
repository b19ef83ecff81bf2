#include "modstrat/stmod/stmod.hpp"

#include <algorithm>

#include "modstrat/common/error.hpp"
#include "modstrat/homalg/group_ring.hpp"

namespace modstrat {

namespace {

std::vector<Scalar> vec_row_major(const Matrix& f) {
  std::vector<Scalar> out(f.rows() * f.cols());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (const auto& e : f.row(i)) out[i * f.cols() + e.col] = e.value;
  return out;
}

Matrix unvec(const CoeffRing& ring, std::size_t rows, std::size_t cols, std::span<const Scalar> v) {
  Matrix f(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (v[i * cols + j] != 0) f.set(i, j, v[i * cols + j]);
  return f;
}

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : m.to_dense()) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : r) row.push_back(x.str());
    rows.push_back(row);
  }
  return rows;
}

nlohmann::json vector_json(std::span<const Scalar> v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

std::vector<Scalar> unit_vector(std::size_t n, std::size_t i) {
  std::vector<Scalar> e(n);
  e[i] = 1;
  return e;
}

}  // namespace

nlohmann::json CheckReport::to_json() const {
  return {{"check", check}, {"inputs", inputs}, {"passed", passed}, {passed ? "certificate" : "counterexample", evidence}};
}

// ----------------------------------------------------------------- transfer

Matrix transfer_matrix(const Lattice& m, const Lattice& n) {
  check_compatible(m, n);
  const GroupPtr& g = m.group();
  Matrix t(m.ring(), n.rank() * m.rank(), n.rank() * m.rank());
  for (int x = 0; x < g->order(); ++x) t = t + n.action(x).kron(m.action(g->inv(x)).transpose());
  return t;
}

Matrix transfer(const Lattice& m, const Lattice& n, const Matrix& f) {
  Matrix out(m.ring(), n.rank(), m.rank());
  const GroupPtr& g = m.group();
  for (int x = 0; x < g->order(); ++x) out = out + n.action(x) * f * m.action(g->inv(x));
  return out;
}

nlohmann::json WeakProjectivity::to_json() const {
  nlohmann::json j = {{"weakly_projective", projective}};
  if (certificate) j["certificate"] = matrix_json(*certificate);
  if (!projective) {
    j["obstruction"] = vector_json(obstruction);
    j["modulus"] = obstruction_modulus.str();
  }
  return j;
}

WeakProjectivity is_weakly_projective(const Lattice& m) {
  WeakProjectivity out;
  const std::size_t r = m.rank();
  if (r == 0) {
    out.projective = true;
    out.certificate = Matrix(m.ring(), 0, 0);
    return out;
  }
  const Matrix id = Matrix::identity(m.ring(), r);
  SolveOutcome s = LinearSolver(transfer_matrix(m, m)).solve(vec_row_major(id));
  if (!s.solvable) {
    out.obstruction = s.obstruction;
    out.obstruction_modulus = s.modulus;
    return out;
  }
  Matrix f = unvec(m.ring(), r, r, s.solution);
  if (!(transfer(m, m, f) == id)) fail(ErrorCode::InvalidInput, "transfer certificate failed to verify");
  out.projective = true;
  out.certificate = std::move(f);
  return out;
}

// ------------------------------------------------------------ split exactness

bool check_split_exact(const EquivariantMap& f, const EquivariantMap& g) {
  if (!(f.target() == g.source())) fail(ErrorCode::DimensionMismatch, "maps do not compose");
  const CoeffRing& ring = f.source().ring();
  if (!(g.matrix() * f.matrix()).is_zero()) return false;
  if (f.source().rank() + g.target().rank() != f.target().rank()) return false;
  // g split surjective and f split injective over R
  if (g.target().rank() > 0) {
    LinearSolver sg(g.matrix());
    for (std::size_t j = 0; j < g.target().rank(); ++j)
      if (!sg.in_image(unit_vector(g.target().rank(), j))) return false;
  }
  if (f.source().rank() > 0) {
    LinearSolver sf(f.matrix().transpose());
    for (std::size_t j = 0; j < f.source().rank(); ++j)
      if (!sf.in_image(unit_vector(f.source().rank(), j))) return false;
  }
  (void)ring;
  return true;
}

bool check_split_exact(const EquivariantMap& f) {
  Lattice coker = cokernel_lattice(f);
  SmithDecomposition s = smith_normal_form(f.matrix());
  const std::size_t n = f.target().rank();
  Matrix pi = s.U.submatrix(s.rank, 0, n - s.rank, n);
  return check_split_exact(f, EquivariantMap(f.target(), coker, pi));
}

// ------------------------------------------------------------- stable homs

nlohmann::json StableHomSpace::to_json() const {
  return {{"hom_rank", basis.size()}, {"quotient", quotient.to_string()}};
}

StableHomSpace stable_hom(const Lattice& m, const Lattice& n) {
  check_compatible(m, n);
  const CoeffRing& ring = m.ring();
  StableHomSpace out{m, n, equivariant_hom_basis(m, n), Matrix(ring, 0, 0), AbelianGroup{ring, 0, {}}};
  const std::size_t k = out.basis.size();
  if (k == 0) return out;
  Matrix b(ring, n.rank() * m.rank(), k);
  for (std::size_t c = 0; c < k; ++c) {
    const auto v = vec_row_major(out.basis[c]);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) b.set(i, c, v[i]);
  }
  LinearSolver sb(b);
  const Matrix t = transfer_matrix(m, n);
  out.transfer_image = Matrix(ring, k, t.cols());
  for (std::size_t c = 0; c < t.cols(); ++c) {
    SolveOutcome s = sb.solve(t.column_vector(c));
    if (!s.solvable) fail(ErrorCode::InvalidInput, "transfer image outside the equivariant homs");
    for (std::size_t i = 0; i < k; ++i)
      if (s.solution[i] != 0) out.transfer_image.set(i, c, s.solution[i]);
  }
  out.quotient = Subquotient(out.transfer_image, Matrix(ring, 0, k)).group();
  return out;
}

bool homotopic(const Lattice& m, const Lattice& n, const Matrix& f, const Matrix& g) {
  check_compatible(m, n);
  if (!is_equivariant(m, n, f) || !is_equivariant(m, n, g)) fail(ErrorCode::InvalidInput, "maps must be equivariant");
  const std::vector<Scalar> d = vec_row_major(f - g);
  if (vec_is_zero(d)) return true;
  return LinearSolver(transfer_matrix(m, n)).in_image(d);
}

Truth stably_isomorphic(const Lattice& m, const Lattice& n, std::size_t max_candidates) {
  check_compatible(m, n);
  const bool wm = is_weakly_projective(m).projective, wn = is_weakly_projective(n).projective;
  if (wm || wn) return wm == wn ? Truth::True : Truth::False;
  const CoeffRing& ring = m.ring();
  const auto kind = ring.kind();
  if (kind != CoeffRing::Kind::Integers && kind != CoeffRing::Kind::LocalizedIntegers &&
      kind != CoeffRing::Kind::PrimeField)
    return Truth::Indeterminate;
  const StableHomSpace mn = stable_hom(m, n), nm = stable_hom(n, m);
  // neither is stably zero, so the identity would factor through zero
  if (mn.quotient.is_zero() || nm.quotient.is_zero()) return Truth::False;
  const Subquotient q(mn.transfer_image, Matrix(ring, 0, mn.basis.size()));
  std::vector<Integer> sizes;
  Integer total = 1;
  for (const auto& o : q.orders()) {
    // over F_p the quotient is a vector space; over Z and Z_(p) it is killed by |G|
    const Integer s = o != 0 ? o : Integer(ring.characteristic());
    if (s == 0) return Truth::Indeterminate;
    sizes.push_back(s);
    total *= s;
    if (total > max_candidates) return Truth::Indeterminate;
  }
  auto hom_of = [&](const StableHomSpace& s, std::span<const Scalar> coords) {
    Matrix f(ring, s.target.rank(), s.source.rank());
    for (std::size_t k = 0; k < coords.size(); ++k)
      if (coords[k] != 0) f = f + s.basis[k].scaled(coords[k]);
    return f;
  };
  const std::size_t rm = m.rank(), rn = n.rank();
  const Matrix tm = transfer_matrix(m, m), tn = transfer_matrix(n, n);
  std::vector<Scalar> rhs = vec_row_major(Matrix::identity(ring, rm));
  for (const auto& x : vec_row_major(Matrix::identity(ring, rn))) rhs.push_back(x);
  // unknowns: coefficients of g in Hom(N, M), then transfer preimages for M and N
  const std::size_t kg = nm.basis.size();
  std::vector<Integer> digits(sizes.size(), 0);
  for (Integer idx = 0; idx < total; ++idx) {
    std::vector<Scalar> c(q.num_generators());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = Scalar(digits[i]);
    const Matrix f = hom_of(mn, q.representative(c));
    Matrix sys(ring, rm * rm + rn * rn, kg + tm.cols() + tn.cols());
    for (std::size_t k = 0; k < kg; ++k) {
      const auto gf = vec_row_major(nm.basis[k] * f);
      const auto fg = vec_row_major(f * nm.basis[k]);
      for (std::size_t i = 0; i < gf.size(); ++i)
        if (gf[i] != 0) sys.set(i, k, gf[i]);
      for (std::size_t i = 0; i < fg.size(); ++i)
        if (fg[i] != 0) sys.set(rm * rm + i, k, fg[i]);
    }
    for (std::size_t i = 0; i < tm.rows(); ++i)
      for (const auto& e : tm.row(i)) sys.set(i, kg + e.col, ring.reduce(-e.value));
    for (std::size_t i = 0; i < tn.rows(); ++i)
      for (const auto& e : tn.row(i)) sys.set(rm * rm + i, kg + tm.cols() + e.col, ring.reduce(-e.value));
    if (LinearSolver(sys).in_image(rhs)) return Truth::True;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < sizes[i]) break;
      digits[i] = 0;
    }
  }
  return Truth::False;
}

// --------------------------------------------------------------- syzygies

EquivariantMap free_cover(const Lattice& m) {
  const GroupPtr& g = m.group();
  const std::size_t r = m.rank();
  const std::size_t n = static_cast<std::size_t>(g->order());
  Matrix pi(m.ring(), r, r * n);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t x = 0; x < n; ++x) {
      const auto col = m.action(static_cast<int>(x)).column_vector(j);
      for (std::size_t i = 0; i < r; ++i)
        if (col[i] != 0) pi.set(i, j * n + x, col[i]);
    }
  return EquivariantMap(free_lattice(g, m.ring(), r), m, std::move(pi));
}

Lattice syzygy(const Lattice& m, int n) {
  if (n < 0) return dual(syzygy(dual(m), -n));
  Lattice cur = m;
  for (int k = 0; k < n; ++k) cur = kernel_lattice(free_cover(cur));
  return cur;
}

Lattice localize_lattice(const Lattice& m, std::int64_t p) {
  if (m.ring().kind() != CoeffRing::Kind::Integers) fail(ErrorCode::RingMismatch, "localisation starts from Z");
  return m.over(CoeffRing::localized(p));
}

// -------------------------------------------------------------- Chouinard

bool ChouinardReport::detected() const {
  return std::all_of(local.begin(), local.end(), [](const auto& l) { return l.second; });
}

nlohmann::json ChouinardReport::to_json() const {
  nlohmann::json loc = nlohmann::json::array();
  for (const auto& [name, wp] : local) loc.push_back({{"subgroup", name}, {"weakly_projective", wp}});
  return {{"global", global}, {"local", loc}, {"detected", detected()}, {"passed", passed()}};
}

ChouinardReport chouinard_check(const Lattice& m) {
  ChouinardReport out;
  out.global = is_weakly_projective(m).projective;
  for (const auto& e : elementary_abelian_subgroups(m.group()))
    out.local.emplace_back(e.to_string(), is_weakly_projective(restrict(m, e)).projective);
  return out;
}

SpecializationClosedSubset classify(const Lattice& m, const ModelPtr& model, int cap) {
  const auto k = m.ring().kind();
  if (k == CoeffRing::Kind::Integers || k == CoeffRing::Kind::LocalizedIntegers)
    return support_for_integral_lattice(m, model, cap).subset;
  return cohomological_support(m, model, cap).subset;
}

// ------------------------------------------------------ elementary abelian

namespace {

// Resolutions over Z of growing length; prefixes agree because every
// strategy builds stage by stage.
class DeepResolution {
 public:
  explicit DeepResolution(GroupPtr g) : g_(std::move(g)) {}
  ResolutionPtr over(const CoeffRing& ring, int cap) {
    if (!z_ || z_->cap() < cap) {
      z_ = Resolution::build(g_, CoeffRing::integers(), std::max(cap, z_ ? 2 * z_->cap() : cap));
      reduced_.clear();
    }
    auto it = std::find_if(reduced_.begin(), reduced_.end(), [&](const auto& r) { return r->ring() == ring; });
    if (it != reduced_.end()) return *it;
    reduced_.push_back(base_change(z_, ring));
    return reduced_.back();
  }

 private:
  GroupPtr g_;
  ResolutionPtr z_;
  std::vector<ResolutionPtr> reduced_;
};

std::vector<Scalar> reduce_all(const CoeffRing& ring, std::span<const Scalar> v) {
  std::vector<Scalar> out;
  for (const auto& x : v) out.push_back(ring.reduce(x));
  return out;
}

// Cocycle of x^e for a degree-n cocycle over the given ring.
std::vector<Scalar> power(DeepResolution& deep, const CoeffRing& ring, int n, std::span<const Scalar> x, int e) {
  ResolutionPtr res = deep.over(ring, n * e + 1);
  CohomologyClass base(res, n, reduce_all(ring, x));
  CohomologyClass acc = base;
  for (int t = 1; t < e; ++t) acc = cup_product(base, acc);
  return acc.cocycle();
}

bool vanishes(DeepResolution& deep, const CoeffRing& ring, int n, std::span<const Scalar> x) {
  ResolutionPtr res = deep.over(ring, n + 1);
  return CohomologyClass(res, n, reduce_all(ring, x)).is_coboundary();
}

}  // namespace

CheckReport f_isomorphism_check(const GroupPtr& e, int p, int cap, int nil_bound) {
  CheckReport rep{"elab.f_isomorphism", {{"group", e->name()}, {"p", p}, {"cap", cap}, {"nil_bound", nil_bound}}, true, {}};
  const CoeffRing z = CoeffRing::integers();
  const CoeffRing m = CoeffRing::integers_mod(static_cast<std::int64_t>(p) * p);
  const CoeffRing fp = CoeffRing::prime_field(p);
  DeepResolution deep(e);
  const Lattice triv_m = trivial_lattice(e, m);
  const Lattice triv_p = trivial_lattice(e, fp);
  nlohmann::json kernel = nlohmann::json::array();

  // kernel of reduction, degree by degree, and its nil exponents
  for (int n = 1; n <= cap; ++n) {
    ResolutionPtr rm = deep.over(m, cap + 1);
    ResolutionPtr rp = deep.over(fp, cap + 1);
    Subquotient hm = cohomology_subquotient(*rm, triv_m, n);
    Subquotient hp = cohomology_subquotient(*rp, triv_p, n);
    const std::size_t k = hm.num_generators(), kp = hp.num_generators();
    if (k == 0) continue;
    Matrix red(z, kp, k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto c = hp.coordinates(reduce_all(fp, hm.generators().column_vector(i)));
      for (std::size_t r = 0; r < kp; ++r)
        if (c[r] != 0) red.set(r, i, c[r]);
    }
    Matrix gens = kp == 0 ? Matrix::identity(z, k)
                          : preimage_of_image(Matrix::identity(z, kp).scaled(Scalar(p)), red);
    for (std::size_t c = 0; c < gens.cols(); ++c) {
      std::vector<Scalar> coords = gens.column_vector(c);
      bool zero = true;
      for (std::size_t i = 0; i < k; ++i) {
        coords[i] = mod_floor(boost::multiprecision::numerator(coords[i]), hm.orders()[i] == 0 ? Integer(p * p) : hm.orders()[i]);
        if (coords[i] != 0) zero = false;
      }
      if (zero) continue;
      const std::vector<Scalar> x = hm.representative(coords);
      int found = 0;
      for (int ex = 2; ex <= nil_bound && !found; ++ex)
        if (vanishes(deep, m, n * ex, power(deep, m, n, x, ex))) found = ex;
      kernel.push_back({{"degree", n}, {"nil_exponent", found}});
      if (!found) rep.passed = false;
    }
  }
  rep.evidence["kernel"] = kernel;

  // Frobenius surjectivity on ring generators of H*(E; F_p)
  nlohmann::json frob = nlohmann::json::array();
  PresentationPtr pres = GradedRingPresentation::build(deep.over(fp, cap + 1), cap);
  for (const auto& gen : pres->generators()) {
    int found = -1;
    for (int q = 1, s = 0; q <= nil_bound && found < 0; q *= p, ++s) {
      const int d = gen.degree * q;
      const std::vector<Scalar> y = power(deep, fp, gen.degree, gen.cls.cocycle(), q);
      ResolutionPtr rm = deep.over(m, d + 1);
      ResolutionPtr rp = deep.over(fp, d + 1);
      Subquotient hm = cohomology_subquotient(*rm, triv_m, d);
      Subquotient hp = cohomology_subquotient(*rp, triv_p, d);
      const std::vector<Scalar> target = hp.coordinates(y);
      if (vec_is_zero(target)) {
        found = s;
        break;
      }
      Matrix span(fp, hp.num_generators(), hm.num_generators());
      for (std::size_t i = 0; i < hm.num_generators(); ++i) {
        const auto c = hp.coordinates(reduce_all(fp, hm.generators().column_vector(i)));
        for (std::size_t r = 0; r < c.size(); ++r)
          if (c[r] != 0) span.set(r, i, c[r]);
      }
      if (hm.num_generators() > 0 && LinearSolver(span).in_image(target)) found = s;
    }
    frob.push_back({{"generator", gen.name}, {"degree", gen.degree}, {"frobenius_power", found}});
    if (found < 0) rep.passed = false;
  }
  rep.evidence["frobenius"] = frob;
  return rep;
}

std::vector<CheckReport> verify_elab_suite(const GroupPtr& e, int p, int cap, int tate_range, int nil_bound) {
  int prime = 0, r = 0;
  if (!is_elementary_abelian(*e, &prime, &r) || prime != p) fail(ErrorCode::NotElementaryAbelian, "suite needs (Z/p)^r");
  const CoeffRing a = CoeffRing::localized(p);
  const Lattice triv = trivial_lattice(e, a);
  Integer pr = 1;
  for (int i = 0; i < r; ++i) pr *= p;
  const nlohmann::json inputs = {{"group", e->name()}, {"p", p}, {"ring", a.to_string()}, {"cap", cap}};
  std::vector<CheckReport> out;

  ResolutionPtr res = Resolution::build(e, a, std::max(cap, tate_range) + 1);
  {
    CheckReport c{"elab.low_degree", inputs, true, {}};
    nlohmann::json hil = nlohmann::json::array();
    for (int n = 0; n <= cap; ++n) {
      AbelianGroup h = cohomology(*res, triv, n);
      hil.push_back(h.to_string());
      if (n == 0 && !(h.free_rank == 1 && h.torsion.empty())) c.passed = false;
      if (n == 1 && !h.is_zero()) c.passed = false;
      if (n >= 1 && !h.annihilated_by(p)) c.passed = false;
    }
    c.evidence["cohomology"] = hil;
    out.push_back(std::move(c));
  }
  {
    CheckReport c{"elab.tate_exponent", inputs, true, {}};
    c.inputs["tate_range"] = tate_range;
    CompleteResolution cr(res);
    nlohmann::json tate = nlohmann::json::array();
    for (int n = -tate_range; n <= tate_range; ++n) {
      AbelianGroup h = tate_cohomology(cr, triv, n);
      tate.push_back({{"degree", n}, {"group", h.to_string()}});
      if (!h.annihilated_by(pr)) c.passed = false;
      if (n == 0 && !(h.is_finite() && h.order() == pr)) c.passed = false;
    }
    c.evidence["tate"] = tate;
    out.push_back(std::move(c));
  }
  {
    // the norm element acts on the trivial module as multiplication by p^r
    CheckReport c{"elab.norm", inputs, true, {}};
    GroupRingElement norm;
    for (int g = 0; g < e->order(); ++g) norm.emplace_back(g, Scalar(1));
    const Matrix nm = act(triv, norm);
    c.passed = nm == Matrix::identity(a, 1).scaled(Scalar(pr));
    c.evidence["norm"] = matrix_json(nm);
    out.push_back(std::move(c));
  }
  {
    // 0 < A/pi < ... < A/pi^r: each layer is k, and A/pi^r is the Tate H^0
    CheckReport c{"elab.filtration", inputs, true, {}};
    nlohmann::json layers = nlohmann::json::array();
    Integer prev = 1;
    for (int j = 1; j <= r; ++j) {
      Integer pj = 1;
      for (int i = 0; i < j; ++i) pj *= p;
      AbelianGroup q = Subquotient(Matrix::diagonal(a, {Scalar(pj)}), Matrix(a, 0, 1)).group();
      const Integer layer = q.order() / prev;
      layers.push_back(layer.str());
      if (layer != p) c.passed = false;
      prev = q.order();
    }
    AbelianGroup h0 = tate_cohomology(CompleteResolution(res), triv, 0);
    if (!(h0.torsion == std::vector<Integer>{pr})) c.passed = false;
    c.evidence["layers"] = layers;
    c.evidence["tate_h0"] = h0.to_string();
    out.push_back(std::move(c));
  }
  out.push_back(f_isomorphism_check(e, p, std::min(cap, 6), nil_bound > 0 ? nil_bound : p * p * p));
  return out;
}

// -------------------------------------------------------- random lattices

LatticeGenerator::LatticeGenerator(GroupPtr g, CoeffRing ring, std::uint64_t seed, std::size_t max_rank)
    : g_(std::move(g)), ring_(ring), max_rank_(max_rank), rng_(seed) {
  auto add = [&](Lattice l) {
    if (l.rank() == 0 || l.rank() > max_rank_) return;
    for (const auto& c : catalog_)
      if (c == l) return;
    catalog_.push_back(std::move(l));
  };
  add(trivial_lattice(g_, ring_));
  for (const auto& h : all_subgroups(g_)) {
    if (h.index() <= static_cast<int>(max_rank_)) add(permutation_lattice(h, ring_));
    if (h.index() == 2) add(sign_lattice(h, ring_));
  }
  if (static_cast<std::size_t>(g_->order()) - 1 <= max_rank_ && g_->order() > 1) {
    Lattice omega = syzygy(trivial_lattice(g_, ring_), 1);
    add(omega);
    add(dual(omega));
  }
}

std::uint64_t LatticeGenerator::draw(std::uint64_t bound) { return rng_() % bound; }

Matrix LatticeGenerator::random_invertible(std::size_t n) {
  Matrix p = Matrix::identity(ring_, n);
  const std::int64_t coeffs[] = {-2, -1, 1, 2};
  for (std::size_t t = 0; n > 1 && t < 2 * n; ++t) {
    const std::size_t i = draw(n), j = (i + 1 + draw(n - 1)) % n;
    Scalar c = ring_.reduce(Scalar(coeffs[draw(4)]));
    if (c == 0) continue;
    Matrix el = Matrix::identity(ring_, n);
    el.set(i, j, c);
    p = el * p;
  }
  if (ring_.kind() == CoeffRing::Kind::Rationals) {
    Matrix d = Matrix::identity(ring_, n);
    for (std::size_t i = 0; i < n; ++i) d.set(i, i, Scalar(1 + static_cast<int>(draw(3))) / Scalar(1 + static_cast<int>(draw(2))));
    p = d * p;
  }
  return p;
}

Lattice LatticeGenerator::next() {
  if (catalog_.empty()) fail(ErrorCode::InvalidInput, "no catalog lattice fits the rank bound");
  const std::size_t target = 1 + draw(max_rank_);
  std::optional<Lattice> sum;
  std::size_t rank = 0;
  for (int attempts = 0; attempts < 16 && rank < target; ++attempts) {
    const Lattice& pick = catalog_[draw(catalog_.size())];
    if (rank + pick.rank() > max_rank_) continue;
    sum = sum ? direct_sum(*sum, pick) : pick;
    rank += pick.rank();
  }
  if (!sum) sum = catalog_[0];
  const std::size_t n = sum->rank();
  const Matrix p = random_invertible(n);
  const Matrix pinv = invert(p);
  std::vector<Matrix> act;
  for (int g = 0; g < g_->order(); ++g) act.push_back(p * sum->action(g) * pinv);
  return Lattice(g_, ring_, n, std::move(act));
}

}  // namespace modstrat
