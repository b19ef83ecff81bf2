#include "modstrat/homalg/cohomology.hpp"

#include "modstrat/common/error.hpp"

namespace modstrat {

namespace {

void check_ring(const Resolution& res, const Lattice& m) {
  if (!(res.ring() == m.ring()))
    fail(ErrorCode::RingMismatch, "resolution over " + res.ring().to_string() + ", module over " + m.ring().to_string());
  if (res.group()->order() != m.group()->order()) fail(ErrorCode::GroupMismatch, "module over a different group");
}

// Values on e_j of cocycle o d for trivial coefficients.
std::vector<Scalar> compose_trivial(const CoeffRing& ring, const GroupRingMatrix& d, std::span<const Scalar> phi) {
  std::vector<Scalar> out(d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j)
    for (std::size_t i = 0; i < d.rows(); ++i)
      if (phi[i] != 0 && !d.at(i, j).empty()) out[j] = ring.add(out[j], ring.mul(augmentation(ring, d.at(i, j)), phi[i]));
  return out;
}

// Evaluates a trivial-coefficient cochain on an unrolled chain.
Scalar evaluate(const CoeffRing& ring, std::size_t group_order, std::span<const Scalar> phi,
                std::span<const Scalar> chain) {
  Scalar s = 0;
  for (std::size_t k = 0; k < chain.size(); ++k)
    if (chain[k] != 0) s = ring.add(s, ring.mul(chain[k], phi[k / group_order]));
  return s;
}

}  // namespace

Matrix cochain_differential(const Resolution& res, const Lattice& m, int n) {
  check_ring(res, m);
  if (n == 0) return Matrix(m.ring(), res.rank(0) * m.rank(), 0);
  return res.d(n).cochain_matrix(m);
}

Subquotient cohomology_subquotient(const Resolution& res, const Lattice& m, int n) {
  if (n < 0) fail(ErrorCode::InvalidInput, "negative cohomological degree");
  if (n > res.cap() - 1)
    fail(ErrorCode::CapExceeded, "H^" + std::to_string(n) + " needs a resolution of cap " + std::to_string(n + 1));
  return Subquotient(cochain_differential(res, m, n), cochain_differential(res, m, n + 1));
}

AbelianGroup cohomology(const Resolution& res, const Lattice& m, int n) {
  return cohomology_subquotient(res, m, n).group();
}

Matrix tate_cochain_differential(const CompleteResolution& cr, const Lattice& m, int k) {
  check_ring(*cr.positive(), m);
  return cr.d(k).cochain_matrix(m);
}

Subquotient tate_subquotient(const CompleteResolution& cr, const Lattice& m, int n) {
  if (n <= cr.min_degree() || n >= cr.max_degree())
    fail(ErrorCode::RangeExceeded, "Tate degree " + std::to_string(n) + " outside the computed range");
  return Subquotient(tate_cochain_differential(cr, m, n), tate_cochain_differential(cr, m, n + 1));
}

AbelianGroup tate_cohomology(const CompleteResolution& cr, const Lattice& m, int n) {
  return tate_subquotient(cr, m, n).group();
}

CohomologyClass::CohomologyClass(ResolutionPtr res, int degree, std::vector<Scalar> cocycle)
    : res_(std::move(res)), degree_(degree), cocycle_(std::move(cocycle)) {
  if (degree_ < 0 || degree_ > res_->cap()) fail(ErrorCode::CapExceeded, "class degree outside the resolution");
  if (cocycle_.size() != res_->rank(degree_)) fail(ErrorCode::DimensionMismatch, "cocycle has the wrong length");
  for (auto& x : cocycle_) x = res_->ring().reduce(x);
  if (degree_ < res_->cap() && !vec_is_zero(compose_trivial(res_->ring(), res_->d(degree_ + 1), cocycle_)))
    fail(ErrorCode::InvalidInput, "cochain is not a cocycle");
}

CohomologyClass CohomologyClass::identity(ResolutionPtr res) { return CohomologyClass(std::move(res), 0, {Scalar(1)}); }

CohomologyClass CohomologyClass::zero(ResolutionPtr res, int degree) {
  std::vector<Scalar> z(res->rank(degree));
  return CohomologyClass(std::move(res), degree, std::move(z));
}

void CohomologyClass::lift_to(int k) {
  if (degree_ + k > res_->cap())
    fail(ErrorCode::CapExceeded, "lift f_" + std::to_string(k) + " of a degree-" + std::to_string(degree_) +
                                     " class needs cap " + std::to_string(degree_ + k));
  const auto& G = res_->group();
  const CoeffRing& ring = res_->ring();
  if (lift_.empty()) {
    GroupRingMatrix f0(G, ring, 1, res_->rank(degree_));
    for (std::size_t j = 0; j < cocycle_.size(); ++j)
      if (cocycle_[j] != 0) f0.add(0, j, 0, cocycle_[j]);
    lift_.push_back(std::move(f0));
  }
  const std::size_t n = G->order();
  while (static_cast<int>(lift_.size()) <= k) {
    const int kk = static_cast<int>(lift_.size());
    const GroupRingMatrix& prev = lift_.back();
    const Matrix& dn = res_->unrolled(degree_ + kk);
    const LinearSolver& solver = res_->solver(kk);
    GroupRingMatrix f(G, ring, res_->rank(kk), res_->rank(degree_ + kk));
    for (std::size_t j = 0; j < f.cols(); ++j) {
      std::vector<Scalar> b = prev.apply(dn.column_vector(j * n));
      SolveOutcome o = solver.solve(b);
      if (!o.solvable) fail(ErrorCode::LiftFailed, "no lift in degree " + std::to_string(kk));
      f.set_column(j, o.solution);
    }
    lift_.push_back(std::move(f));
  }
}

bool CohomologyClass::is_coboundary() const {
  if (degree_ == 0) return vec_is_zero(cocycle_);
  Lattice triv = trivial_lattice(res_->group(), res_->ring());
  return LinearSolver(cochain_differential(*res_, triv, degree_)).in_image(cocycle_);
}

CohomologyClass CohomologyClass::operator+(const CohomologyClass& o) const {
  if (o.res_ != res_) fail(ErrorCode::ResolutionMismatch, "classes on different resolutions");
  if (o.degree_ != degree_) fail(ErrorCode::DimensionMismatch, "adding classes of different degrees");
  return CohomologyClass(res_, degree_, vec_add(res_->ring(), cocycle_, o.cocycle_));
}

CohomologyClass CohomologyClass::scaled(const Scalar& c) const {
  return CohomologyClass(res_, degree_, vec_scale(res_->ring(), c, cocycle_));
}

CohomologyClass lift_to_chain_map(const CohomologyClass& c, int upto) {
  CohomologyClass out = c;
  out.lift_to(upto < 0 ? c.resolution()->cap() - c.degree() : upto);
  return out;
}

CohomologyClass cup_product(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.resolution() != b.resolution()) fail(ErrorCode::ResolutionMismatch, "classes lifted on different resolutions");
  const int q = b.degree();
  const GroupRingMatrix* f = nullptr;
  std::optional<CohomologyClass> lifted;
  if (static_cast<int>(a.lift().size()) > q) {
    f = &a.lift()[q];
  } else {
    lifted = lift_to_chain_map(a, q);
    f = &lifted->lift()[q];
  }
  return CohomologyClass(a.resolution(), a.degree() + q, compose_trivial(a.resolution()->ring(), *f, b.cocycle()));
}

ComparisonMap::ComparisonMap(ResolutionPtr source, ResolutionPtr target, GroupHom iota, int upto)
    : source_(std::move(source)), target_(std::move(target)), iota_(std::move(iota)) {
  if (!(source_->ring() == target_->ring())) fail(ErrorCode::RingMismatch, "comparison across coefficient rings");
  if (!iota_.is_injective() || iota_.source->order() != source_->group()->order() ||
      iota_.target->order() != target_->group()->order())
    fail(ErrorCode::NotASubgroup, "comparison map needs an injective hom into the target group");
  if (upto > source_->cap() || upto > target_->cap())
    fail(ErrorCode::CapExceeded, "comparison map beyond the resolution caps");
  const auto& G = *target_->group();
  const std::size_t ng = G.order();
  const CoeffRing& ring = target_->ring();
  std::vector<Scalar> e0(ng);
  e0[0] = 1;
  images_.push_back({e0});
  for (int k = 1; k <= upto; ++k) {
    const GroupRingMatrix& dh = source_->d(k);
    const auto& prev = images_.back();
    std::vector<std::vector<Scalar>> cur;
    for (std::size_t j = 0; j < dh.cols(); ++j) {
      std::vector<Scalar> b(target_->rank(k - 1) * ng);
      for (std::size_t i = 0; i < dh.rows(); ++i)
        for (const auto& [h, c] : dh.at(i, j)) {
          auto t = translate(G, iota_.map[h], prev[i]);
          for (std::size_t x = 0; x < b.size(); ++x)
            if (t[x] != 0) b[x] = ring.add(b[x], ring.mul(c, t[x]));
        }
      SolveOutcome o = target_->solver(k).solve(b);
      if (!o.solvable) fail(ErrorCode::LiftFailed, "comparison map does not lift in degree " + std::to_string(k));
      cur.push_back(std::move(o.solution));
    }
    images_.push_back(std::move(cur));
  }
}

std::vector<Scalar> ComparisonMap::pull_back(int n, std::span<const Scalar> cocycle) const {
  if (n > upto()) fail(ErrorCode::CapExceeded, "comparison map not computed in this degree");
  std::vector<Scalar> out;
  for (const auto& x : images_.at(n))
    out.push_back(evaluate(target_->ring(), target_->group()->order(), cocycle, x));
  return out;
}

CohomologyClass restriction_map(const CohomologyClass& c, const ResolutionPtr& sub_res, const GroupHom& iota) {
  ComparisonMap f(sub_res, c.resolution(), iota, c.degree());
  return CohomologyClass(sub_res, c.degree(), f.pull_back(c.degree(), c.cocycle()));
}

Lattice syzygy_of_trivial(const Resolution& res, int n) {
  if (n == 0) return trivial_lattice(res.group(), res.ring());
  if (res.ring().kind() == CoeffRing::Kind::IntegersMod && !res.ring().is_field())
    fail(ErrorCode::UnsupportedRing, "syzygies over composite Z/m");
  Matrix basis = image_basis(res.unrolled(n));
  return sublattice(free_lattice(res.group(), res.ring(), res.rank(n - 1)), basis);
}

Lattice carlson_module(const CohomologyClass& zeta) {
  const auto& res = *zeta.resolution();
  if (res.ring().kind() != CoeffRing::Kind::PrimeField)
    fail(ErrorCode::UnsupportedRing, "Carlson modules are built over prime fields only");
  const int n = zeta.degree();
  if (n < 1) fail(ErrorCode::InvalidInput, "Carlson module needs a class of positive degree");
  if (n >= res.cap()) fail(ErrorCode::CapExceeded, "Carlson module needs the cocycle condition checked");
  if (zeta.is_coboundary()) fail(ErrorCode::ZeroClass, "zeta is zero in cohomology");
  Lattice omega = syzygy_of_trivial(res, n);
  Matrix basis = image_basis(res.unrolled(n));
  const std::size_t ng = res.group()->order();
  Matrix row(res.ring(), 1, basis.cols());
  for (std::size_t c = 0; c < basis.cols(); ++c) {
    SolveOutcome o = res.solver(n).solve(basis.column_vector(c));
    if (!o.solvable) fail(ErrorCode::LiftFailed, "syzygy basis vector outside the image");
    Scalar v = evaluate(res.ring(), ng, zeta.cocycle(), o.solution);
    if (v != 0) row.set(0, c, v);
  }
  return kernel_lattice(EquivariantMap(omega, trivial_lattice(res.group(), res.ring()), row));
}

}  // namespace modstrat
