#include "modstrat/exactalg/linear.hpp"

#include <sstream>

#include "modstrat/common/error.hpp"
#include "smith_engine.hpp"

namespace modstrat {

namespace {

using SRow = std::vector<std::pair<std::uint32_t, Scalar>>;

struct Core {
  std::vector<Scalar> diag;    // normalised nonzero divisors
  std::vector<SRow> passive;   // passive part of every final row
  std::vector<SRow> vt;        // rows of V^T (empty unless tracked)
};

bool composite_mod(const CoeffRing& r) { return r.kind() == CoeffRing::Kind::IntegersMod && !is_prime(r.modulus()); }

bool uses_field_engine(const CoeffRing& r) {
  return r.kind() == CoeffRing::Kind::PrimeField || r.kind() == CoeffRing::Kind::FiniteField ||
         (r.kind() == CoeffRing::Kind::IntegersMod && is_prime(r.modulus()));
}

std::uint64_t field_char(const CoeffRing& r) {
  return static_cast<std::uint64_t>(r.kind() == CoeffRing::Kind::IntegersMod ? r.modulus() : r.prime());
}

template <class Ops>
Core finish(const Ops& ops, detail::SmithEngine<Ops>& eng, std::size_t main_cols, bool track_v) {
  Core core;
  for (const auto& d : eng.diag()) core.diag.emplace_back(ops.to_integer(d));
  core.passive.resize(eng.rows().size());
  for (std::size_t i = 0; i < eng.rows().size(); ++i)
    for (const auto& [c, v] : eng.rows()[i])
      if (c >= main_cols) core.passive[i].push_back({static_cast<std::uint32_t>(c - main_cols), Scalar(ops.to_integer(v))});
  if (track_v) {
    core.vt.resize(eng.vt().size());
    for (std::size_t j = 0; j < eng.vt().size(); ++j)
      for (const auto& [c, v] : eng.vt()[j]) core.vt[j].push_back({c, Scalar(ops.to_integer(v))});
  }
  return core;
}

template <class Ops>
Core run_integral(const Ops& ops, const std::vector<std::vector<std::pair<std::uint32_t, Integer>>>& in,
                  std::size_t main_cols, bool track_v) {
  std::vector<typename detail::SmithEngine<Ops>::Row> rows(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    rows[i].reserve(in[i].size());
    for (const auto& [c, v] : in[i]) rows[i].push_back({c, ops.from_integer(v)});
  }
  detail::SmithEngine<Ops> eng(ops, main_cols, std::move(rows), track_v);
  eng.run();
  return finish(ops, eng, main_cols, track_v);
}

/// Smith form of A with passive columns [I (if track_u) | W (if given)].
Core smith_core(const CoeffRing& ring, const Matrix& A, const Matrix* W, bool track_u, bool track_v) {
  if (composite_mod(ring)) fail(ErrorCode::UnsupportedRing, "no Smith normal form over " + ring.to_string());
  const std::size_t n = A.rows();
  const std::size_t main = A.cols();
  const std::size_t ushift = main;
  const std::size_t wshift = main + (track_u ? n : 0);
  if (W && W->rows() != n) fail(ErrorCode::DimensionMismatch, "passive block row count differs");

  auto gather = [&](std::size_t i, auto&& emit) {
    for (const auto& e : A.row(i)) emit(static_cast<std::uint32_t>(e.col), e.value);
    if (track_u) emit(static_cast<std::uint32_t>(ushift + i), Scalar(1));
    if (W)
      for (const auto& e : W->row(i)) emit(static_cast<std::uint32_t>(wshift + e.col), e.value);
  };

  if (uses_field_engine(ring)) {
    detail::PrimeFieldOps ops{field_char(ring)};
    std::vector<detail::SmithEngine<detail::PrimeFieldOps>::Row> rows(n);
    for (std::size_t i = 0; i < n; ++i)
      gather(i, [&](std::uint32_t c, const Scalar& v) {
        Scalar r = ring.reduce(v);
        if (r != 0) rows[i].push_back({c, ops.from_integer(numerator(r))});
      });
    detail::SmithEngine<detail::PrimeFieldOps> eng(ops, main, std::move(rows), track_v);
    eng.run();
    Core core = finish(ops, eng, main, track_v);
    for (auto& d : core.diag) d = 1;
    return core;
  }

  // Z, Z_(p), Q: clear denominators row by row (each scale is a unit of the
  // ring), run the integral engine, then normalise divisors by units.
  std::vector<std::vector<std::pair<std::uint32_t, Integer>>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    Integer l = 1;
    gather(i, [&](std::uint32_t, const Scalar& v) { l = boost::multiprecision::lcm(l, denominator(v)); });
    gather(i, [&](std::uint32_t c, const Scalar& v) {
      if (v != 0) rows[i].push_back({c, numerator(v) * (l / denominator(v))});
    });
  }
  Core core;
  try {
    core = run_integral(detail::CheckedZ{}, rows, main, track_v);
  } catch (const detail::OverflowSignal&) {
    core = run_integral(detail::BigZ{}, rows, main, track_v);
  }
  if (ring.kind() == CoeffRing::Kind::LocalizedIntegers || ring.kind() == CoeffRing::Kind::Rationals) {
    for (std::size_t k = 0; k < core.diag.size(); ++k) {
      Integer d = numerator(core.diag[k]);
      Scalar target = 1;
      if (ring.kind() == CoeffRing::Kind::LocalizedIntegers) {
        std::int64_t v = p_valuation(d, ring.prime());
        Integer pv = 1;
        for (std::int64_t e = 0; e < v; ++e) pv *= ring.prime();
        target = Scalar(pv);
      }
      Scalar u = core.diag[k] / target;
      if (u != 1)
        for (auto& e : core.passive[k]) e.second /= u;
      core.diag[k] = target;
    }
  }
  return core;
}

Matrix rows_to_matrix(const CoeffRing& ring, const std::vector<SRow>& rows, std::size_t nr, std::size_t nc) {
  Matrix m(ring, nr, nc);
  for (std::size_t i = 0; i < rows.size() && i < nr; ++i) {
    std::vector<Matrix::Entry> entries;
    for (const auto& [c, v] : rows[i]) {
      if (c >= nc) continue;
      Scalar r = ring.reduce(v);
      if (r != 0) entries.push_back({c, std::move(r)});
    }
    m.set_row(i, std::move(entries));
  }
  return m;
}

Matrix lift_to_integers(const Matrix& A) { return A.over(CoeffRing::integers()); }

// [A | m I] over Z, used to solve over composite Z/m.
Matrix modular_lift(const Matrix& A, std::int64_t m) {
  return lift_to_integers(A).hstack(Matrix::identity(CoeffRing::integers(), A.rows()).scaled(Scalar(m)));
}

bool divisor_is_unit(const CoeffRing& ring, const Scalar& d) {
  if (ring.kind() == CoeffRing::Kind::Integers) return d == 1;
  if (ring.kind() == CoeffRing::Kind::LocalizedIntegers) return d == 1;
  return true;
}

// y / d inside the ring, if defined.
std::optional<Scalar> divide_in(const CoeffRing& ring, const Scalar& y, const Scalar& d) {
  if (y == 0) return Scalar(0);
  switch (ring.kind()) {
    case CoeffRing::Kind::Integers:
      if (numerator(y) % numerator(d) != 0) return std::nullopt;
      return y / d;
    case CoeffRing::Kind::LocalizedIntegers:
      if (p_valuation(numerator(y), ring.prime()) < p_valuation(numerator(d), ring.prime())) return std::nullopt;
      return y / d;
    default: return ring.reduce(y / d);
  }
}

std::vector<Scalar> reduce_vec(const CoeffRing& ring, std::span<const Scalar> v) {
  std::vector<Scalar> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring.reduce(v[i]);
  return out;
}

}  // namespace

SmithDecomposition smith_normal_form(const Matrix& A) {
  const CoeffRing& ring = A.ring();
  Core core = smith_core(ring, A, nullptr, true, true);
  SmithDecomposition out;
  out.rank = core.diag.size();
  out.U = rows_to_matrix(ring, core.passive, A.rows(), A.rows());
  out.V = rows_to_matrix(ring, core.vt, A.cols(), A.cols()).transpose();
  out.D = Matrix(ring, A.rows(), A.cols());
  for (std::size_t k = 0; k < out.rank; ++k) out.D.set(k, k, core.diag[k]);
  const std::size_t m = std::min(A.rows(), A.cols());
  out.elementary_divisors.assign(m, Scalar(0));
  for (std::size_t k = 0; k < out.rank; ++k) out.elementary_divisors[k] = core.diag[k];
  return out;
}

LinearSolver::LinearSolver(const Matrix& A)
    : ring_(A.ring()), work_ring_(A.ring()), rows_(A.rows()), cols_(A.cols()) {
  Matrix work = A;
  if (composite_mod(ring_)) {
    work_ring_ = CoeffRing::integers();
    work = modular_lift(A, ring_.modulus());
  }
  Core core = smith_core(work_ring_, work, nullptr, true, true);
  rank_ = core.diag.size();
  divisors_ = core.diag;
  U_ = rows_to_matrix(work_ring_, core.passive, work.rows(), work.rows());
  V_ = rows_to_matrix(work_ring_, core.vt, work.cols(), work.cols()).transpose();
  std::vector<std::size_t> kcols;
  for (std::size_t k = rank_; k < work.cols(); ++k) kcols.push_back(k);
  Matrix K = V_.select_columns(kcols);
  if (composite_mod(ring_)) {
    K = K.submatrix(0, 0, cols_, K.cols()).over(ring_);
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < K.cols(); ++j)
      if (!vec_is_zero(K.column_vector(j))) nonzero.push_back(j);
    K = K.select_columns(nonzero);
  }
  kernel_ = K;
}

SolveOutcome LinearSolver::solve(std::span<const Scalar> b) const {
  if (b.size() != rows_) fail(ErrorCode::DimensionMismatch, "right-hand side length differs from row count");
  std::vector<Scalar> bw = reduce_vec(ring_, b);
  if (!(work_ring_ == ring_)) bw = reduce_vec(work_ring_, bw);
  std::vector<Scalar> y = U_.apply(bw);
  SolveOutcome out;
  std::vector<Scalar> z(V_.rows());
  for (std::size_t k = 0; k < y.size(); ++k) {
    std::optional<Scalar> q;
    if (k < rank_)
      q = divide_in(work_ring_, y[k], divisors_[k]);
    else if (y[k] == 0)
      q = Scalar(0);
    if (!q) {
      std::vector<Scalar> phi(rows_);
      for (const auto& e : U_.row(k)) phi[e.col] = e.value;
      out.obstruction = std::move(phi);
      out.modulus = k < rank_ ? divisors_[k] : Scalar(0);
      return out;
    }
    if (k < z.size()) z[k] = *q;
  }
  std::vector<Scalar> x = V_.apply(z);
  x.resize(cols_);
  out.solvable = true;
  out.solution = reduce_vec(ring_, x);
  return out;
}

std::optional<std::vector<Scalar>> solve_linear(const Matrix& A, std::span<const Scalar> b) {
  if (b.size() != A.rows()) fail(ErrorCode::DimensionMismatch, "right-hand side length differs from row count");
  SolveOutcome o = LinearSolver(A).solve(b);
  if (!o.solvable) return std::nullopt;
  return o.solution;
}

namespace {

// Shared by columns_in_image and preimage_of_image: conditions on the
// passive block after reducing A.
struct Conditions {
  std::vector<SRow> rows;        // passive rows that must vanish modulo ...
  std::vector<Scalar> moduli;    // ... these (0 = exactly)
  CoeffRing ring;
};

Conditions image_conditions(const Matrix& A, const Matrix& W) {
  CoeffRing ring = A.ring();
  Matrix work = A;
  Matrix wk = W;
  if (composite_mod(ring)) {
    work = modular_lift(A, ring.modulus());
    wk = lift_to_integers(W);
    ring = CoeffRing::integers();
  }
  Core core = smith_core(ring, work, &wk, false, false);
  Conditions c{{}, {}, ring};
  for (std::size_t k = 0; k < core.passive.size(); ++k) {
    if (core.passive[k].empty()) continue;
    if (k < core.diag.size()) {
      if (divisor_is_unit(ring, core.diag[k])) continue;
      c.moduli.push_back(core.diag[k]);
    } else {
      c.moduli.push_back(Scalar(0));
    }
    c.rows.push_back(std::move(core.passive[k]));
  }
  return c;
}

}  // namespace

std::vector<bool> columns_in_image(const Matrix& A, const Matrix& W) {
  if (W.rows() != A.rows()) fail(ErrorCode::DimensionMismatch, "columns_in_image: row counts differ");
  Conditions c = image_conditions(A, W);
  std::vector<bool> ok(W.cols(), true);
  for (std::size_t k = 0; k < c.rows.size(); ++k)
    for (const auto& [j, v] : c.rows[k])
      if (c.moduli[k] == 0 || !divide_in(c.ring, v, c.moduli[k])) ok[j] = false;
  return ok;
}

Matrix preimage_of_image(const Matrix& A, const Matrix& W) {
  if (W.rows() != A.rows()) fail(ErrorCode::DimensionMismatch, "preimage_of_image: row counts differ");
  const CoeffRing& ring = A.ring();
  const std::size_t t = W.cols();
  Conditions c = image_conditions(A, W);
  if (c.rows.empty()) return Matrix::identity(ring, t);
  std::size_t nmod = 0;
  for (const auto& m : c.moduli)
    if (m != 0) ++nmod;
  Matrix M(c.ring, c.rows.size(), t + nmod);
  std::size_t extra = 0;
  for (std::size_t k = 0; k < c.rows.size(); ++k) {
    for (const auto& [j, v] : c.rows[k]) M.set(k, j, v);
    if (c.moduli[k] != 0) M.set(k, t + extra++, c.moduli[k]);
  }
  LinearSolver solver(M);
  Matrix K = solver.kernel();
  K = K.submatrix(0, 0, t, K.cols()).over(ring);
  std::vector<std::size_t> nonzero;
  for (std::size_t j = 0; j < K.cols(); ++j)
    if (!vec_is_zero(K.column_vector(j))) nonzero.push_back(j);
  return K.select_columns(nonzero);
}

Matrix image_basis(const Matrix& G) {
  if (composite_mod(G.ring())) fail(ErrorCode::UnsupportedRing, "image basis over " + G.ring().to_string());
  Core core = smith_core(G.ring(), G, nullptr, false, true);
  Matrix V = rows_to_matrix(G.ring(), core.vt, G.cols(), G.cols()).transpose();
  std::vector<std::size_t> first;
  for (std::size_t k = 0; k < core.diag.size(); ++k) first.push_back(k);
  return (G * V).select_columns(first);
}

Integer AbelianGroup::order() const {
  if (!is_finite()) fail(ErrorCode::InvalidInput, "order of an infinite group");
  Integer n = 1;
  for (const auto& t : torsion) n *= t;
  return n;
}

Integer AbelianGroup::exponent() const {
  Integer e = 1;
  for (const auto& t : torsion) e = boost::multiprecision::lcm(e, t);
  return e;
}

bool AbelianGroup::annihilated_by(const Integer& n) const {
  if (ring.is_field()) {
    if (free_rank == 0) return true;
    return ring.characteristic() != 0 ? n % ring.characteristic() == 0 : n == 0;
  }
  if (free_rank > 0 && n != 0) return false;
  for (const auto& t : torsion)
    if (n % t != 0) return false;
  return true;
}

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const std::string base = ring.to_string();
  if (ring.is_field()) {
    os << base << "^" << free_rank;
    return os.str();
  }
  bool first = true;
  for (const auto& t : torsion) {
    os << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  if (free_rank > 0) {
    os << (first ? "" : " + ") << base;
    if (free_rank > 1) os << "^" << free_rank;
  }
  return os.str();
}

bool AbelianGroup::operator==(const AbelianGroup& other) const {
  return ring == other.ring && free_rank == other.free_rank && torsion == other.torsion;
}

Subquotient::Subquotient(const Matrix& A, const Matrix& B)
    : ring_(A.ring()), ambient_(A.rows()), B_(B), work_ring_(A.ring()) {
  if (A.rows() != B.cols()) fail(ErrorCode::DimensionMismatch, "subquotient: A rows must equal B cols");
  if (!(A.ring() == B.ring())) fail(ErrorCode::RingMismatch, "subquotient: ring mismatch");
  const std::size_t n = ambient_;
  Matrix N;
  if (composite_mod(ring_)) {
    work_ring_ = CoeffRing::integers();
    const Integer m = ring_.modulus();
    Matrix gens;
    if (B.rows() == 0) {
      gens = Matrix::identity(work_ring_, n);
    } else {
      LinearSolver ks(modular_lift(B, ring_.modulus()));
      gens = ks.kernel().submatrix(0, 0, n, ks.kernel().cols());
    }
    basis_ = image_basis(gens);
    N = lift_to_integers(A).hstack(Matrix::identity(work_ring_, n).scaled(Scalar(m)));
  } else {
    basis_ = B.rows() == 0 ? Matrix::identity(ring_, n) : LinearSolver(B).kernel();
    N = A;
  }
  const std::size_t t = basis_.cols();
  basis_solver_.emplace(basis_);
  Matrix C(work_ring_, t, N.cols());
  for (std::size_t j = 0; j < N.cols(); ++j) {
    auto col = N.column_vector(j);
    SolveOutcome o = basis_solver_->solve(col);
    if (!o.solvable) fail(ErrorCode::DimensionMismatch, "subquotient: boundaries are not cycles");
    for (std::size_t i = 0; i < t; ++i)
      if (o.solution[i] != 0) C.set(i, j, o.solution[i]);
  }
  Core core = smith_core(work_ring_, C, nullptr, true, false);
  U_ = rows_to_matrix(work_ring_, core.passive, t, t);
  const std::size_t r = core.diag.size();
  group_.ring = ring_;
  for (std::size_t k = 0; k < t; ++k) {
    if (k < r) {
      if (divisor_is_unit(work_ring_, core.diag[k])) continue;
      kept_.push_back(k);
      orders_.push_back(numerator(core.diag[k]));
      group_.torsion.push_back(numerator(core.diag[k]));
    } else {
      kept_.push_back(k);
      orders_.push_back(0);
      ++group_.free_rank;
    }
  }
  LinearSolver us(U_);
  generators_ = Matrix(ring_, n, kept_.size());
  for (std::size_t g = 0; g < kept_.size(); ++g) {
    std::vector<Scalar> e(t);
    e[kept_[g]] = 1;
    std::vector<Scalar> y = us.solve(e).solution;
    std::vector<Scalar> col = basis_.apply(y);
    for (std::size_t i = 0; i < n; ++i)
      if (col[i] != 0) generators_.set(i, g, col[i]);
  }
}

bool Subquotient::is_cycle(std::span<const Scalar> cycle) const {
  if (B_.rows() == 0) return true;
  return vec_is_zero(B_.apply(cycle));
}

std::vector<Scalar> Subquotient::coordinates(std::span<const Scalar> cycle) const {
  if (cycle.size() != ambient_) fail(ErrorCode::DimensionMismatch, "cycle length differs from ambient dimension");
  std::vector<Scalar> z = reduce_vec(ring_, cycle);
  if (!(work_ring_ == ring_)) z = reduce_vec(work_ring_, z);
  SolveOutcome o = basis_solver_->solve(z);
  if (!o.solvable) fail(ErrorCode::InvalidInput, "vector is not a cycle");
  std::vector<Scalar> y = U_.apply(o.solution);
  std::vector<Scalar> out(kept_.size());
  for (std::size_t g = 0; g < kept_.size(); ++g) {
    const Scalar& v = y[kept_[g]];
    if (orders_[g] == 0) {
      out[g] = ring_.reduce(v);
    } else {
      // Torsion coordinate: image of v in R/(d) = Z/d.
      out[g] = CoeffRing::integers_mod(static_cast<std::int64_t>(orders_[g])).reduce(v);
    }
  }
  return out;
}

bool Subquotient::is_boundary(std::span<const Scalar> cycle) const { return vec_is_zero(coordinates(cycle)); }

std::vector<Scalar> Subquotient::representative(std::span<const Scalar> coords) const {
  if (coords.size() != kept_.size()) fail(ErrorCode::DimensionMismatch, "coordinate vector length");
  std::vector<Scalar> out(ambient_);
  for (std::size_t g = 0; g < kept_.size(); ++g) {
    if (coords[g] == 0) continue;
    for (std::size_t i = 0; i < ambient_; ++i) {
      Scalar v = generators_.at(i, g);
      if (v != 0) out[i] += coords[g] * v;
    }
  }
  return reduce_vec(ring_, out);
}

}  // namespace modstrat
