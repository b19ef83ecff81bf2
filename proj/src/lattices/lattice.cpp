#include "modstrat/lattices/lattice.hpp"

#include <algorithm>
#include <queue>

#include "modstrat/common/error.hpp"
#include "modstrat/exactalg/linear.hpp"

namespace modstrat {

Lattice::Lattice(Unchecked, GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<Matrix> action)
    : group_(std::move(group)), ring_(ring), rank_(rank), action_(std::move(action)) {}

Lattice make_lattice_unchecked(GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<Matrix> action) {
  return Lattice(Lattice::Unchecked{}, std::move(group), ring, rank, std::move(action));
}

Lattice::Lattice(GroupPtr group, CoeffRing ring, std::size_t rank, std::vector<Matrix> action)
    : group_(std::move(group)), ring_(ring), rank_(rank), action_(std::move(action)) {
  validate();
}

void Lattice::validate() const {
  const int n = group_->order();
  if (static_cast<int>(action_.size()) != n)
    fail(ErrorCode::InvalidLattice, "need one action matrix per group element");
  for (int g = 0; g < n; ++g) {
    const Matrix& a = action_[g];
    if (a.rows() != rank_ || a.cols() != rank_) fail(ErrorCode::InvalidLattice, "action matrix has the wrong shape");
    if (!(a.ring() == ring_)) fail(ErrorCode::InvalidLattice, "action matrix over the wrong ring");
  }
  if (!action_[0].is_identity()) fail(ErrorCode::InvalidLattice, "identity element does not act as the identity");
  // rho(s x) = rho(s) rho(x) for generators s and all x gives rho(w x) =
  // rho(w) rho(x) for every word w by induction, hence a homomorphism.
  for (int s : group_->generators())
    for (int x = 0; x < n; ++x)
      if (!(action_[group_->mul(s, x)] == action_[s] * action_[x]))
        fail(ErrorCode::InvalidLattice, "action is not multiplicative at (" + std::to_string(s) + ", " +
                                            std::to_string(x) + ")");
}

Lattice Lattice::from_generators(GroupPtr group, CoeffRing ring, std::size_t rank,
                                 const std::map<int, Matrix>& generator_images) {
  const int n = group->order();
  std::vector<Matrix> act(n);
  std::vector<char> known(n, 0);
  act[0] = Matrix::identity(ring, rank);
  known[0] = 1;
  std::vector<int> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    for (const auto& [s, m] : generator_images) {
      if (s < 0 || s >= n) fail(ErrorCode::InvalidLattice, "generator index out of range");
      if (m.rows() != rank || m.cols() != rank) fail(ErrorCode::InvalidLattice, "generator image has wrong shape");
      int y = group->mul(s, x);
      Matrix img = m.over(ring) * act[x];
      if (known[y]) {
        if (!(act[y] == img)) fail(ErrorCode::InvalidLattice, "generator images violate a group relation");
        continue;
      }
      act[y] = std::move(img);
      known[y] = 1;
      queue.push_back(y);
    }
  }
  if (static_cast<int>(queue.size()) != n) fail(ErrorCode::InvalidLattice, "given elements do not generate the group");
  return Lattice(std::move(group), ring, rank, std::move(act));
}

Lattice Lattice::from_json(GroupPtr group, const nlohmann::json& j) {
  CoeffRing ring = CoeffRing::parse(j.at("ring").get<std::string>());
  std::size_t rank = j.at("rank").get<std::size_t>();
  std::map<int, Matrix> images;
  for (const auto& [key, value] : j.at("action").items()) {
    int g = std::stoi(key);
    auto rows = value.get<std::vector<std::vector<long long>>>();
    std::vector<std::vector<Scalar>> data;
    for (const auto& r : rows) {
      std::vector<Scalar> row;
      for (auto v : r) row.emplace_back(v);
      data.push_back(std::move(row));
    }
    Matrix m = rank == 0 ? Matrix(ring, 0, 0) : Matrix::from_rows(ring, data);
    images.emplace(g, std::move(m));
  }
  if (static_cast<int>(images.size()) == group->order()) {
    std::vector<Matrix> act;
    for (int g = 0; g < group->order(); ++g) {
      auto it = images.find(g);
      if (it == images.end()) fail(ErrorCode::InvalidLattice, "missing action matrix");
      act.push_back(it->second);
    }
    return Lattice(std::move(group), ring, rank, std::move(act));
  }
  return from_generators(std::move(group), ring, rank, images);
}

nlohmann::json Lattice::to_json() const {
  nlohmann::json act = nlohmann::json::object();
  for (int g = 0; g < group_->order(); ++g) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < rank_; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t k = 0; k < rank_; ++k) {
        Scalar v = action_[g].at(i, k);
        if (denominator(v) == 1)
          row.push_back(static_cast<long long>(numerator(v)));
        else
          row.push_back(v.str());
      }
      rows.push_back(row);
    }
    act[std::to_string(g)] = rows;
  }
  return nlohmann::json{{"ring", ring_.to_string()}, {"rank", rank_}, {"action", act}};
}

Lattice Lattice::over(const CoeffRing& ring) const {
  std::vector<Matrix> act;
  act.reserve(action_.size());
  for (const auto& a : action_) act.push_back(a.over(ring));
  return Lattice(group_, ring, rank_, std::move(act));
}

bool Lattice::operator==(const Lattice& o) const {
  if (group_->order() != o.group_->order() || !(ring_ == o.ring_) || rank_ != o.rank_) return false;
  for (std::size_t g = 0; g < action_.size(); ++g)
    if (!(action_[g] == o.action_[g])) return false;
  return true;
}

void check_compatible(const Lattice& a, const Lattice& b) {
  if (!(a.ring() == b.ring())) fail(ErrorCode::RingMismatch, a.ring().to_string() + " vs " + b.ring().to_string());
  if (a.group() != b.group() && a.group()->table() != b.group()->table())
    fail(ErrorCode::GroupMismatch, "lattices over different groups");
}

bool is_equivariant(const Lattice& source, const Lattice& target, const Matrix& f) {
  if (f.rows() != target.rank() || f.cols() != source.rank()) return false;
  for (int s : source.group()->generators())
    if (!(f * source.action(s) == target.action(s) * f)) return false;
  return true;
}

EquivariantMap::EquivariantMap(Lattice source, Lattice target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  check_compatible(source_, target_);
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
    fail(ErrorCode::DimensionMismatch, "map matrix has the wrong shape");
  if (!is_equivariant(source_, target_, matrix_)) fail(ErrorCode::InvalidLattice, "map is not equivariant");
}

Lattice trivial_lattice(GroupPtr g, CoeffRing ring, std::size_t rank) {
  std::vector<Matrix> act(g->order(), Matrix::identity(ring, rank));
  return Lattice(std::move(g), ring, rank, std::move(act));
}

Lattice regular_lattice(GroupPtr g, CoeffRing ring) {
  const int n = g->order();
  std::vector<Matrix> act;
  for (int x = 0; x < n; ++x) {
    Matrix m(ring, n, n);
    for (int h = 0; h < n; ++h) m.set(g->mul(x, h), h, Scalar(1));
    act.push_back(std::move(m));
  }
  return Lattice(std::move(g), ring, n, std::move(act));
}

std::vector<int> coset_representatives(const Subgroup& h) {
  const auto& g = h.parent();
  std::vector<int> reps;
  std::vector<char> covered(g->order(), 0);
  for (int x = 0; x < g->order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (int e : h.elements()) covered[g->mul(x, e)] = 1;
  }
  return reps;
}

namespace {

// Index i with x in t_i H, and the element h in H (parent index) with x = t_i h.
std::pair<std::size_t, int> coset_of(const Subgroup& h, const std::vector<int>& reps, int x) {
  const auto& g = h.parent();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    int y = g->mul(g->inv(reps[i]), x);
    if (h.contains(y)) return {i, y};
  }
  fail(ErrorCode::InvalidSubgroup, "element in no coset");
}

}  // namespace

Lattice permutation_lattice(const Subgroup& h, CoeffRing ring) {
  const auto& g = h.parent();
  auto reps = coset_representatives(h);
  const std::size_t k = reps.size();
  std::vector<Matrix> act;
  for (int x = 0; x < g->order(); ++x) {
    Matrix m(ring, k, k);
    for (std::size_t i = 0; i < k; ++i) m.set(coset_of(h, reps, g->mul(x, reps[i])).first, i, Scalar(1));
    act.push_back(std::move(m));
  }
  return Lattice(g, ring, k, std::move(act));
}

Lattice sign_lattice(const Subgroup& h, CoeffRing ring) {
  if (h.index() != 2) fail(ErrorCode::InvalidSubgroup, "sign representation needs an index-2 subgroup");
  const auto& g = h.parent();
  std::vector<Matrix> act;
  for (int x = 0; x < g->order(); ++x) {
    Matrix m(ring, 1, 1);
    m.set(0, 0, Scalar(h.contains(x) ? 1 : -1));
    act.push_back(std::move(m));
  }
  return Lattice(g, ring, 1, std::move(act));
}

Lattice tensor(const Lattice& m, const Lattice& n) {
  check_compatible(m, n);
  std::vector<Matrix> act;
  for (int g = 0; g < m.group()->order(); ++g) act.push_back(m.action(g).kron(n.action(g)));
  return make_lattice_unchecked(m.group(), m.ring(), m.rank() * n.rank(), std::move(act));
}

Lattice hom_lattice(const Lattice& m, const Lattice& n) {
  check_compatible(m, n);
  const auto& G = m.group();
  std::vector<Matrix> act;
  for (int g = 0; g < G->order(); ++g) act.push_back(n.action(g).kron(m.action(G->inv(g)).transpose()));
  return make_lattice_unchecked(G, m.ring(), m.rank() * n.rank(), std::move(act));
}

Lattice dual(const Lattice& m) {
  const auto& G = m.group();
  std::vector<Matrix> act;
  for (int g = 0; g < G->order(); ++g) act.push_back(m.action(G->inv(g)).transpose());
  return Lattice(G, m.ring(), m.rank(), std::move(act));
}

Lattice direct_sum(const Lattice& m, const Lattice& n) {
  check_compatible(m, n);
  std::vector<Matrix> act;
  for (int g = 0; g < m.group()->order(); ++g) act.push_back(m.action(g).block_diag(n.action(g)));
  return Lattice(m.group(), m.ring(), m.rank() + n.rank(), std::move(act));
}

Lattice restrict(const Lattice& m, const Subgroup& h) {
  if (h.parent()->order() != m.group()->order()) fail(ErrorCode::NotASubgroup, "subgroup of a different group");
  std::vector<Matrix> act;
  for (int x : h.elements()) act.push_back(m.action(x));
  return Lattice(h.group(), m.ring(), m.rank(), std::move(act));
}

Lattice restrict_along(const Lattice& m, const GroupHom& phi) {
  if (phi.target->order() != m.group()->order()) fail(ErrorCode::NotASubgroup, "homomorphism into a different group");
  std::vector<Matrix> act;
  for (int x = 0; x < phi.source->order(); ++x) act.push_back(m.action(phi.map[x]));
  return Lattice(phi.source, m.ring(), m.rank(), std::move(act));
}

Lattice induce(const Lattice& m, const Subgroup& h) {
  if (m.group()->order() != h.order()) fail(ErrorCode::NotASubgroup, "lattice is not over the subgroup");
  const auto& G = h.parent();
  auto reps = coset_representatives(h);
  const std::size_t k = reps.size(), r = m.rank();
  std::vector<Matrix> act;
  for (int x = 0; x < G->order(); ++x) {
    Matrix a(m.ring(), k * r, k * r);
    for (std::size_t i = 0; i < k; ++i) {
      auto [j, hh] = coset_of(h, reps, G->mul(x, reps[i]));
      const Matrix& b = m.action(h.local(hh));
      for (std::size_t row = 0; row < r; ++row)
        for (const auto& e : b.row(row)) a.set(j * r + row, i * r + e.col, e.value);
    }
    act.push_back(std::move(a));
  }
  return Lattice(G, m.ring(), k * r, std::move(act));
}

Matrix invert(const Matrix& a) {
  if (!a.is_square()) fail(ErrorCode::InvalidLattice, "only square matrices are invertible");
  LinearSolver s(a);
  const std::size_t n = a.rows();
  Matrix inv(a.ring(), n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Scalar> e(n);
    e[j] = 1;
    SolveOutcome o = s.solve(e);
    if (!o.solvable) fail(ErrorCode::InvalidLattice, "matrix is not invertible over " + a.ring().to_string());
    for (std::size_t i = 0; i < n; ++i)
      if (o.solution[i] != 0) inv.set(i, j, o.solution[i]);
  }
  if (!(a * inv).is_identity()) fail(ErrorCode::InvalidLattice, "matrix is not invertible over " + a.ring().to_string());
  return inv;
}

EquivariantMap projection_formula_iso(const Lattice& x, const Lattice& y, const Subgroup& h) {
  if (x.group()->order() != h.parent()->order() || y.group()->order() != h.order())
    fail(ErrorCode::NotASubgroup, "projection formula needs X over G and Y over H <= G");
  Lattice src = induce(tensor(restrict(x, h), y), h);
  Lattice tgt = tensor(x, induce(y, h));
  auto reps = coset_representatives(h);
  const std::size_t k = reps.size(), rx = x.rank(), ry = y.rank();
  Matrix f(x.ring(), tgt.rank(), src.rank());
  for (std::size_t i = 0; i < k; ++i) {
    const Matrix& t = x.action(reps[i]);
    for (std::size_t a = 0; a < rx; ++a)
      for (std::size_t b = 0; b < ry; ++b) {
        const std::size_t col = i * rx * ry + a * ry + b;
        for (std::size_t a2 = 0; a2 < rx; ++a2) {
          Scalar v = t.at(a2, a);
          if (v != 0) f.set(a2 * k * ry + i * ry + b, col, v);
        }
      }
  }
  invert(f);  // throws if not an isomorphism
  return EquivariantMap(src, tgt, f);
}

std::vector<Matrix> equivariant_hom_basis(const Lattice& m, const Lattice& n) {
  check_compatible(m, n);
  const std::size_t rm = m.rank(), rn = n.rank(), d = rm * rn;
  const auto& G = m.group();
  Matrix sys(m.ring(), 0, d);
  for (int s : G->generators()) {
    Matrix a = n.action(s).kron(m.action(G->inv(s)).transpose()) - Matrix::identity(m.ring(), d);
    sys = sys.vstack(a);
  }
  Matrix K = sys.rows() == 0 ? Matrix::identity(m.ring(), d) : LinearSolver(sys).kernel();
  std::vector<Matrix> out;
  for (std::size_t c = 0; c < K.cols(); ++c) {
    Matrix f(m.ring(), rn, rm);
    for (std::size_t i = 0; i < rn; ++i)
      for (std::size_t j = 0; j < rm; ++j) {
        Scalar v = K.at(i * rm + j, c);
        if (v != 0) f.set(i, j, v);
      }
    out.push_back(std::move(f));
  }
  return out;
}

Lattice sublattice(const Lattice& m, const Matrix& basis) {
  const std::size_t k = basis.cols();
  LinearSolver s(basis);
  std::vector<Matrix> act;
  for (int g = 0; g < m.group()->order(); ++g) {
    Matrix img = m.action(g) * basis;
    Matrix a(m.ring(), k, k);
    for (std::size_t j = 0; j < k; ++j) {
      SolveOutcome o = s.solve(img.column_vector(j));
      if (!o.solvable) fail(ErrorCode::InvalidLattice, "span is not G-stable or not saturated");
      for (std::size_t i = 0; i < k; ++i)
        if (o.solution[i] != 0) a.set(i, j, o.solution[i]);
    }
    act.push_back(std::move(a));
  }
  return Lattice(m.group(), m.ring(), k, std::move(act));
}

Lattice kernel_lattice(const EquivariantMap& f) {
  if (f.source().ring().kind() == CoeffRing::Kind::IntegersMod && !f.source().ring().is_field())
    fail(ErrorCode::UnsupportedRing, "kernels over composite Z/m need not be free");
  return sublattice(f.source(), LinearSolver(f.matrix()).kernel());
}

Lattice cokernel_lattice(const EquivariantMap& f) {
  const CoeffRing& ring = f.target().ring();
  SmithDecomposition s = smith_normal_form(f.matrix());
  for (std::size_t k = 0; k < s.rank; ++k)
    if (!ring.is_unit(s.elementary_divisors[k]))
      fail(ErrorCode::InvalidLattice, "cokernel has torsion (elementary divisor " + s.elementary_divisors[k].str() + ")");
  const std::size_t n = f.target().rank(), r = s.rank;
  Matrix q = invert(s.U);
  Matrix pi = s.U.submatrix(r, 0, n - r, n);
  Matrix lift = q.submatrix(0, r, n, n - r);
  std::vector<Matrix> act;
  for (int g = 0; g < f.target().group()->order(); ++g) act.push_back(pi * f.target().action(g) * lift);
  return Lattice(f.target().group(), ring, n - r, std::move(act));
}

}  // namespace modstrat
