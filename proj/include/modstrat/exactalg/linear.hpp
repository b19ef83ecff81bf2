#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "modstrat/exactalg/coeff_ring.hpp"
#include "modstrat/exactalg/matrix.hpp"

namespace modstrat {

struct SmithDecomposition {
  Matrix U, D, V;
  std::vector<Scalar> elementary_divisors;  // length min(rows, cols), zeros last
  std::size_t rank = 0;
};

/// U*A*V = D over Z, Z_(p), Q or F_p. Composite Z/m is rejected.
SmithDecomposition smith_normal_form(const Matrix& A);

struct SolveOutcome {
  bool solvable = false;
  std::vector<Scalar> solution;
  /// When unsolvable: functional phi with phi*A == 0 modulo `modulus` (exactly
  /// zero when modulus is 0) and phi*b nonzero modulo it.
  std::vector<Scalar> obstruction;
  Scalar modulus = 0;
};

/// Factors A once and answers repeated solve / kernel queries.
class LinearSolver {
 public:
  explicit LinearSolver(const Matrix& A);

  const CoeffRing& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  SolveOutcome solve(std::span<const Scalar> b) const;
  bool in_image(std::span<const Scalar> b) const { return solve(b).solvable; }
  /// Kernel generators as columns; a basis except over composite Z/m.
  const Matrix& kernel() const { return kernel_; }
  const std::vector<Scalar>& divisors() const { return divisors_; }

 private:
  CoeffRing ring_;
  CoeffRing work_ring_;  // Z when solving over composite Z/m by lifting
  std::size_t rows_, cols_, rank_ = 0;
  Matrix U_, V_;
  std::vector<Scalar> divisors_;
  Matrix kernel_;
};

std::optional<std::vector<Scalar>> solve_linear(const Matrix& A, std::span<const Scalar> b);

/// For each column w of W: is A x = w solvable? One factorization, no
/// transforms stored; suited to large sparse A.
std::vector<bool> columns_in_image(const Matrix& A, const Matrix& W);

/// Generators (columns) of {c : W c in im A}.
Matrix preimage_of_image(const Matrix& A, const Matrix& W);

/// Basis of the column span (over PIDs: of the generated submodule).
Matrix image_basis(const Matrix& G);

/// Finitely generated module over the coefficient ring, by invariant factors.
struct AbelianGroup {
  CoeffRing ring = CoeffRing::integers();
  std::size_t free_rank = 0;          // dimension over fields
  std::vector<Integer> torsion;       // invariant factors > 1, divisibility chain

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  Integer order() const;              // requires is_finite(); over F_p returns p^dim
  /// Exponent of the torsion part (1 when there is none).
  Integer exponent() const;
  bool annihilated_by(const Integer& n) const;
  std::string to_string() const;
  bool operator==(const AbelianGroup& other) const;
};

/// H = ker(B) / im(A) for B*A = 0 over any supported ring, with explicit
/// generators and a coordinate map on cycles.
class Subquotient {
 public:
  Subquotient(const Matrix& A, const Matrix& B);

  const AbelianGroup& group() const { return group_; }
  /// Cycle representatives, one per cyclic factor (torsion first, then free).
  const Matrix& generators() const { return generators_; }
  /// Order of each generator (0 = infinite).
  const std::vector<Integer>& orders() const { return orders_; }
  std::size_t num_generators() const { return orders_.size(); }
  std::size_t ambient_dim() const { return ambient_; }

  /// Coordinates of a cycle; torsion coordinates reduced into [0, order).
  std::vector<Scalar> coordinates(std::span<const Scalar> cycle) const;
  bool is_boundary(std::span<const Scalar> cycle) const;
  bool is_cycle(std::span<const Scalar> cycle) const;
  /// Cycle representing the given coordinate vector.
  std::vector<Scalar> representative(std::span<const Scalar> coords) const;

 private:
  CoeffRing ring_;
  std::size_t ambient_ = 0;
  Matrix B_;
  Matrix basis_;                       // basis of the cycle lattice (over Z for composite Z/m)
  std::optional<LinearSolver> basis_solver_;
  CoeffRing work_ring_;
  Matrix U_;                           // SNF row transform of the boundary coordinates
  std::vector<std::size_t> kept_;      // SNF indices that survive in H
  std::vector<Integer> orders_;
  Matrix generators_;
  AbelianGroup group_;
};

}  // namespace modstrat
