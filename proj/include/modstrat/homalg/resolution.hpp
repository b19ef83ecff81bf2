#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "modstrat/exactalg/linear.hpp"
#include "modstrat/homalg/group_ring.hpp"

namespace modstrat {

enum class ResolutionStrategy { Auto, Bar, Periodic, TensorProduct, Minimal, KernelCover };
std::string to_string(ResolutionStrategy s);
ResolutionStrategy parse_strategy(std::string_view s);

class Resolution;
using ResolutionPtr = std::shared_ptr<const Resolution>;

/// Free resolution P_cap -> ... -> P_0 -> R of the trivial module, P_0 = R[G]
/// with augmentation e_0 |-> 1. Exactness is verified at P_0..P_{cap-1}.
class Resolution {
 public:
  /// Auto: periodic for cyclic groups, tensor product for abelian groups,
  /// minimal for p-groups over a field, kernel cover otherwise.
  static ResolutionPtr build(GroupPtr group, CoeffRing ring, int cap,
                             ResolutionStrategy strategy = ResolutionStrategy::Auto);

  const GroupPtr& group() const { return group_; }
  const CoeffRing& ring() const { return ring_; }
  int cap() const { return cap_; }
  ResolutionStrategy flavor() const { return flavor_; }
  std::size_t rank(int n) const { return ranks_.at(n); }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  /// d_n : P_n -> P_{n-1}, 1 <= n <= cap.
  const GroupRingMatrix& d(int n) const;
  const Matrix& unrolled(int n) const;
  /// Cached factorization of the unrolled d_n.
  const LinearSolver& solver(int n) const;

  Resolution(GroupPtr group, CoeffRing ring, int cap, ResolutionStrategy flavor, std::vector<GroupRingMatrix> d,
             bool validate = true);

 private:
  void validate() const;

  GroupPtr group_;
  CoeffRing ring_;
  int cap_;
  ResolutionStrategy flavor_;
  std::vector<std::size_t> ranks_;
  std::vector<GroupRingMatrix> d_;  // d_[n-1] = d_n
  std::vector<Matrix> unrolled_;
  mutable std::mutex solver_mutex_;
  mutable std::vector<std::unique_ptr<LinearSolver>> solvers_;
};

/// Complete resolution: P_k for k >= 0, the dual P_{-k-1}^* for k < 0, with
/// the norm [N] : P_0 -> P_{-1} spliced in.
class CompleteResolution {
 public:
  explicit CompleteResolution(ResolutionPtr res);
  const ResolutionPtr& positive() const { return res_; }
  int min_degree() const { return -res_->cap() - 1; }
  int max_degree() const { return res_->cap(); }
  std::size_t rank(int k) const;
  /// Differential out of degree k, for min_degree() < k <= max_degree().
  /// Tate cohomology is available in degrees [min_degree() + 1, max_degree() - 1].
  const GroupRingMatrix& d(int k) const;

 private:
  ResolutionPtr res_;
  GroupRingMatrix norm_;
  std::vector<GroupRingMatrix> duals_;  // duals_[k-1] = d_k^*
};

}  // namespace modstrat

namespace modstrat {

/// Reduction of a resolution over Z (or Z_(p)) to another coefficient ring;
/// stays exact because the complex is split over the base.
ResolutionPtr base_change(const ResolutionPtr& res, const CoeffRing& ring);

}  // namespace modstrat
