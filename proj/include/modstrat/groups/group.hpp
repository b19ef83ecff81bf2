#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace modstrat {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Group given by its multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  static constexpr int kMaxOrder = 64;

  /// Validates closure, associativity, identity 0 and inverses.
  static GroupPtr from_table(std::vector<std::vector<int>> table, std::string name = "");
  /// Permutations of {0..k-1} in image notation; elements are listed in
  /// breadth-first order from the identity.
  static GroupPtr from_permutations(const std::vector<std::vector<int>>& gens, std::string name = "");
  static GroupPtr cyclic(int n);
  /// Element (a, b) gets index a*|B| + b.
  static GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
  /// C2, C3, C4, C6, V4, E9, S3, D4, Q8.
  static GroupPtr builtin(std::string_view name);
  static std::vector<std::string> builtin_names();
  /// {"order": n, "table": [[...]]} or {"permutation_generators": [[...]]}.
  static GroupPtr from_json(const nlohmann::json& j);

  int order() const { return n_; }
  int mul(int a, int b) const { return table_[a * n_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  int power(int a, int e) const;
  int element_order(int a) const { return orders_[a]; }
  bool is_abelian() const;
  bool is_cyclic() const;
  /// Prime p when |G| is a power of p (p = 0 for the trivial group).
  std::optional<int> p_group_prime() const;
  std::vector<int> prime_divisors() const;
  /// Deterministic small generating set (greedy by element index, or the
  /// given permutation generators).
  const std::vector<int>& generators() const { return generators_; }
  const std::string& name() const { return name_; }
  std::vector<std::vector<int>> table() const;
  nlohmann::json to_json() const;

  /// For abelian groups: elements g_1..g_k with G the internal direct product
  /// of the cyclic groups <g_i>, orders non-increasing. Empty for the trivial
  /// group; throws for nonabelian groups.
  std::vector<int> cyclic_decomposition() const;

 private:
  FiniteGroup() = default;
  void finish(std::vector<int> gens);

  int n_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> orders_;
  std::vector<int> generators_;
  std::string name_;
};

/// Subgroup with its own relabelled copy of the group: subgroup element i is
/// parent element elements()[i], and element 0 is the identity.
class Subgroup {
 public:
  static Subgroup make(GroupPtr parent, std::vector<int> subset);  // throws InvalidSubgroup
  static Subgroup generated_by(GroupPtr parent, const std::vector<int>& gens);
  static Subgroup whole(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  const GroupPtr& group() const { return group_; }
  const std::vector<int>& elements() const { return elements_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int index() const { return parent_->order() / order(); }
  bool contains(int g) const { return local_[g] >= 0; }
  /// Subgroup index of a parent element (-1 if absent).
  int local(int g) const { return local_[g]; }
  Subgroup conjugate(int g) const;  // g H g^-1
  bool same_elements(const Subgroup& other) const { return sorted_ == other.sorted_; }
  const std::vector<int>& sorted_elements() const { return sorted_; }
  std::string to_string() const;

 private:
  GroupPtr parent_;
  GroupPtr group_;
  std::vector<int> elements_;
  std::vector<int> sorted_;
  std::vector<int> local_;
};

/// Group homomorphism given on elements.
struct GroupHom {
  GroupPtr source, target;
  std::vector<int> map;
  bool is_injective() const;
  /// Inclusion of a subgroup into its parent.
  static GroupHom inclusion(const Subgroup& h);
};

/// All elementary abelian subgroups (for the given prime, or all primes).
std::vector<Subgroup> elementary_abelian_subgroups(const GroupPtr& g, std::optional<int> p = std::nullopt,
                                                   bool include_trivial = false);
/// Every subgroup, by closure of generated subgroups (small groups only).
std::vector<Subgroup> all_subgroups(const GroupPtr& g);
bool is_elementary_abelian(const FiniteGroup& g, int* prime = nullptr, int* rank = nullptr);

struct OrbitMorphism {
  std::size_t source, target;
  int g;                  // x |-> g x g^-1 maps the source into the target
  std::vector<int> map;   // source-local index -> target-local index
  bool is_inclusion() const { return g == 0; }
};

struct ElabOrbitCategory {
  std::vector<Subgroup> objects;
  std::vector<int> primes;                 // prime of each object
  std::vector<OrbitMorphism> morphisms;    // generating morphisms, deduplicated
};

ElabOrbitCategory orbit_category(const GroupPtr& g);

}  // namespace modstrat
