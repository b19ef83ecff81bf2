#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modstrat/exactalg/coeff_ring.hpp"

namespace modstrat {

using Monomial = std::vector<int>;  // exponent vector

/// Polynomial ring over a coefficient ring with positively weighted
/// variables, ordered by weighted degree then reverse lexicographically.
class PolyRing {
 public:
  PolyRing(CoeffRing coeffs, std::vector<int> degrees, std::vector<std::string> names = {});

  const CoeffRing& coeffs() const { return coeffs_; }
  std::size_t nvars() const { return degrees_.size(); }
  int var_degree(std::size_t i) const { return degrees_[i]; }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  std::ptrdiff_t index_of(std::string_view name) const;

  int degree(const Monomial& m) const;
  /// Strict monomial order: true when a > b.
  bool greater(const Monomial& a, const Monomial& b) const;
  /// All monomials of weighted degree d, in decreasing order.
  std::vector<Monomial> monomials_of_degree(int d) const;

 private:
  CoeffRing coeffs_;
  std::vector<int> degrees_;
  std::vector<std::string> names_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Scalar coeff;
  };

  explicit Polynomial(PolyRingPtr ring) : ring_(std::move(ring)) {}
  static Polynomial constant(PolyRingPtr ring, const Scalar& c);
  static Polynomial variable(PolyRingPtr ring, std::size_t i);
  static Polynomial monomial(PolyRingPtr ring, Monomial m, const Scalar& c = Scalar(1));
  /// Parses sums of products such as "x1^2*x2 + 3*x3 - x1", using the ring's
  /// variable names.
  static Polynomial parse(PolyRingPtr ring, std::string_view text);

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  const Scalar& leading_coeff() const { return terms_.front().coeff; }
  /// Weighted degree of the leading term (-1 for zero).
  int degree() const;
  bool is_homogeneous() const;
  Scalar coeff_of(const Monomial& m) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial times_monomial(const Monomial& m, const Scalar& c) const;
  Polynomial pow(int e) const;
  Polynomial monic() const;
  bool operator==(const Polynomial& o) const;

  Scalar evaluate(std::span<const Scalar> values) const;
  std::string to_string() const;

 private:
  void normalize();

  PolyRingPtr ring_;
  std::vector<Term> terms_;  // strictly decreasing monomials, nonzero coefficients
};

bool divides(const Monomial& a, const Monomial& b);
Monomial monomial_lcm(const Monomial& a, const Monomial& b);
Monomial monomial_quotient(const Monomial& b, const Monomial& a);  // b / a

/// Reduced Gröbner basis of a homogeneous ideal over a field.
class GroebnerBasis {
 public:
  GroebnerBasis(PolyRingPtr ring, std::vector<Polynomial> generators, std::vector<Polynomial> basis)
      : ring_(std::move(ring)), generators_(std::move(generators)), basis_(std::move(basis)) {}

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return generators_; }
  const std::vector<Polynomial>& basis() const { return basis_; }

  Polynomial normal_form(const Polynomial& f) const;
  bool contains(const Polynomial& f) const { return normal_form(f).is_zero(); }
  bool is_zero_ideal() const { return basis_.empty(); }
  /// Dimension of (R/I)_d.
  std::size_t quotient_dimension(int d) const;

 private:
  PolyRingPtr ring_;
  std::vector<Polynomial> generators_;
  std::vector<Polynomial> basis_;
};

/// Throws NonHomogeneousInput for inhomogeneous generators and
/// UnsupportedRing when the coefficients do not form a field.
GroebnerBasis groebner(PolyRingPtr ring, const std::vector<Polynomial>& generators);

}  // namespace modstrat
