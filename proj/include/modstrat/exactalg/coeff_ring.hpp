#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace modstrat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Ring elements are stored as exact rationals; each CoeffRing decides which
/// rationals it admits and how results are normalised (residues live in
/// [0, m) for the modular rings).
using Scalar = Rational;

bool is_prime(std::int64_t n);
std::int64_t p_valuation(const Integer& n, std::int64_t p);  // n != 0
Integer mod_floor(const Integer& a, const Integer& m);

class CoeffRing {
 public:
  enum class Kind { Integers, Rationals, PrimeField, FiniteField, LocalizedIntegers, IntegersMod };

  static CoeffRing integers();
  static CoeffRing rationals();
  static CoeffRing prime_field(std::int64_t p);
  static CoeffRing finite_field(std::int64_t p, int n);
  static CoeffRing localized(std::int64_t p);
  static CoeffRing integers_mod(std::int64_t m);

  /// Accepts Z, Q, Fp:p, Zp:p, Fq:p,n and Zm:m (the CLI spellings).
  static CoeffRing parse(std::string_view text);

  Kind kind() const { return kind_; }
  std::int64_t prime() const { return p_; }
  int extension_degree() const { return n_; }
  std::int64_t modulus() const { return m_; }
  std::int64_t characteristic() const;

  bool is_field() const;
  /// Residue representation: elements are integers in [0, modulus()).
  bool is_residue_ring() const { return kind_ == Kind::PrimeField || kind_ == Kind::IntegersMod; }
  /// Rings handled by the integral Smith engine (Z, Z_(p), Q).
  bool is_integral_domain_of_char0() const {
    return kind_ == Kind::Integers || kind_ == Kind::Rationals || kind_ == Kind::LocalizedIntegers;
  }

  bool contains(const Scalar& x) const;
  /// Maps a rational into the ring (reduction for residue rings); throws
  /// InvalidInput when the value has no image (e.g. 1/2 in Z).
  Scalar reduce(const Scalar& x) const;

  Scalar add(const Scalar& a, const Scalar& b) const { return reduce_fast(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return reduce_fast(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return reduce_fast(a * b); }
  Scalar neg(const Scalar& a) const { return reduce_fast(-a); }

  bool is_unit(const Scalar& a) const;
  Scalar inverse(const Scalar& a) const;

  std::string to_string() const;
  bool operator==(const CoeffRing&) const = default;

 private:
  CoeffRing(Kind kind, std::int64_t p, int n, std::int64_t m) : kind_(kind), p_(p), n_(n), m_(m) {}
  // Results of ring operations on ring elements; only residue rings need work.
  Scalar reduce_fast(const Scalar& x) const;

  Kind kind_;
  std::int64_t p_ = 0;
  int n_ = 1;
  std::int64_t m_ = 0;
};

}  // namespace modstrat
