#pragma once

#include <cstdint>
#include <vector>

namespace modstrat {

/// GF(p^n) via log/exp tables over a primitive polynomial. Elements are the
/// integers 0..q-1 read as base-p coefficient vectors; 0..p-1 is the prime
/// subfield.
class GaloisField {
 public:
  GaloisField(std::int64_t p, int n);

  std::int64_t p() const { return p_; }
  int degree() const { return n_; }
  std::int64_t size() const { return q_; }

  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t neg(std::int64_t a) const;
  std::int64_t sub(std::int64_t a, std::int64_t b) const { return add(a, neg(b)); }
  std::int64_t mul(std::int64_t a, std::int64_t b) const;
  std::int64_t pow(std::int64_t a, std::int64_t e) const;
  std::int64_t inv(std::int64_t a) const;
  std::int64_t from_prime(std::int64_t c) const;  // embed an F_p residue
  /// Coordinates of a over F_p (length n).
  std::vector<std::int64_t> coords(std::int64_t a) const;
  std::int64_t primitive() const { return exp_[1]; }
  const std::vector<std::int64_t>& modulus_coeffs() const { return modulus_; }

 private:
  std::int64_t p_;
  int n_;
  std::int64_t q_;
  std::vector<std::int64_t> modulus_;  // monic, low degree first
  std::vector<std::int64_t> exp_, log_;
};

}  // namespace modstrat
