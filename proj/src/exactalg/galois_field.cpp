#include "modstrat/exactalg/galois_field.hpp"

#include "modstrat/common/error.hpp"
#include "modstrat/exactalg/coeff_ring.hpp"

namespace modstrat {

namespace {

// Multiply the element x (digits of a polynomial) by the class of t modulo
// the monic polynomial f.
std::vector<std::int64_t> times_t(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& f,
                                  std::int64_t p) {
  const std::size_t n = x.size();
  std::vector<std::int64_t> y(n, 0);
  std::int64_t top = x[n - 1];
  for (std::size_t i = n - 1; i > 0; --i) y[i] = x[i - 1];
  y[0] = 0;
  for (std::size_t i = 0; i < n; ++i) y[i] = ((y[i] - top * f[i]) % p + p) % p;
  return y;
}

std::int64_t encode(const std::vector<std::int64_t>& digits, std::int64_t p) {
  std::int64_t v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) v = v * p + digits[i];
  return v;
}

}  // namespace

GaloisField::GaloisField(std::int64_t p, int n) : p_(p), n_(n) {
  if (!is_prime(p) || n < 1) fail(ErrorCode::InvalidInput, "GF(p^n) needs prime p and n >= 1");
  q_ = 1;
  for (int i = 0; i < n; ++i) q_ *= p;
  if (q_ > (1 << 20)) fail(ErrorCode::InvalidInput, "field too large for table arithmetic");
  // Search monic polynomials of degree n in lexicographic order of their
  // coefficients for one whose root generates the multiplicative group.
  for (std::int64_t code = 0; code < q_; ++code) {
    std::vector<std::int64_t> f(n);
    std::int64_t c = code;
    for (int i = 0; i < n; ++i) {
      f[i] = c % p;
      c /= p;
    }
    if (f[0] == 0 && !(n == 1)) continue;
    std::vector<std::int64_t> x(n, 0);
    if (n == 1) {
      // Degree one: the root is -f0; require it to be a primitive root mod p.
      x[0] = (p - f[0]) % p;
    } else {
      x[1 % n] = 1;
    }
    std::vector<std::int64_t> exp(q_ - 1), log(q_, -1);
    std::vector<std::int64_t> cur(n, 0);
    cur[0] = 1;
    bool primitive = true;
    for (std::int64_t k = 0; k < q_ - 1; ++k) {
      std::int64_t e = encode(cur, p);
      if (log[e] != -1 || e == 0) {
        primitive = false;
        break;
      }
      exp[k] = e;
      log[e] = k;
      if (n == 1) {
        cur[0] = (cur[0] * x[0]) % p;
      } else {
        cur = times_t(cur, f, p);
      }
    }
    if (!primitive) continue;
    modulus_ = f;
    modulus_.push_back(1);
    exp_ = std::move(exp);
    log_ = std::move(log);
    return;
  }
  fail(ErrorCode::InvalidInput, "no primitive polynomial found");
}

std::int64_t GaloisField::add(std::int64_t a, std::int64_t b) const {
  std::int64_t r = 0, place = 1;
  for (int i = 0; i < n_; ++i) {
    r += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return r;
}

std::int64_t GaloisField::neg(std::int64_t a) const {
  std::int64_t r = 0, place = 1;
  for (int i = 0; i < n_; ++i) {
    r += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return r;
}

std::int64_t GaloisField::mul(std::int64_t a, std::int64_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

std::int64_t GaloisField::pow(std::int64_t a, std::int64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  std::int64_t k = (log_[a] * (e % (q_ - 1))) % (q_ - 1);
  return exp_[k];
}

std::int64_t GaloisField::inv(std::int64_t a) const {
  if (a == 0) fail(ErrorCode::InvalidInput, "inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::int64_t GaloisField::from_prime(std::int64_t c) const { return ((c % p_) + p_) % p_; }

std::vector<std::int64_t> GaloisField::coords(std::int64_t a) const {
  std::vector<std::int64_t> out(n_);
  for (int i = 0; i < n_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

}  // namespace modstrat
