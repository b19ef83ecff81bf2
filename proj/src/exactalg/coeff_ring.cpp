#include "modstrat/exactalg/coeff_ring.hpp"

#include <charconv>

#include "modstrat/common/error.hpp"

namespace modstrat {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t p_valuation(const Integer& n, std::int64_t p) {
  Integer x = abs(n);
  std::int64_t v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

CoeffRing CoeffRing::integers() { return {Kind::Integers, 0, 1, 0}; }
CoeffRing CoeffRing::rationals() { return {Kind::Rationals, 0, 1, 0}; }

CoeffRing CoeffRing::prime_field(std::int64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "F_p needs a prime, got " + std::to_string(p));
  return {Kind::PrimeField, p, 1, p};
}

CoeffRing CoeffRing::finite_field(std::int64_t p, int n) {
  if (!is_prime(p) || n < 1) fail(ErrorCode::InvalidInput, "F_q needs a prime p and n >= 1");
  if (n == 1) return prime_field(p);
  std::int64_t q = 1;
  for (int i = 0; i < n; ++i) q *= p;
  return {Kind::FiniteField, p, n, q};
}

CoeffRing CoeffRing::localized(std::int64_t p) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "Z_(p) needs a prime, got " + std::to_string(p));
  return {Kind::LocalizedIntegers, p, 1, 0};
}

CoeffRing CoeffRing::integers_mod(std::int64_t m) {
  if (m < 2) fail(ErrorCode::InvalidInput, "Z/m needs m >= 2");
  return {Kind::IntegersMod, 0, 1, m};
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    fail(ErrorCode::InvalidInput, "expected an integer, got '" + std::string(s) + "'");
  return v;
}

}  // namespace

CoeffRing CoeffRing::parse(std::string_view text) {
  if (text == "Z") return integers();
  if (text == "Q") return rationals();
  auto colon = text.find(':');
  std::string_view head = text.substr(0, colon);
  std::string_view tail = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (colon == std::string_view::npos) {
    // Also accept the compact spellings F2, F3, ...
    if (text.size() > 1 && text[0] == 'F') return prime_field(parse_int(text.substr(1)));
    fail(ErrorCode::InvalidInput, "unknown ring '" + std::string(text) + "'");
  }
  if (head == "Fp") return prime_field(parse_int(tail));
  if (head == "Zp") return localized(parse_int(tail));
  if (head == "Zm") return integers_mod(parse_int(tail));
  if (head == "Fq") {
    auto comma = tail.find(',');
    if (comma == std::string_view::npos) fail(ErrorCode::InvalidInput, "Fq expects p,n");
    return finite_field(parse_int(tail.substr(0, comma)), static_cast<int>(parse_int(tail.substr(comma + 1))));
  }
  fail(ErrorCode::InvalidInput, "unknown ring '" + std::string(text) + "'");
}

std::int64_t CoeffRing::characteristic() const {
  switch (kind_) {
    case Kind::PrimeField:
    case Kind::FiniteField: return p_;
    case Kind::IntegersMod: return m_;
    default: return 0;
  }
}

bool CoeffRing::is_field() const {
  switch (kind_) {
    case Kind::Rationals:
    case Kind::PrimeField:
    case Kind::FiniteField: return true;
    case Kind::IntegersMod: return is_prime(m_);
    default: return false;
  }
}

bool CoeffRing::contains(const Scalar& x) const {
  switch (kind_) {
    case Kind::Integers: return denominator(x) == 1;
    case Kind::Rationals: return true;
    case Kind::LocalizedIntegers: return denominator(x) % p_ != 0;
    case Kind::PrimeField:
    case Kind::IntegersMod: return denominator(x) == 1 && numerator(x) >= 0 && numerator(x) < m_;
    case Kind::FiniteField: return denominator(x) == 1 && numerator(x) >= 0 && numerator(x) < p_;
  }
  return false;
}

Scalar CoeffRing::reduce(const Scalar& x) const {
  switch (kind_) {
    case Kind::Integers:
      if (denominator(x) != 1) fail(ErrorCode::InvalidInput, "non-integral value in Z");
      return x;
    case Kind::Rationals: return x;
    case Kind::LocalizedIntegers:
      if (denominator(x) % p_ == 0) fail(ErrorCode::InvalidInput, "denominator divisible by p in Z_(p)");
      return x;
    case Kind::FiniteField:
      // Only the prime subfield is representable as a Scalar.
      [[fallthrough]];
    case Kind::PrimeField:
    case Kind::IntegersMod: {
      const Integer m = kind_ == Kind::FiniteField ? Integer(p_) : Integer(m_);
      Integer num = mod_floor(numerator(x), m);
      Integer den = mod_floor(denominator(x), m);
      if (den == 1) return Scalar(num);
      // den^{-1} mod m by extended Euclid.
      Integer a = den, b = m, s0 = 1, s1 = 0;
      while (b != 0) {
        Integer q = a / b;
        Integer t = a - q * b;
        a = b;
        b = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
      }
      if (a != 1) fail(ErrorCode::InvalidInput, "denominator not invertible modulo " + m.str());
      return Scalar(mod_floor(num * s0, m));
    }
  }
  return x;
}

Scalar CoeffRing::reduce_fast(const Scalar& x) const {
  if (kind_ == Kind::PrimeField || kind_ == Kind::IntegersMod) {
    if (denominator(x) == 1) return Scalar(mod_floor(numerator(x), Integer(m_)));
    return reduce(x);
  }
  if (kind_ == Kind::FiniteField) return reduce(x);
  return x;
}

bool CoeffRing::is_unit(const Scalar& a) const {
  switch (kind_) {
    case Kind::Integers: return a == 1 || a == -1;
    case Kind::Rationals: return a != 0;
    case Kind::LocalizedIntegers: return a != 0 && numerator(a) % p_ != 0;
    case Kind::PrimeField:
    case Kind::FiniteField: return a != 0;
    case Kind::IntegersMod: {
      Integer g = gcd(numerator(a), Integer(m_));
      return g == 1;
    }
  }
  return false;
}

Scalar CoeffRing::inverse(const Scalar& a) const {
  if (!is_unit(a)) fail(ErrorCode::InvalidInput, "element is not a unit in " + to_string());
  if (is_residue_ring() || kind_ == Kind::FiniteField) return reduce(Scalar(1) / a);
  return Scalar(1) / a;
}

std::string CoeffRing::to_string() const {
  switch (kind_) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "Fp:" + std::to_string(p_);
    case Kind::FiniteField: return "Fq:" + std::to_string(p_) + "," + std::to_string(n_);
    case Kind::LocalizedIntegers: return "Zp:" + std::to_string(p_);
    case Kind::IntegersMod: return "Zm:" + std::to_string(m_);
  }
  return "?";
}

}  // namespace modstrat
