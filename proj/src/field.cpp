#include "mrc/field.hpp"

#include <charconv>
#include <limits>
#include <ostream>

namespace mrc {

namespace {

constexpr std::uint64_t kMaxModulus = static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());

std::uint64_t reduce(std::int64_t v, std::uint64_t p) {
  auto r = static_cast<__int128>(v) % static_cast<__int128>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e) {
    if (e & 1) result = mulmod(result, base, p);
    base = mulmod(base, base, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t common_modulus(const Residue& a, const Residue& b) {
  if (a.bound() && b.bound() && a.modulus() != b.modulus()) {
    throw UsageError("field mismatch: GF(" + std::to_string(a.modulus()) + ") vs GF(" +
                     std::to_string(b.modulus()) + ")");
  }
  return a.bound() ? a.modulus() : b.modulus();
}

std::int64_t checked(bool overflow, std::int64_t v) {
  if (overflow) throw std::overflow_error("integer literal overflow outside a field");
  return v;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::string_view strip_sign(std::string_view s) {
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
  return s;
}

}  // namespace

// --- Rational -------------------------------------------------------------

Rational::Rational(long num, long den) {
  if (den == 0) throw DivisionByZero();
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(strip_sign(num)) || !all_digits(den)) {
    throw UsageError("malformed rational literal '" + std::string(text) + "'");
  }
  std::string n(num.front() == '+' ? num.substr(1) : num);
  mpz_class zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(zn, zd));
}

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero();
  return Rational(mpq_class(1 / q_));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  q_ /= o.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// --- Residue --------------------------------------------------------------

Residue::Residue(std::int64_t v, std::uint64_t modulus) : modulus_(modulus) {
  if (modulus < 2 || modulus > kMaxModulus) {
    throw UsageError("residue modulus out of range: " + std::to_string(modulus));
  }
  value_ = static_cast<std::int64_t>(reduce(v, modulus));
}

std::uint64_t Residue::canonical(std::uint64_t p) const {
  if (bound() && modulus_ != p) {
    throw UsageError("field mismatch: GF(" + std::to_string(modulus_) + ") vs GF(" + std::to_string(p) + ")");
  }
  return reduce(value_, p);
}

Residue Residue::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (!bound()) {
    if (value_ == 1 || value_ == -1) return *this;
    throw UsageError("cannot invert an integer literal outside a field");
  }
  // Extended Euclid on (value, p).
  __int128 r0 = static_cast<__int128>(modulus_), r1 = value_;
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1; r0 = r1; r1 = tmp;
    tmp = t0 - q * t1; t0 = t1; t1 = tmp;
  }
  if (r0 != 1) throw PreconditionError("residue not invertible: modulus is not prime");
  if (t0 < 0) t0 += modulus_;
  Residue out;
  out.value_ = static_cast<std::int64_t>(t0);
  out.modulus_ = modulus_;
  return out;
}

Residue Residue::operator-() const {
  Residue out = *this;
  if (!bound()) {
    const bool overflow = value_ == std::numeric_limits<std::int64_t>::min();
    out.value_ = checked(overflow, overflow ? 0 : -value_);
  } else if (value_ != 0) {
    out.value_ = static_cast<std::int64_t>(modulus_) - value_;
  }
  return out;
}

Residue& Residue::operator+=(const Residue& o) {
  std::uint64_t p = common_modulus(*this, o);
  if (p == 0) {
    std::int64_t r = 0;
    const bool overflow = __builtin_add_overflow(value_, o.value_, &r);
    value_ = checked(overflow, r);
    return *this;
  }
  std::uint64_t a = reduce(value_, p), b = reduce(o.value_, p);
  std::uint64_t s = a + b;  // both < 2^63, no wrap
  if (s >= p) s -= p;
  value_ = static_cast<std::int64_t>(s);
  modulus_ = p;
  return *this;
}

Residue& Residue::operator-=(const Residue& o) { return *this += -o; }

Residue& Residue::operator*=(const Residue& o) {
  std::uint64_t p = common_modulus(*this, o);
  if (p == 0) {
    std::int64_t r = 0;
    const bool overflow = __builtin_mul_overflow(value_, o.value_, &r);
    value_ = checked(overflow, r);
    return *this;
  }
  value_ = static_cast<std::int64_t>(mulmod(reduce(value_, p), reduce(o.value_, p), p));
  modulus_ = p;
  return *this;
}

bool operator==(const Residue& a, const Residue& b) {
  std::uint64_t p = common_modulus(a, b);
  if (p == 0) return a.value_ == b.value_;
  return reduce(a.value_, p) == reduce(b.value_, p);
}

std::ostream& operator<<(std::ostream& os, const Residue& r) { return os << r.str(); }

Residue FieldTraits<Residue>::parse(const FieldSpec& f, std::string_view text) {
  std::int64_t v = 0;
  std::string_view digits = text.size() > 1 && text.front() == '+' ? text.substr(1) : text;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw UsageError("malformed residue literal '" + std::string(text) + "'");
  }
  return Residue(v, f.characteristic());
}

// --- FieldSpec ------------------------------------------------------------

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // These witnesses are deterministic for every 64-bit n.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint64_t p) {
  if (p > kMaxModulus) throw UsageError("prime modulus too large: " + std::to_string(p));
  if (!is_prime(p)) throw UsageError("GF(p) requires a prime, got " + std::to_string(p));
  return FieldSpec(Kind::PrimeField, p);
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q") return rational();
  if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
    std::string_view digits = text.substr(3, text.size() - 4);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size()) return prime_field(p);
  }
  throw UsageError("unknown field '" + std::string(text) + "' (expected \"Q\" or \"GF(p)\")");
}

std::string FieldSpec::name() const {
  return is_rational() ? "Q" : "GF(" + std::to_string(p_) + ")";
}

std::vector<Residue> enumerate_field(const FieldSpec& field) {
  if (field.is_rational()) throw UsageError("cannot enumerate an infinite field");
  std::vector<Residue> out;
  out.reserve(field.characteristic());
  for (std::uint64_t v = 0; v < field.characteristic(); ++v) {
    out.emplace_back(static_cast<std::int64_t>(v), field.characteristic());
  }
  return out;
}

}  // namespace mrc
