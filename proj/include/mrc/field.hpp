#pragma once

// Exact scalar types for the ground field: arbitrary-precision rationals and
// prime fields GF(p). Both satisfy Eigen's NumTraits so they can populate
// Eigen::Matrix and take part in Eigen's products and block expressions.

#include <Eigen/Core>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mrc/errors.hpp"

namespace mrc {

class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}  // NOLINT: Eigen builds Scalar(0) and Scalar(1)
  Rational(long v) : q_(v) {}  // NOLINT
  Rational(long num, long den);
  explicit Rational(mpq_class q);

  /// Parses "a/b" or "a" with an optional sign; the result is reduced.
  static Rational parse(std::string_view text);

  std::string str() const { return q_.get_str(); }
  const mpq_class& value() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  Rational inverse() const;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }

 private:
  mpq_class q_;
};

/// Residue modulo a prime. A residue constructed from a bare int (as Eigen
/// does for Scalar(0) and Scalar(1)) is an unbound integer literal; it binds
/// to the modulus of the first bound operand it meets. Bound residues are
/// always stored in canonical range [0, p).
class Residue {
 public:
  Residue() = default;
  Residue(int v) : value_(v) {}  // NOLINT: unbound literal
  Residue(std::int64_t v, std::uint64_t modulus);

  std::int64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }
  bool bound() const { return modulus_ != 0; }

  /// Canonical residue of this element in GF(p); binds literals.
  std::uint64_t canonical(std::uint64_t p) const;

  bool is_zero() const { return value_ == 0; }
  Residue inverse() const;

  Residue operator-() const;
  Residue& operator+=(const Residue& o);
  Residue& operator-=(const Residue& o);
  Residue& operator*=(const Residue& o);
  Residue& operator/=(const Residue& o) { return *this *= o.inverse(); }

  friend Residue operator+(Residue a, const Residue& b) { return a += b; }
  friend Residue operator-(Residue a, const Residue& b) { return a -= b; }
  friend Residue operator*(Residue a, const Residue& b) { return a *= b; }
  friend Residue operator/(Residue a, const Residue& b) { return a /= b; }
  friend bool operator==(const Residue& a, const Residue& b);

  std::string str() const { return std::to_string(value_); }

 private:
  std::int64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);
std::ostream& operator<<(std::ostream& os, const Residue& r);

/// The multiplicative identity of the field a sample element lives in.
inline Rational unit_like(const Rational&) { return Rational(1); }
inline Residue unit_like(const Residue& r) { return r.bound() ? Residue(1, r.modulus()) : Residue(1); }

/// True for Residue literals not yet bound to a modulus.
inline bool is_literal(const Rational&) { return false; }
inline bool is_literal(const Residue& r) { return !r.bound(); }

bool is_prime(std::uint64_t n);

class FieldSpec {
 public:
  enum class Kind { Rational, PrimeField };

  static FieldSpec rational() { return FieldSpec(Kind::Rational, 0); }
  /// Throws UsageError unless p is prime and below 2^63.
  static FieldSpec prime_field(std::uint64_t p);
  /// Accepts "Q" or "GF(p)".
  static FieldSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  /// p for GF(p), 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }
  std::string name() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  std::uint64_t p_;
};

/// The p residues 0, ..., p-1 in increasing order. Rationals are refused.
std::vector<Residue> enumerate_field(const FieldSpec& field);

/// Glue between a scalar type and a runtime FieldSpec.
template <class S>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static bool accepts(const FieldSpec& f) { return f.is_rational(); }
  static Rational from_int(const FieldSpec&, long v) { return Rational(v); }
  static Rational parse(const FieldSpec&, std::string_view text) { return Rational::parse(text); }
  static std::string format(const FieldSpec&, const Rational& x) { return x.str(); }
};

template <>
struct FieldTraits<Residue> {
  static bool accepts(const FieldSpec& f) { return !f.is_rational(); }
  static Residue from_int(const FieldSpec& f, long v) {
    return Residue(static_cast<std::int64_t>(v), f.characteristic());
  }
  static Residue parse(const FieldSpec& f, std::string_view text);
  static std::string format(const FieldSpec& f, const Residue& x) {
    return std::to_string(x.canonical(f.characteristic()));
  }
};

}  // namespace mrc

namespace Eigen {

template <>
struct NumTraits<mrc::Rational> : GenericNumTraits<mrc::Rational> {
  using Real = mrc::Rational;
  using NonInteger = mrc::Rational;
  using Literal = mrc::Rational;
  using Nested = mrc::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16
  };
  static int digits10() { return 0; }
};

template <>
struct NumTraits<mrc::Residue> : GenericNumTraits<mrc::Residue> {
  using Real = mrc::Residue;
  using NonInteger = mrc::Residue;
  using Literal = mrc::Residue;
  using Nested = mrc::Residue;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static int digits10() { return 0; }
};

}  // namespace Eigen
