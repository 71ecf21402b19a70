#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include <gmpxx.h>

#include "sfglearn/errors.hpp"

namespace sfglearn {

// Exact arbitrary-precision rational. Always stored fully reduced with a
// positive denominator (GMP canonical form), so equality is structural and
// no rounding happens anywhere.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, scalars act like numbers
  Rational(long num, long den);

  // Accepts "num/den" or "num", e.g. "-3/7", "5".
  static Rational from_string(const std::string& s);

  std::string str() const;

  bool is_zero() const { return sgn(v_) == 0; }
  Rational inverse() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  const mpq_class& raw() const { return v_; }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  mpq_class v_;
};

// Integer modulo an odd prime p, canonical residue in [0, p).
//
// The library is generic over the field and conjures 0/1 literals in places
// (zero matrix entries, unit chain weights) where no modulus is in scope. A
// ModInt constructed from a plain integer is such a literal (p == 0); it
// promotes to the typed field the first time it meets a typed operand, and
// compares equal to the typed element with the same value.
class ModInt {
 public:
  ModInt() = default;
  ModInt(long v) : v_(v) {}  // NOLINT: literal, see above

  static ModInt make(long long v, std::uint64_t p);

  bool is_literal() const { return p_ == 0; }
  std::uint64_t modulus() const { return p_; }
  std::int64_t residue() const { return v_; }

  std::string str() const;
  static ModInt from_string(const std::string& s, std::uint64_t p);

  bool is_zero() const { return v_ == 0; }
  ModInt inverse() const;

  ModInt operator-() const;
  ModInt& operator+=(ModInt o);
  ModInt& operator-=(ModInt o);
  ModInt& operator*=(ModInt o);
  ModInt& operator/=(ModInt o);

  friend ModInt operator+(ModInt a, ModInt b) { return a += b; }
  friend ModInt operator-(ModInt a, ModInt b) { return a -= b; }
  friend ModInt operator*(ModInt a, ModInt b) { return a *= b; }
  friend ModInt operator/(ModInt a, ModInt b) { return a /= b; }
  friend bool operator==(ModInt a, ModInt b);
  friend bool operator!=(ModInt a, ModInt b) { return !(a == b); }

 private:
  // Brings a and b into a common field, reducing literals mod p if the other
  // side is typed. Mixing two distinct nonzero moduli is a programming error.
  static void unify(ModInt& a, ModInt& b);

  std::int64_t v_ = 0;
  std::uint64_t p_ = 0;  // 0 = untyped literal
};

// Runtime description of the field a file or session works over.
struct FieldDesc {
  enum class Kind { Rational, Mod };
  Kind kind = Kind::Rational;
  std::uint64_t p = 0;  // modulus, Mod only

  static FieldDesc rational() { return {Kind::Rational, 0}; }
  static FieldDesc mod(std::uint64_t p);  // validates p is an odd prime < 2^31
};

bool is_odd_prime(std::uint64_t p);

// Parsing/printing glue keyed on the scalar type; "num/den" or "num" strings
// in every file format.
template <typename F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational parse(const std::string& s, const FieldDesc&) { return Rational::from_string(s); }
  static std::string str(const Rational& x) { return x.str(); }
  static constexpr FieldDesc::Kind kind = FieldDesc::Kind::Rational;
};

template <>
struct FieldTraits<ModInt> {
  static ModInt parse(const std::string& s, const FieldDesc& fd) { return ModInt::from_string(s, fd.p); }
  static std::string str(const ModInt& x) { return x.str(); }
  static constexpr FieldDesc::Kind kind = FieldDesc::Kind::Mod;
};

}  // namespace sfglearn
