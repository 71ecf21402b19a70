#include "sfglearn/field.hpp"

#include <cstdlib>

namespace sfglearn {

Rational::Rational(long num, long den) : v_() {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::from_string(const std::string& s) {
  mpq_class v;
  if (s.empty() || v.set_str(s, 10) != 0) {
    throw ParseError("invalid rational literal: \"" + s + "\"");
  }
  if (sgn(v.get_den()) == 0) throw DivisionByZero("rational literal with zero denominator");
  v.canonicalize();
  return Rational(std::move(v));
}

std::string Rational::str() const { return v_.get_str(); }

Rational Rational::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
  return Rational(std::move(r));
}

Rational Rational::operator-() const {
  mpq_class r = -v_;
  return Rational(std::move(r));
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DivisionByZero();
  v_ /= o.v_;
  return *this;
}

namespace {

std::int64_t mod_reduce(long long v, std::uint64_t p) {
  auto m = static_cast<std::int64_t>(p);
  std::int64_t r = static_cast<std::int64_t>(v) % m;
  if (r < 0) r += m;
  return r;
}

// Extended Euclid; p prime, 0 < a < p.
std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
  std::int64_t old_r = a, r = p;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  std::int64_t inv = old_s % p;
  if (inv < 0) inv += p;
  return inv;
}

}  // namespace

ModInt ModInt::make(long long v, std::uint64_t p) {
  if (p == 0) throw Error("ModInt::make requires a modulus");
  ModInt r;
  r.p_ = p;
  r.v_ = mod_reduce(v, p);
  return r;
}

std::string ModInt::str() const { return std::to_string(v_); }

ModInt ModInt::from_string(const std::string& s, std::uint64_t p) {
  if (p == 0) throw Error("modular parse requires a modulus");
  std::size_t slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  char* end = nullptr;
  errno = 0;
  long long n = std::strtoll(num.c_str(), &end, 10);
  if (num.empty() || *end != '\0' || errno != 0) {
    throw ParseError("invalid modular literal: \"" + s + "\"");
  }
  ModInt r = make(n, p);
  if (slash != std::string::npos) {
    std::string den = s.substr(slash + 1);
    errno = 0;
    long long d = std::strtoll(den.c_str(), &end, 10);
    if (den.empty() || *end != '\0' || errno != 0) {
      throw ParseError("invalid modular literal: \"" + s + "\"");
    }
    r /= make(d, p);
  }
  return r;
}

void ModInt::unify(ModInt& a, ModInt& b) {
  if (a.p_ == b.p_) return;
  if (a.p_ == 0) {
    a = make(a.v_, b.p_);
  } else if (b.p_ == 0) {
    b = make(b.v_, a.p_);
  } else {
    throw Error("mixed moduli in modular arithmetic");
  }
}

bool operator==(ModInt a, ModInt b) {
  ModInt::unify(a, b);
  return a.v_ == b.v_;
}

ModInt ModInt::inverse() const {
  if (p_ == 0) {
    // A literal can only be inverted when the inverse is modulus-independent.
    if (v_ == 1 || v_ == -1) return *this;
    if (v_ == 0) throw DivisionByZero("inverse of zero");
    throw Error("inverse of untyped modular literal requires a modulus");
  }
  if (v_ == 0) throw DivisionByZero("inverse of zero");
  ModInt r;
  r.p_ = p_;
  r.v_ = mod_inverse(v_, static_cast<std::int64_t>(p_));
  return r;
}

ModInt ModInt::operator-() const {
  ModInt r = *this;
  if (p_ == 0) {
    r.v_ = -v_;
  } else if (v_ != 0) {
    r.v_ = static_cast<std::int64_t>(p_) - v_;
  }
  return r;
}

ModInt& ModInt::operator+=(ModInt o) {
  unify(*this, o);
  v_ += o.v_;
  if (p_ != 0 && v_ >= static_cast<std::int64_t>(p_)) v_ -= static_cast<std::int64_t>(p_);
  return *this;
}

ModInt& ModInt::operator-=(ModInt o) {
  unify(*this, o);
  v_ -= o.v_;
  if (p_ != 0 && v_ < 0) v_ += static_cast<std::int64_t>(p_);
  return *this;
}

ModInt& ModInt::operator*=(ModInt o) {
  unify(*this, o);
  if (p_ == 0) {
    v_ *= o.v_;  // literal * literal; small values only
  } else {
    v_ = static_cast<std::int64_t>(static_cast<__int128>(v_) * o.v_ %
                                   static_cast<std::int64_t>(p_));
  }
  return *this;
}

ModInt& ModInt::operator/=(ModInt o) {
  unify(*this, o);
  return *this *= o.inverse();
}

bool is_odd_prime(std::uint64_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

FieldDesc FieldDesc::mod(std::uint64_t p) {
  if (p >= (1ull << 31)) throw ParseError("modulus too large (must be < 2^31)");
  if (!is_odd_prime(p)) throw ParseError("modulus must be an odd prime");
  return {Kind::Mod, p};
}

}  // namespace sfglearn
