#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace unisum {

/// Exact rational scalar, kept canonical (lowest terms, positive
/// denominator). All decider-facing arithmetic in this library happens on
/// this type; doubles appear only in Monte Carlo paths.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(int n) : v_(n) {}        // NOLINT: implicit by design
  Rat(long n) : v_(n) {}       // NOLINT
  Rat(long n, long d);
  explicit Rat(mpq_class v);
  explicit Rat(const mpz_class& z) : v_(z) {}

  /// Parses "p", "-p", "p/q" (base 10). Throws ParseError on anything else,
  /// including a zero denominator.
  static Rat parse(std::string_view text);

  /// "p" when integral, "p/q" otherwise.
  std::string str() const;
  double to_double() const { return v_.get_d(); }

  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }

  bool is_integer() const { return v_.get_den() == 1; }
  bool is_positive_integer() const { return is_integer() && v_.get_num() > 0; }
  mpz_class floor() const;
  mpz_class ceil() const;
  int sign() const { return sgn(v_); }
  Rat abs() const { return Rat(mpq_class(::abs(v_))); }
  Rat inverse() const;

  const mpq_class& raw() const { return v_; }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

 private:
  mpq_class v_;
};

inline Rat min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a >= b ? a : b; }

}  // namespace unisum
