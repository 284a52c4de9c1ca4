#include "unisum/rational.hpp"

#include <cctype>
#include <ostream>

#include "unisum/errors.hpp"

namespace unisum {

namespace {

bool parse_mpz(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  out = mpz_class(std::string(s), 10);
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rat::Rat(long n, long d) {
  if (d == 0) throw InvariantError("rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat::Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rat Rat::parse(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  mpz_class num, den;
  if (slash == std::string_view::npos) {
    if (!parse_mpz(s, num)) throw ParseError("bad rational literal '" + std::string(text) + "'");
    return Rat(num);
  }
  if (!parse_mpz(trim(s.substr(0, slash)), num) || !parse_mpz(trim(s.substr(slash + 1)), den))
    throw ParseError("bad rational literal '" + std::string(text) + "'");
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  mpq_class q(num);
  q /= mpq_class(den);
  return Rat(std::move(q));
}

std::string Rat::str() const {
  return v_.get_str();
}

mpz_class Rat::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

mpz_class Rat::ceil() const {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

Rat Rat::inverse() const {
  if (sign() == 0) throw InvariantError("inverse of zero");
  return Rat(mpq_class(1) / v_);
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.sign() == 0) throw InvariantError("division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace unisum
