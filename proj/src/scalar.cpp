#include "nclie/scalar.hpp"

#include <cctype>
#include <cmath>

#include "nclie/errors.hpp"

namespace nclie {

std::string rational_str(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace((unsigned char)ch)) t += ch;
  if (t.empty()) throw ParseError("empty rational literal");
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    if (t.find('/') != std::string::npos)
      throw ParseError("mixed decimal and fraction: " + s);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac_len = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw ParseError("bad decimal literal: " + s);
    mpz_class num;
    if (num.set_str(digits, 10) != 0) throw ParseError("bad decimal literal: " + s);
    mpz_class den = 1;
    for (size_t i = 0; i < frac_len; ++i) den *= 10;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  Rational r;
  if (r.set_str(t, 10) != 0) throw ParseError("bad rational literal: " + s);
  if (r.get_den() == 0) throw ParseError("zero denominator: " + s);
  r.canonicalize();
  return r;
}

Scalar parse_scalar(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (!std::isspace((unsigned char)ch)) t += ch;
  if (t.empty()) throw ParseError("empty scalar literal");

  auto parse_part = [](const std::string& part, bool imaginary) -> Rational {
    if (!imaginary) return parse_rational(part);
    // strip trailing 'i' with optional '*'
    std::string body = part;
    if (body.empty() || body.back() != 'i') throw ParseError("bad imaginary part: " + part);
    body.pop_back();
    if (!body.empty() && body.back() == '*') body.pop_back();
    if (body.empty() || body == "+") return Rational(1);
    if (body == "-") return Rational(-1);
    return parse_rational(body);
  };

  // split at the last top-level '+' or '-' that is not the leading sign and
  // not part of an exponent (no exponents in our literals)
  size_t split = std::string::npos;
  for (size_t i = 1; i + 1 <= t.size(); ++i) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != '/' && t[i - 1] != '*')
      split = i;
  }
  bool has_i = t.find('i') != std::string::npos;
  if (!has_i) return Scalar(parse_rational(t));
  if (split == std::string::npos || t.find('i') < split) {
    // pure imaginary
    return Scalar(Rational(0), parse_part(t, true));
  }
  std::string re_part = t.substr(0, split);
  std::string im_part = t.substr(split);
  return Scalar(parse_rational(re_part), parse_part(im_part, true));
}

bool rational_sqrt(const Rational& r, Rational* root) {
  if (sgn(r) < 0) return false;
  if (sgn(r) == 0) {
    if (root) *root = 0;
    return true;
  }
  Rational c = r;
  c.canonicalize();
  mpz_class num = c.get_num(), den = c.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  if (root) *root = Rational(rn, rd);
  return true;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite");
  Rational r;
  mpq_set_d(r.get_mpq_t(), x);
  return r;
}

}  // namespace nclie
