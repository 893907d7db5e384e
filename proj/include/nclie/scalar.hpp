#ifndef NCLIE_SCALAR_HPP
#define NCLIE_SCALAR_HPP

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nclie {

using Rational = mpq_class;

enum class ScalarMode { real, complex_gauss };

inline int sign(const Rational& r) { return sgn(r); }

/// Exact scalar of the base field: a rational a, or a Gaussian rational
/// a + b*i in complex mode.  Real-mode values keep im == 0.
struct Scalar {
  Rational re;
  Rational im;

  Scalar() : re(0), im(0) {}
  Scalar(long n) : re(n), im(0) {}
  Scalar(const Rational& r) : re(r), im(0) {}
  Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  static Scalar unit_i() { return Scalar(Rational(0), Rational(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }

  Scalar conj() const { return Scalar(re, -im); }
  Rational norm2() const { return re * re + im * im; }

  Scalar operator-() const { return Scalar(-re, -im); }
  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    Rational n2 = o.norm2();
    Rational r = (re * o.re + im * o.im) / n2;
    Rational i = (im * o.re - re * o.im) / n2;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  // Lexicographic order; used only for deterministic containers/printing.
  friend bool operator<(const Scalar& a, const Scalar& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }

  Scalar inv() const {
    Scalar one(1);
    return one / *this;
  }

  double to_double() const {
    if (!is_real()) throw std::domain_error("Scalar: complex value where real expected");
    return re.get_d();
  }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  /// |z| as a double (exact for rational reals up to rounding).
  double abs_double() const {
    if (is_real()) return std::abs(re.get_d());
    return std::sqrt(norm2().get_d());
  }

  std::string str() const;
  static Scalar parse(const std::string& s);
};

/// Parses "p/q", "-3", "0.25", with an optional "+r/s*i" / "-r/s*i" tail,
/// or the pure imaginary forms "i", "-i", "r*i".
Scalar parse_scalar(const std::string& s);
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

/// True iff r is the square of a rational; if so *root is the nonnegative root.
bool rational_sqrt(const Rational& r, Rational* root);

/// floor(log2 |r|)-free exact conversion of a binary double to a rational.
Rational rational_from_double(double x);

inline std::string Scalar::str() const {
  if (is_real()) return rational_str(re);
  std::string out = sgn(re) != 0 ? rational_str(re) : std::string();
  if (sgn(im) > 0 && !out.empty()) out += "+";
  if (im == -1)
    out += "-";
  else if (im != 1)
    out += rational_str(im) + "*";
  out += "i";
  return out;
}

inline Scalar Scalar::parse(const std::string& s) { return parse_scalar(s); }

}  // namespace nclie

#endif
