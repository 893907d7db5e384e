#ifndef NCLIE_POLYNOMIAL_HPP
#define NCLIE_POLYNOMIAL_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nclie/scalar.hpp"

namespace nclie {

using Exponent = std::vector<uint32_t>;

/// Sparse polynomial in a fixed number of commuting variables over the exact
/// scalar field.  Canonical form: no zero coefficients.
class Polynomial {
 public:
  Polynomial() : nvars_(0) {}
  explicit Polynomial(int nvars) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const Scalar& c);
  static Polynomial variable(int nvars, int index);
  static Polynomial monomial(Exponent e, const Scalar& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  int total_degree() const;

  void add_term(const Exponent& e, const Scalar& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Scalar& c, Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative(int var) const;
  Polynomial derivative(const Exponent& order) const;
  /// f(x + mu) by exact binomial expansion.
  Polynomial shift(const std::vector<Scalar>& mu) const;
  /// Pads or checks the variable count.
  Polynomial with_nvars(int nvars) const;

  Scalar eval(const std::vector<Scalar>& x) const;
  double eval_double(const std::vector<double>& x) const;
  std::complex<double> eval_complex(const std::vector<std::complex<double>>& x) const;

  std::string str(const std::string& varstem = "l") const;

 private:
  int nvars_;
  std::map<Exponent, Scalar> terms_;
};

/// Deterministic random polynomial with coefficients in {-max..max}\{0} over a
/// fraction of monomials of degree <= deg.
class Rng;
Polynomial random_polynomial(Rng& rng, int nvars, int max_degree, int max_terms,
                             long coeff_range = 5, bool complex_mode = false);

/// Small deterministic PRNG wrapper (seeded) used across property tests.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  uint64_t next() {
    // xorshift*
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }
  long range(long lo, long hi) {  // inclusive
    return lo + (long)(next() % (uint64_t)(hi - lo + 1));
  }
  double uniform() { return (next() >> 11) * (1.0 / 9007199254740992.0); }

 private:
  uint64_t state_;
};

}  // namespace nclie

#endif
