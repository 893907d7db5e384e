#include "nclie/polynomial.hpp"

#include <algorithm>

#include "nclie/errors.hpp"

namespace nclie {

Polynomial Polynomial::constant(int nvars, const Scalar& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int index) {
  Polynomial p(nvars);
  Exponent e(nvars, 0);
  e[index] = 1;
  p.add_term(e, Scalar(1));
  return p;
}

Polynomial Polynomial::monomial(Exponent e, const Scalar& c) {
  Polynomial p((int)e.size());
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](uint32_t x) { return x == 0; });
}

Scalar Polynomial::constant_term() const {
  auto it = terms_.find(Exponent(nvars_, 0));
  return it == terms_.end() ? Scalar(0) : it->second;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (auto x : e) s += (int)x;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponent& e, const Scalar& c) {
  if ((int)e.size() != nvars_) throw DimensionMismatch("polynomial exponent length");
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ != o.nvars_) throw DimensionMismatch("polynomial variable counts");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw DimensionMismatch("polynomial variable counts");
  Polynomial r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponent e = ea;
      for (int i = 0; i < a.nvars_; ++i) e[i] += eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

Polynomial operator*(const Scalar& c, Polynomial a) {
  if (c.is_zero()) return Polynomial(a.nvars_);
  for (auto& [e, v] : a.terms_) v *= c;
  return a;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, Scalar((long)e[var]) * c);
  }
  return r;
}

Polynomial Polynomial::derivative(const Exponent& order) const {
  Polynomial r = *this;
  for (int v = 0; v < nvars_; ++v)
    for (uint32_t i = 0; i < order[v]; ++i) r = r.derivative(v);
  return r;
}

Polynomial Polynomial::shift(const std::vector<Scalar>& mu) const {
  if ((int)mu.size() != nvars_) throw DimensionMismatch("shift vector length");
  // one variable at a time: x^n -> sum C(n,j) mu^{n-j} x^j
  Polynomial cur = *this;
  for (int v = 0; v < nvars_; ++v) {
    if (mu[v].is_zero()) continue;
    Polynomial next(nvars_);
    for (const auto& [e, c] : cur.terms_) {
      uint32_t n = e[v];
      Scalar binom(1);
      Scalar mupow(1);
      // j from n down to 0, mu power accumulates
      for (int j = (int)n; j >= 0; --j) {
        Exponent d = e;
        d[v] = (uint32_t)j;
        next.add_term(d, c * binom * mupow);
        if (j > 0) {
          // C(n, j-1) = C(n,j) * j / (n-j+1)
          binom *= Scalar((long)j);
          binom /= Scalar((long)(n - j + 1));
          mupow *= mu[v];
        }
      }
    }
    cur = std::move(next);
  }
  return cur;
}

Polynomial Polynomial::with_nvars(int nvars) const {
  if (nvars == nvars_) return *this;
  if (nvars < nvars_) {
    for (const auto& [e, c] : terms_)
      for (int v = nvars; v < nvars_; ++v)
        if (e[v] != 0) throw DimensionMismatch("polynomial uses dropped variable");
  }
  Polynomial r(nvars);
  for (const auto& [e, c] : terms_) {
    Exponent d(e.begin(), e.begin() + std::min(nvars, nvars_));
    d.resize(nvars, 0);
    r.add_term(d, c);
  }
  return r;
}

Scalar Polynomial::eval(const std::vector<Scalar>& x) const {
  if ((int)x.size() != nvars_) throw DimensionMismatch("evaluation point length");
  Scalar r(0);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (int v = 0; v < nvars_; ++v)
      for (uint32_t i = 0; i < e[v]; ++i) t *= x[v];
    r += t;
  }
  return r;
}

double Polynomial::eval_double(const std::vector<double>& x) const {
  double r = 0;
  for (const auto& [e, c] : terms_) {
    double t = c.to_double();
    for (int v = 0; v < nvars_; ++v)
      for (uint32_t i = 0; i < e[v]; ++i) t *= x[v];
    r += t;
  }
  return r;
}

std::complex<double> Polynomial::eval_complex(
    const std::vector<std::complex<double>>& x) const {
  std::complex<double> r = 0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (int v = 0; v < nvars_; ++v)
      for (uint32_t i = 0; i < e[v]; ++i) t *= x[v];
    r += t;
  }
  return r;
}

std::string Polynomial::str(const std::string& varstem) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    bool has_var = std::any_of(e.begin(), e.end(), [](uint32_t x) { return x > 0; });
    bool coeff_shown = !has_var || !c.is_one();
    if (coeff_shown) {
      bool needs_parens = !c.is_real() && sgn(c.re) != 0;
      out += needs_parens ? "(" + c.str() + ")" : c.str();
    }
    bool first = !coeff_shown;
    for (int v = 0; v < nvars_; ++v) {
      if (e[v] == 0) continue;
      if (!first || coeff_shown) out += "*";
      first = false;
      out += varstem + (nvars_ > 1 ? std::to_string(v + 1) : "");
      if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    if (!has_var && !coeff_shown) out += c.str();
  }
  return out;
}

Polynomial random_polynomial(Rng& rng, int nvars, int max_degree, int max_terms,
                             long coeff_range, bool complex_mode) {
  Polynomial p(nvars);
  int nterms = (int)rng.range(1, max_terms);
  for (int t = 0; t < nterms; ++t) {
    Exponent e(nvars, 0);
    int budget = (int)rng.range(0, max_degree);
    for (int b = 0; b < budget; ++b) e[rng.range(0, nvars - 1)] += 1;
    long num = rng.range(-coeff_range, coeff_range);
    if (num == 0) num = 1;
    long den = rng.range(1, 3);
    Scalar c(Rational(num, den));
    if (complex_mode && rng.range(0, 1)) {
      long inum = rng.range(-coeff_range, coeff_range);
      c.im = Rational(inum, den);
    }
    p.add_term(e, c);
  }
  return p;
}

}  // namespace nclie
