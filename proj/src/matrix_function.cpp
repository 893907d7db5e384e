#include "nclie/matrix_function.hpp"

#include <algorithm>

#include "nclie/errors.hpp"

namespace nclie {

bool MatrixFunction::is_upper_triangular() const {
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < i; ++j)
      if (!at(i, j).is_zero()) return false;
  return true;
}

bool MatrixFunction::all_polynomial() const {
  for (const auto& e : entries_)
    if (!e.is_polynomial()) return false;
  return true;
}

MatrixFunction MatrixFunction::derivative(const Exponent& order) const {
  MatrixFunction r(k_, d_);
  for (int i = 0; i < d_ * d_; ++i) r.entries_[i] = entries_[i].derivative(order);
  return r;
}

QMatrix MatrixFunction::eval_exact(const std::vector<Rational>& x) const {
  QMatrix m(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = 0; j < d_; ++j) m.at(i, j) = at(i, j).eval_exact(x);
  return m;
}

double MatrixFunction::max_row_sum_at(const std::vector<Rational>& x) const {
  double best = 0;
  for (int i = 0; i < d_; ++i) {
    double s = 0;
    for (int j = 0; j < d_; ++j) s += at(i, j).abs_at(x);
    best = std::max(best, s);
  }
  return best;
}

MatrixFunction operator+(const MatrixFunction& a, const MatrixFunction& b) {
  if (a.k_ != b.k_ || a.d_ != b.d_) throw DimensionMismatch("matrix function sum");
  MatrixFunction r(a.k_, a.d_);
  for (int i = 0; i < a.d_ * a.d_; ++i)
    r.entries_[i] = a.entries_[i] + b.entries_[i];
  return r;
}

MatrixFunction operator*(const MatrixFunction& a, const MatrixFunction& b) {
  if (a.k_ != b.k_ || a.d_ != b.d_) throw DimensionMismatch("matrix function product");
  MatrixFunction r(a.k_, a.d_);
  for (int i = 0; i < a.d_; ++i)
    for (int l = 0; l < a.d_; ++l) {
      if (a.at(i, l).is_zero()) continue;
      for (int j = 0; j < a.d_; ++j) {
        if (b.at(l, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + a.at(i, l) * b.at(l, j);
      }
    }
  return r;
}

MatrixFunction operator*(const Scalar& c, MatrixFunction a) {
  for (auto& e : a.entries_) e = c * e;
  return a;
}

bool MatrixFunction::equals_poly(const MatrixFunction& o) const {
  if (k_ != o.k_ || d_ != o.d_) return false;
  for (int i = 0; i < d_ * d_; ++i)
    if (entries_[i].poly() != o.entries_[i].poly()) return false;
  return true;
}

MatrixFunction tilde_pi(const Representation& pi, const UEAElement& a, int k) {
  int d = pi.d;
  int m = pi.L->dim();
  MatrixFunction out(k, d);
  // generator images as constant-or-linear matrix functions
  std::vector<MatrixFunction> gens;
  for (int j = 0; j < m; ++j) {
    MatrixFunction g(k, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) {
        Polynomial p(k);
        if (!pi.mats[j].at(r, c).is_zero())
          p += Polynomial::constant(k, pi.mats[j].at(r, c));
        if (j < k && r == c) p += Polynomial::variable(k, j);
        g.at(r, c) = CoefficientFn(p);
      }
    gens.push_back(std::move(g));
  }
  MatrixFunction identity(k, d);
  for (int r = 0; r < d; ++r)
    identity.at(r, r) = CoefficientFn(Polynomial::constant(k, Scalar(1)));
  for (const auto& [e, c] : a.terms()) {
    MatrixFunction t = identity;
    for (int j = 0; j < m; ++j)
      for (uint32_t s = 0; s < e[j]; ++s) t = t * gens[j];
    out = out + c * t;
  }
  return out;
}

MatrixFunction tilde_pi(const Representation& pi, const NCFunctionElement& a) {
  int k = a.split();
  if (a.all_polynomial()) return tilde_pi(pi, to_uea(a), k);
  if (!pi.nilpotent_image)
    throw SmoothUnsupported(
        "smooth coefficients need nilpotent representation images for the "
        "finite Taylor expansion");
  int m = pi.L->dim();
  int d = pi.d;
  int t = d;  // products of d strictly upper-triangular matrices vanish
  MatrixFunction out(k, d);
  for (const auto& [beta, f] : a.terms()) {
    int nb = total_degree(beta);
    // all gamma over the first k vars with |gamma| + |beta| < t
    std::vector<Exponent> gammas;
    Exponent cur(k, 0);
    std::function<void(int, int)> rec = [&](int pos, int rem) {
      if (pos == k) {
        gammas.push_back(cur);
        return;
      }
      for (int v = 0; v <= rem; ++v) {
        cur[pos] = (uint32_t)v;
        rec(pos + 1, rem - v);
      }
      cur[pos] = 0;
    };
    int budget = t - 1 - nb;
    if (budget < 0) continue;
    if (k == 0)
      gammas.push_back(cur);
    else
      rec(0, budget);
    for (const auto& g : gammas) {
      // matrix pi(e^gamma e^beta), constant
      MultiIndex full(m, 0);
      for (int i = 0; i < k; ++i) full[i] = g[i];
      for (int i = 0; i < m - k; ++i) full[k + i] = beta[i];
      QMatrix mat = pi.act_monomial(full);
      if (mat.is_zero()) continue;
      Rational fact(1);
      for (int i = 0; i < k; ++i)
        for (uint32_t s = 1; s <= g[i]; ++s) fact *= Rational((long)s);
      CoefficientFn coeff = Scalar(Rational(1) / fact) * f.derivative(g);
      if (coeff.is_zero()) continue;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
          if (!mat.at(r, c).is_zero())
            out.at(r, c) = out.at(r, c) + mat.at(r, c) * coeff;
    }
  }
  return out;
}

}  // namespace nclie
