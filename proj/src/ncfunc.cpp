#include "nclie/ncfunc.hpp"

#include <algorithm>
#include <cmath>

#include "nclie/errors.hpp"

namespace nclie {

// ---- CompactBox ----

CompactBox::CompactBox(std::vector<Rational> l, std::vector<Rational> h)
    : lo(std::move(l)), hi(std::move(h)) {
  if (lo.size() != hi.size()) throw DimensionMismatch("box endpoint counts");
  for (size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) throw DimensionMismatch("box with lo > hi");
}

CompactBox CompactBox::interval(const Rational& a, const Rational& b) {
  return CompactBox({a}, {b});
}

CompactBox CompactBox::square(const Rational& a, const Rational& b, int k) {
  return CompactBox(std::vector<Rational>(k, a), std::vector<Rational>(k, b));
}

bool CompactBox::contains(const std::vector<Rational>& x) const {
  if (x.size() != lo.size()) throw DimensionMismatch("box membership point");
  for (size_t i = 0; i < lo.size(); ++i)
    if (x[i] < lo[i] || x[i] > hi[i]) return false;
  return true;
}

CompactBox CompactBox::shifted_back(const std::vector<Scalar>& mu) const {
  if (mu.size() != lo.size()) throw DimensionMismatch("box shift length");
  CompactBox b = *this;
  for (size_t i = 0; i < lo.size(); ++i) {
    if (!mu[i].is_real()) throw ModeMismatch("box shift must be real");
    b.lo[i] -= mu[i].re;
    b.hi[i] -= mu[i].re;
  }
  return b;
}

std::vector<std::vector<Rational>> CompactBox::grid(int per_axis) const {
  int k = dim();
  std::vector<std::vector<Rational>> axes(k);
  for (int i = 0; i < k; ++i) {
    if (lo[i] == hi[i] || per_axis == 1) {
      axes[i] = {lo[i]};
      continue;
    }
    for (int t = 0; t < per_axis; ++t)
      axes[i].push_back(lo[i] + (hi[i] - lo[i]) * Rational(t) / Rational(per_axis - 1));
  }
  std::vector<std::vector<Rational>> nodes;
  std::vector<size_t> idx(k, 0);
  for (;;) {
    std::vector<Rational> p(k);
    for (int i = 0; i < k; ++i) p[i] = axes[i][idx[i]];
    nodes.push_back(p);
    int ax = 0;
    while (ax < k) {
      if (++idx[ax] < axes[ax].size()) break;
      idx[ax] = 0;
      ++ax;
    }
    if (ax == k) break;
    if (k == 0) break;
  }
  if (k == 0) nodes.assign(1, {});
  return nodes;
}

// ---- SmoothFn ----

SmoothFn SmoothFn::poly_gauss(const Polynomial& p, std::vector<Rational> a,
                              std::vector<Rational> c) {
  SmoothFn f;
  f.nvars_ = p.nvars();
  if ((int)a.size() != f.nvars_ || (int)c.size() != f.nvars_)
    throw DimensionMismatch("gaussian parameter lengths");
  if (!p.is_zero()) f.terms_.push_back({p, std::move(a), std::move(c), Rational(0)});
  return f;
}

SmoothFn SmoothFn::from_polynomial(const Polynomial& p) {
  return poly_gauss(p, std::vector<Rational>(p.nvars(), Rational(0)),
                    std::vector<Rational>(p.nvars(), Rational(0)));
}

SmoothFn SmoothFn::generic(int nvars, Callable f, double fd_scale) {
  SmoothFn g;
  g.nvars_ = nvars;
  g.generic_ = std::move(f);
  g.fd_scale_ = fd_scale;
  return g;
}

double SmoothFn::eval(const std::vector<double>& x) const {
  if (generic_) return (*generic_)(x);
  double s = 0;
  for (const auto& t : terms_) {
    double e = -t.k0.get_d();
    for (int i = 0; i < nvars_; ++i) {
      double d = x[i] - t.c[i].get_d();
      e -= t.a[i].get_d() * d * d;
    }
    s += t.poly.eval_double(x) * std::exp(e);
  }
  return s;
}

SmoothFn SmoothFn::derivative(int var) const {
  if (generic_) {
    // central finite differences, h = 2^-17 * scale; fallback flagged
    auto f = *generic_;
    double h = std::ldexp(fd_scale_, -17);
    Callable d = [f, var, h](const std::vector<double>& x) {
      std::vector<double> xp = x, xm = x;
      xp[var] += h;
      xm[var] -= h;
      return (f(xp) - f(xm)) / (2 * h);
    };
    return generic(nvars_, d, fd_scale_);
  }
  SmoothFn r;
  r.nvars_ = nvars_;
  for (const auto& t : terms_) {
    // d/dx [p e^Q] = (dp - 2 a (x - c) p) e^Q
    Polynomial dp = t.poly.derivative(var);
    Polynomial lin =
        Scalar(Rational(-2) * t.a[var]) *
        (Polynomial::variable(nvars_, var) -
         Polynomial::constant(nvars_, Scalar(t.c[var])));
    Polynomial q = dp + lin * t.poly;
    if (!q.is_zero()) r.terms_.push_back({q, t.a, t.c, t.k0});
  }
  return r;
}

SmoothFn SmoothFn::derivative(const Exponent& order) const {
  SmoothFn r = *this;
  for (size_t v = 0; v < order.size(); ++v)
    for (uint32_t i = 0; i < order[v]; ++i) r = r.derivative((int)v);
  return r;
}

SmoothFn SmoothFn::shifted(const std::vector<Scalar>& mu) const {
  if (generic_) {
    auto f = *generic_;
    std::vector<double> m(nvars_);
    for (int i = 0; i < nvars_; ++i) m[i] = mu[i].to_double();
    Callable g = [f, m](const std::vector<double>& x) {
      std::vector<double> y = x;
      for (size_t i = 0; i < y.size(); ++i) y[i] += m[i];
      return f(y);
    };
    return generic(nvars_, g, fd_scale_);
  }
  SmoothFn r;
  r.nvars_ = nvars_;
  for (const auto& t : terms_) {
    GaussTerm s = t;
    s.poly = t.poly.shift(mu);
    for (int i = 0; i < nvars_; ++i) {
      if (!mu[i].is_real()) throw ModeMismatch("smooth shift must be real");
      s.c[i] = t.c[i] - mu[i].re;  // (x + mu - c)^2 = (x - (c - mu))^2
    }
    r.terms_.push_back(std::move(s));
  }
  return r;
}

SmoothFn operator+(const SmoothFn& f, const SmoothFn& g) {
  if (f.nvars_ != g.nvars_) throw DimensionMismatch("smooth sum variable counts");
  if (f.generic_ || g.generic_) {
    auto fe = f, ge = g;
    return SmoothFn::generic(
        f.nvars_,
        [fe, ge](const std::vector<double>& x) { return fe.eval(x) + ge.eval(x); },
        f.fd_scale_);
  }
  SmoothFn r = f;
  for (const auto& t : g.terms_) {
    bool merged = false;
    for (auto& s : r.terms_) {
      if (s.a == t.a && s.c == t.c && s.k0 == t.k0) {
        s.poly += t.poly;
        merged = true;
        break;
      }
    }
    if (!merged) r.terms_.push_back(t);
  }
  r.terms_.erase(std::remove_if(r.terms_.begin(), r.terms_.end(),
                                [](const SmoothFn::GaussTerm& t) {
                                  return t.poly.is_zero();
                                }),
                 r.terms_.end());
  return r;
}

SmoothFn operator*(const SmoothFn& f, const SmoothFn& g) {
  if (f.nvars_ != g.nvars_) throw DimensionMismatch("smooth product variable counts");
  if (f.generic_ || g.generic_) {
    auto fe = f, ge = g;
    return SmoothFn::generic(
        f.nvars_,
        [fe, ge](const std::vector<double>& x) { return fe.eval(x) * ge.eval(x); },
        f.fd_scale_);
  }
  SmoothFn r;
  r.nvars_ = f.nvars_;
  for (const auto& s : f.terms_)
    for (const auto& t : g.terms_) {
      // e^{-a(x-c)^2} e^{-b(x-d)^2} = e^{-(a+b)(x-e)^2 - ab(c-d)^2/(a+b)}
      SmoothFn::GaussTerm u;
      u.poly = s.poly * t.poly;
      u.k0 = s.k0 + t.k0;
      u.a.resize(r.nvars_);
      u.c.resize(r.nvars_);
      for (int i = 0; i < r.nvars_; ++i) {
        Rational a = s.a[i], b = t.a[i], c = s.c[i], d = t.c[i];
        Rational ab = a + b;
        if (sgn(ab) == 0) {
          u.a[i] = 0;
          u.c[i] = 0;
        } else {
          u.a[i] = ab;
          u.c[i] = (a * c + b * d) / ab;
          u.k0 += a * b * (c - d) * (c - d) / ab;
        }
      }
      if (!u.poly.is_zero()) r.terms_.push_back(std::move(u));
    }
  return r;
}

SmoothFn operator*(const Scalar& c, const SmoothFn& f) {
  if (f.generic_) {
    auto fe = f;
    double cd = c.to_double();
    return SmoothFn::generic(
        f.nvars_, [fe, cd](const std::vector<double>& x) { return cd * fe.eval(x); },
        f.fd_scale_);
  }
  SmoothFn r = f;
  for (auto& t : r.terms_) t.poly = c * t.poly;
  return r;
}

// ---- CoefficientFn ----

const Polynomial& CoefficientFn::poly() const {
  if (!is_polynomial()) throw SmoothUnsupported("expected polynomial coefficient");
  return std::get<Polynomial>(v_);
}

const SmoothFn& CoefficientFn::smooth() const {
  return std::get<SmoothFn>(v_);
}

int CoefficientFn::nvars() const {
  return is_polynomial() ? poly().nvars() : smooth().nvars();
}

bool CoefficientFn::is_zero() const {
  return is_polynomial() ? poly().is_zero() : smooth().is_zero();
}

CoefficientFn CoefficientFn::derivative(int var) const {
  if (is_polynomial()) return CoefficientFn(poly().derivative(var));
  return CoefficientFn(smooth().derivative(var));
}

CoefficientFn CoefficientFn::derivative(const Exponent& order) const {
  if (is_polynomial()) return CoefficientFn(poly().derivative(order));
  return CoefficientFn(smooth().derivative(order));
}

CoefficientFn CoefficientFn::shifted(const std::vector<Scalar>& mu) const {
  if (is_polynomial()) return CoefficientFn(poly().shift(mu));
  return CoefficientFn(smooth().shifted(mu));
}

double CoefficientFn::eval(const std::vector<double>& x) const {
  if (is_polynomial()) return poly().eval_double(x);
  return smooth().eval(x);
}

Scalar CoefficientFn::eval_exact(const std::vector<Rational>& x) const {
  std::vector<Scalar> xs(x.begin(), x.end());
  return poly().eval(xs);
}

double CoefficientFn::abs_at(const std::vector<Rational>& x) const {
  if (is_polynomial()) {
    std::vector<Scalar> xs(x.begin(), x.end());
    return poly().eval(xs).abs_double();
  }
  std::vector<double> xd(x.size());
  for (size_t i = 0; i < x.size(); ++i) xd[i] = x[i].get_d();
  return std::abs(smooth().eval(xd));
}

CoefficientFn operator+(const CoefficientFn& f, const CoefficientFn& g) {
  if (f.is_polynomial() && g.is_polynomial())
    return CoefficientFn(f.poly() + g.poly());
  SmoothFn fs = f.is_polynomial() ? SmoothFn::from_polynomial(f.poly()) : f.smooth();
  SmoothFn gs = g.is_polynomial() ? SmoothFn::from_polynomial(g.poly()) : g.smooth();
  return CoefficientFn(fs + gs);
}

CoefficientFn operator*(const CoefficientFn& f, const CoefficientFn& g) {
  if (f.is_polynomial() && g.is_polynomial())
    return CoefficientFn(f.poly() * g.poly());
  SmoothFn fs = f.is_polynomial() ? SmoothFn::from_polynomial(f.poly()) : f.smooth();
  SmoothFn gs = g.is_polynomial() ? SmoothFn::from_polynomial(g.poly()) : g.smooth();
  return CoefficientFn(fs * gs);
}

CoefficientFn operator*(const Scalar& c, const CoefficientFn& f) {
  if (f.is_polynomial()) return CoefficientFn(c * f.poly());
  return CoefficientFn(c * f.smooth());
}

// ---- NCFunctionElement ----

NCFunctionElement::NCFunctionElement(LiePtr L, int k, int N)
    : L_(std::move(L)), k_(k), N_(N) {
  if (k_ < 0 || k_ > L_->dim()) throw DimensionMismatch("split outside [0, dim]");
}

bool NCFunctionElement::all_polynomial() const {
  for (const auto& [b, f] : terms_)
    if (!f.is_polynomial()) return false;
  return true;
}

void NCFunctionElement::set_term(const MultiIndex& beta, CoefficientFn f) {
  if ((int)beta.size() != L_->dim() - k_)
    throw DimensionMismatch("beta length vs nilradical size");
  if (total_degree(beta) > N_) return;
  if (f.is_zero())
    terms_.erase(beta);
  else
    terms_[beta] = std::move(f);
}

void NCFunctionElement::add_term(const MultiIndex& beta, const CoefficientFn& f) {
  if ((int)beta.size() != L_->dim() - k_)
    throw DimensionMismatch("beta length vs nilradical size");
  if (total_degree(beta) > N_ || f.is_zero()) return;
  auto it = terms_.find(beta);
  if (it == terms_.end()) {
    terms_.emplace(beta, f);
  } else {
    it->second = it->second + f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoefficientFn NCFunctionElement::coefficient(const MultiIndex& beta) const {
  auto it = terms_.find(beta);
  if (it != terms_.end()) return it->second;
  return CoefficientFn(Polynomial(k_));
}

NCFunctionElement NCFunctionElement::truncated(int N) const {
  NCFunctionElement r(L_, k_, N);
  for (const auto& [b, f] : terms_)
    if (total_degree(b) <= N) r.terms_.emplace(b, f);
  return r;
}

NCFunctionElement operator+(const NCFunctionElement& a, const NCFunctionElement& b) {
  if (a.algebra() != b.algebra() || a.split() != b.split())
    throw AlgebraMismatch("sum of mismatched truncated elements");
  NCFunctionElement r(a.algebra(), a.split(), std::min(a.truncation(), b.truncation()));
  for (const auto& [beta, f] : a.terms()) r.add_term(beta, f);
  for (const auto& [beta, f] : b.terms()) r.add_term(beta, f);
  return r;
}

NCFunctionElement from_uea(const UEAElement& a, int k, int N) {
  if (!a.algebra()) throw AlgebraMismatch("element without algebra");
  NCFunctionElement r(a.algebra(), k, N);
  for (const auto& beta : n_support(a, k)) {
    if (total_degree(beta) > N) continue;
    Polynomial f = lambda_coefficient(a, k, beta);
    r.add_term(beta, CoefficientFn(f));
  }
  return r;
}

UEAElement to_uea(const NCFunctionElement& a) {
  UEAElement r(a.algebra());
  int m = a.algebra()->dim();
  int k = a.split();
  for (const auto& [beta, f] : a.terms()) {
    const Polynomial& p = f.poly();  // throws SmoothUnsupported when smooth
    for (const auto& [e, c] : p.terms()) {
      MultiIndex full(m, 0);
      for (int i = 0; i < k; ++i) full[i] = e[i];
      for (int i = 0; i < m - k; ++i) full[k + i] = beta[i];
      r.add_term(full, c);
    }
  }
  return r;
}

// ---- commutation templates ----

namespace {

// T_i(z) = [z, e_i]; chains T_k^{s_k} ... T_1^{s_1} (e_j) drive the
// derivative expansion of moving a generator across Phi(f).
void commutation_terms_rec(const LieAlgebra& L, int k, int axis, const Vec& z,
                           const Polynomial& fderiv, NCFunctionElement& out,
                           const Rational& factorial) {
  bool zero = true;
  for (const auto& s : z) zero = zero && s.is_zero();
  if (zero || fderiv.is_zero()) return;
  if (axis == k) {
    // emit: Phi(fderiv / prod s_i!) * z  (z lies in the nilradical span)
    Polynomial g = Scalar(Rational(1) / factorial) * fderiv;
    if (g.is_zero()) return;
    int m = L.dim();
    for (int i = 0; i < m; ++i) {
      if (z[i].is_zero()) continue;
      if (i < k) throw std::logic_error("commutation chain left the nilradical");
      MultiIndex beta(m - k, 0);
      beta[i - k] = 1;
      out.add_term(beta, CoefficientFn(z[i] * g));
    }
    return;
  }
  Vec cur = z;
  Rational fact = factorial;
  Polynomial fd = fderiv;
  Vec ei(L.dim());
  ei[axis] = Scalar(1);
  for (uint32_t s = 0;; ++s) {
    commutation_terms_rec(L, k, axis + 1, cur, fd, out, fact);
    // advance: one more bracket with e_axis and one more derivative
    Vec nxt = L.bracket(cur, ei);  // T_i(z) = [z, e_i]
    bool z2 = true;
    for (const auto& v : nxt) z2 = z2 && v.is_zero();
    fd = fd.derivative(axis);
    if (z2 || fd.is_zero()) break;
    cur = nxt;
    fact *= Rational((long)(s + 1));
  }
}

}  // namespace

NCFunctionElement commutation_rule(LiePtr L, int j, const Polynomial& f) {
  auto kopt = L->split_index();
  if (!kopt) throw AlgebraMismatch("basis is not adapted (nilradical last)");
  int k = *kopt;
  if (j < k || j >= L->dim())
    throw DimensionMismatch("commutation_rule needs a nilradical generator");
  Polynomial fk = f.with_nvars(k);
  NCFunctionElement out(L, k, L->dim() + f.total_degree() + 1);
  Vec z(L->dim());
  z[j] = Scalar(1);
  commutation_terms_rec(*L, k, 0, z, fk, out, Rational(1));
  return out;
}

namespace {

struct TemplateKey {
  const LieAlgebra* L;
  MultiIndex ba, bb;
  Exponent la, lb;  // inclusive component-wise bounds
  int N;
  bool operator<(const TemplateKey& o) const {
    if (L != o.L) return L < o.L;
    if (ba != o.ba) return ba < o.ba;
    if (bb != o.bb) return bb < o.bb;
    if (la != o.la) return la < o.la;
    if (lb != o.lb) return lb < o.lb;
    return N < o.N;
  }
};

struct Template {
  Exponent a, b;   // derivative orders applied to F and G
  UEAElement w;    // pure-nilradical tail (n-degree <= N)
};

void enumerate_exponents(const Exponent& bound, int pos, Exponent& cur,
                         std::vector<Exponent>& out) {
  if (pos == (int)bound.size()) {
    out.push_back(cur);
    return;
  }
  for (uint32_t t = 0; t <= bound[pos]; ++t) {
    cur[pos] = t;
    enumerate_exponents(bound, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

Scalar binom_product(const Exponent& n, const Exponent& k) {
  // prod_i C(n_i, k_i)
  Rational r(1);
  for (size_t i = 0; i < n.size(); ++i) {
    // C(n_i, k_i)
    Rational c(1);
    for (uint32_t t = 0; t < k[i]; ++t)
      c *= Rational((long)(n[i] - t)) / Rational((long)(t + 1));
    r *= c;
  }
  return Scalar(r);
}

// Phi(lambda^g) * w for a pure-n element w: ordered concatenation, no
// straightening needed.
UEAElement lambda_times_tail(LiePtr L, int k, const Exponent& g,
                             const UEAElement& w) {
  UEAElement r(L);
  int m = L->dim();
  for (const auto& [e, c] : w.terms()) {
    MultiIndex full = e;
    for (int i = 0; i < k; ++i) {
      if (full[i] != 0) throw std::logic_error("tail not pure-nilradical");
      full[i] = g[i];
    }
    r.add_term(full, c);
  }
  return r;
}

const std::vector<Template>& product_templates(LiePtr L, int k,
                                               const MultiIndex& ba,
                                               const MultiIndex& bb,
                                               const Exponent& la,
                                               const Exponent& lb, int N) {
  static std::map<TemplateKey, std::vector<Template>> cache;
  TemplateKey key{L.get(), ba, bb, la, lb, N};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  int m = L->dim();
  StraighteningEngine eng(L);
  std::vector<Exponent> as, bs;
  Exponent cur(k, 0);
  enumerate_exponents(la, 0, cur, as);
  enumerate_exponents(lb, 0, cur, bs);
  auto order = [](const Exponent& x, const Exponent& y) {
    int dx = 0, dy = 0;
    for (auto v : x) dx += (int)v;
    for (auto v : y) dy += (int)v;
    if (dx != dy) return dx < dy;
    return x < y;
  };
  std::sort(as.begin(), as.end(), order);
  std::sort(bs.begin(), bs.end(), order);

  std::map<std::pair<Exponent, Exponent>, UEAElement> w;
  std::vector<Template> result;
  auto leq = [](const Exponent& x, const Exponent& y) {
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] > y[i]) return false;
    return true;
  };

  for (const auto& ap : as) {
    for (const auto& bp : bs) {
      // probe word: lambda^{ap} e^{ba} lambda^{bp} e^{bb}
      std::vector<int> word;
      for (int i = 0; i < k; ++i)
        for (uint32_t t = 0; t < ap[i]; ++t) word.push_back(i);
      for (int i = 0; i < m - k; ++i)
        for (uint32_t t = 0; t < ba[i]; ++t) word.push_back(k + i);
      for (int i = 0; i < k; ++i)
        for (uint32_t t = 0; t < bp[i]; ++t) word.push_back(i);
      for (int i = 0; i < m - k; ++i)
        for (uint32_t t = 0; t < bb[i]; ++t) word.push_back(k + i);
      UEAElement P = truncate_n_degree(eng.straighten(word), k, N);
      // subtract known templates
      for (const auto& [ab, tail] : w) {
        const auto& [a, b] = ab;
        if (!leq(a, ap) || !leq(b, bp)) continue;
        Scalar coef = binom_product(ap, a) * binom_product(bp, b);
        Exponent g(k, 0);
        for (int i = 0; i < k; ++i) g[i] = (ap[i] - a[i]) + (bp[i] - b[i]);
        P -= coef * lambda_times_tail(L, k, g, tail);
      }
      // remaining must be the new template tail (pure n-part)
      for (const auto& [e, c] : P.terms())
        for (int i = 0; i < k; ++i)
          if (e[i] != 0)
            throw std::logic_error("product template residual has a lambda part");
      if (!P.is_zero()) {
        w.emplace(std::make_pair(ap, bp), P);
        result.push_back({ap, bp, P});
      }
    }
  }
  auto [pos, ok] = cache.emplace(key, std::move(result));
  (void)ok;
  return pos->second;
}

Exponent poly_degree_bounds(const Polynomial& f, int k) {
  Exponent b(k, 0);
  for (const auto& [e, c] : f.terms())
    for (int i = 0; i < k; ++i) b[i] = std::max(b[i], e[i]);
  return b;
}

}  // namespace

NCFunctionElement nc_multiply(const NCFunctionElement& a, const NCFunctionElement& b) {
  if (a.algebra() != b.algebra())
    throw AlgebraMismatch("product of elements over different algebras");
  if (a.split() != b.split()) throw AlgebraMismatch("product with different splits");
  LiePtr L = a.algebra();
  int k = a.split();
  int N = std::min(a.truncation(), b.truncation());
  bool smooth = !a.all_polynomial() || !b.all_polynomial();
  int max_depth = 0;
  if (smooth) {
    if (!L->is_nilpotent())
      throw SmoothUnsupported(
          "smooth coefficients need a nilpotent algebra for the finite "
          "derivative expansion");
  }
  {
    // cap on derivative orders in the nilpotent smooth case: every extracted
    // derivative costs a bracket, and brackets strictly raise the LCS weight
    // of the surviving tail (bounded by N * max depth)
    for (int i = 0; i < L->dim(); ++i) {
      Vec ei(L->dim());
      ei[i] = Scalar(1);
      max_depth = std::max(max_depth, L->lcs_depth(ei));
    }
  }
  NCFunctionElement out(L, k, N);
  for (const auto& [ba, Fa] : a.terms()) {
    for (const auto& [bb, Fb] : b.terms()) {
      Exponent la, lb;
      if (Fa.is_polynomial())
        la = poly_degree_bounds(Fa.poly(), k);
      else
        la = Exponent(k, (uint32_t)(N * max_depth + 1));
      if (Fb.is_polynomial())
        lb = poly_degree_bounds(Fb.poly(), k);
      else
        lb = Exponent(k, (uint32_t)(N * max_depth + 1));
      const auto& temps = product_templates(L, k, ba, bb, la, lb, N);
      for (const auto& t : temps) {
        CoefficientFn coeff = Fa.derivative(t.a);
        if (coeff.is_zero()) continue;
        CoefficientFn gb = Fb.derivative(t.b);
        if (gb.is_zero()) continue;
        Rational fact(1);
        for (int i = 0; i < k; ++i) {
          for (uint32_t s = 1; s <= t.a[i]; ++s) fact *= Rational((long)s);
          for (uint32_t s = 1; s <= t.b[i]; ++s) fact *= Rational((long)s);
        }
        coeff = Scalar(Rational(1) / fact) * (coeff * gb);
        for (const auto& [e, c] : t.w.terms()) {
          MultiIndex beta = n_part(e, k);
          if (total_degree(beta) > N) continue;
          out.add_term(beta, c * coeff);
        }
      }
    }
  }
  return out;
}

// ---- seminorms ----

namespace {

SupEstimate sup_of_derivative(const CoefficientFn& f, const CompactBox& M) {
  SupEstimate est;
  bool exact = f.is_polynomial();
  double prev = -1;
  int per_axis = 17;
  int level = 0;
  const int cap = 4097;  // 2^12 + 1
  for (;;) {
    double best = 0;
    for (const auto& node : M.grid(per_axis))
      best = std::max(best, f.abs_at(node));
    est.value = best;
    est.level = level;
    est.exact_nodes = exact;
    if (prev >= 0) {
      double denom = std::max(best, 1e-300);
      if (std::abs(best - prev) <= 1e-3 * denom) break;
    }
    if (per_axis >= cap) break;
    prev = best;
    per_axis = 2 * per_axis - 1;
    ++level;
  }
  return est;
}

}  // namespace

SupEstimate sup_on_box(const CoefficientFn& f, const CompactBox& M) {
  return sup_of_derivative(f, M);
}

SupEstimate nc_seminorm(const NCFunctionElement& a, const MultiIndex& beta,
                        const CompactBox& M, int l) {
  if (l < 0) throw DimensionMismatch("derivative order must be >= 0");
  CoefficientFn f = a.coefficient(beta);
  SupEstimate total;
  total.exact_nodes = true;
  if (f.is_zero()) return total;
  // all gamma with |gamma| = l over k variables
  int k = a.split();
  std::vector<Exponent> gammas;
  Exponent cur(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == k) {
      if (rem == 0) gammas.push_back(cur);
      return;
    }
    for (int t = 0; t <= rem; ++t) {
      cur[pos] = (uint32_t)t;
      rec(pos + 1, rem - t);
    }
    cur[pos] = 0;
  };
  if (k == 0) {
    if (l == 0) gammas.push_back(cur);
  } else {
    rec(0, l);
  }
  for (const auto& g : gammas) {
    SupEstimate part = sup_of_derivative(f.derivative(g), M);
    total.value += part.value;
    total.level = std::max(total.level, part.level);
    total.exact_nodes = total.exact_nodes && part.exact_nodes;
  }
  return total;
}

}  // namespace nclie
