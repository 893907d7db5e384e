#include "nclie/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "nclie/errors.hpp"

namespace nclie {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
  return m;
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool QMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? Scalar(1) : Scalar(0))) return false;
  return true;
}

bool QMatrix::is_upper_triangular() const {
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < std::min(i, cols_); ++j)
      if (!at(i, j).is_zero()) return false;
  return true;
}

bool QMatrix::is_strictly_upper_triangular() const {
  if (!is_upper_triangular()) return false;
  for (int i = 0; i < std::min(rows_, cols_); ++i)
    if (!at(i, i).is_zero()) return false;
  return true;
}

std::optional<int> QMatrix::nilpotency_index() const {
  if (rows_ != cols_) return std::nullopt;
  if (is_zero()) return 1;
  QMatrix p = *this;
  for (int t = 2; t <= rows_; ++t) {
    p = p * (*this);
    if (p.is_zero()) return t;
  }
  return std::nullopt;
}

QMatrix QMatrix::operator-() const {
  QMatrix r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
  return r;
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix addition shape");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix subtraction shape");
  for (size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape");
  QMatrix r(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int l = 0; l < a.cols_; ++l) {
      const Scalar& ail = a.at(i, l);
      if (ail.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Scalar& blj = b.at(l, j);
        if (!blj.is_zero()) r.at(i, j) += ail * blj;
      }
    }
  return r;
}

QMatrix operator*(const Scalar& c, QMatrix a) {
  for (auto& x : a.data_) x *= c;
  return a;
}

Vec QMatrix::apply(const Vec& x) const {
  if ((int)x.size() != cols_) throw DimensionMismatch("matrix-vector shape");
  Vec r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !x[j].is_zero()) r[i] += at(i, j) * x[j];
  return r;
}

QMatrix QMatrix::transpose() const {
  QMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

QMatrix QMatrix::power(int e) const {
  QMatrix r = identity(rows_);
  for (int i = 0; i < e; ++i) r = r * (*this);
  return r;
}

QMatrix QMatrix::kron(const QMatrix& a, const QMatrix& b) {
  QMatrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j) {
      if (a.at(i, j).is_zero()) continue;
      for (int p = 0; p < b.rows_; ++p)
        for (int q = 0; q < b.cols_; ++q)
          if (!b.at(p, q).is_zero())
            r.at(i * b.rows_ + p, j * b.cols_ + q) = a.at(i, j) * b.at(p, q);
    }
  return r;
}

QMatrix QMatrix::inverse() const {
  if (rows_ != cols_) throw DimensionMismatch("inverse of non-square matrix");
  int n = rows_;
  std::vector<Vec> aug(n, Vec(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = at(i, j);
    aug[i][n + i] = Scalar(1);
  }
  auto piv = rref(aug);
  if ((int)piv.size() != n || piv[n - 1] >= n)
    throw SingularSolve("matrix not invertible");
  QMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.at(i, j) = aug[i][n + j];
  return r;
}

Rational QMatrix::max_row_sum_real() const {
  Rational best = 0;
  for (int i = 0; i < rows_; ++i) {
    Rational s = 0;
    for (int j = 0; j < cols_; ++j) {
      const Scalar& x = at(i, j);
      if (!x.is_real())
        throw ModeMismatch("exact max-row-sum needs real entries");
      s += abs(x.re);
    }
    if (s > best) best = s;
  }
  return best;
}

double QMatrix::max_row_sum_double() const {
  double best = 0;
  for (int i = 0; i < rows_; ++i) {
    double s = 0;
    for (int j = 0; j < cols_; ++j) s += at(i, j).abs_double();
    best = std::max(best, s);
  }
  return best;
}

std::vector<Scalar> QMatrix::char_poly() const {
  if (rows_ != cols_) throw DimensionMismatch("char poly of non-square matrix");
  int n = rows_;
  // Faddeev-LeVerrier: M_1 = A, c_{n-1} = -tr A, M_{k+1} = A(M_k + c_{n-k} I)
  std::vector<Scalar> c(n + 1);
  c[n] = Scalar(1);
  QMatrix m = *this;
  for (int k = 1; k <= n; ++k) {
    Scalar tr(0);
    for (int i = 0; i < n; ++i) tr += m.at(i, i);
    Scalar ck = -(tr / Scalar(k));
    c[n - k] = ck;
    if (k < n) {
      QMatrix mk = m;
      for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
      m = (*this) * mk;
    }
  }
  return c;
}

// ---- subspaces ----

std::vector<int> rref(std::vector<Vec>& rows) {
  std::vector<int> pivots;
  if (rows.empty()) return pivots;
  size_t ncols = rows[0].size();
  size_t r = 0;
  for (size_t col = 0; col < ncols && r < rows.size(); ++col) {
    size_t sel = r;
    while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    Scalar inv = rows[r][col].inv();
    for (size_t j = col; j < ncols; ++j) rows[r][j] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col].is_zero()) continue;
      Scalar f = rows[i][col];
      for (size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back((int)col);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& vectors) {
  Subspace s(ambient);
  std::vector<Vec> rows;
  for (const auto& v : vectors) {
    if ((int)v.size() != ambient) throw DimensionMismatch("span vector length");
    rows.push_back(v);
  }
  s.pivots_ = rref(rows);
  s.basis_ = std::move(rows);
  return s;
}

Subspace Subspace::full(int ambient) {
  std::vector<Vec> rows;
  for (int i = 0; i < ambient; ++i) {
    Vec v(ambient);
    v[i] = Scalar(1);
    rows.push_back(v);
  }
  return span(ambient, rows);
}

bool Subspace::contains(const Vec& v) const {
  Vec w = v;
  for (size_t r = 0; r < basis_.size(); ++r) {
    const Scalar& c = w[pivots_[r]];
    if (!c.is_zero()) {
      Scalar f = c;
      for (int j = 0; j < ambient_; ++j) w[j] -= f * basis_[r][j];
    }
  }
  for (const auto& x : w)
    if (!x.is_zero()) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& v : other.basis_)
    if (!contains(v)) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  std::vector<Vec> rows = basis_;
  rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
  return span(ambient_, rows);
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Zassenhaus: rref of [A A; B 0] -> rows with zero left block give basis of
  // the intersection on the right block.
  int n = ambient_;
  std::vector<Vec> rows;
  for (const auto& v : basis_) {
    Vec w(2 * n);
    for (int j = 0; j < n; ++j) w[j] = w[n + j] = v[j];
    rows.push_back(w);
  }
  for (const auto& v : other.basis_) {
    Vec w(2 * n);
    for (int j = 0; j < n; ++j) w[j] = v[j];
    rows.push_back(w);
  }
  rref(rows);
  std::vector<Vec> inter;
  for (const auto& w : rows) {
    bool left_zero = true;
    for (int j = 0; j < n && left_zero; ++j) left_zero = w[j].is_zero();
    if (left_zero) {
      Vec v(w.begin() + n, w.end());
      bool z = true;
      for (const auto& x : v) z = z && x.is_zero();
      if (!z) inter.push_back(v);
    }
  }
  return span(n, inter);
}

void Subspace::insert(const Vec& v) {
  std::vector<Vec> rows = basis_;
  rows.push_back(v);
  pivots_ = rref(rows);
  basis_ = std::move(rows);
}

Vec Subspace::coordinates(const Vec& v) const {
  Vec w = v;
  Vec coords(basis_.size());
  for (size_t r = 0; r < basis_.size(); ++r) {
    const Scalar& c = w[pivots_[r]];
    if (!c.is_zero()) {
      coords[r] = c;
      Scalar f = c;
      for (int j = 0; j < ambient_; ++j) w[j] -= f * basis_[r][j];
    }
  }
  for (const auto& x : w)
    if (!x.is_zero()) throw DimensionMismatch("vector not in subspace");
  return coords;
}

Subspace kernel(const QMatrix& a) {
  std::vector<Vec> rows(a.rows(), Vec(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) rows[i][j] = a.at(i, j);
  auto pivots = rref(rows);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int j = 0; j < a.cols(); ++j) {
    if (is_pivot[j]) continue;
    Vec v(a.cols());
    v[j] = Scalar(1);
    for (size_t r = 0; r < rows.size(); ++r) v[pivots[r]] = -rows[r][j];
    basis.push_back(v);
  }
  return Subspace::span(a.cols(), basis);
}

std::optional<Vec> solve(const QMatrix& a, const Vec& b) {
  if ((int)b.size() != a.rows()) throw DimensionMismatch("solve rhs length");
  std::vector<Vec> rows(a.rows(), Vec(a.cols() + 1));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) rows[i][j] = a.at(i, j);
    rows[i][a.cols()] = b[i];
  }
  auto pivots = rref(rows);
  Vec x(a.cols());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (pivots[r] == a.cols()) return std::nullopt;  // 0 = 1 row
    x[pivots[r]] = rows[r][a.cols()];
  }
  return x;
}

// ---- univariate polynomials ----

void UPoly::normalize() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Scalar UPoly::eval(const Scalar& x) const {
  Scalar r(0);
  for (int i = degree(); i >= 0; --i) r = r * x + c[i];
  return r;
}

UPoly UPoly::derivative() const {
  UPoly d;
  for (int i = 1; i <= degree(); ++i) d.c.push_back(Scalar((long)i) * c[i]);
  d.normalize();
  return d;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  UPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, Scalar(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  r.normalize();
  return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  UPoly r = a;
  if (r.c.size() < b.c.size()) r.c.resize(b.c.size());
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  r.normalize();
  return r;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (i == 0 || !c[i].is_one()) out += c[i].str();
    if (i > 0) {
      if (!c[i].is_one()) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

UPoly upoly_rem(const UPoly& a, const UPoly& b) {
  UPoly r = a;
  r.normalize();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    Scalar f = r.c.back() / b.c.back();
    int shift = r.degree() - b.degree();
    for (int i = 0; i <= b.degree(); ++i) r.c[i + shift] -= f * b.c[i];
    r.normalize();
  }
  return r;
}

UPoly upoly_deflate(const UPoly& p, const Scalar& root) {
  // synthetic division
  UPoly q;
  q.c.assign(p.c.size() - 1, Scalar(0));
  Scalar carry = p.c.back();
  for (int i = (int)p.c.size() - 2; i >= 0; --i) {
    q.c[i] = carry;
    carry = p.c[i] + carry * root;
  }
  if (!carry.is_zero()) throw std::logic_error("deflation by non-root");
  q.normalize();
  return q;
}

std::vector<Rational> rational_roots(const UPoly& p0) {
  UPoly p = p0;
  p.normalize();
  std::vector<Rational> roots;
  if (p.is_zero()) return roots;
  // strip x^k factor
  size_t k = 0;
  while (k < p.c.size() && p.c[k].is_zero()) ++k;
  for (size_t i = 0; i < k; ++i) roots.push_back(Rational(0));
  p.c.erase(p.c.begin(), p.c.begin() + k);
  if (p.degree() < 1) return roots;

  // clear denominators -> integer coefficients
  mpz_class lcm_den = 1;
  for (const auto& s : p.c) {
    if (!s.is_real()) throw ModeMismatch("rational_roots on complex polynomial");
    Rational r = s.re;
    r.canonicalize();
    mpz_class d = r.get_den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<mpz_class> ic(p.c.size());
  for (size_t i = 0; i < p.c.size(); ++i) {
    Rational r = p.c[i].re * Rational(lcm_den);
    r.canonicalize();
    ic[i] = r.get_num();
  }

  auto divisors = [](mpz_class n) {
    std::vector<mpz_class> ds;
    n = abs(n);
    for (mpz_class d = 1; d * d <= n; ++d) {
      if (n % d == 0) {
        ds.push_back(d);
        if (d * d != n) ds.push_back(n / d);
      }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
  };
  std::vector<mpz_class> ps = divisors(ic.front());
  std::vector<mpz_class> qs = divisors(ic.back());

  bool found = true;
  while (found && p.degree() >= 1) {
    found = false;
    for (const auto& pn : ps) {
      for (const auto& qd : qs) {
        for (int s : {1, -1}) {
          Rational cand(s * pn, qd);
          cand.canonicalize();
          if (p.eval(Scalar(cand)).is_zero()) {
            roots.push_back(cand);
            p = upoly_deflate(p, Scalar(cand));
            found = true;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
  }
  return roots;
}

int count_real_roots(const UPoly& p0) {
  UPoly p = p0;
  p.normalize();
  if (p.is_zero() || p.degree() == 0) return 0;
  // Sturm chain
  std::vector<UPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero() && chain.back().degree() >= 0) {
    UPoly r = upoly_rem(chain[chain.size() - 2], chain.back());
    if (r.is_zero()) break;
    for (auto& cc : r.c) cc = -cc;
    chain.push_back(r);
    if (chain.back().degree() == 0) break;
  }
  auto sign_changes_at_inf = [&](int dir) {
    int changes = 0, prev = 0;
    for (const auto& q : chain) {
      if (q.is_zero()) continue;
      int s = sgn(q.c.back().re);
      if (dir < 0 && q.degree() % 2 == 1) s = -s;
      if (prev != 0 && s != 0 && s != prev) ++changes;
      if (s != 0) prev = s;
    }
    return changes;
  };
  return sign_changes_at_inf(-1) - sign_changes_at_inf(+1);
}

std::optional<Scalar> gaussian_sqrt(const Scalar& z) {
  if (z.is_zero()) return Scalar(0);
  if (z.is_real()) {
    Rational root;
    if (sgn(z.re) > 0 && rational_sqrt(z.re, &root)) return Scalar(root);
    if (sgn(z.re) < 0 && rational_sqrt(-z.re, &root))
      return Scalar(Rational(0), root);
    return std::nullopt;
  }
  // sqrt(a+bi) = x+yi with x^2 = (a+|z|)/2, y = b/(2x); need |z| rational.
  Rational mod;
  if (!rational_sqrt(z.norm2(), &mod)) return std::nullopt;
  Rational x2 = (z.re + mod) / 2;
  Rational x;
  if (!rational_sqrt(x2, &x) || sgn(x) == 0) return std::nullopt;
  Rational y = z.im / (2 * x);
  Scalar w(x, y);
  if (w * w == z) return w;
  return std::nullopt;
}

std::optional<std::vector<Scalar>> gaussian_roots(const UPoly& p0) {
  UPoly p = p0;
  p.normalize();
  std::vector<Scalar> roots;
  if (p.is_zero()) return roots;
  // first all roots with zero imaginary part in the coefficients' field
  bool all_real = true;
  for (const auto& s : p.c) all_real = all_real && s.is_real();
  if (all_real) {
    for (const auto& r : rational_roots(p)) {
      roots.push_back(Scalar(r));
      p = upoly_deflate(p, Scalar(r));
    }
  } else {
    // try roots 0 repeatedly, then fall through to the quadratic case
    while (p.degree() >= 1 && p.c[0].is_zero()) {
      roots.push_back(Scalar(0));
      p = upoly_deflate(p, Scalar(0));
    }
  }
  if (p.degree() <= 0) return roots;
  if (p.degree() == 1) {
    roots.push_back(-(p.c[0] / p.c[1]));
    return roots;
  }
  if (p.degree() == 2) {
    Scalar a = p.c[2], b = p.c[1], c = p.c[0];
    Scalar disc = b * b - Scalar(4) * a * c;
    auto sq = gaussian_sqrt(disc);
    if (!sq) return std::nullopt;
    Scalar two_a = Scalar(2) * a;
    roots.push_back((-b + *sq) / two_a);
    roots.push_back((-b - *sq) / two_a);
    return roots;
  }
  return std::nullopt;
}

}  // namespace nclie
