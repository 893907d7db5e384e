#include "nclie/calculus.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <algorithm>
#include <cmath>

#include "nclie/errors.hpp"

namespace nclie {

namespace {

Eigen::MatrixXcd to_eigen(const NumericMatrix& m) {
  int r = (int)m.size();
  int c = r ? (int)m[0].size() : 0;
  Eigen::MatrixXcd a(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) a(i, j) = m[i][j];
  return a;
}

NumericMatrix from_eigen(const Eigen::MatrixXcd& a) {
  NumericMatrix m(a.rows(), std::vector<std::complex<double>>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
  return m;
}

}  // namespace

NumericMatrix numeric_identity(int d) {
  NumericMatrix m(d, std::vector<std::complex<double>>(d));
  for (int i = 0; i < d; ++i) m[i][i] = 1.0;
  return m;
}

NumericMatrix numeric_from_exact(const QMatrix& q) {
  NumericMatrix m(q.rows(), std::vector<std::complex<double>>(q.cols()));
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) {
      auto z = q.at(i, j).to_complex();
      m[i][j] = {z.real(), z.imag()};
    }
  return m;
}

double operator_norm(const NumericMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  return svd.singularValues()(0);
}

NumericMatrix matrix_exponential(const NumericMatrix& m) {
  Eigen::MatrixXcd a = to_eigen(m);
  return from_eigen(a.exp());
}

namespace {

struct Fit {
  double slope = 0, intercept = 0, residual = 0;
};

Fit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
  Fit f;
  size_t n = x.size();
  if (n < 2) return f;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-300) return f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy * sxx - sx * sxy) / det;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

}  // namespace

GrowthReport exp_growth_scan(const NumericMatrix& b, double s_max, int samples) {
  GrowthReport rep;
  Eigen::MatrixXcd a = to_eigen(b);
  std::complex<double> iunit(0, 1);
  double s_min = 0.1;
  bool overflow = false;
  std::vector<double> svals, norms;
  for (int t = 0; t < samples; ++t) {
    double s = s_min * std::pow(s_max / s_min, (double)t / (samples - 1));
    Eigen::MatrixXcd ep = (iunit * s * a).exp();
    Eigen::MatrixXcd em = (-iunit * s * a).exp();
    double np = Eigen::JacobiSVD<Eigen::MatrixXcd>(ep).singularValues()(0);
    double nm = Eigen::JacobiSVD<Eigen::MatrixXcd>(em).singularValues()(0);
    double norm = std::max(np, nm);
    if (!std::isfinite(norm) || norm > 1e200) {
      overflow = true;
      break;
    }
    svals.push_back(s);
    norms.push_back(norm);
    rep.samples.push_back({s, norm});
  }
  if (overflow || svals.size() < 8) {
    rep.verdict = GrowthVerdict::exponential;
    rep.alpha = std::numeric_limits<double>::infinity();
    return rep;
  }
  // running-max envelope removes conditioning oscillation
  std::vector<double> env(norms.size());
  double run = 0;
  for (size_t i = 0; i < norms.size(); ++i) {
    run = std::max(run, norms[i]);
    env[i] = run;
  }
  std::vector<double> lx, ly;
  double cutoff = std::max(1.0, s_max / 100.0);  // fit the tail behaviour
  for (size_t i = 0; i < env.size(); ++i) {
    if (svals[i] < cutoff) continue;
    lx.push_back(std::log1p(svals[i]));
    ly.push_back(std::log(std::max(env[i], 1e-300)));
  }
  Fit fit = least_squares_line(lx, ly);
  rep.alpha = fit.slope;
  rep.K = std::exp(fit.intercept);
  rep.residual = fit.residual;
  // last-octave slope
  {
    std::vector<double> tx, ty;
    double cutoff = lx.empty() ? 0 : lx.back() - std::log(2.0);
    for (size_t i = 0; i < lx.size(); ++i)
      if (lx[i] >= cutoff) {
        tx.push_back(lx[i]);
        ty.push_back(ly[i]);
      }
    rep.last_octave_slope = least_squares_line(tx, ty).slope;
  }
  if (rep.residual > 0.5 || rep.last_octave_slope - rep.alpha > 1.0) {
    rep.verdict = GrowthVerdict::exponential;
  } else if (std::abs(rep.last_octave_slope - rep.alpha) <= 0.2 ||
             rep.alpha < 0.1) {
    rep.verdict = GrowthVerdict::polynomial;
  } else {
    rep.verdict = GrowthVerdict::inconclusive;
  }
  return rep;
}

ResolventReport resolvent_scan(const NumericMatrix& b, double re_lambda,
                               int decades, int per_decade) {
  ResolventReport rep;
  rep.re_lambda = re_lambda;
  Eigen::MatrixXcd a = to_eigen(b);
  int d = (int)a.rows();
  Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  std::vector<double> lx, ly;
  for (int t = 0; t <= decades * per_decade; ++t) {
    double y = std::pow(10.0, -(double)t / per_decade);
    std::complex<double> lambda(re_lambda, y);
    Eigen::MatrixXcd shifted = a - lambda * id;
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(shifted);
    if (!lu.isInvertible()) throw SingularSolve("resolvent at a spectral point");
    Eigen::MatrixXcd r = lu.inverse();
    double norm = Eigen::JacobiSVD<Eigen::MatrixXcd>(r).singularValues()(0);
    rep.table.push_back({y, norm});
    lx.push_back(std::log(1.0 / y));
    ly.push_back(std::log(norm));
  }
  // fit the tail (smallest imaginary parts): last half of the samples
  std::vector<double> tx(lx.begin() + lx.size() / 2, lx.end());
  std::vector<double> ty(ly.begin() + ly.size() / 2, ly.end());
  rep.gamma = least_squares_line(tx, ty).slope;
  for (const auto& [y, norm] : rep.table)
    rep.printed_bound_sup =
        std::max(rep.printed_bound_sup, norm * std::pow(1.0 + y, rep.gamma));
  return rep;
}

// ---- symbols ----

Symbol1D Symbol1D::poly_gauss(std::vector<double> poly, double a) {
  Symbol1D s;
  s.poly_ = std::move(poly);
  s.gauss_ = true;
  s.a_ = a;
  return s;
}

Symbol1D Symbol1D::poly_bump(std::vector<double> poly, double radius) {
  Symbol1D s;
  s.poly_ = std::move(poly);
  s.gauss_ = false;
  s.radius_ = radius;
  return s;
}

namespace {

double bump(double x, double R) {
  // 1 on [-R, R], 0 outside [-R-1, R+1], smooth in between
  double t = std::abs(x);
  if (t <= R) return 1.0;
  if (t >= R + 1) return 0.0;
  auto g = [](double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; };
  double up = g(R + 1 - t);
  double dn = g(t - R);
  return up / (up + dn);
}

double polyval(const std::vector<double>& c, double x) {
  double r = 0;
  for (int i = (int)c.size() - 1; i >= 0; --i) r = r * x + c[i];
  return r;
}

// Gauss-Legendre nodes/weights on [-1, 1] via Newton on Legendre polynomials.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = t;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (t * p1 - p0) / (t * t - 1);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = t;
    double p0 = 1, p1 = t;
    for (int j = 2; j <= n; ++j) {
      double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (t * p1 - p0) / (t * t - 1);
    w[i] = 2.0 / ((1 - t * t) * dp * dp);
  }
}

}  // namespace

double Symbol1D::value(double x) const {
  if (gauss_) return polyval(poly_, x) * std::exp(-a_ * x * x);
  return polyval(poly_, x) * bump(x, radius_);
}

std::complex<double> Symbol1D::hat(double s) const {
  if (gauss_) {
    // FT of x^n e^{-ax^2}: q_n(s) e^{-s^2/(4a)} with
    // q_0 = sqrt(pi/a), q_{n+1}(s) = i (q_n'(s) - s/(2a) q_n(s)).
    size_t n = poly_.size();
    std::vector<std::vector<std::complex<double>>> q(n);
    q[0] = {std::sqrt(M_PI / a_)};
    for (size_t t = 1; t < n; ++t) {
      const auto& p = q[t - 1];
      std::vector<std::complex<double>> nx(p.size() + 1);
      std::complex<double> iu(0, 1);
      for (size_t j = 1; j < p.size(); ++j) nx[j - 1] += iu * ((double)j) * p[j];
      for (size_t j = 0; j < p.size(); ++j) nx[j + 1] -= iu / (2 * a_) * p[j];
      q[t] = nx;
    }
    std::complex<double> total = 0;
    for (size_t t = 0; t < n; ++t) {
      std::complex<double> v = 0;
      for (int j = (int)q[t].size() - 1; j >= 0; --j) v = v * s + q[t][j];
      total += poly_[t] * v;
    }
    return total * std::exp(-s * s / (4 * a_));
  }
  // numeric transform of the compactly supported symbol
  static thread_local std::vector<double> gx, gw;
  const int n = 2000;
  if ((int)gx.size() != n) gauss_legendre(n, gx, gw);
  double R = radius_ + 1;
  std::complex<double> total = 0;
  for (int i = 0; i < n; ++i) {
    double x = R * gx[i];
    double fx = value(x);
    total += gw[i] * R * fx * std::exp(std::complex<double>(0, -s * x));
  }
  return total;
}

double Symbol1D::hat_support(double tol) const {
  double ref = std::abs(hat(0.0)) + 1e-30;
  double S = 1;
  int consecutive = 0;
  while (S <= 4096) {
    double mx = 0;
    for (int t = 0; t < 8; ++t) mx = std::max(mx, std::abs(hat(S + t * S / 8.0)));
    if (mx < tol * ref) {
      if (++consecutive >= 2) return S;
    } else {
      consecutive = 0;
    }
    S *= 1.5;
  }
  throw TruncationBudgetExceeded("Fourier tail did not fall below tolerance");
}

NumericMatrix ordered_fc_taylor(const CoefficientFn& f,
                                const std::vector<NumericMatrix>& b) {
  int m = (int)b.size();
  if (f.nvars() != m) throw DimensionMismatch("symbol arity vs matrix count");
  int d = (int)b[0].size();
  std::vector<Eigen::MatrixXcd> eb;
  std::vector<int> nilindex;
  for (const auto& bi : b) {
    Eigen::MatrixXcd a = to_eigen(bi);
    if (a.rows() != d) throw DimensionMismatch("matrices of unequal sizes");
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Identity(d, d);
    int t = 0;
    for (; t <= d; ++t) {
      if (p.norm() < 1e-12) break;
      p = p * a;
    }
    if (t > d) throw NotNilpotent("ordered Taylor calculus needs nilpotent inputs");
    nilindex.push_back(t);
    eb.push_back(to_eigen(bi));
  }
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  // sum over alpha with alpha_j < nilindex_j of f^{(alpha)}(0)/alpha! b^alpha
  std::vector<uint32_t> alpha(m, 0);
  for (;;) {
    Exponent g(alpha.begin(), alpha.end());
    double fd = f.derivative(g).eval(std::vector<double>(m, 0.0));
    double fact = 1;
    for (int j = 0; j < m; ++j)
      for (uint32_t s = 1; s <= alpha[j]; ++s) fact *= s;
    if (fd != 0) {
      Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(d, d);
      for (int j = 0; j < m; ++j)
        for (uint32_t s = 0; s < alpha[j]; ++s) prod = prod * eb[j];
      total += (fd / fact) * prod;
    }
    int ax = 0;
    while (ax < m) {
      if ((int)++alpha[ax] < nilindex[ax]) break;
      alpha[ax] = 0;
      ++ax;
    }
    if (ax == m) break;
  }
  return from_eigen(total);
}

namespace {

void check_real_spectrum(const Eigen::MatrixXcd& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i).imag()) > 1e-9)
      throw NonRealSpectrum("input matrix has non-real spectrum");
}

NumericMatrix axis_integral(const Symbol1D& sym, const Eigen::MatrixXcd& b,
                            int max_nodes, double tail_tol) {
  double S = sym.hat_support(tail_tol);
  int d = (int)b.rows();
  std::complex<double> iu(0, 1);
  Eigen::MatrixXcd prev = Eigen::MatrixXcd::Zero(d, d);
  int nodes = 128;
  Eigen::MatrixXcd total = prev;
  for (;;) {
    std::vector<double> gx, gw;
    gauss_legendre(nodes, gx, gw);
    total = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < nodes; ++i) {
      double s = S * gx[i];
      Eigen::MatrixXcd e = (iu * s * b).exp();
      total += (gw[i] * S / (2 * M_PI)) * sym.hat(s) * e;
    }
    if (nodes > 128 && (total - prev).norm() <= 1e-8 * std::max(1.0, total.norm()))
      break;
    if (nodes >= max_nodes) break;
    prev = total;
    nodes *= 2;
  }
  return from_eigen(total);
}

}  // namespace

NumericMatrix ordered_fc_quadrature(const SymbolProduct& f,
                                    const std::vector<NumericMatrix>& b,
                                    int max_nodes_per_axis, double tail_tol) {
  if (f.size() != b.size()) throw DimensionMismatch("symbol arity vs matrix count");
  int d = (int)b[0].size();
  for (const auto& bi : b) check_real_spectrum(to_eigen(bi));
  // the product symbol factorizes, so the ordered integral is the ordered
  // product of per-axis integrals
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Identity(d, d);
  for (size_t j = 0; j < f.size(); ++j) {
    NumericMatrix axis =
        axis_integral(f[j], to_eigen(b[j]), max_nodes_per_axis, tail_tol);
    total = total * to_eigen(axis);
  }
  return from_eigen(total);
}

NumericMatrix weyl_fc_quadrature(const SymbolProduct& f,
                                 const std::vector<NumericMatrix>& b,
                                 int max_nodes_per_axis, double tail_tol) {
  if (f.size() != b.size()) throw DimensionMismatch("symbol arity vs matrix count");
  size_t m = b.size();
  int d = (int)b[0].size();
  std::vector<Eigen::MatrixXcd> eb;
  for (const auto& bi : b) {
    eb.push_back(to_eigen(bi));
    check_real_spectrum(eb.back());
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      if ((eb[i] * eb[j] - eb[j] * eb[i]).norm() > 1e-12)
        throw NotCommuting("joint-exponential calculus needs commuting inputs");
  if (m == 1) return ordered_fc_quadrature(f, b, max_nodes_per_axis, tail_tol);
  if (m != 2)
    throw Unsupported("joint-exponential quadrature implemented for m <= 2");
  double S0 = f[0].hat_support(tail_tol), S1 = f[1].hat_support(tail_tol);
  std::complex<double> iu(0, 1);
  Eigen::MatrixXcd prev = Eigen::MatrixXcd::Zero(d, d), total = prev;
  int nodes = 64;
  for (;;) {
    std::vector<double> x0, w0, x1, w1;
    gauss_legendre(nodes, x0, w0);
    x1 = x0;
    w1 = w0;
    total = Eigen::MatrixXcd::Zero(d, d);
    std::vector<std::complex<double>> h0(nodes), h1(nodes);
    for (int i = 0; i < nodes; ++i) {
      h0[i] = f[0].hat(S0 * x0[i]);
      h1[i] = f[1].hat(S1 * x1[i]);
    }
    for (int i = 0; i < nodes; ++i)
      for (int j = 0; j < nodes; ++j) {
        Eigen::MatrixXcd e =
            (iu * (S0 * x0[i] * eb[0] + S1 * x1[j] * eb[1])).exp();
        total += (w0[i] * S0 * w1[j] * S1 / (4 * M_PI * M_PI)) * h0[i] * h1[j] * e;
      }
    if (nodes > 64 && (total - prev).norm() <= 1e-7 * std::max(1.0, total.norm()))
      break;
    if (nodes >= max_nodes_per_axis) break;
    prev = total;
    nodes *= 2;
  }
  return from_eigen(total);
}

std::string verdict_name(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::polynomial: return "polynomial";
    case GrowthVerdict::exponential: return "exponential";
    default: return "inconclusive";
  }
}

}  // namespace nclie
