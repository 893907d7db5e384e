#include "nclie/demo_e2.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "nclie/errors.hpp"
#include "nclie/lie_algebra.hpp"
#include "nclie/ncfunc.hpp"

namespace nclie {

namespace {

// exact Gaussian-rational evaluation of 1/(z^2+1)
Scalar inv_quad(const Scalar& z) {
  Scalar d = z * z + Scalar(1);
  return Scalar(1) / d;
}

struct KmGrid {
  std::vector<Scalar> points;   // exact complex rational points
  std::vector<std::complex<double>> pts_d;
};

KmGrid km_grid(int m, int target_points) {
  // lattice over [-m, m] x [-1, 1], keeping |z -+ i| >= 1/m
  KmGrid g;
  int nx = (int)std::lround(std::sqrt((double)target_points * m));
  int ny = std::max(6, target_points / std::max(nx, 1));
  Rational margin2 = Rational(1, (long)m * m);
  for (int ix = 0; ix <= nx; ++ix)
    for (int iy = 0; iy <= ny; ++iy) {
      Rational re = Rational(-m) + Rational(2 * m) * Rational(ix) / Rational(nx);
      Rational im = Rational(-1) + Rational(2) * Rational(iy) / Rational(ny);
      Rational d_plus = re * re + (im - 1) * (im - 1);
      Rational d_minus = re * re + (im + 1) * (im + 1);
      if (d_plus < margin2 || d_minus < margin2) continue;
      g.points.push_back(Scalar(re, im));
      g.pts_d.push_back({re.get_d(), im.get_d()});
    }
  return g;
}

}  // namespace

std::pair<Polynomial, double> fit_inverse_quadratic_on_km(int m, int degree,
                                                          int grid_points) {
  KmGrid grid = km_grid(m, grid_points);
  int npts = (int)grid.points.size();
  if (npts <= degree) throw IllConditionedFit("not enough grid points");

  // Vandermonde-with-Arnoldi on the scaled variable z/m: builds a discretely
  // orthonormal polynomial basis; the recurrence also tracks the monomial
  // coefficients of each basis polynomial (in the unscaled variable).
  using Cx = std::complex<double>;
  int n = degree + 1;
  Eigen::MatrixXcd Q(npts, n);
  std::vector<std::vector<Cx>> coeff(n);  // monomial coefficients of q_j
  Eigen::VectorXcd z(npts);
  for (int i = 0; i < npts; ++i) z(i) = grid.pts_d[i] / (double)m;

  double q0 = 1.0 / std::sqrt((double)npts);
  Q.col(0).setConstant(q0);
  coeff[0] = {Cx(q0, 0)};
  for (int j = 1; j < n; ++j) {
    Eigen::VectorXcd v = z.cwiseProduct(Q.col(j - 1));
    std::vector<Cx> c(coeff[j - 1].size() + 1, Cx(0, 0));
    for (size_t t = 0; t < coeff[j - 1].size(); ++t)
      c[t + 1] = coeff[j - 1][t] / (double)m;  // multiply by z/m = x/m
    for (int i = 0; i < j; ++i) {
      Cx h = (Q.col(i).adjoint() * v)(0, 0);
      v -= h * Q.col(i);
      for (size_t t = 0; t < coeff[i].size(); ++t) c[t] -= h * coeff[i][t];
    }
    double hnorm = v.norm();
    if (hnorm < 1e-14) throw IllConditionedFit("Arnoldi breakdown");
    Q.col(j) = v / hnorm;
    for (auto& cc : c) cc /= hnorm;
    coeff[j] = std::move(c);
  }

  Eigen::VectorXcd rhs(npts);
  for (int i = 0; i < npts; ++i) {
    Cx zi = grid.pts_d[i];
    rhs(i) = 1.0 / (zi * zi + 1.0);
  }
  Eigen::VectorXcd cfit = Q.adjoint() * rhs;

  // assemble monomial coefficients; the target has real coefficients, so the
  // imaginary parts cancel up to roundoff and are dropped
  std::vector<double> mono(n, 0.0);
  for (int j = 0; j < n; ++j)
    for (size_t t = 0; t < coeff[j].size(); ++t)
      mono[t] += (cfit(j) * coeff[j][t]).real();

  Polynomial p(1);
  for (int t = 0; t < n; ++t) {
    if (mono[t] == 0.0) continue;
    Exponent e{(uint32_t)t};
    p.add_term(e, Scalar(rational_from_double(mono[t])));
  }

  // residual of the exact rationalized polynomial against exact samples
  double resid = 0;
  for (int i = 0; i < npts; ++i) {
    Scalar diff = p.eval({grid.points[i]}) - inv_quad(grid.points[i]);
    resid = std::max(resid, diff.abs_double());
  }
  return {p, resid};
}

std::vector<E2DemoRow> demo_e2_blowup(const std::vector<int>& m_list,
                                      const std::vector<int>& degrees,
                                      int grid_points) {
  if (m_list.size() != degrees.size())
    throw DimensionMismatch("m list and degree list lengths");
  LiePtr L = catalog_algebra("e2", ScalarMode::complex_gauss);
  std::vector<E2DemoRow> rows;
  for (size_t t = 0; t < m_list.size(); ++t) {
    int m = m_list[t];
    E2DemoRow row;
    row.m = m;
    row.degree = degrees[t];
    auto [f, resid] = fit_inverse_quadratic_on_km(m, degrees[t], grid_points);
    row.fit_residual = resid;

    // e3-coefficient of e2 * Phi(f) via the commutation expansion
    NCFunctionElement prod = commutation_rule(L, 1, f);
    MultiIndex e3_slot{0, 1};
    Polynomial g = prod.coefficient(e3_slot).poly();

    // cross-check against the shift route (f(x-i) - f(x+i)) / 2i, exact
    Scalar iu = Scalar::unit_i();
    Polynomial shifted_minus = f.shift({Scalar(0) - iu});
    Polynomial shifted_plus = f.shift({iu});
    Polynomial g2 = Scalar(1) / (Scalar(2) * iu) * (shifted_minus - shifted_plus);
    row.commutation_exact = (g == g2);

    row.real_valued = true;
    for (const auto& [e, c] : g.terms())
      row.real_valued = row.real_valued && c.is_real();

    // sup of |g| and of |2/(x^3+4x)| over [1/m, 1] on a fine exact grid
    const int nodes = 600;
    double supg = 0, supt = 0;
    for (int i = 0; i <= nodes; ++i) {
      Rational x = Rational(1, m) + (Rational(1) - Rational(1, m)) * Rational(i) / Rational(nodes);
      Scalar gx = g.eval({Scalar(x)});
      supg = std::max(supg, gx.abs_double());
      Rational tv = Rational(2) / (x * x * x + 4 * x);
      supt = std::max(supt, std::abs(tv.get_d()));
    }
    row.sup_g = supg;
    row.sup_target = supt;
    row.rel_gap = std::abs(supg - supt) / supt;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nclie
