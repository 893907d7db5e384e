#ifndef NCLIE_DEMO_E2_HPP
#define NCLIE_DEMO_E2_HPP

#include <vector>

#include "nclie/polynomial.hpp"

namespace nclie {

/// One row of the continuity-failure demonstration on the motion-group
/// algebra: polynomial approximants f_n of f(x) = 1/(x^2+1) on the slit box
/// region K_m, and the resulting growth of the e3-coefficient
/// g_n = (f_n(x-i) - f_n(x+i)) / 2i on [1/m, 1].
struct E2DemoRow {
  int m = 0;
  int degree = 0;
  double fit_residual = 0;      // max |f_n - f| over the K_m grid
  double sup_g = 0;             // sup |g_n| on [1/m, 1]
  double sup_target = 0;        // sup |2/(x^3+4x)| on [1/m, 1]
  double rel_gap = 0;           // |sup_g - sup_target| / sup_target
  bool commutation_exact = false;  // straightening route == shift route
  bool real_valued = false;        // g_n real on R
};

/// Runs the demo for paired (m, degree) lists.
std::vector<E2DemoRow> demo_e2_blowup(const std::vector<int>& m_list,
                                      const std::vector<int>& degrees,
                                      int grid_points = 400);

/// Least-squares polynomial fit (real coefficients) of 1/(x^2+1) on the K_m
/// grid; returns the exact rationalized polynomial and the max residual.
std::pair<Polynomial, double> fit_inverse_quadratic_on_km(int m, int degree,
                                                          int grid_points);

}  // namespace nclie

#endif
