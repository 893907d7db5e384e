#ifndef NCLIE_CALCULUS_HPP
#define NCLIE_CALCULUS_HPP

#include <complex>
#include <string>
#include <vector>

#include "nclie/ncfunc.hpp"

namespace nclie {

using NumericMatrix = std::vector<std::vector<std::complex<double>>>;

NumericMatrix numeric_identity(int d);
NumericMatrix numeric_from_exact(const QMatrix& m);
double operator_norm(const NumericMatrix& m);
NumericMatrix matrix_exponential(const NumericMatrix& m);

enum class GrowthVerdict { polynomial, exponential, inconclusive };

struct GrowthReport {
  double alpha = 0;
  double K = 0;
  double residual = 0;
  double last_octave_slope = 0;
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
  std::vector<std::pair<double, double>> samples;  // (s, norm of e^{isb})
};

/// Scans ||e^{isb}|| on a symmetric log-spaced grid up to s_max and fits
/// log(envelope) against log(1+s).
GrowthReport exp_growth_scan(const NumericMatrix& b, double s_max = 1e3,
                             int samples = 60);

struct ResolventReport {
  std::vector<std::pair<double, double>> table;  // (Im lambda, ||R(lambda)||)
  double gamma = 0;        // fitted blow-up exponent as Im -> 0
  double printed_bound_sup = 0;  // sup ||R|| (1+|Im|)^{+gamma} over the grid
  double re_lambda = 0;
};

/// ||(b - lambda)^{-1}|| along Im lambda -> 0 at fixed Re lambda.
ResolventReport resolvent_scan(const NumericMatrix& b, double re_lambda,
                               int decades = 8, int per_decade = 4);

/// 1D symbol with a computable Fourier transform: p(x) e^{-a x^2} (analytic
/// transform) or p(x) * bump_R(x) with the bump identically 1 on [-R, R] and
/// supported in [-R-1, R+1] (numeric transform).
class Symbol1D {
 public:
  static Symbol1D poly_gauss(std::vector<double> poly, double a);
  static Symbol1D poly_bump(std::vector<double> poly, double radius);

  double value(double x) const;
  std::complex<double> hat(double s) const;  // integral of f(x) e^{-isx} dx
  /// S with |hat| < tol outside [-S, S]; throws TruncationBudgetExceeded.
  double hat_support(double tol) const;

 private:
  std::vector<double> poly_;
  bool gauss_ = true;
  double a_ = 1;
  double radius_ = 1;
};

/// Product symbol f(x) = prod_j f_j(x_j).
using SymbolProduct = std::vector<Symbol1D>;

/// Ordered functional calculus by exact finite Taylor sum; all b_j must be
/// nilpotent (checked numerically).
NumericMatrix ordered_fc_taylor(const CoefficientFn& f,
                                const std::vector<NumericMatrix>& b);

/// Ordered functional calculus by Fourier quadrature:
/// (2pi)^-m  integral of hat f(s) exp(i s_1 b_1) ... exp(i s_m b_m) ds.
/// Spectra must be real.
NumericMatrix ordered_fc_quadrature(const SymbolProduct& f,
                                    const std::vector<NumericMatrix>& b,
                                    int max_nodes_per_axis = 1024,
                                    double tail_tol = 1e-9);

/// Joint-exponential (Weyl) form for pairwise commuting inputs.
NumericMatrix weyl_fc_quadrature(const SymbolProduct& f,
                                 const std::vector<NumericMatrix>& b,
                                 int max_nodes_per_axis = 512,
                                 double tail_tol = 1e-9);

std::string verdict_name(GrowthVerdict v);

}  // namespace nclie

#endif
