#ifndef NCLIE_MATRIX_FUNCTION_HPP
#define NCLIE_MATRIX_FUNCTION_HPP

#include "nclie/ncfunc.hpp"
#include "nclie/reps.hpp"

namespace nclie {

/// Upper-triangular matrix of coefficient functions in the first k variables.
class MatrixFunction {
 public:
  MatrixFunction() : k_(0), d_(0) {}
  MatrixFunction(int k, int d)
      : k_(k), d_(d), entries_(d * d, CoefficientFn(Polynomial(k))) {}

  int vars() const { return k_; }
  int dim() const { return d_; }
  CoefficientFn& at(int i, int j) { return entries_[i * d_ + j]; }
  const CoefficientFn& at(int i, int j) const { return entries_[i * d_ + j]; }
  bool is_upper_triangular() const;
  bool all_polynomial() const;

  MatrixFunction derivative(const Exponent& order) const;
  /// Exact evaluation at a rational point (polynomial entries).
  QMatrix eval_exact(const std::vector<Rational>& x) const;
  double max_row_sum_at(const std::vector<Rational>& x) const;

  friend MatrixFunction operator+(const MatrixFunction& a, const MatrixFunction& b);
  friend MatrixFunction operator*(const MatrixFunction& a, const MatrixFunction& b);
  friend MatrixFunction operator*(const Scalar& c, MatrixFunction a);

  /// Entry-wise exact equality (polynomial entries only).
  bool equals_poly(const MatrixFunction& o) const;

 private:
  int k_, d_;
  std::vector<CoefficientFn> entries_;
};

/// Symbol homomorphism on PBW coordinates: e_j -> lambda_j I + pi(e_j) for
/// j <= k and e_j -> pi(e_j) for j > k, extended to ordered monomials.
/// Exact; entries are polynomials.
MatrixFunction tilde_pi(const Representation& pi, const UEAElement& a, int k);

/// Smooth-coefficient path: finite Taylor expansion, valid when the
/// representation has nilpotent images (products of d generators vanish).
/// Polynomial coefficients take the exact path automatically.
MatrixFunction tilde_pi(const Representation& pi, const NCFunctionElement& a);

}  // namespace nclie

#endif
