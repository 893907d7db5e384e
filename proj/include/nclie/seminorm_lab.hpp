#ifndef NCLIE_SEMINORM_LAB_HPP
#define NCLIE_SEMINORM_LAB_HPP

#include "nclie/matrix_function.hpp"
#include "nclie/ncfunc.hpp"
#include "nclie/reps.hpp"

namespace nclie {

enum class MatrixNorm { max_row_sum, operator_2 };

/// Data of the seminorm on matrix functions: size, box, derivative order,
/// matrix norm.
struct SeminormSpec {
  int p = 1;
  CompactBox K;
  int n = 0;
  MatrixNorm norm = MatrixNorm::max_row_sum;
};

double matrix_norm_double(const QMatrix& m, MatrixNorm norm);

/// sum over |gamma| = n of sup_K of the matrix norm of the gamma-derivative.
SupEstimate matrix_seminorm(const MatrixFunction& F, const SeminormSpec& spec);

/// Upper-triangular matrix with entry (i,j) regarded on box K_j,
/// K_1 ⊇ K_2 ⊇ ... ⊇ K_p.
class NestedTriangularElement {
 public:
  NestedTriangularElement(std::vector<CompactBox> boxes, int k);
  static NestedTriangularElement identity(std::vector<CompactBox> boxes, int k);

  int size() const { return (int)boxes_.size(); }
  int vars() const { return k_; }
  const std::vector<CompactBox>& boxes() const { return boxes_; }
  CoefficientFn& at(int i, int j);
  const CoefficientFn& at(int i, int j) const;

  friend NestedTriangularElement nested_multiply(const NestedTriangularElement& a,
                                                 const NestedTriangularElement& b);

 private:
  std::vector<CompactBox> boxes_;
  int k_;
  std::vector<CoefficientFn> entries_;
};

/// Banach-norm surrogate: sum over i <= j of |h_ij|_{K_j, n}.
double nested_seminorm(const NestedTriangularElement& a, int n);

/// Report of the domination estimate
///   |a|_{beta,M,l} <= C^{-1} (||pi~_beta(a)||_{beta,M-mu,l}
///                            + ||pi~_beta P_beta(a)||_{beta,M-mu,l})
/// and of the exact equality
///   |a|_{beta,M,l} = C^{-1} ||pi~_beta(a - P_beta a)||_{beta,M-mu,l}.
struct DominationReport {
  double lhs = 0;
  double term_full = 0, term_proj = 0;
  double rhs = 0;
  double equality_rhs = 0;
  double C = 0;
  std::vector<Scalar> mu;
  bool inequality_holds = false;
  bool equality_holds = false;
};

DominationReport verify_domination(const NCFunctionElement& a,
                                   const MultiIndex& beta, const CompactBox& M,
                                   int l, const AdaptedSystem& sys,
                                   int grid_nodes = 65);

/// Finite window of the product embedding: the seminorm of pi~_beta(a) for
/// each listed beta, on the given box at the given derivative order.
std::vector<double> rho_embed(const NCFunctionElement& a, const AdaptedSystem& sys,
                              const std::vector<MultiIndex>& betas,
                              const CompactBox& K, int n,
                              MatrixNorm norm = MatrixNorm::max_row_sum);

}  // namespace nclie

#endif
