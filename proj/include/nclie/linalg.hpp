#ifndef NCLIE_LINALG_HPP
#define NCLIE_LINALG_HPP

#include <optional>
#include <vector>

#include "nclie/scalar.hpp"

namespace nclie {

using Vec = std::vector<Scalar>;

/// Dense matrix over the exact scalar field, row-major.
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static QMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int i, int j) { return data_[i * cols_ + j]; }
  const Scalar& at(int i, int j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_identity() const;
  bool is_upper_triangular() const;
  bool is_strictly_upper_triangular() const;
  /// Least t with A^t = 0, or nullopt if A^(rows) != 0.
  std::optional<int> nilpotency_index() const;

  QMatrix operator-() const;
  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);
  friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
  friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QMatrix operator*(const Scalar& c, QMatrix a);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Vec apply(const Vec& x) const;
  QMatrix transpose() const;
  QMatrix power(int e) const;
  static QMatrix kron(const QMatrix& a, const QMatrix& b);

  /// A^-1; throws SingularSolve if not invertible.
  QMatrix inverse() const;

  /// max-row-sum norm; exact rational when all entries are real.
  Rational max_row_sum_real() const;
  double max_row_sum_double() const;

  /// Characteristic polynomial coefficients c (monic), c[0] + c[1]x + ... + x^n,
  /// by the Faddeev-LeVerrier recursion.
  std::vector<Scalar> char_poly() const;

 private:
  int rows_, cols_;
  std::vector<Scalar> data_;
};

/// Row space in reduced row echelon form; canonical representation, so
/// equality of subspaces is data equality.
class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(int ambient) : ambient_(ambient) {}
  static Subspace span(int ambient, const std::vector<Vec>& vectors);
  static Subspace full(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return (int)basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// Adds v to the span (no-op if already contained).
  void insert(const Vec& v);
  /// Writes v in basis coordinates; throws if not a member.
  Vec coordinates(const Vec& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  int ambient_;
  std::vector<Vec> basis_;   // reduced echelon rows
  std::vector<int> pivots_;  // pivot column per row
};

/// Reduces rows in place to reduced echelon form; returns pivot columns.
std::vector<int> rref(std::vector<Vec>& rows);

/// Kernel basis of A (as a Subspace of its column space).
Subspace kernel(const QMatrix& a);

/// Solves A x = b; nullopt if inconsistent.  When the solution is not unique
/// the pivot-based particular solution is returned (deterministic).
std::optional<Vec> solve(const QMatrix& a, const Vec& b);

// ---- exact univariate polynomials over the scalar field ----

/// Coefficient vector c[0] + c[1] x + ... ; normalized (no leading zeros).
struct UPoly {
  std::vector<Scalar> c;
  int degree() const { return (int)c.size() - 1; }  // -1 for the zero poly
  bool is_zero() const { return c.empty(); }
  void normalize();
  Scalar eval(const Scalar& x) const;
  UPoly derivative() const;
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  std::string str(const std::string& var = "x") const;
};

/// Remainder of a by b (b nonzero).
UPoly upoly_rem(const UPoly& a, const UPoly& b);
/// Exact division by (x - root); remainder must vanish.
UPoly upoly_deflate(const UPoly& p, const Scalar& root);

/// All rational roots (real mode) of a polynomial with rational coefficients,
/// with multiplicity, via the rational root theorem.
std::vector<Rational> rational_roots(const UPoly& p);

/// Number of distinct real roots of a rational-coefficient polynomial
/// (Sturm chain; exact).
int count_real_roots(const UPoly& p);

/// Roots of p in the Gaussian rationals that are exactly certifiable:
/// all rational roots, plus quadratic-formula roots of any degree<=2 residual.
/// Returns nullopt if a residual of degree >= 1 remains unsplit.
std::optional<std::vector<Scalar>> gaussian_roots(const UPoly& p);

/// Exact square root in Q(i) if it exists.
std::optional<Scalar> gaussian_sqrt(const Scalar& z);

}  // namespace nclie

#endif
