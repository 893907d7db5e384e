#ifndef NCLIE_LIE_ALGEBRA_HPP
#define NCLIE_LIE_ALGEBRA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nclie/linalg.hpp"
#include "nclie/scalar.hpp"

namespace nclie {

class LieAlgebra;
using LiePtr = std::shared_ptr<const LieAlgebra>;

/// Full flag of ideals 0 = I_0 < I_1 < ... < I_m = g with dim I_j = j,
/// plus the eigenvalue functional realized at each step:
/// [e_i, x_j] = mu_j(e_i) * x_j  (mod I_{j-1}).
struct FlagCertificate {
  std::vector<Subspace> ideals;          // size m+1, dims 0..m
  std::vector<Vec> step_vectors;         // x_j spanning I_j over I_{j-1}
  std::vector<Vec> step_functionals;     // mu_j values on basis e_1..e_m
};

/// Finite-dimensional Lie algebra over Q (or Q(i)) with exact structure
/// constants [e_i, e_j] = sum_k c_{ij}^k e_k.
class LieAlgebra : public std::enable_shared_from_this<LieAlgebra> {
 public:
  /// Builds and validates: antisymmetric closure, exact Jacobi check.
  /// `table` holds entries for i < j only (0-based indices).
  static LiePtr validate_structure(
      int dim, ScalarMode mode, std::vector<std::string> names,
      const std::vector<std::tuple<int, int, Vec>>& table);

  int dim() const { return dim_; }
  ScalarMode mode() const { return mode_; }
  const std::vector<std::string>& names() const { return names_; }
  const Vec& bracket_basis(int i, int j) const { return c_[i * dim_ + j]; }

  Vec bracket(const Vec& x, const Vec& y) const;
  QMatrix ad(const Vec& x) const;
  QMatrix ad_basis(int i) const;

  /// Derived series g >= [g,g] >= ... until stabilization (first entry g).
  std::vector<Subspace> derived_series() const;
  /// Lower central series of a bracket-closed subspace h: h, [h,h], [h,h_2],...
  std::vector<Subspace> lower_central_series(const Subspace& h) const;
  std::vector<Subspace> lower_central_series() const;

  bool is_solvable() const;
  bool is_nilpotent() const;
  bool is_ideal(const Subspace& s) const;
  bool is_subalgebra(const Subspace& s) const;

  /// [g,g] for solvable g; checked to be a nilpotent ideal.
  Subspace nilradical() const;
  Subspace center() const;
  Subspace derived() const;

  /// Quotient by an ideal: returns the quotient algebra, the projection
  /// matrix (dim' x dim) and a section (dim x dim') picking representatives.
  struct Quotient {
    LiePtr algebra;
    QMatrix projection;
    QMatrix section;
  };
  Quotient quotient(const Subspace& ideal) const;

  /// Triangularity certificate; throws NotSolvable / NotTriangular /
  /// IrrationalEigenvalues.
  FlagCertificate triangular_flag() const;

  /// Index k such that e_{k+1}..e_m span the nilradical (basis adapted);
  /// nullopt when the basis is not adapted.
  std::optional<int> split_index() const;

  /// Change of basis: new_e_i = sum_j B_{ji} old_e_j (columns are the new
  /// basis vectors in old coordinates).  Returns the algebra in the new basis.
  LiePtr change_basis(const QMatrix& new_basis_cols) const;

  /// LCS depth of each basis vector of the nilradical span within g's
  /// lower central series chain of n (depth >= 1 inside n, 0 outside).
  int lcs_depth(const Vec& v) const;

  std::string name;  // optional catalog tag

 private:
  LieAlgebra() = default;
  int dim_ = 0;
  ScalarMode mode_ = ScalarMode::real;
  std::vector<std::string> names_;
  std::vector<Vec> c_;  // dim*dim entries, each a Vec of length dim
};

/// Prebuilt algebras: abelian(m), af1, heisenberg, e2, tri(p).
LiePtr catalog_algebra(const std::string& id, ScalarMode mode = ScalarMode::real);

/// Simultaneous-eigenvector extraction for the commuting family
/// {ad e_i restricted to V}; returns (x, mu values per basis generator).
/// Throws IrrationalEigenvalues / NotTriangular as appropriate.
std::pair<Vec, Vec> common_eigenvector(const LieAlgebra& L, const Subspace& V);

}  // namespace nclie

#endif
