#ifndef NCLIE_REPS_HPP
#define NCLIE_REPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nclie/lie_algebra.hpp"
#include "nclie/pbw.hpp"

namespace nclie {

/// Finite-dimensional representation given by exact matrices per basis
/// generator.  Matrices are kept upper-triangular by construction.
struct Representation {
  LiePtr L;
  int d = 0;
  std::vector<QMatrix> mats;  // mats[i] = pi(e_i)
  bool nilpotent_image = false;
  std::string label;

  QMatrix apply_vector(const Vec& x) const;
  /// pi extended to U(g): ordered products of generator matrices.
  QMatrix act(const UEAElement& a) const;
  QMatrix act_monomial(const MultiIndex& a) const;
  /// Exact check of pi([x,y]) = [pi(x), pi(y)] on all basis pairs.
  bool bracket_compatible() const;
  /// Exact nilpotency of every generator image.
  bool images_nilpotent() const;
};

/// Adjoint representation in the algebra basis.
Representation adjoint_rep(LiePtr L);

enum class QuotientFiltration { total_degree, lcs_weight };

/// Left-regular representation of a nilpotent algebra on U(L)/U_p.
/// `total_degree` realizes U_p as the span of PBW monomials of total degree
/// >= p (valid, and verified, for nilpotency class <= 2); `lcs_weight` uses
/// the p-th power of the augmentation ideal (valid for every nilpotent L).
/// With `auto_select` the total-degree form is tried first and the weighted
/// one is used if the exactness check fails.
Representation nilpotent_quotient_rep(LiePtr L, int p,
                                      QuotientFiltration filtration,
                                      bool* used_weighted = nullptr);
Representation nilpotent_quotient_rep(LiePtr L, int p);

/// Report of the eigenvalue conditions for a representation and a vector x:
/// (A1) pi(x) != 0; (A2) pi(y) pi(x) = mu_y pi(x) for every basis y;
/// (A3) mu_y = 0 for y in the nilradical.
struct AConditionReport {
  bool a1 = false, a2 = false, a3 = false;
  std::vector<Scalar> mu;  // per basis generator (valid where a2 holds)
  int a2_witness = -1;     // basis index where (A2) first fails
};
AConditionReport check_A_conditions(const Representation& pi, const Vec& x);

/// Adapted basis (complement first, nilradical last) together with one
/// representation per nilradical generator satisfying (A1)-(A3), the
/// eigenvalue table, and the change of basis from the input algebra.
struct AdaptedSystem {
  LiePtr original;          // algebra in the input basis
  LiePtr algebra;           // algebra in the adapted basis
  QMatrix basis_columns;    // adapted basis vectors in input coordinates
  int k = 0;                // complement size; nilradical = span(e_{k+1}..e_m)
  std::vector<Representation> reps;  // reps[r] for generator k+r (adapted basis)
  std::vector<std::vector<Scalar>> mu_table;  // mu_table[r][j], j over basis
  bool nilpotent = false;

  const Representation& rep_for(int gen_index) const;  // gen_index in [k, m)
};

/// Constructive adapted system; throws NotTriangular / IrrationalEigenvalues /
/// Unsupported (solvable non-nilpotent arm that would need the semidirect
/// extension by semisimple derivation parts).
AdaptedSystem build_adapted_system(LiePtr L);

/// Tensor representation pi_beta: the per-generator representations taken
/// with multiplicities beta (beta over the last m-k generators).
Representation tensor_rep(const AdaptedSystem& sys, const MultiIndex& beta);

/// Shift vector mu with pi_beta(e_j) pi_beta(e^beta) = mu_j pi_beta(e^beta):
/// mu_j = sum_i beta_i * mu_{j,i} over the nilradical slots, j = 1..k.
std::vector<Scalar> shift_vector(const AdaptedSystem& sys, const MultiIndex& beta);

/// Named catalog data: the algebra, its adapted system, and extra named
/// representations (af1: pi_q with the weight ladder; heisenberg: standard
/// pi_1 and tensor powers).
struct CatalogEntry {
  LiePtr algebra;
  std::optional<AdaptedSystem> system;  // absent for e2
  std::vector<Representation> named;    // label-tagged special reps
};
CatalogEntry catalog(const std::string& id, ScalarMode mode = ScalarMode::real);

/// af1 ladder representation: X_q = diag(q..0), Y_q = upper shift.
Representation af1_ladder_rep(LiePtr af1, int q);
/// Heisenberg standard 3x3 representation and its tensor powers.
Representation heisenberg_standard_rep(LiePtr h);
Representation heisenberg_tensor_power(LiePtr h, int q);

}  // namespace nclie

#endif
