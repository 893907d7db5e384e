#ifndef NCLIE_NCFUNC_HPP
#define NCLIE_NCFUNC_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "nclie/pbw.hpp"
#include "nclie/polynomial.hpp"

namespace nclie {

/// Product of closed rational intervals in R^k.
struct CompactBox {
  std::vector<Rational> lo, hi;

  CompactBox() = default;
  CompactBox(std::vector<Rational> l, std::vector<Rational> h);
  static CompactBox interval(const Rational& a, const Rational& b);
  static CompactBox square(const Rational& a, const Rational& b, int k);

  int dim() const { return (int)lo.size(); }
  bool contains(const std::vector<Rational>& x) const;
  /// Box translated by -mu per axis (M - mu).
  CompactBox shifted_back(const std::vector<Scalar>& mu) const;
  /// n nodes per axis, uniform, endpoints included; nodes are exact.
  std::vector<std::vector<Rational>> grid(int per_axis) const;
};

/// Smooth numeric coefficient: a sum of polynomial-times-Gaussian terms with
/// exact parameters (derivatives are closed-form), or a generic callable
/// with central-finite-difference derivatives as a flagged fallback.
class SmoothFn {
 public:
  struct GaussTerm {
    Polynomial poly;              // rational coefficients
    std::vector<Rational> a, c;   // exp(-sum a_i (x_i - c_i)^2)
    Rational k0;                  // extra factor exp(-k0)
  };
  using Callable = std::function<double(const std::vector<double>&)>;

  SmoothFn() : nvars_(0) {}
  static SmoothFn poly_gauss(const Polynomial& p, std::vector<Rational> a,
                             std::vector<Rational> c);
  static SmoothFn from_polynomial(const Polynomial& p);
  static SmoothFn generic(int nvars, Callable f, double fd_scale = 1.0);

  int nvars() const { return nvars_; }
  bool is_generic() const { return generic_.has_value(); }
  bool fd_fallback() const { return is_generic(); }
  bool is_zero() const { return !generic_ && terms_.empty(); }

  double eval(const std::vector<double>& x) const;
  SmoothFn derivative(int var) const;
  SmoothFn derivative(const Exponent& order) const;
  SmoothFn shifted(const std::vector<Scalar>& mu) const;  // x -> f(x + mu)

  friend SmoothFn operator+(const SmoothFn& f, const SmoothFn& g);
  friend SmoothFn operator*(const SmoothFn& f, const SmoothFn& g);
  friend SmoothFn operator*(const Scalar& c, const SmoothFn& f);

 private:
  int nvars_;
  std::vector<GaussTerm> terms_;
  std::optional<Callable> generic_;
  double fd_scale_ = 1.0;
};

/// Coefficient function f_beta: exact polynomial or smooth numeric.
class CoefficientFn {
 public:
  CoefficientFn() : v_(Polynomial()) {}
  CoefficientFn(Polynomial p) : v_(std::move(p)) {}
  CoefficientFn(SmoothFn f) : v_(std::move(f)) {}

  bool is_polynomial() const { return std::holds_alternative<Polynomial>(v_); }
  const Polynomial& poly() const;
  const SmoothFn& smooth() const;
  int nvars() const;
  bool is_zero() const;

  CoefficientFn derivative(int var) const;
  CoefficientFn derivative(const Exponent& order) const;
  CoefficientFn shifted(const std::vector<Scalar>& mu) const;
  double eval(const std::vector<double>& x) const;
  Scalar eval_exact(const std::vector<Rational>& x) const;  // polynomial only
  /// |f(x)| at an exact node: rational for real polynomials, else numeric.
  double abs_at(const std::vector<Rational>& x) const;

  friend CoefficientFn operator+(const CoefficientFn& f, const CoefficientFn& g);
  friend CoefficientFn operator*(const CoefficientFn& f, const CoefficientFn& g);
  friend CoefficientFn operator*(const Scalar& c, const CoefficientFn& f);

 private:
  std::variant<Polynomial, SmoothFn> v_;
};

/// Truncated element of the completed algebra: beta -> f_beta over the
/// nilradical exponents, coefficients in the first k variables.
class NCFunctionElement {
 public:
  NCFunctionElement() = default;
  NCFunctionElement(LiePtr L, int k, int N);

  const LiePtr& algebra() const { return L_; }
  int split() const { return k_; }
  int truncation() const { return N_; }
  const std::map<MultiIndex, CoefficientFn>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool all_polynomial() const;

  void set_term(const MultiIndex& beta, CoefficientFn f);
  void add_term(const MultiIndex& beta, const CoefficientFn& f);
  CoefficientFn coefficient(const MultiIndex& beta) const;  // zero if absent

  NCFunctionElement truncated(int N) const;
  friend NCFunctionElement operator+(const NCFunctionElement& a,
                                     const NCFunctionElement& b);

 private:
  LiePtr L_;
  int k_ = 0, N_ = 0;
  std::map<MultiIndex, CoefficientFn> terms_;
  void prune();
};

/// PBW coordinates -> coefficient map; drops n-degree > N (recorded by the
/// return's truncation order).
NCFunctionElement from_uea(const UEAElement& a, int k, int N);
/// Inverse on finitely supported polynomial-coefficient elements.
UEAElement to_uea(const NCFunctionElement& a);

/// Product in U(g) / (n-degree > N), N = min of the operands' truncations.
/// Polynomial coefficients work over any triangular algebra; smooth
/// coefficients need a nilpotent algebra (finite derivative expansion).
NCFunctionElement nc_multiply(const NCFunctionElement& a, const NCFunctionElement& b);

/// Expansion of e_j * Phi(f) in PBW coordinates (f polynomial in the first k
/// variables, j a 0-based generator index >= k).
NCFunctionElement commutation_rule(LiePtr L, int j, const Polynomial& f);

/// Sup-norm grid estimate: value is a certified lower bound for the sup.
struct SupEstimate {
  double value = 0;
  int level = 0;       // refinement rounds taken
  bool exact_nodes = false;
};

/// |a|_{beta,M,l} = sum over |gamma| = l of sup_M |d^gamma f_beta|.
SupEstimate nc_seminorm(const NCFunctionElement& a, const MultiIndex& beta,
                        const CompactBox& M, int l);
/// Same estimator for a bare coefficient function.
SupEstimate sup_on_box(const CoefficientFn& f, const CompactBox& M);

}  // namespace nclie

#endif
