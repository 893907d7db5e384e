#ifndef NCLIE_PBW_HPP
#define NCLIE_PBW_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nclie/lie_algebra.hpp"
#include "nclie/polynomial.hpp"

namespace nclie {

/// Exponent vector for the ordered monomial e^a = e_1^{a_1} ... e_m^{a_m}.
using MultiIndex = std::vector<uint32_t>;

inline int total_degree(const MultiIndex& a) {
  int s = 0;
  for (auto x : a) s += (int)x;
  return s;
}
/// Degree in the generators after the split (e_{k+1}..e_m).
inline int n_degree(const MultiIndex& a, int k) {
  int s = 0;
  for (size_t i = k; i < a.size(); ++i) s += (int)a[i];
  return s;
}
/// Degree in the first k generators.
inline int lambda_degree(const MultiIndex& a, int k) {
  int s = 0;
  for (int i = 0; i < k && i < (int)a.size(); ++i) s += (int)a[i];
  return s;
}

/// Colexicographic comparison: compare the last differing coordinate.
/// Returns -1, 0, 1.
int colex_compare(const MultiIndex& a, const MultiIndex& b);

/// Element of the universal enveloping algebra in PBW coordinates:
/// a finite map exponent -> scalar.
class UEAElement {
 public:
  UEAElement() = default;
  explicit UEAElement(LiePtr algebra) : L_(std::move(algebra)) {}
  static UEAElement unit(LiePtr algebra);
  static UEAElement generator(LiePtr algebra, int index);
  static UEAElement monomial(LiePtr algebra, const MultiIndex& a, const Scalar& c);

  const LiePtr& algebra() const { return L_; }
  const std::map<MultiIndex, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const MultiIndex& a, const Scalar& c);
  int max_n_degree(int k) const;

  UEAElement operator-() const;
  UEAElement& operator+=(const UEAElement& o);
  UEAElement& operator-=(const UEAElement& o);
  friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
  friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
  friend UEAElement operator*(const Scalar& c, UEAElement a);
  friend bool operator==(const UEAElement& a, const UEAElement& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const UEAElement& a, const UEAElement& b) {
    return !(a == b);
  }

  std::string str() const;

 private:
  LiePtr L_;
  std::map<MultiIndex, Scalar> terms_;
};

/// Straightening engine with memoized rewriting.  One instance per algebra;
/// deterministic; safe to share across const uses.
class StraighteningEngine {
 public:
  explicit StraighteningEngine(LiePtr algebra) : L_(std::move(algebra)) {}
  const LiePtr& algebra() const { return L_; }

  /// PBW form of the product of generators in the given word order
  /// (word entries are 0-based generator indices).
  UEAElement straighten(const std::vector<int>& word);

  /// Left-multiplication by a single generator (0-based).
  UEAElement left_multiply(int gen, const UEAElement& a);

 private:
  LiePtr L_;
  std::map<std::vector<int>, UEAElement> memo_;
};

/// PBW form of the product of generators in the given word order.
UEAElement normal_order(LiePtr L, const std::vector<int>& word);

/// Bilinear associative product in PBW coordinates.
UEAElement uea_multiply(const UEAElement& a, const UEAElement& b);
UEAElement uea_multiply(StraighteningEngine& eng, const UEAElement& a,
                        const UEAElement& b);

/// Ordered-monomial map: lambda^g -> e^g, extended linearly.  `f` may use
/// fewer variables than the algebra has generators.
UEAElement phi(LiePtr L, const Polynomial& f);

/// Drops monomials of n-degree > N (split at k).  Idempotent.
UEAElement truncate_n_degree(const UEAElement& a, int k, int N);

/// Keeps exactly the monomials whose n-exponent part is colex-strictly below
/// beta.  Idempotent.
UEAElement project_below(const UEAElement& a, int k, const MultiIndex& beta);

/// The n-exponent part (last m-k slots) of a full exponent vector.
MultiIndex n_part(const MultiIndex& a, int k);
/// Full exponent with zero lambda-part and the given n-part.
MultiIndex embed_n_part(const MultiIndex& beta, int k, int m);

/// The coefficient polynomial f_beta in a = sum Phi(f_beta) e^beta,
/// as a polynomial in the first k variables.
Polynomial lambda_coefficient(const UEAElement& a, int k, const MultiIndex& beta);
/// All n-exponents with nonzero coefficient.
std::vector<MultiIndex> n_support(const UEAElement& a, int k);

/// Parse/print the element text format, e.g. "3/2*e1^2*e3 + -1*e2" or
/// "e2*e1" (products are straightened on parse).
UEAElement parse_element(LiePtr L, const std::string& text);
std::string element_str(const UEAElement& a);

}  // namespace nclie

#endif
