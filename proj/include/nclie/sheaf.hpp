#ifndef NCLIE_SHEAF_HPP
#define NCLIE_SHEAF_HPP

#include <optional>
#include <vector>

#include "nclie/ncfunc.hpp"

namespace nclie {

/// Open axis-aligned box with rational endpoints (possibly in C^k viewed as
/// R^{2k} in the holomorphic picture).
struct OpenBox {
  std::vector<Rational> lo, hi;
  int dim() const { return (int)lo.size(); }
  bool contains(const std::vector<Rational>& x) const;  // strict
  bool empty() const;
  std::optional<OpenBox> intersect(const OpenBox& o) const;
};

/// Finite union of open boxes, normalized: empty boxes dropped, boxes that
/// differ along one axis only and overlap there are merged, contained boxes
/// absorbed.
class OpenRegion {
 public:
  OpenRegion() = default;
  explicit OpenRegion(std::vector<OpenBox> boxes);
  static OpenRegion box(std::vector<Rational> lo, std::vector<Rational> hi);

  int dim() const;
  bool empty() const { return boxes_.empty(); }
  const std::vector<OpenBox>& boxes() const { return boxes_; }
  bool contains(const std::vector<Rational>& x) const;
  /// Exact subset test on box unions.
  bool subset_of(const OpenRegion& other) const;
  OpenRegion unite(const OpenRegion& other) const;
  OpenRegion intersect(const OpenRegion& other) const;
  /// Some rational point of *this not covered by other (exact witness),
  /// or nullopt when subset_of(other).
  std::optional<std::vector<Rational>> witness_not_covered(
      const OpenRegion& other) const;
  /// A rational point inside (first box midpoint).
  std::vector<Rational> sample_point() const;

  friend bool operator==(const OpenRegion& a, const OpenRegion& b) {
    return a.boxes_.size() == b.boxes_.size() &&
           [&] {
             for (size_t i = 0; i < a.boxes_.size(); ++i)
               if (a.boxes_[i].lo != b.boxes_[i].lo ||
                   a.boxes_[i].hi != b.boxes_[i].hi)
                 return false;
             return true;
           }();
  }

 private:
  std::vector<OpenBox> boxes_;
  void normalize();
};

/// Section of the local algebra: a truncated element whose coefficients are
/// regarded on an open region of the character space.
struct LocalSection {
  NCFunctionElement element;
  OpenRegion domain;
};

/// Product of sections on a common domain; the algebra must be nilpotent.
LocalSection local_multiply(const LocalSection& a, const LocalSection& b);

/// Restriction homomorphism tau_{VW}; requires W ⊆ V.
LocalSection restrict_section(const LocalSection& a, const OpenRegion& W);

enum class GlueVerdictLevel { exact, numeric };

struct GlueResult {
  LocalSection section;
  GlueVerdictLevel level = GlueVerdictLevel::exact;
};

/// Gluing over the union of the given domains.  Compatibility on overlaps is
/// exact (syntactic) for polynomial coefficients and probed on rational grids
/// for smooth ones; incompatibility throws Mismatch with a witness point and
/// the offending coefficient index.  When `target` is given, the domains must
/// cover it (NotACover otherwise) and the result is restricted to it.
GlueResult glue(const std::vector<LocalSection>& sections,
                const std::optional<OpenRegion>& target = std::nullopt);

/// Character model: evaluation of the base coefficient at a point of the
/// region (all beta != 0 terms are killed).
double character_eval(const LocalSection& a, const std::vector<Rational>& x);

}  // namespace nclie

#endif
