#include "nclie/sheaf.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "nclie/errors.hpp"

namespace nclie {

bool OpenBox::contains(const std::vector<Rational>& x) const {
  if ((int)x.size() != dim()) throw DimensionMismatch("box membership point");
  for (int i = 0; i < dim(); ++i)
    if (!(lo[i] < x[i] && x[i] < hi[i])) return false;
  return true;
}

bool OpenBox::empty() const {
  for (int i = 0; i < dim(); ++i)
    if (!(lo[i] < hi[i])) return true;
  return dim() == 0 ? false : false;
}

std::optional<OpenBox> OpenBox::intersect(const OpenBox& o) const {
  OpenBox r;
  r.lo.resize(dim());
  r.hi.resize(dim());
  for (int i = 0; i < dim(); ++i) {
    r.lo[i] = std::max(lo[i], o.lo[i]);
    r.hi[i] = std::min(hi[i], o.hi[i]);
    if (!(r.lo[i] < r.hi[i])) return std::nullopt;
  }
  return r;
}

OpenRegion::OpenRegion(std::vector<OpenBox> boxes) : boxes_(std::move(boxes)) {
  normalize();
}

OpenRegion OpenRegion::box(std::vector<Rational> lo, std::vector<Rational> hi) {
  OpenBox b{std::move(lo), std::move(hi)};
  return OpenRegion({b});
}

int OpenRegion::dim() const { return boxes_.empty() ? 0 : boxes_[0].dim(); }

void OpenRegion::normalize() {
  boxes_.erase(std::remove_if(boxes_.begin(), boxes_.end(),
                              [](const OpenBox& b) { return b.empty(); }),
               boxes_.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < boxes_.size() && !changed; ++i)
      for (size_t j = 0; j < boxes_.size() && !changed; ++j) {
        if (i == j) continue;
        // absorb contained boxes
        bool contained = true;
        for (int ax = 0; ax < boxes_[i].dim(); ++ax)
          if (boxes_[j].lo[ax] < boxes_[i].lo[ax] ||
              boxes_[j].hi[ax] > boxes_[i].hi[ax])
            contained = false;
        if (contained) {
          boxes_.erase(boxes_.begin() + j);
          changed = true;
          break;
        }
        // merge along a single axis when the union is exactly a box
        int diff_axis = -1;
        bool mergeable = true;
        for (int ax = 0; ax < boxes_[i].dim(); ++ax) {
          if (boxes_[i].lo[ax] == boxes_[j].lo[ax] &&
              boxes_[i].hi[ax] == boxes_[j].hi[ax])
            continue;
          if (diff_axis >= 0) {
            mergeable = false;
            break;
          }
          diff_axis = ax;
        }
        if (mergeable && diff_axis >= 0) {
          // overlapping (not merely touching: open sets) intervals merge
          const Rational& alo = boxes_[i].lo[diff_axis];
          const Rational& ahi = boxes_[i].hi[diff_axis];
          const Rational& blo = boxes_[j].lo[diff_axis];
          const Rational& bhi = boxes_[j].hi[diff_axis];
          if (blo < ahi && alo < bhi) {
            boxes_[i].lo[diff_axis] = std::min(alo, blo);
            boxes_[i].hi[diff_axis] = std::max(ahi, bhi);
            boxes_.erase(boxes_.begin() + j);
            changed = true;
          }
        }
      }
  }
  std::sort(boxes_.begin(), boxes_.end(), [](const OpenBox& a, const OpenBox& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.hi < b.hi;
  });
}

bool OpenRegion::contains(const std::vector<Rational>& x) const {
  for (const auto& b : boxes_)
    if (b.contains(x)) return true;
  return false;
}

std::optional<std::vector<Rational>> OpenRegion::witness_not_covered(
    const OpenRegion& other) const {
  if (boxes_.empty()) return std::nullopt;
  int k = dim();
  // candidate coordinates per axis: all breakpoints and interval midpoints of
  // the joint arrangement; an uncovered cell, if any, contains such a point
  for (const auto& mine : boxes_) {
    std::vector<std::vector<Rational>> cand(k);
    for (int ax = 0; ax < k; ++ax) {
      std::set<Rational> cuts;
      cuts.insert(mine.lo[ax]);
      cuts.insert(mine.hi[ax]);
      for (const auto& b : other.boxes()) {
        if (mine.lo[ax] < b.lo[ax] && b.lo[ax] < mine.hi[ax]) cuts.insert(b.lo[ax]);
        if (mine.lo[ax] < b.hi[ax] && b.hi[ax] < mine.hi[ax]) cuts.insert(b.hi[ax]);
      }
      std::vector<Rational> cs(cuts.begin(), cuts.end());
      for (size_t t = 0; t + 1 < cs.size(); ++t)
        cand[ax].push_back((cs[t] + cs[t + 1]) / 2);
      for (size_t t = 1; t + 1 < cs.size(); ++t) cand[ax].push_back(cs[t]);
      std::sort(cand[ax].begin(), cand[ax].end());
    }
    std::vector<size_t> idx(k, 0);
    for (;;) {
      std::vector<Rational> p(k);
      for (int ax = 0; ax < k; ++ax) p[ax] = cand[ax][idx[ax]];
      if (mine.contains(p) && !other.contains(p)) return p;
      int ax = 0;
      while (ax < k) {
        if (++idx[ax] < cand[ax].size()) break;
        idx[ax] = 0;
        ++ax;
      }
      if (ax == k) break;
    }
  }
  return std::nullopt;
}

bool OpenRegion::subset_of(const OpenRegion& other) const {
  return !witness_not_covered(other).has_value();
}

OpenRegion OpenRegion::unite(const OpenRegion& other) const {
  std::vector<OpenBox> all = boxes_;
  all.insert(all.end(), other.boxes_.begin(), other.boxes_.end());
  return OpenRegion(all);
}

OpenRegion OpenRegion::intersect(const OpenRegion& other) const {
  std::vector<OpenBox> out;
  for (const auto& a : boxes_)
    for (const auto& b : other.boxes_)
      if (auto c = a.intersect(b)) out.push_back(*c);
  return OpenRegion(out);
}

std::vector<Rational> OpenRegion::sample_point() const {
  if (boxes_.empty()) throw DimensionMismatch("sample point of the empty region");
  std::vector<Rational> p(dim());
  for (int ax = 0; ax < dim(); ++ax)
    p[ax] = (boxes_[0].lo[ax] + boxes_[0].hi[ax]) / 2;
  return p;
}

LocalSection local_multiply(const LocalSection& a, const LocalSection& b) {
  if (!a.element.algebra()->is_nilpotent())
    throw NotNilpotent("local algebras are defined for nilpotent algebras");
  if (!(a.domain == b.domain)) throw DomainMismatch("sections on different domains");
  LocalSection r;
  r.element = nc_multiply(a.element, b.element);
  r.domain = a.domain;
  return r;
}

LocalSection restrict_section(const LocalSection& a, const OpenRegion& W) {
  if (auto w = W.witness_not_covered(a.domain)) {
    std::ostringstream os;
    os << "target region leaves the section domain at (";
    for (size_t i = 0; i < w->size(); ++i)
      os << (i ? ", " : "") << rational_str((*w)[i]);
    os << ")";
    throw NotSubregion(os.str());
  }
  LocalSection r = a;
  r.domain = W;
  return r;
}

namespace {

std::string point_str(const std::vector<Rational>& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i)
    s += (i ? ", " : "") + rational_str(p[i]);
  return s + ")";
}

// grid probe points of an open box (strictly interior)
std::vector<std::vector<Rational>> probe_grid(const OpenBox& b, int per_axis) {
  int k = b.dim();
  std::vector<std::vector<Rational>> axes(k);
  for (int ax = 0; ax < k; ++ax)
    for (int t = 1; t <= per_axis; ++t)
      axes[ax].push_back(b.lo[ax] +
                         (b.hi[ax] - b.lo[ax]) * Rational(t) / (per_axis + 1));
  std::vector<std::vector<Rational>> pts;
  std::vector<size_t> idx(k, 0);
  for (;;) {
    std::vector<Rational> p(k);
    for (int ax = 0; ax < k; ++ax) p[ax] = axes[ax][idx[ax]];
    pts.push_back(p);
    int ax = 0;
    while (ax < k) {
      if (++idx[ax] < axes[ax].size()) break;
      idx[ax] = 0;
      ++ax;
    }
    if (ax == k) break;
  }
  return pts;
}

}  // namespace

GlueResult glue(const std::vector<LocalSection>& sections,
                const std::optional<OpenRegion>& target) {
  if (sections.empty()) throw NotACover("no sections to glue");
  if (target) {
    OpenRegion u = sections[0].domain;
    for (size_t i = 1; i < sections.size(); ++i) u = u.unite(sections[i].domain);
    if (auto w = target->witness_not_covered(u))
      throw NotACover("cover misses the target region at " + point_str(*w));
  }
  const LiePtr& L = sections[0].element.algebra();
  int k = sections[0].element.split();
  int N = sections[0].element.truncation();
  GlueResult out;
  out.level = GlueVerdictLevel::exact;
  for (const auto& s : sections) {
    if (s.element.algebra() != L || s.element.split() != k)
      throw AlgebraMismatch("sections over different algebras");
    N = std::min(N, s.element.truncation());
    if (!s.element.all_polynomial()) out.level = GlueVerdictLevel::numeric;
  }
  // pairwise compatibility on overlaps
  for (size_t i = 0; i < sections.size(); ++i)
    for (size_t j = i + 1; j < sections.size(); ++j) {
      OpenRegion overlap = sections[i].domain.intersect(sections[j].domain);
      if (overlap.empty()) continue;
      // collect the joint beta support
      std::set<MultiIndex> betas;
      for (const auto& [b, f] : sections[i].element.terms()) betas.insert(b);
      for (const auto& [b, f] : sections[j].element.terms()) betas.insert(b);
      for (const auto& beta : betas) {
        if (total_degree(beta) > N) continue;
        CoefficientFn fi = sections[i].element.coefficient(beta);
        CoefficientFn fj = sections[j].element.coefficient(beta);
        if (fi.is_polynomial() && fj.is_polynomial()) {
          if (!(fi.poly() == fj.poly())) {
            // exact witness point: a grid with more nodes per axis than the
            // total degree of the difference must expose it
            int nodes = 2 + fi.poly().total_degree() + fj.poly().total_degree();
            for (const auto& box : overlap.boxes())
              for (const auto& p : probe_grid(box, nodes)) {
                if (fi.eval_exact(p) != fj.eval_exact(p)) {
                  std::ostringstream os;
                  os << "sections disagree at " << point_str(p)
                     << " in coefficient slot beta = (";
                  for (size_t t = 0; t < beta.size(); ++t)
                    os << (t ? "," : "") << beta[t];
                  os << ")";
                  throw Mismatch(os.str());
                }
              }
            throw std::logic_error("differing polynomials without a witness");
          }
        } else {
          for (const auto& box : overlap.boxes())
            for (const auto& p : probe_grid(box, 4)) {
              std::vector<double> pd(p.size());
              for (size_t t = 0; t < p.size(); ++t) pd[t] = p[t].get_d();
              double vi = fi.eval(pd), vj = fj.eval(pd);
              if (std::abs(vi - vj) > 1e-9 * std::max(1.0, std::abs(vi)))
                throw Mismatch("sections disagree numerically at " + point_str(p));
            }
        }
      }
    }
  // assemble the glued section on the union
  OpenRegion total = sections[0].domain;
  for (size_t i = 1; i < sections.size(); ++i) total = total.unite(sections[i].domain);
  out.section.domain = total;
  if (out.level == GlueVerdictLevel::exact) {
    // polynomial coefficients agreeing on an open overlap agree globally
    NCFunctionElement e(L, k, N);
    std::set<MultiIndex> betas;
    for (const auto& s : sections)
      for (const auto& [b, f] : s.element.terms()) betas.insert(b);
    for (const auto& beta : betas) {
      // any section that carries the coefficient provides it
      for (const auto& s : sections) {
        CoefficientFn f = s.element.coefficient(beta);
        if (!f.is_zero()) {
          e.set_term(beta, f);
          break;
        }
      }
    }
    out.section.element = e;
  } else {
    // dispatch evaluator: the first section whose domain contains the point
    NCFunctionElement e(L, k, N);
    std::set<MultiIndex> betas;
    for (const auto& s : sections)
      for (const auto& [b, f] : s.element.terms()) betas.insert(b);
    for (const auto& beta : betas) {
      std::vector<std::pair<OpenRegion, CoefficientFn>> pieces;
      for (const auto& s : sections)
        pieces.push_back({s.domain, s.element.coefficient(beta)});
      SmoothFn dispatch = SmoothFn::generic(k, [pieces](const std::vector<double>& x) {
        std::vector<Rational> xr(x.size());
        for (size_t t = 0; t < x.size(); ++t) xr[t] = rational_from_double(x[t]);
        for (const auto& [dom, f] : pieces)
          if (dom.contains(xr)) return f.eval(x);
        return pieces.empty() ? 0.0 : pieces[0].second.eval(x);
      });
      e.set_term(beta, CoefficientFn(dispatch));
    }
    out.section.element = e;
  }
  // the glued section restricts back to every input (exact check for
  // polynomial mode: same coefficients; numeric mode checked by construction)
  if (out.level == GlueVerdictLevel::exact) {
    for (const auto& s : sections) {
      for (const auto& [beta, f] : s.element.terms()) {
        CoefficientFn g = out.section.element.coefficient(beta);
        if (!(g.poly() == f.poly()))
          throw Mismatch("glued section does not restrict to an input section");
      }
    }
  }
  if (target) out.section = restrict_section(out.section, *target);
  return out;
}

double character_eval(const LocalSection& a, const std::vector<Rational>& x) {
  if (!a.domain.contains(x))
    throw NotSubregion("character point outside the section domain");
  MultiIndex zero(a.element.algebra()->dim() - a.element.split(), 0);
  std::vector<double> xd(x.size());
  for (size_t i = 0; i < x.size(); ++i) xd[i] = x[i].get_d();
  return a.element.coefficient(zero).eval(xd);
}

}  // namespace nclie
