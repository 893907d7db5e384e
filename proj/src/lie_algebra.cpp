#include "nclie/lie_algebra.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "nclie/errors.hpp"

namespace nclie {

namespace {

std::string vec_str(const Vec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

}  // namespace

LiePtr LieAlgebra::validate_structure(
    int dim, ScalarMode mode, std::vector<std::string> names,
    const std::vector<std::tuple<int, int, Vec>>& table) {
  if (dim < 0) throw DimensionMismatch("negative dimension");
  auto L = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  L->dim_ = dim;
  L->mode_ = mode;
  if (names.empty())
    for (int i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
  if ((int)names.size() != dim) throw DimensionMismatch("basis name count");
  L->names_ = std::move(names);
  L->c_.assign(dim * dim, Vec(dim));
  for (const auto& [i, j, v] : table) {
    if (i < 0 || j < 0 || i >= dim || j >= dim || i >= j)
      throw DimensionMismatch("bracket table requires 0 <= i < j < dim");
    if ((int)v.size() != dim) throw DimensionMismatch("bracket value length");
    for (int k = 0; k < dim; ++k) {
      if (mode == ScalarMode::real && !v[k].is_real())
        throw ModeMismatch("complex structure constant in real mode");
      L->c_[i * dim + j][k] = v[k];
      L->c_[j * dim + i][k] = -v[k];
    }
  }
  // exact Jacobi check on all basis triples
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        Vec ei(dim), ej(dim), ek(dim);
        ei[i] = Scalar(1);
        ej[j] = Scalar(1);
        ek[k] = Scalar(1);
        Vec r = L->bracket(ei, L->bracket(ej, ek));
        Vec s = L->bracket(ej, L->bracket(ek, ei));
        Vec t = L->bracket(ek, L->bracket(ei, ej));
        Vec res(dim);
        bool bad = false;
        for (int a = 0; a < dim; ++a) {
          res[a] = r[a] + s[a] + t[a];
          bad = bad || !res[a].is_zero();
        }
        if (bad) {
          std::ostringstream os;
          os << "triple (" << i + 1 << "," << j + 1 << "," << k + 1
             << "), residual " << vec_str(res);
          throw JacobiViolation(os.str());
        }
      }
  return L;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if ((int)x.size() != dim_ || (int)y.size() != dim_)
    throw DimensionMismatch("bracket operand length");
  Vec r(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j].is_zero() || i == j) continue;
      const Vec& cij = c_[i * dim_ + j];
      Scalar f = x[i] * y[j];
      for (int k = 0; k < dim_; ++k)
        if (!cij[k].is_zero()) r[k] += f * cij[k];
    }
  }
  return r;
}

QMatrix LieAlgebra::ad(const Vec& x) const {
  QMatrix m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    Vec ej(dim_);
    ej[j] = Scalar(1);
    Vec col = bracket(x, ej);
    for (int i = 0; i < dim_; ++i) m.at(i, j) = col[i];
  }
  return m;
}

QMatrix LieAlgebra::ad_basis(int i) const {
  Vec e(dim_);
  e[i] = Scalar(1);
  return ad(e);
}

std::vector<Subspace> LieAlgebra::derived_series() const {
  std::vector<Subspace> series{Subspace::full(dim_)};
  for (;;) {
    const Subspace& cur = series.back();
    std::vector<Vec> gens;
    for (int a = 0; a < cur.dim(); ++a)
      for (int b = a + 1; b < cur.dim(); ++b)
        gens.push_back(bracket(cur.basis()[a], cur.basis()[b]));
    Subspace next = Subspace::span(dim_, gens);
    if (next == cur) break;
    series.push_back(next);
    if (next.dim() == 0) break;
  }
  return series;
}

std::vector<Subspace> LieAlgebra::lower_central_series(const Subspace& h) const {
  std::vector<Subspace> series{h};
  for (;;) {
    const Subspace& cur = series.back();
    std::vector<Vec> gens;
    for (const auto& x : h.basis())
      for (const auto& y : cur.basis()) gens.push_back(bracket(x, y));
    Subspace next = Subspace::span(dim_, gens);
    if (next == cur) break;
    series.push_back(next);
    if (next.dim() == 0) break;
  }
  return series;
}

std::vector<Subspace> LieAlgebra::lower_central_series() const {
  return lower_central_series(Subspace::full(dim_));
}

bool LieAlgebra::is_solvable() const {
  auto s = derived_series();
  return s.back().dim() == 0;
}

bool LieAlgebra::is_nilpotent() const {
  auto s = lower_central_series();
  return s.back().dim() == 0;
}

bool LieAlgebra::is_ideal(const Subspace& s) const {
  for (int i = 0; i < dim_; ++i) {
    Vec ei(dim_);
    ei[i] = Scalar(1);
    for (const auto& v : s.basis())
      if (!s.contains(bracket(ei, v))) return false;
  }
  return true;
}

bool LieAlgebra::is_subalgebra(const Subspace& s) const {
  for (const auto& x : s.basis())
    for (const auto& y : s.basis())
      if (!s.contains(bracket(x, y))) return false;
  return true;
}

Subspace LieAlgebra::derived() const {
  std::vector<Vec> gens;
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      Vec ei(dim_), ej(dim_);
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      gens.push_back(bracket(ei, ej));
    }
  return Subspace::span(dim_, gens);
}

Subspace LieAlgebra::nilradical() const {
  if (!is_solvable()) throw NotSolvable("nilradical requires a solvable algebra");
  Subspace n = derived();
  // must be a nilpotent ideal
  if (!is_ideal(n)) throw NotAnIdeal("derived subalgebra failed the ideal check");
  auto lcs = lower_central_series(n);
  if (lcs.back().dim() != 0)
    throw NotNilpotent("derived subalgebra is not nilpotent");
  return n;
}

Subspace LieAlgebra::center() const {
  // x central iff ad(e_i)^T stacked kills x
  QMatrix stacked(dim_ * dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    QMatrix a = ad_basis(i);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) stacked.at(i * dim_ + r, c) = a.at(r, c);
  }
  Subspace ker = kernel(stacked);
  // kernel of column action: stacked * x = brackets [e_i, x] for all i
  return ker;
}

LieAlgebra::Quotient LieAlgebra::quotient(const Subspace& ideal) const {
  if (!is_ideal(ideal)) throw NotAnIdeal("quotient by a non-ideal subspace");
  int r = ideal.dim();
  int qd = dim_ - r;
  // complement basis: original basis vectors not matching ideal pivots,
  // chosen greedily so that (ideal basis, complement) spans everything
  std::vector<int> comp_idx;
  Subspace acc = ideal;
  for (int i = 0; i < dim_ && (int)comp_idx.size() < qd; ++i) {
    Vec ei(dim_);
    ei[i] = Scalar(1);
    if (!acc.contains(ei)) {
      acc.insert(ei);
      comp_idx.push_back(i);
    }
  }
  // projection: write x = ideal part + sum coords * e_{comp}; coordinates via
  // solving [ideal basis | comp basis] * c = x
  QMatrix basis_mat(dim_, dim_);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < dim_; ++i) basis_mat.at(i, j) = ideal.basis()[j][i];
  for (int j = 0; j < qd; ++j) basis_mat.at(comp_idx[j], r + j) = Scalar(1);
  QMatrix inv = basis_mat.inverse();
  QMatrix proj(qd, dim_);
  for (int i = 0; i < qd; ++i)
    for (int j = 0; j < dim_; ++j) proj.at(i, j) = inv.at(r + i, j);
  QMatrix section(dim_, qd);
  for (int j = 0; j < qd; ++j) section.at(comp_idx[j], j) = Scalar(1);

  std::vector<std::tuple<int, int, Vec>> table;
  for (int a = 0; a < qd; ++a)
    for (int b = a + 1; b < qd; ++b) {
      Vec ea(dim_), eb(dim_);
      ea[comp_idx[a]] = Scalar(1);
      eb[comp_idx[b]] = Scalar(1);
      Vec br = bracket(ea, eb);
      Vec qbr = proj.apply(br);
      table.emplace_back(a, b, qbr);
    }
  std::vector<std::string> names;
  for (int j = 0; j < qd; ++j) names.push_back(names_[comp_idx[j]]);
  auto qa = validate_structure(qd, mode_, names, table);
  // homomorphism check on all basis pairs: proj([x,y]) = [proj x, proj y]
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      Vec ei(dim_), ej(dim_);
      ei[i] = Scalar(1);
      ej[j] = Scalar(1);
      Vec lhs = proj.apply(bracket(ei, ej));
      Vec rhs = qa->bracket(proj.apply(ei), proj.apply(ej));
      if (lhs != rhs) throw NotAnIdeal("projection failed the homomorphism check");
    }
  return Quotient{qa, proj, section};
}

std::pair<Vec, Vec> common_eigenvector(const LieAlgebra& L, const Subspace& V0) {
  Subspace V = V0;
  int m = L.dim();
  if (V.dim() == 0) throw DimensionMismatch("common_eigenvector on the zero space");
  for (int i = 0; i < m; ++i) {
    // matrix of ad e_i restricted to V in V's basis
    int d = V.dim();
    QMatrix T(d, d);
    for (int b = 0; b < d; ++b) {
      Vec ei(m);
      ei[i] = Scalar(1);
      Vec img = L.bracket(ei, V.basis()[b]);
      Vec coords = V.coordinates(img);  // V invariant; throws otherwise
      for (int a = 0; a < d; ++a) T.at(a, b) = coords[a];
    }
    UPoly chi;
    chi.c = T.char_poly();
    Scalar lambda;
    bool found = false;
    if (L.mode() == ScalarMode::real) {
      auto roots = rational_roots(chi);
      if (!roots.empty()) {
        Rational best = roots[0];
        for (const auto& r : roots) best = std::min(best, r);
        lambda = Scalar(best);
        found = true;
      } else {
        int realroots = count_real_roots(chi);
        std::string detail = "ad " + L.names()[i] + " restricted char poly " +
                             chi.str("x");
        if (realroots > 0)
          throw IrrationalEigenvalues(detail + " has real but irrational roots");
        throw NotTriangular("witness " + L.names()[i] + ": " + detail +
                            " has no real roots");
      }
    } else {
      auto roots = gaussian_roots(chi);
      if (!roots || roots->empty())
        throw IrrationalEigenvalues("ad " + L.names()[i] +
                                    " char poly does not split over Q(i): " +
                                    chi.str("x"));
      lambda = (*roots)[0];
      for (const auto& r : *roots)
        if (r < lambda) lambda = r;
      found = true;
    }
    (void)found;
    QMatrix shifted = T;
    for (int a = 0; a < d; ++a) shifted.at(a, a) -= lambda;
    Subspace eig = kernel(shifted);  // in V-coordinates
    std::vector<Vec> lifted;
    for (const auto& cv : eig.basis()) {
      Vec v(m);
      for (int b = 0; b < d; ++b)
        for (int a = 0; a < m; ++a) v[a] += cv[b] * V.basis()[b][a];
      lifted.push_back(v);
    }
    V = Subspace::span(m, lifted);
    if (V.dim() == 0)
      throw NotTriangular("eigenspace refinement emptied at " + L.names()[i]);
  }
  Vec x = V.basis()[0];  // echelon-canonical; lowest pivot index first
  Vec mu(m);
  for (int i = 0; i < m; ++i) {
    Vec ei(m);
    ei[i] = Scalar(1);
    Vec img = L.bracket(ei, x);
    // img must be mu_i * x
    int piv = -1;
    for (int a = 0; a < m; ++a)
      if (!x[a].is_zero()) {
        piv = a;
        break;
      }
    Scalar mi = img[piv] / x[piv];
    for (int a = 0; a < m; ++a)
      if (img[a] != mi * x[a])
        throw NotTriangular("refined vector lost the eigen property at " +
                            L.names()[i]);
    mu[i] = mi;
  }
  return {x, mu};
}

FlagCertificate LieAlgebra::triangular_flag() const {
  if (!is_solvable()) throw NotSolvable("triangular_flag requires solvable input");
  FlagCertificate cert;
  cert.ideals.push_back(Subspace(dim_));

  // Recursive extraction of 1-dimensional ideals, materialized iteratively on
  // a chain of quotients.  proj maps the original algebra onto the current one.
  LiePtr cur = shared_from_this();
  QMatrix proj = QMatrix::identity(dim_);
  std::vector<Vec> step_vec_cur;  // step vectors in original coordinates
  while (cur->dim() > 0) {
    Subspace n = cur->derived();
    Vec x;
    Vec mu_cur;
    if (n.dim() == 0) {
      // abelian: first basis direction
      x = Vec(cur->dim());
      x[0] = Scalar(1);
      mu_cur = Vec(cur->dim());
    } else {
      auto lcs = cur->lower_central_series(n);
      // last nonzero term
      Subspace last = lcs.back().dim() == 0 ? lcs[lcs.size() - 2] : lcs.back();
      auto [xx, mm] = common_eigenvector(*cur, last);
      x = xx;
      mu_cur = mm;
    }
    // pull the step vector back: pick any preimage of x under proj
    QMatrix projT = proj;  // solve proj * v = x
    auto v = solve(projT, x);
    if (!v) throw std::logic_error("flag: projection preimage must exist");
    cert.step_vectors.push_back(*v);
    // functional on original basis: mu(e_i) = mu_cur(proj(e_i)) linearly
    Vec mu(dim_);
    for (int i = 0; i < dim_; ++i) {
      Vec ei(dim_);
      ei[i] = Scalar(1);
      Vec pi = proj.apply(ei);
      Scalar s(0);
      for (int a = 0; a < cur->dim(); ++a) s += pi[a] * mu_cur[a];
      mu[i] = s;
    }
    cert.step_functionals.push_back(mu);
    // next ideal: previous + new vector
    Subspace next = cert.ideals.back();
    next.insert(cert.step_vectors.back());
    cert.ideals.push_back(next);
    // quotient current by span(x)
    auto q = cur->quotient(Subspace::span(cur->dim(), {x}));
    proj = q.projection * proj;
    cur = q.algebra;
  }
  // sanity: each I_j is an ideal with dim j
  for (size_t j = 0; j < cert.ideals.size(); ++j) {
    if (cert.ideals[j].dim() != (int)j)
      throw std::logic_error("flag dimension mismatch");
    if (j > 0 && !is_ideal(cert.ideals[j]))
      throw std::logic_error("flag member failed the ideal check");
  }
  return cert;
}

std::optional<int> LieAlgebra::split_index() const {
  if (!is_solvable()) return std::nullopt;
  Subspace n = derived();
  int k = dim_ - n.dim();
  std::vector<Vec> tail;
  for (int i = k; i < dim_; ++i) {
    Vec e(dim_);
    e[i] = Scalar(1);
    tail.push_back(e);
  }
  if (Subspace::span(dim_, tail) == n) return k;
  return std::nullopt;
}

LiePtr LieAlgebra::change_basis(const QMatrix& cols) const {
  if (cols.rows() != dim_ || cols.cols() != dim_)
    throw DimensionMismatch("basis change must be square of the algebra dim");
  QMatrix inv = cols.inverse();
  std::vector<std::tuple<int, int, Vec>> table;
  for (int a = 0; a < dim_; ++a)
    for (int b = a + 1; b < dim_; ++b) {
      Vec xa(dim_), xb(dim_);
      for (int i = 0; i < dim_; ++i) {
        xa[i] = cols.at(i, a);
        xb[i] = cols.at(i, b);
      }
      Vec br = bracket(xa, xb);
      table.emplace_back(a, b, inv.apply(br));
    }
  auto L = validate_structure(dim_, mode_, {}, table);
  return L;
}

int LieAlgebra::lcs_depth(const Vec& v) const {
  // max { j >= 1 : v in g_j }, for the chain g_1 = g, g_{j+1} = [g, g_j].
  bool zero = true;
  for (const auto& s : v) zero = zero && s.is_zero();
  if (zero) return dim_ + 1;
  auto lcs = lower_central_series();
  int depth = 1;
  for (size_t j = 0; j < lcs.size(); ++j) {
    if (lcs[j].contains(v))
      depth = (int)j + 1;
    else
      break;
  }
  return depth;
}

LiePtr catalog_algebra(const std::string& id, ScalarMode mode) {
  // cached so repeated lookups share one instance (element ops compare
  // algebra identity)
  static std::map<std::string, LiePtr> cache;
  std::string key = id + (mode == ScalarMode::real ? "|r" : "|c");
  auto hit = cache.find(key);
  if (hit != cache.end()) return hit->second;
  auto scal = [](long v) { return Scalar(v); };
  if (id.rfind("abelian", 0) == 0) {
    int m = 2;
    auto paren = id.find('(');
    if (paren != std::string::npos)
      m = std::stoi(id.substr(paren + 1, id.size() - paren - 2));
    auto L = LieAlgebra::validate_structure(m, mode, {}, {});
    const_cast<LieAlgebra&>(*L).name = "abelian(" + std::to_string(m) + ")";
    cache[key] = L;
    return L;
  }
  if (id == "af1") {
    Vec c(2);
    c[1] = scal(1);  // [e1,e2] = e2
    auto L = LieAlgebra::validate_structure(2, mode, {}, {{0, 1, c}});
    const_cast<LieAlgebra&>(*L).name = "af1";
    cache[key] = L;
    return L;
  }
  if (id == "heisenberg") {
    Vec c(3);
    c[2] = scal(1);  // [e1,e2] = e3
    auto L = LieAlgebra::validate_structure(3, mode, {}, {{0, 1, c}});
    const_cast<LieAlgebra&>(*L).name = "heisenberg";
    cache[key] = L;
    return L;
  }
  if (id == "e2") {
    Vec c12(3), c13(3);
    c12[2] = scal(1);   // [e1,e2] = e3
    c13[1] = scal(-1);  // [e1,e3] = -e2
    auto L = LieAlgebra::validate_structure(3, mode, {}, {{0, 1, c12}, {0, 2, c13}});
    const_cast<LieAlgebra&>(*L).name = "e2";
    cache[key] = L;
    return L;
  }
  if (id.rfind("tri", 0) == 0) {
    auto paren = id.find('(');
    if (paren == std::string::npos) throw UnknownName("expected tri(p)");
    int p = std::stoi(id.substr(paren + 1, id.size() - paren - 2));
    if (p < 1) throw UnknownName("tri(p) needs p >= 1");
    // basis: E_11..E_pp then strictly upper E_ij (i<j) in lex order
    std::vector<std::pair<int, int>> basis;
    for (int i = 0; i < p; ++i) basis.push_back({i, i});
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) basis.push_back({i, j});
    int m = (int)basis.size();
    auto idx = [&](int i, int j) {
      for (int t = 0; t < m; ++t)
        if (basis[t] == std::make_pair(i, j)) return t;
      return -1;
    };
    std::vector<std::tuple<int, int, Vec>> table;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        auto [i1, j1] = basis[a];
        auto [i2, j2] = basis[b];
        Vec v(m);
        // [E_{i1 j1}, E_{i2 j2}] = d_{j1 i2} E_{i1 j2} - d_{j2 i1} E_{i2 j1}
        if (j1 == i2) {
          int t = idx(i1, j2);
          if (t >= 0) v[t] += scal(1);
        }
        if (j2 == i1) {
          int t = idx(i2, j1);
          if (t >= 0) v[t] -= scal(1);
        }
        bool nz = false;
        for (const auto& s : v) nz = nz || !s.is_zero();
        if (nz) table.emplace_back(a, b, v);
      }
    std::vector<std::string> names;
    for (auto [i, j] : basis)
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    auto L = LieAlgebra::validate_structure(m, mode, names, table);
    const_cast<LieAlgebra&>(*L).name = "tri(" + std::to_string(p) + ")";
    cache[key] = L;
    return L;
  }
  throw UnknownName("catalog algebra '" + id + "'");
}

}  // namespace nclie
