#include "nclie/seminorm_lab.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <functional>

#include "nclie/errors.hpp"

namespace nclie {

double matrix_norm_double(const QMatrix& m, MatrixNorm norm) {
  if (norm == MatrixNorm::max_row_sum) return m.max_row_sum_double();
  Eigen::MatrixXd a(m.rows(), m.cols());
  bool complex_entries = false;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      complex_entries = complex_entries || !m.at(i, j).is_real();
      a(i, j) = m.at(i, j).is_real() ? m.at(i, j).to_double() : 0.0;
    }
  if (complex_entries) {
    Eigen::MatrixXcd c(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        auto z = m.at(i, j).to_complex();
        c(i, j) = std::complex<double>(z.real(), z.imag());
      }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c);
    return svd.singularValues()(0);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

namespace {

std::vector<Exponent> exponents_of_order(int k, int l) {
  std::vector<Exponent> out;
  Exponent cur(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == k) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    for (int t = 0; t <= rem; ++t) {
      cur[pos] = (uint32_t)t;
      rec(pos + 1, rem - t);
    }
    cur[pos] = 0;
  };
  if (k == 0) {
    if (l == 0) out.push_back(cur);
    return out;
  }
  rec(0, l);
  return out;
}

double sup_matrix_norm_on_grid(const MatrixFunction& F, const CompactBox& K,
                               MatrixNorm norm, int nodes) {
  double best = 0;
  for (const auto& x : K.grid(nodes)) {
    double v = norm == MatrixNorm::max_row_sum
                   ? F.max_row_sum_at(x)
                   : matrix_norm_double(
                         [&] {
                           QMatrix m(F.dim(), F.dim());
                           for (int i = 0; i < F.dim(); ++i)
                             for (int j = 0; j < F.dim(); ++j) {
                               std::vector<double> xd(x.size());
                               for (size_t t = 0; t < x.size(); ++t)
                                 xd[t] = x[t].get_d();
                               m.at(i, j) =
                                   Scalar(rational_from_double(F.at(i, j).eval(xd)));
                             }
                           return m;
                         }(),
                         norm);
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

SupEstimate matrix_seminorm(const MatrixFunction& F, const SeminormSpec& spec) {
  SupEstimate total;
  total.exact_nodes = F.all_polynomial();
  auto gammas = exponents_of_order(F.vars(), spec.n);
  for (const auto& g : gammas) {
    MatrixFunction D = F.derivative(g);
    double prev = -1;
    int per_axis = 17;
    const int cap = 4097;
    int level = 0;
    double best = 0;
    for (;;) {
      best = sup_matrix_norm_on_grid(D, spec.K, spec.norm, per_axis);
      if (prev >= 0 && std::abs(best - prev) <= 1e-3 * std::max(best, 1e-300)) break;
      if (per_axis >= cap) break;
      prev = best;
      per_axis = 2 * per_axis - 1;
      ++level;
    }
    total.value += best;
    total.level = std::max(total.level, level);
  }
  return total;
}

NestedTriangularElement::NestedTriangularElement(std::vector<CompactBox> boxes, int k)
    : boxes_(std::move(boxes)), k_(k) {
  int p = (int)boxes_.size();
  if (p == 0) throw DimensionMismatch("empty box chain");
  for (int j = 0; j + 1 < p; ++j) {
    // K_{j+1} ⊆ K_j
    for (int ax = 0; ax < boxes_[j].dim(); ++ax)
      if (boxes_[j + 1].lo[ax] < boxes_[j].lo[ax] ||
          boxes_[j + 1].hi[ax] > boxes_[j].hi[ax])
        throw ChainMismatch("box chain must be nonincreasing");
  }
  entries_.assign(p * p, CoefficientFn(Polynomial(k_)));
}

NestedTriangularElement NestedTriangularElement::identity(
    std::vector<CompactBox> boxes, int k) {
  NestedTriangularElement e(std::move(boxes), k);
  for (int i = 0; i < e.size(); ++i)
    e.at(i, i) = CoefficientFn(Polynomial::constant(k, Scalar(1)));
  return e;
}

CoefficientFn& NestedTriangularElement::at(int i, int j) {
  if (i > j) throw DimensionMismatch("lower entry of a nested triangular element");
  return entries_[i * size() + j];
}

const CoefficientFn& NestedTriangularElement::at(int i, int j) const {
  if (i > j) throw DimensionMismatch("lower entry of a nested triangular element");
  return entries_[i * size() + j];
}

NestedTriangularElement nested_multiply(const NestedTriangularElement& a,
                                        const NestedTriangularElement& b) {
  if (a.boxes_.size() != b.boxes_.size() || a.k_ != b.k_)
    throw ChainMismatch("nested product needs identical box chains");
  for (size_t j = 0; j < a.boxes_.size(); ++j)
    if (a.boxes_[j].lo != b.boxes_[j].lo || a.boxes_[j].hi != b.boxes_[j].hi)
      throw ChainMismatch("nested product needs identical box chains");
  NestedTriangularElement r(a.boxes_, a.k_);
  int p = a.size();
  // h_ik = sum_j f_ij * g_jk; the entry lives on K_k, restrictions implicit
  for (int i = 0; i < p; ++i)
    for (int kcol = i; kcol < p; ++kcol) {
      CoefficientFn s{Polynomial(a.k_)};
      for (int j = i; j <= kcol; ++j) s = s + a.at(i, j) * b.at(j, kcol);
      r.at(i, kcol) = s;
    }
  return r;
}

double nested_seminorm(const NestedTriangularElement& a, int n) {
  double total = 0;
  auto gammas = exponents_of_order(a.vars(), n);
  for (int i = 0; i < a.size(); ++i)
    for (int j = i; j < a.size(); ++j) {
      for (const auto& g : gammas)
        total += sup_on_box(a.at(i, j).derivative(g), a.boxes()[j]).value;
    }
  return total;
}

namespace {

double seminorm_fixed_grid(const MatrixFunction& F, const CompactBox& K, int l,
                           int nodes) {
  double total = 0;
  for (const auto& g : exponents_of_order(F.vars(), l)) {
    MatrixFunction D = F.derivative(g);
    total += sup_matrix_norm_on_grid(D, K, MatrixNorm::max_row_sum, nodes);
  }
  return total;
}

double nc_seminorm_fixed_grid(const NCFunctionElement& a, const MultiIndex& beta,
                              const CompactBox& M, int l, int nodes) {
  CoefficientFn f = a.coefficient(beta);
  if (f.is_zero()) return 0;
  double total = 0;
  for (const auto& g : exponents_of_order(a.split(), l)) {
    double best = 0;
    CoefficientFn d = f.derivative(g);
    for (const auto& x : M.grid(nodes)) best = std::max(best, d.abs_at(x));
    total += best;
  }
  return total;
}

}  // namespace

DominationReport verify_domination(const NCFunctionElement& a,
                                   const MultiIndex& beta, const CompactBox& M,
                                   int l, const AdaptedSystem& sys,
                                   int grid_nodes) {
  if (a.algebra() != sys.algebra)
    throw SystemIncomplete("element and system use different algebras");
  if (!a.all_polynomial())
    throw SmoothUnsupported("domination check needs polynomial coefficients");
  int k = sys.k;
  DominationReport rep;
  Representation pb = tensor_rep(sys, beta);
  // C = || pi_beta(e^beta) || (exact in real mode)
  MultiIndex full = embed_n_part(beta, k, sys.algebra->dim());
  QMatrix pbe = pb.act_monomial(full);
  if (pbe.is_zero() && total_degree(beta) > 0)
    throw SystemIncomplete("pi_beta(e^beta) vanished");
  rep.C = total_degree(beta) == 0 ? 1.0 : pbe.max_row_sum_double();
  rep.mu = shift_vector(sys, beta);
  CompactBox Mshift = M.shifted_back(rep.mu);

  UEAElement ua = to_uea(a);
  UEAElement pa = project_below(ua, k, beta);
  MatrixFunction Fa = tilde_pi(pb, ua, k);
  MatrixFunction Fp = tilde_pi(pb, pa, k);
  MatrixFunction Fd = tilde_pi(pb, ua - pa, k);

  rep.lhs = nc_seminorm_fixed_grid(a, beta, M, l, grid_nodes);
  rep.term_full = seminorm_fixed_grid(Fa, Mshift, l, grid_nodes);
  rep.term_proj = seminorm_fixed_grid(Fp, Mshift, l, grid_nodes);
  rep.rhs = (rep.term_full + rep.term_proj) / rep.C;
  rep.equality_rhs = seminorm_fixed_grid(Fd, Mshift, l, grid_nodes) / rep.C;
  rep.inequality_holds = rep.lhs <= rep.rhs + 1e-9;
  rep.equality_holds = std::abs(rep.lhs - rep.equality_rhs) <=
                       1e-6 * std::max(1.0, std::abs(rep.lhs));
  return rep;
}

std::vector<double> rho_embed(const NCFunctionElement& a, const AdaptedSystem& sys,
                              const std::vector<MultiIndex>& betas,
                              const CompactBox& K, int n, MatrixNorm norm) {
  if (!a.all_polynomial())
    throw SmoothUnsupported("embedding window needs polynomial coefficients");
  std::vector<double> out;
  UEAElement ua = to_uea(a);
  for (const auto& beta : betas) {
    Representation pb = tensor_rep(sys, beta);
    MatrixFunction F = tilde_pi(pb, ua, sys.k);
    SeminormSpec spec{pb.d, K, n, norm};
    out.push_back(matrix_seminorm(F, spec).value);
  }
  return out;
}

}  // namespace nclie
