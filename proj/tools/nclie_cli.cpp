#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "nclie/calculus.hpp"
#include "nclie/demo_e2.hpp"
#include "nclie/errors.hpp"
#include "nclie/json_io.hpp"
#include "nclie/lie_algebra.hpp"
#include "nclie/matrix_function.hpp"
#include "nclie/ncfunc.hpp"
#include "nclie/pbw.hpp"
#include "nclie/reps.hpp"
#include "nclie/seminorm_lab.hpp"
#include "nclie/sheaf.hpp"

using namespace nclie;

namespace {

std::string g_format = "text";

LiePtr input_algebra(const std::string& spec) {
  // catalog name or a JSON file path
  if (spec.find(".json") != std::string::npos) return load_algebra(spec);
  return catalog_algebra(spec);
}

CompactBox parse_box(const std::string& s, int k) {
  // "lo,hi" per axis, axes joined by ';'; a single interval replicates
  std::vector<Rational> lo, hi;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t semi = s.find(';', pos);
    std::string part = s.substr(pos, semi == std::string::npos ? std::string::npos
                                                               : semi - pos);
    size_t comma = part.find(',');
    if (comma == std::string::npos) throw ParseError("box axis needs lo,hi");
    lo.push_back(parse_rational(part.substr(0, comma)));
    hi.push_back(parse_rational(part.substr(comma + 1)));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  if ((int)lo.size() == 1 && k > 1) {
    lo.assign(k, lo[0]);
    hi.assign(k, hi[0]);
  }
  return CompactBox(lo, hi);
}

MultiIndex parse_multi(const std::string& s, int len) {
  MultiIndex b;
  size_t pos = 0;
  while (pos <= s.size() && !s.empty()) {
    size_t comma = s.find(',', pos);
    std::string part = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                : comma - pos);
    if (!part.empty()) b.push_back((uint32_t)std::stoul(part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if ((int)b.size() != len) throw ParseError("multi-index needs " + std::to_string(len) + " entries");
  return b;
}

NumericMatrix load_numeric_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  in >> j;
  NumericMatrix m;
  for (const auto& row : j) {
    std::vector<std::complex<double>> r;
    for (const auto& v : row) {
      if (v.is_array())
        r.push_back({v[0].get<double>(), v[1].get<double>()});
      else
        r.push_back(v.get<double>());
    }
    m.push_back(r);
  }
  return m;
}

void emit(const Json& j, const std::string& text) {
  if (g_format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int run_check(const std::string& input) {
  LiePtr L = input_algebra(input);
  Json j;
  j["dim"] = L->dim();
  j["jacobi"] = "ok";  // validate_structure already enforced it
  bool solvable = L->is_solvable();
  bool nilpotent = L->is_nilpotent();
  j["solvable"] = solvable;
  j["nilpotent"] = nilpotent;
  std::string text = "dim: " + std::to_string(L->dim()) + "\njacobi: ok\n";
  text += std::string("solvable: ") + (solvable ? "yes" : "no") + "\n";
  text += std::string("nilpotent: ") + (nilpotent ? "yes" : "no") + "\n";
  if (solvable) {
    try {
      FlagCertificate flag = L->triangular_flag();
      j["triangular"] = true;
      Json steps = Json::array();
      for (size_t s = 0; s < flag.step_vectors.size(); ++s) {
        Json st;
        Json v = Json::array(), mu = Json::array();
        for (const auto& x : flag.step_vectors[s]) v.push_back(x.str());
        for (const auto& x : flag.step_functionals[s]) mu.push_back(x.str());
        st["vector"] = v;
        st["eigenvalue_functional"] = mu;
        steps.push_back(st);
      }
      j["flag"] = steps;
      text += "triangular: yes (full flag of ideals certified)\n";
    } catch (const NotTriangular& e) {
      j["triangular"] = false;
      j["witness"] = e.what();
      text += std::string("triangular: no, ") + e.what() + "\n";
    } catch (const IrrationalEigenvalues& e) {
      j["triangular"] = "uncertifiable";
      j["witness"] = e.what();
      text += std::string("triangular: uncertifiable, ") + e.what() + "\n";
    }
  }
  emit(j, text);
  return 0;
}

int run_mul(const std::string& input, const std::vector<std::string>& exprs,
            int n_trunc) {
  LiePtr L = input_algebra(input);
  UEAElement a = parse_element(L, exprs.at(0));
  for (size_t i = 1; i < exprs.size(); ++i)
    a = uea_multiply(a, parse_element(L, exprs[i]));
  if (n_trunc >= 0) {
    auto k = L->split_index();
    if (!k) throw AlgebraMismatch("truncation needs an adapted basis");
    a = truncate_n_degree(a, *k, n_trunc);
  }
  Json j = element_to_json(a);
  emit(j, element_str(a) + "\n");
  return 0;
}

int run_adapt(const std::string& input) {
  LiePtr L = input_algebra(input);
  AdaptedSystem sys = build_adapted_system(L);
  Json j;
  j["k"] = sys.k;
  j["nilpotent"] = sys.nilpotent;
  Json cols = Json::array();
  for (int c = 0; c < sys.basis_columns.cols(); ++c) {
    Json col = Json::array();
    for (int r = 0; r < sys.basis_columns.rows(); ++r)
      col.push_back(sys.basis_columns.at(r, c).str());
    cols.push_back(col);
  }
  j["adapted_basis_columns"] = cols;
  Json reps = Json::array();
  for (const auto& r : sys.reps) reps.push_back(representation_to_json(r));
  j["representations"] = reps;
  Json mus = Json::array();
  for (const auto& row : sys.mu_table) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v.str());
    mus.push_back(r);
  }
  j["mu_table"] = mus;
  std::string text = "split k = " + std::to_string(sys.k) + ", " +
                     std::to_string(sys.reps.size()) + " generator representations\n";
  for (size_t s = 0; s < sys.reps.size(); ++s)
    text += "  e" + std::to_string(sys.k + s + 1) + ": dim " +
            std::to_string(sys.reps[s].d) +
            (sys.reps[s].nilpotent_image ? " (nilpotent image)" : "") + "\n";
  emit(j, text);
  return 0;
}

int run_rep(const std::string& input, const std::string& beta_str,
            const std::string& element) {
  LiePtr L = input_algebra(input);
  AdaptedSystem sys = build_adapted_system(L);
  MultiIndex beta = parse_multi(beta_str, sys.algebra->dim() - sys.k);
  Representation pb = tensor_rep(sys, beta);
  Json j = representation_to_json(pb);
  std::string text = "tensor representation, dim " + std::to_string(pb.d) + "\n";
  if (!element.empty()) {
    UEAElement a = parse_element(sys.algebra, element);
    MatrixFunction F = tilde_pi(pb, a, sys.k);
    Json entries = Json::array();
    text += "symbol matrix:\n";
    for (int r = 0; r < F.dim(); ++r) {
      std::string line = "  [";
      Json row = Json::array();
      for (int c = 0; c < F.dim(); ++c) {
        row.push_back(F.at(r, c).poly().str());
        line += (c ? ", " : "") + F.at(r, c).poly().str();
      }
      entries.push_back(row);
      text += line + "]\n";
    }
    j["symbol_matrix"] = entries;
  }
  emit(j, text);
  return 0;
}

int run_seminorm(const std::string& input, const std::string& element,
                 const std::string& beta_str, const std::string& box_str, int order,
                 int n_trunc) {
  LiePtr L = input_algebra(input);
  auto kopt = L->split_index();
  if (!kopt) throw AlgebraMismatch("seminorms need an adapted basis");
  int k = *kopt;
  UEAElement a = parse_element(L, element);
  NCFunctionElement nc = from_uea(a, k, n_trunc >= 0 ? n_trunc : a.max_n_degree(k));
  MultiIndex beta = parse_multi(beta_str, L->dim() - k);
  CompactBox M = parse_box(box_str, k);
  SupEstimate est = nc_seminorm(nc, beta, M, order);
  Json j{{"value", est.value}, {"refinement_level", est.level},
         {"exact_nodes", est.exact_nodes}};
  emit(j, "seminorm = " + std::to_string(est.value) + " (grid lower bound, level " +
              std::to_string(est.level) + ")\n");
  return 0;
}

int run_dominate(const std::string& input, const std::string& element,
                 const std::string& beta_str, const std::string& box_str,
                 int order, int n_trunc) {
  LiePtr L = input_algebra(input);
  AdaptedSystem sys = build_adapted_system(L);
  int k = sys.k;
  UEAElement a = parse_element(sys.algebra, element);
  NCFunctionElement nc = from_uea(a, k, n_trunc >= 0 ? n_trunc : a.max_n_degree(k));
  MultiIndex beta = parse_multi(beta_str, sys.algebra->dim() - k);
  CompactBox M = parse_box(box_str, k);
  DominationReport rep = verify_domination(nc, beta, M, order, sys);
  Json j{{"lhs", rep.lhs},          {"rhs", rep.rhs},
         {"C", rep.C},              {"term_full", rep.term_full},
         {"term_proj", rep.term_proj}, {"equality_rhs", rep.equality_rhs},
         {"pass", rep.inequality_holds}, {"equality", rep.equality_holds}};
  std::string text = "lhs = " + std::to_string(rep.lhs) +
                     ", rhs = " + std::to_string(rep.rhs) +
                     ", C = " + std::to_string(rep.C) +
                     (rep.inequality_holds ? "  [pass]" : "  [FAIL]") + "\n";
  emit(j, text);
  return 0;
}

int run_growth(const std::string& matrix_path, double s_max, int samples) {
  NumericMatrix b = load_numeric_matrix(matrix_path);
  GrowthReport rep = exp_growth_scan(b, s_max, samples);
  if (g_format == "csv") {
    std::cout << "s,norm\n";
    for (const auto& [s, n] : rep.samples) std::cout << s << "," << n << "\n";
    return 0;
  }
  Json j{{"alpha", rep.alpha},
         {"K", rep.K},
         {"residual", rep.residual},
         {"last_octave_slope", rep.last_octave_slope},
         {"verdict", verdict_name(rep.verdict)}};
  emit(j, "verdict: " + verdict_name(rep.verdict) +
              ", alpha = " + std::to_string(rep.alpha) + "\n");
  return 0;
}

int run_resolvent(const std::string& matrix_path, double re_lambda) {
  NumericMatrix b = load_numeric_matrix(matrix_path);
  ResolventReport rep = resolvent_scan(b, re_lambda);
  if (g_format == "csv") {
    std::cout << "im_lambda,resolvent_norm\n";
    for (const auto& [y, n] : rep.table) std::cout << y << "," << n << "\n";
    return 0;
  }
  Json j{{"re_lambda", rep.re_lambda},
         {"gamma_blowup", rep.gamma},
         {"printed_bound_sup", rep.printed_bound_sup}};
  emit(j, "gamma (blow-up fit) = " + std::to_string(rep.gamma) + "\n");
  return 0;
}

Symbol1D parse_symbol(const std::string& s) {
  // "gauss:a;c0,c1,..."  or  "bump:R;c0,c1,..."
  auto colon = s.find(':');
  auto semi = s.find(';');
  if (colon == std::string::npos || semi == std::string::npos)
    throw ParseError("symbol syntax: kind:param;coeffs");
  std::string kind = s.substr(0, colon);
  double param = std::stod(s.substr(colon + 1, semi - colon - 1));
  std::vector<double> coeffs;
  size_t pos = semi + 1;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    coeffs.push_back(std::stod(s.substr(pos, comma == std::string::npos
                                                 ? std::string::npos
                                                 : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (kind == "gauss") return Symbol1D::poly_gauss(coeffs, param);
  if (kind == "bump") return Symbol1D::poly_bump(coeffs, param);
  throw ParseError("unknown symbol kind " + kind);
}

int run_fc(const std::vector<std::string>& matrices,
           const std::vector<std::string>& symbols, const std::string& method,
           int nodes) {
  std::vector<NumericMatrix> b;
  for (const auto& p : matrices) b.push_back(load_numeric_matrix(p));
  SymbolProduct f;
  for (const auto& s : symbols) f.push_back(parse_symbol(s));
  NumericMatrix r;
  if (method == "taylor") {
    throw Unsupported("taylor path is driven through the library API");
  } else if (method == "weyl") {
    r = weyl_fc_quadrature(f, b, nodes);
  } else {
    r = ordered_fc_quadrature(f, b, nodes);
  }
  Json rows = Json::array();
  std::string text;
  for (const auto& row : r) {
    Json jr = Json::array();
    std::string line = "[";
    for (const auto& v : row) {
      jr.push_back({v.real(), v.imag()});
      line += " " + std::to_string(v.real()) +
              (v.imag() >= 0 ? "+" : "") + std::to_string(v.imag()) + "i";
    }
    rows.push_back(jr);
    text += line + " ]\n";
  }
  emit(Json{{"result", rows}}, text);
  return 0;
}

int run_sheaf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  in >> j;
  LiePtr L = j.contains("algebra") && j["algebra"].is_string()
                 ? catalog_algebra(j["algebra"].get<std::string>())
                 : algebra_from_json(j.at("algebra"));
  std::vector<LocalSection> sections;
  for (const auto& s : j.at("sections")) {
    LocalSection sec;
    sec.element = ncelement_from_json(L, s.at("element"));
    sec.domain = region_from_json(s.at("domain"));
    sections.push_back(sec);
  }
  std::optional<OpenRegion> target;
  if (j.contains("target")) target = region_from_json(j.at("target"));
  try {
    GlueResult res = glue(sections, target);
    Json out{{"glued", true},
             {"level", res.level == GlueVerdictLevel::exact ? "exact" : "numeric"},
             {"element", ncelement_to_json(res.section.element)},
             {"domain", region_to_json(res.section.domain)}};
    emit(out, "glued: yes\n");
  } catch (const Mismatch& e) {
    Json out{{"glued", false}, {"mismatch", e.what()}};
    emit(out, std::string("glued: no — ") + e.what() + "\n");
  }
  return 0;
}

int run_demo_e2(const std::string& ms, const std::string& degs) {
  std::vector<int> m_list, degrees;
  auto parse_ints = [](const std::string& s) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= s.size() && !s.empty()) {
      size_t comma = s.find(',', pos);
      out.push_back(std::stoi(s.substr(pos, comma == std::string::npos
                                                ? std::string::npos
                                                : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  };
  m_list = parse_ints(ms);
  degrees = parse_ints(degs);
  auto rows = demo_e2_blowup(m_list, degrees);
  if (g_format == "csv") {
    std::cout << "m,degree,fit_residual,sup_g,sup_target,rel_gap\n";
    for (const auto& r : rows)
      std::cout << r.m << "," << r.degree << "," << r.fit_residual << ","
                << r.sup_g << "," << r.sup_target << "," << r.rel_gap << "\n";
    return 0;
  }
  Json table = Json::array();
  std::string text =
      "  m  deg   fit_residual        sup|g|    sup|target|   rel_gap\n";
  for (const auto& r : rows) {
    table.push_back({{"m", r.m},
                     {"degree", r.degree},
                     {"fit_residual", r.fit_residual},
                     {"sup_g", r.sup_g},
                     {"sup_target", r.sup_target},
                     {"rel_gap", r.rel_gap},
                     {"commutation_exact", r.commutation_exact},
                     {"real_valued", r.real_valued}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "%3d %4d  %13.3e  %12.6f  %12.6f  %8.4f\n",
                  r.m, r.degree, r.fit_residual, r.sup_g, r.sup_target,
                  r.rel_gap);
    text += buf;
  }
  emit(table, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact PBW arithmetic and numeric functional calculus for triangular Lie algebras"};
  app.require_subcommand(1);
  uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for randomized suites (reproducibility)");
  app.add_option("--format", g_format, "text | json | csv")->capture_default_str();

  std::string input, element, beta, box = "0,1", matrix, re0 = "0";
  std::vector<std::string> exprs, matrices, symbols;
  int order = 0, n_trunc = -1, nodes = 1024, samples = 60;
  double s_max = 1e3, re_lambda = 0.0;
  std::string method = "ordered", ms = "2,4,8", degs = "20,36,64";

  auto* c_check = app.add_subcommand("check", "structure checks and the triangularity certificate");
  c_check->add_option("--input", input)->required();

  auto* c_mul = app.add_subcommand("mul", "straightened product of element expressions");
  c_mul->add_option("--input", input)->required();
  c_mul->add_option("expr", exprs, "element expressions")->required();
  c_mul->add_option("--n-trunc", n_trunc);

  auto* c_adapt = app.add_subcommand("adapt", "build the adapted basis and representations");
  c_adapt->add_option("--input", input)->required();

  auto* c_rep = app.add_subcommand("rep", "tensor representation and symbol matrices");
  c_rep->add_option("--input", input)->required();
  c_rep->add_option("--beta", beta)->required();
  c_rep->add_option("--element", element);

  auto* c_semi = app.add_subcommand("seminorm", "coefficient seminorm |a|_{beta,M,l}");
  c_semi->add_option("--input", input)->required();
  c_semi->add_option("--element", element)->required();
  c_semi->add_option("--beta", beta)->required();
  c_semi->add_option("--box", box);
  c_semi->add_option("--order", order);
  c_semi->add_option("--n-trunc", n_trunc);

  auto* c_dom = app.add_subcommand("dominate", "domination estimate report");
  c_dom->add_option("--input", input)->required();
  c_dom->add_option("--element", element)->required();
  c_dom->add_option("--beta", beta)->required();
  c_dom->add_option("--box", box);
  c_dom->add_option("--order", order);
  c_dom->add_option("--n-trunc", n_trunc);

  auto* c_growth = app.add_subcommand("growth", "exp(isb) growth scan");
  c_growth->add_option("--matrix", matrix)->required();
  c_growth->add_option("--s-max", s_max);
  c_growth->add_option("--samples", samples);

  auto* c_res = app.add_subcommand("resolvent", "resolvent blow-up scan");
  c_res->add_option("--matrix", matrix)->required();
  c_res->add_option("--re", re_lambda);

  auto* c_fc = app.add_subcommand("fc", "functional calculus by quadrature");
  c_fc->add_option("--matrix", matrices)->required();
  c_fc->add_option("--symbol", symbols)->required();
  c_fc->add_option("--method", method, "ordered | weyl");
  c_fc->add_option("--nodes", nodes);

  auto* c_sheaf = app.add_subcommand("sheaf", "gluing check over a box cover");
  c_sheaf->add_option("--input", input)->required();

  auto* c_demo = app.add_subcommand("demo-e2", "continuity-failure table for the motion-group algebra");
  c_demo->add_option("--m", ms)->capture_default_str();
  c_demo->add_option("--deg", degs)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_check->parsed()) return run_check(input);
    if (c_mul->parsed()) return run_mul(input, exprs, n_trunc);
    if (c_adapt->parsed()) return run_adapt(input);
    if (c_rep->parsed()) return run_rep(input, beta, element);
    if (c_semi->parsed()) return run_seminorm(input, element, beta, box, order, n_trunc);
    if (c_dom->parsed()) return run_dominate(input, element, beta, box, order, n_trunc);
    if (c_growth->parsed()) return run_growth(matrix, s_max, samples);
    if (c_res->parsed()) return run_resolvent(matrix, re_lambda);
    if (c_fc->parsed()) return run_fc(matrices, symbols, method, nodes);
    if (c_sheaf->parsed()) return run_sheaf(input);
    if (c_demo->parsed()) return run_demo_e2(ms, degs);
  } catch (const error& e) {
    Json err{{"error", e.kind()}, {"detail", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    Json err{{"error", "Internal"}, {"detail", e.what()}};
    std::cerr << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
