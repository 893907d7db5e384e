#include "nclie/json_io.hpp"

#include <fstream>

#include "nclie/errors.hpp"

namespace nclie {

Json algebra_to_json(const LieAlgebra& L) {
  Json j;
  j["dim"] = L.dim();
  j["mode"] = L.mode() == ScalarMode::real ? "real" : "complex";
  j["basis"] = L.names();
  Json brackets = Json::array();
  for (int i = 0; i < L.dim(); ++i)
    for (int jj = i + 1; jj < L.dim(); ++jj) {
      const Vec& c = L.bracket_basis(i, jj);
      Json coeffs;
      bool nz = false;
      for (int k = 0; k < L.dim(); ++k)
        if (!c[k].is_zero()) {
          coeffs[std::to_string(k + 1)] = c[k].str();
          nz = true;
        }
      if (nz) brackets.push_back({{"i", i + 1}, {"j", jj + 1}, {"c", coeffs}});
    }
  j["brackets"] = brackets;
  return j;
}

LiePtr algebra_from_json(const Json& j) {
  int dim = j.at("dim").get<int>();
  ScalarMode mode = ScalarMode::real;
  if (j.contains("mode") && j.at("mode").get<std::string>() == "complex")
    mode = ScalarMode::complex_gauss;
  std::vector<std::string> names;
  if (j.contains("basis")) names = j.at("basis").get<std::vector<std::string>>();
  std::vector<std::tuple<int, int, Vec>> table;
  if (j.contains("brackets")) {
    for (const auto& entry : j.at("brackets")) {
      int i = entry.at("i").get<int>() - 1;
      int jj = entry.at("j").get<int>() - 1;
      Vec c(dim);
      for (const auto& [key, val] : entry.at("c").items()) {
        int k = std::stoi(key) - 1;
        if (k < 0 || k >= dim) throw ParseError("bracket target out of range");
        c[k] = parse_scalar(val.get<std::string>());
      }
      table.emplace_back(i, jj, c);
    }
  }
  return LieAlgebra::validate_structure(dim, mode, names, table);
}

LiePtr load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  Json j;
  in >> j;
  return algebra_from_json(j);
}

Json element_to_json(const UEAElement& a) {
  Json terms = Json::array();
  for (const auto& [e, c] : a.terms()) {
    Json t;
    t["exp"] = e;
    t["c"] = c.str();
    terms.push_back(t);
  }
  Json j;
  j["terms"] = terms;
  j["text"] = element_str(a);
  return j;
}

UEAElement element_from_json(LiePtr L, const Json& j) {
  if (j.is_string()) return parse_element(L, j.get<std::string>());
  UEAElement a(L);
  for (const auto& t : j.at("terms")) {
    MultiIndex e = t.at("exp").get<MultiIndex>();
    a.add_term(e, parse_scalar(t.at("c").get<std::string>()));
  }
  return a;
}

Json polynomial_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back({{"exp", e}, {"c", c.str()}});
  return Json{{"vars", p.nvars()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const Json& j) {
  Polynomial p(j.at("vars").get<int>());
  for (const auto& t : j.at("terms"))
    p.add_term(t.at("exp").get<Exponent>(),
               parse_scalar(t.at("c").get<std::string>()));
  return p;
}

Json ncelement_to_json(const NCFunctionElement& a) {
  Json terms = Json::array();
  for (const auto& [beta, f] : a.terms()) {
    Json t;
    t["beta"] = beta;
    if (f.is_polynomial())
      t["poly"] = polynomial_to_json(f.poly());
    else
      t["poly"] = "opaque";  // smooth coefficients are runtime-only
    terms.push_back(t);
  }
  return Json{{"split", a.split()}, {"N", a.truncation()}, {"terms", terms}};
}

NCFunctionElement ncelement_from_json(LiePtr L, const Json& j) {
  NCFunctionElement a(L, j.at("split").get<int>(), j.at("N").get<int>());
  for (const auto& t : j.at("terms")) {
    if (t.at("poly").is_string())
      throw ParseError("opaque smooth coefficients cannot be re-imported");
    a.add_term(t.at("beta").get<MultiIndex>(),
               CoefficientFn(polynomial_from_json(t.at("poly"))));
  }
  return a;
}

Json representation_to_json(const Representation& r) {
  Json mats = Json::array();
  for (const auto& m : r.mats) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) rows.push_back(m.at(i, j).str());
    mats.push_back(rows);
  }
  return Json{{"dim", r.d},
              {"matrices", mats},
              {"nilpotent_image", r.nilpotent_image},
              {"label", r.label}};
}

Json region_to_json(const OpenRegion& r) {
  Json boxes = Json::array();
  for (const auto& b : r.boxes()) {
    Json lo = Json::array(), hi = Json::array();
    for (const auto& v : b.lo) lo.push_back(rational_str(v));
    for (const auto& v : b.hi) hi.push_back(rational_str(v));
    boxes.push_back({{"lo", lo}, {"hi", hi}});
  }
  return Json{{"boxes", boxes}};
}

OpenRegion region_from_json(const Json& j) {
  std::vector<OpenBox> boxes;
  for (const auto& b : j.at("boxes")) {
    OpenBox box;
    for (const auto& v : b.at("lo")) box.lo.push_back(parse_rational(v.get<std::string>()));
    for (const auto& v : b.at("hi")) box.hi.push_back(parse_rational(v.get<std::string>()));
    boxes.push_back(box);
  }
  return OpenRegion(boxes);
}

Json box_to_json(const CompactBox& b) {
  Json lo = Json::array(), hi = Json::array();
  for (const auto& v : b.lo) lo.push_back(rational_str(v));
  for (const auto& v : b.hi) hi.push_back(rational_str(v));
  return Json{{"lo", lo}, {"hi", hi}};
}

CompactBox box_from_json(const Json& j) {
  std::vector<Rational> lo, hi;
  for (const auto& v : j.at("lo")) lo.push_back(parse_rational(v.get<std::string>()));
  for (const auto& v : j.at("hi")) hi.push_back(parse_rational(v.get<std::string>()));
  return CompactBox(lo, hi);
}

}  // namespace nclie
