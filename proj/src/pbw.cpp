#include "nclie/pbw.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nclie/errors.hpp"

namespace nclie {

int colex_compare(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw DimensionMismatch("colex on unequal lengths");
  for (int i = (int)a.size() - 1; i >= 0; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

UEAElement UEAElement::unit(LiePtr algebra) {
  UEAElement e(algebra);
  e.add_term(MultiIndex(algebra->dim(), 0), Scalar(1));
  return e;
}

UEAElement UEAElement::generator(LiePtr algebra, int index) {
  UEAElement e(algebra);
  MultiIndex a(algebra->dim(), 0);
  a[index] = 1;
  e.add_term(a, Scalar(1));
  return e;
}

UEAElement UEAElement::monomial(LiePtr algebra, const MultiIndex& a, const Scalar& c) {
  UEAElement e(algebra);
  e.add_term(a, c);
  return e;
}

void UEAElement::add_term(const MultiIndex& a, const Scalar& c) {
  if (L_ && (int)a.size() != L_->dim())
    throw DimensionMismatch("exponent length vs algebra dimension");
  if (c.is_zero()) return;
  auto it = terms_.find(a);
  if (it == terms_.end()) {
    terms_.emplace(a, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int UEAElement::max_n_degree(int k) const {
  int d = 0;
  for (const auto& [a, c] : terms_) d = std::max(d, n_degree(a, k));
  return d;
}

UEAElement UEAElement::operator-() const {
  UEAElement r(L_);
  for (const auto& [a, c] : terms_) r.terms_.emplace(a, -c);
  return r;
}

UEAElement& UEAElement::operator+=(const UEAElement& o) {
  if (L_ && o.L_ && L_ != o.L_) throw AlgebraMismatch("sum of elements of different algebras");
  if (!L_) L_ = o.L_;
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
  if (L_ && o.L_ && L_ != o.L_) throw AlgebraMismatch("difference of elements of different algebras");
  if (!L_) L_ = o.L_;
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

UEAElement operator*(const Scalar& c, UEAElement a) {
  if (c.is_zero()) return UEAElement(a.L_);
  for (auto& [e, v] : a.terms_) v *= c;
  return a;
}

namespace {

std::vector<int> exponent_to_word(const MultiIndex& a) {
  std::vector<int> w;
  for (size_t i = 0; i < a.size(); ++i)
    for (uint32_t t = 0; t < a[i]; ++t) w.push_back((int)i);
  return w;
}

MultiIndex word_to_exponent(const std::vector<int>& w, int m) {
  MultiIndex a(m, 0);
  for (int g : w) a[g] += 1;
  return a;
}

bool word_sorted(const std::vector<int>& w) {
  return std::is_sorted(w.begin(), w.end());
}

}  // namespace

UEAElement StraighteningEngine::straighten(const std::vector<int>& word) {
  int m = L_->dim();
  if (word_sorted(word)) {
    return UEAElement::monomial(L_, word_to_exponent(word, m), Scalar(1));
  }
  auto it = memo_.find(word);
  if (it != memo_.end()) return it->second;

  // leftmost out-of-order adjacent pair; e_j e_i = e_i e_j - [e_i, e_j]
  size_t p = 0;
  while (word[p] <= word[p + 1]) ++p;
  int j = word[p], i = word[p + 1];
  std::vector<int> swapped = word;
  std::swap(swapped[p], swapped[p + 1]);
  UEAElement result = straighten(swapped);
  const Vec& cij = L_->bracket_basis(i, j);
  for (int t = 0; t < m; ++t) {
    if (cij[t].is_zero()) continue;
    std::vector<int> reduced;
    reduced.reserve(word.size() - 1);
    reduced.insert(reduced.end(), word.begin(), word.begin() + p);
    reduced.push_back(t);
    reduced.insert(reduced.end(), word.begin() + p + 2, word.end());
    result -= cij[t] * straighten(reduced);
  }
  memo_.emplace(word, result);
  return result;
}

UEAElement StraighteningEngine::left_multiply(int gen, const UEAElement& a) {
  UEAElement r(L_);
  for (const auto& [e, c] : a.terms()) {
    std::vector<int> w = exponent_to_word(e);
    w.insert(w.begin(), gen);
    r += c * straighten(w);
  }
  return r;
}

UEAElement normal_order(LiePtr L, const std::vector<int>& word) {
  for (int g : word)
    if (g < 0 || g >= L->dim()) throw DimensionMismatch("word letter out of range");
  StraighteningEngine eng(L);
  return eng.straighten(word);
}

UEAElement uea_multiply(StraighteningEngine& eng, const UEAElement& a,
                        const UEAElement& b) {
  if (a.algebra() != b.algebra() || a.algebra() != eng.algebra())
    throw AlgebraMismatch("product of elements of different algebras");
  UEAElement r(eng.algebra());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) {
      std::vector<int> w = exponent_to_word(ea);
      std::vector<int> wb = exponent_to_word(eb);
      w.insert(w.end(), wb.begin(), wb.end());
      r += (ca * cb) * eng.straighten(w);
    }
  return r;
}

UEAElement uea_multiply(const UEAElement& a, const UEAElement& b) {
  if (!a.algebra() || a.algebra() != b.algebra())
    throw AlgebraMismatch("product of elements of different algebras");
  StraighteningEngine eng(a.algebra());
  return uea_multiply(eng, a, b);
}

UEAElement phi(LiePtr L, const Polynomial& f) {
  int m = L->dim();
  if (f.nvars() > m) throw DimensionMismatch("polynomial has more variables than generators");
  UEAElement r(L);
  for (const auto& [e, c] : f.terms()) {
    MultiIndex a(m, 0);
    for (size_t i = 0; i < e.size(); ++i) a[i] = e[i];
    r.add_term(a, c);
  }
  return r;
}

UEAElement truncate_n_degree(const UEAElement& a, int k, int N) {
  UEAElement r(a.algebra());
  for (const auto& [e, c] : a.terms())
    if (n_degree(e, k) <= N) r.add_term(e, c);
  return r;
}

UEAElement project_below(const UEAElement& a, int k, const MultiIndex& beta) {
  UEAElement r(a.algebra());
  for (const auto& [e, c] : a.terms())
    if (colex_compare(n_part(e, k), beta) < 0) r.add_term(e, c);
  return r;
}

MultiIndex n_part(const MultiIndex& a, int k) {
  return MultiIndex(a.begin() + k, a.end());
}

MultiIndex embed_n_part(const MultiIndex& beta, int k, int m) {
  MultiIndex a(m, 0);
  if ((int)beta.size() != m - k) throw DimensionMismatch("n-part length");
  for (int i = 0; i < m - k; ++i) a[k + i] = beta[i];
  return a;
}

Polynomial lambda_coefficient(const UEAElement& a, int k, const MultiIndex& beta) {
  Polynomial f(k);
  for (const auto& [e, c] : a.terms()) {
    if (n_part(e, k) != beta) continue;
    Exponent le(e.begin(), e.begin() + k);
    f.add_term(le, c);
  }
  return f;
}

std::vector<MultiIndex> n_support(const UEAElement& a, int k) {
  std::vector<MultiIndex> out;
  for (const auto& [e, c] : a.terms()) {
    MultiIndex b = n_part(e, k);
    if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
  }
  std::sort(out.begin(), out.end(),
            [](const MultiIndex& x, const MultiIndex& y) {
              return colex_compare(x, y) < 0;
            });
  return out;
}

// ---- text format ----

namespace {

// monomial print order: higher total degree first, then lexicographic
bool print_order(const std::pair<MultiIndex, Scalar>& x,
                 const std::pair<MultiIndex, Scalar>& y) {
  int dx = total_degree(x.first), dy = total_degree(y.first);
  if (dx != dy) return dx > dy;
  return x.first < y.first;
}

}  // namespace

std::string element_str(const UEAElement& a) {
  if (a.is_zero()) return "0";
  std::vector<std::pair<MultiIndex, Scalar>> ts(a.terms().begin(), a.terms().end());
  std::sort(ts.begin(), ts.end(), print_order);
  std::string out;
  bool first = true;
  for (const auto& [e, c] : ts) {
    Scalar coeff = c;
    if (!first) {
      bool negative = coeff.is_real() && sgn(coeff.re) < 0;
      out += negative ? " - " : " + ";
      if (negative) coeff = -coeff;
    }
    first = false;
    bool has_var = total_degree(e) > 0;
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "e" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (!has_var) {
      out += coeff.str();
    } else if (coeff.is_one()) {
      out += mono;
    } else {
      bool parens = !coeff.is_real() && sgn(coeff.re) != 0;
      out += (parens ? "(" + coeff.str() + ")" : coeff.str()) + "*" + mono;
    }
  }
  return out;
}

std::string UEAElement::str() const { return element_str(*this); }

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;
  explicit Parser(const std::string& str) : s(str) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  // factor := rational | 'i' | eN ['^' int]
  // term := factor ('*' factor)*
  // expr := ['-'] term (('+'|'-') term)*
  UEAElement parse(LiePtr L) {
    StraighteningEngine eng(L);
    UEAElement total(L);
    bool negate = eat('-');
    for (;;) {
      total += parse_term(L, eng, negate);
      skip_ws();
      if (eat('+')) {
        negate = eat('-');
      } else if (eat('-')) {
        negate = true;
      } else {
        break;
      }
    }
    skip_ws();
    if (pos != s.size()) throw ParseError("trailing input at '" + s.substr(pos) + "'");
    return total;
  }

  UEAElement parse_term(LiePtr L, StraighteningEngine& eng, bool negate) {
    Scalar coeff(negate ? -1 : 1);
    std::vector<int> word;
    bool any = false;
    for (;;) {
      skip_ws();
      if (pos >= s.size()) break;
      char c = s[pos];
      if (c == 'e') {
        size_t start = ++pos;
        while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
        if (pos == start) throw ParseError("expected generator index after 'e'");
        int idx = std::stoi(s.substr(start, pos - start));
        if (idx < 1 || idx > L->dim())
          throw ParseError("generator e" + std::to_string(idx) + " out of range");
        int rep = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          size_t es = pos;
          while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
          if (pos == es) throw ParseError("expected exponent after '^'");
          rep = std::stoi(s.substr(es, pos - es));
        }
        for (int t = 0; t < rep; ++t) word.push_back(idx - 1);
        any = true;
      } else if (std::isdigit((unsigned char)c) || c == '.' ||
                 (c == 'i' && (pos + 1 >= s.size() || !std::isalnum((unsigned char)s[pos + 1])))) {
        size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit((unsigned char)s[pos]) || s[pos] == '/' ||
                s[pos] == '.' || s[pos] == 'i'))
          ++pos;
        std::string lit = s.substr(start, pos - start);
        coeff *= parse_scalar(lit == "i" ? "i" : lit);
        any = true;
      } else {
        break;
      }
      skip_ws();
      if (!eat('*')) break;
    }
    if (!any) throw ParseError("empty term");
    return coeff * eng.straighten(word);
  }
};

}  // namespace

UEAElement parse_element(LiePtr L, const std::string& text) {
  Parser p(text);
  return p.parse(L);
}

}  // namespace nclie
