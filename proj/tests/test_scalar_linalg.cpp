#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nclie/linalg.hpp"
#include "nclie/polynomial.hpp"
#include "nclie/scalar.hpp"

using namespace nclie;

TEST_CASE("scalar arithmetic and parsing") {
  Scalar a = parse_scalar("3/2");
  Scalar b = parse_scalar("-1/2");
  CHECK(a + b == Scalar(1));
  CHECK(a * b == Scalar(Rational(-3, 4)));
  CHECK((a / b) == Scalar(-3));
  CHECK(parse_scalar("0.25") == Scalar(Rational(1, 4)));

  Scalar i = Scalar::unit_i();
  CHECK(i * i == Scalar(-1));
  CHECK(parse_scalar("1/2+3*i") == Scalar(Rational(1, 2), Rational(3)));
  CHECK(parse_scalar("-i") == Scalar(Rational(0), Rational(-1)));
  CHECK(parse_scalar(Scalar(Rational(2, 3), Rational(-5, 7)).str()) ==
        Scalar(Rational(2, 3), Rational(-5, 7)));
  CHECK((Scalar(3) / Scalar(Rational(1), Rational(2))).str() ==
        Scalar(Rational(3, 5), Rational(-6, 5)).str());
}

TEST_CASE("gaussian square roots") {
  CHECK(*gaussian_sqrt(Scalar(Rational(9, 4))) == Scalar(Rational(3, 2)));
  CHECK(*gaussian_sqrt(Scalar(-4)) == Scalar(Rational(0), Rational(2)));
  // sqrt(2i) = 1 + i
  auto r = gaussian_sqrt(Scalar(Rational(0), Rational(2)));
  REQUIRE(r.has_value());
  CHECK(*r * *r == Scalar(Rational(0), Rational(2)));
  CHECK(!gaussian_sqrt(Scalar(2)).has_value());
}

TEST_CASE("rref, kernel, solve, inverse") {
  QMatrix a(3, 3);
  long vals[3][3] = {{2, 1, 1}, {0, 1, -1}, {2, 2, 0}};  // row3 = row1 + row2
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.at(i, j) = Scalar(vals[i][j]);
  Subspace ker = kernel(a);
  CHECK(ker.dim() == 1);
  Vec v = ker.basis()[0];
  Vec img = a.apply(v);
  for (const auto& x : img) CHECK(x.is_zero());

  QMatrix b(2, 2);
  b.at(0, 0) = Scalar(2);
  b.at(0, 1) = Scalar(1);
  b.at(1, 1) = Scalar(3);
  QMatrix inv = b.inverse();
  CHECK((b * inv).is_identity());

  auto sol = solve(b, {Scalar(5), Scalar(6)});
  REQUIRE(sol.has_value());
  CHECK(b.apply(*sol) == Vec{Scalar(5), Scalar(6)});
}

TEST_CASE("char poly and nilpotency") {
  QMatrix n(3, 3);
  n.at(0, 1) = Scalar(1);
  n.at(1, 2) = Scalar(1);
  auto cp = n.char_poly();  // x^3
  CHECK(cp[0].is_zero());
  CHECK(cp[1].is_zero());
  CHECK(cp[2].is_zero());
  CHECK(cp[3] == Scalar(1));
  CHECK(n.nilpotency_index() == 3);
  CHECK(n.is_strictly_upper_triangular());

  QMatrix d(2, 2);
  d.at(0, 0) = Scalar(1);
  d.at(1, 1) = Scalar(2);
  UPoly chi;
  chi.c = d.char_poly();  // (x-1)(x-2) = 2 - 3x + x^2
  CHECK(chi.c[0] == Scalar(2));
  CHECK(chi.c[1] == Scalar(-3));
  auto roots = rational_roots(chi);
  REQUIRE(roots.size() == 2);
}

TEST_CASE("sturm real-root counting") {
  UPoly p;  // x^2 - 2: two real irrational roots
  p.c = {Scalar(-2), Scalar(0), Scalar(1)};
  CHECK(count_real_roots(p) == 2);
  CHECK(rational_roots(p).empty());
  UPoly q;  // x^2 + 1: no real roots
  q.c = {Scalar(1), Scalar(0), Scalar(1)};
  CHECK(count_real_roots(q) == 0);
  auto gr = gaussian_roots(q);
  REQUIRE(gr.has_value());
  CHECK(gr->size() == 2);
  CHECK((*gr)[0] * (*gr)[0] == Scalar(-1));
}

TEST_CASE("subspace operations are canonical") {
  Subspace s = Subspace::span(3, {{Scalar(1), Scalar(1), Scalar(0)},
                                  {Scalar(0), Scalar(2), Scalar(0)}});
  Subspace t = Subspace::span(3, {{Scalar(1), Scalar(0), Scalar(0)},
                                  {Scalar(3), Scalar(5), Scalar(0)}});
  CHECK(s == t);  // same plane, canonical echelon form
  Subspace line = Subspace::span(3, {{Scalar(0), Scalar(0), Scalar(7)}});
  CHECK(s.intersect(line).dim() == 0);
  CHECK(s.sum(line).dim() == 3);
  CHECK(s.contains(Vec{Scalar(2), Scalar(-3), Scalar(0)}));
  CHECK(!s.contains(Vec{Scalar(0), Scalar(0), Scalar(1)}));
}

TEST_CASE("polynomial shift and derivative are exact") {
  // f = x^2 y + 3 y
  Polynomial f(2);
  f.add_term({2, 1}, Scalar(1));
  f.add_term({0, 1}, Scalar(3));
  Polynomial fx = f.derivative(0);
  CHECK(fx.eval({Scalar(2), Scalar(5)}) == Scalar(20));
  Polynomial sh = f.shift({Scalar(1), Scalar(-2)});
  // f(x+1, y-2) at (x,y) = f(x+1, y-2)
  CHECK(sh.eval({Scalar(1), Scalar(1)}) == f.eval({Scalar(2), Scalar(-1)}));
  // shifting back is the identity
  CHECK(sh.shift({Scalar(-1), Scalar(2)}) == f);
  // complex shift: (x - i)^2 + 1 at x = i gives -* ... exact Gaussian steps
  Polynomial g(1);
  g.add_term({2}, Scalar(1));
  g.add_term({0}, Scalar(1));
  Polynomial gs = g.shift({-Scalar::unit_i()});
  CHECK(gs.eval({Scalar::unit_i()}) == Scalar(1));  // ((i)-i)^2 + 1
}
