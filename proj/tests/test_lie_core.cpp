#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nclie/errors.hpp"
#include "nclie/json_io.hpp"
#include "nclie/lie_algebra.hpp"

using namespace nclie;

namespace {

Vec unit(int m, int i) {
  Vec v(m);
  v[i] = Scalar(1);
  return v;
}

}  // namespace

TEST_CASE("validate_structure accepts the catalog and closes antisymmetry") {
  auto af1 = catalog_algebra("af1");
  CHECK(af1->dim() == 2);
  CHECK(af1->bracket_basis(0, 1)[1] == Scalar(1));
  CHECK(af1->bracket_basis(1, 0)[1] == Scalar(-1));

  auto ab = catalog_algebra("abelian(2)");
  CHECK(ab->derived().dim() == 0);
}

TEST_CASE("validate_structure rejects a Jacobi violation") {
  // c_12^3 = 1, c_13^3 = 1, c_23^1 = 1 breaks Jacobi on (e1,e2,e3)
  Vec c12(3), c13(3), c23(3);
  c12[2] = Scalar(1);
  c13[2] = Scalar(1);
  c23[0] = Scalar(1);
  CHECK_THROWS_AS(LieAlgebra::validate_structure(
                      3, ScalarMode::real, {}, {{0, 1, c12}, {0, 2, c13}, {1, 2, c23}}),
                  JacobiViolation);
}

TEST_CASE("bracket bilinearity and catalog identities") {
  auto h = catalog_algebra("heisenberg");
  CHECK(h->bracket(unit(3, 0), unit(3, 1)) == unit(3, 2));  // [e1,e2] = e3
  auto e2alg = catalog_algebra("e2");
  Vec br = e2alg->bracket(unit(3, 0), unit(3, 2));  // [e1,e3] = -e2
  CHECK(br[1] == Scalar(-1));
  // antisymmetry on a random-ish combination
  Vec x{Scalar(2), Scalar(-1), Scalar(Rational(1, 3))};
  CHECK(e2alg->bracket(x, x) == Vec(3));
}

TEST_CASE("series: heisenberg nilpotent of class 2, af1 solvable not nilpotent") {
  auto h = catalog_algebra("heisenberg");
  auto lcs = h->lower_central_series();
  REQUIRE(lcs.size() == 3);
  CHECK(lcs[1].dim() == 1);  // span(e3)
  CHECK(lcs[2].dim() == 0);
  CHECK(h->is_nilpotent());

  auto af1 = catalog_algebra("af1");
  auto ds = af1->derived_series();
  REQUIRE(ds.size() == 3);
  CHECK(ds[1].dim() == 1);  // span(e2)
  CHECK(ds[2].dim() == 0);
  CHECK(af1->is_solvable());
  CHECK(!af1->is_nilpotent());
  auto lcs2 = af1->lower_central_series();
  CHECK(lcs2.back().dim() == 1);  // stabilizes at span(e2)

  auto ab = catalog_algebra("abelian(3)");
  CHECK(ab->derived_series().size() == 2);
}

TEST_CASE("nilradical") {
  auto af1 = catalog_algebra("af1");
  Subspace n = af1->nilradical();
  CHECK(n.dim() == 1);
  CHECK(n.contains(unit(2, 1)));

  auto h = catalog_algebra("heisenberg");
  CHECK(h->nilradical().contains(unit(3, 2)));

  auto ab = catalog_algebra("abelian(2)");
  CHECK(ab->nilradical().dim() == 0);

  // nilradical is ad-invariant and its LCS terminates
  for (const char* id : {"af1", "heisenberg", "e2", "tri(3)"}) {
    auto L = catalog_algebra(id);
    Subspace nn = L->nilradical();
    CHECK(L->is_ideal(nn));
    CHECK(L->lower_central_series(nn).back().dim() == 0);
  }
}

TEST_CASE("center and quotient") {
  auto h = catalog_algebra("heisenberg");
  Subspace z = h->center();
  CHECK(z.dim() == 1);
  CHECK(z.contains(unit(3, 2)));
  auto q = h->quotient(z);
  CHECK(q.algebra->dim() == 2);
  CHECK(q.algebra->derived().dim() == 0);  // abelian quotient

  CHECK(catalog_algebra("abelian(2)")->center().dim() == 2);
  CHECK(catalog_algebra("af1")->center().dim() == 0);

  // quotient projection preserves brackets on all basis pairs (checked
  // inside quotient(); non-ideals are rejected)
  CHECK_THROWS_AS(h->quotient(Subspace::span(3, {unit(3, 0)})), NotAnIdeal);
}

TEST_CASE("triangular flag on the catalog") {
  auto af1 = catalog_algebra("af1");
  FlagCertificate flag = af1->triangular_flag();
  REQUIRE(flag.ideals.size() == 3);
  CHECK(flag.ideals[1].contains(unit(2, 1)));  // I_1 = span(e2)
  // eigenvalue of ad e1 on span(e2) is 1
  CHECK(flag.step_functionals[0][0] == Scalar(1));

  auto h = catalog_algebra("heisenberg");
  FlagCertificate hf = h->triangular_flag();
  for (const auto& mu : hf.step_functionals)
    for (const auto& v : mu) CHECK(v.is_zero());  // nilpotent: all zero

  auto t3 = catalog_algebra("tri(3)");
  CHECK(t3->triangular_flag().ideals.size() == 7);

  CHECK_THROWS_AS(catalog_algebra("e2")->triangular_flag(), NotTriangular);
  try {
    catalog_algebra("e2")->triangular_flag();
  } catch (const NotTriangular& e) {
    std::string msg = e.what();
    CHECK(msg.find("e1") != std::string::npos);  // witness named
  }
}

TEST_CASE("irrational eigenvalues are a distinct outcome") {
  // [e1,e2] = e3, [e1,e3] = 2 e2: ad e1 on span(e2,e3) has char poly x^2 - 2
  Vec c12(3), c13(3);
  c12[2] = Scalar(1);
  c13[1] = Scalar(2);
  auto L = LieAlgebra::validate_structure(3, ScalarMode::real, {},
                                          {{0, 1, c12}, {0, 2, c13}});
  CHECK(L->is_solvable());
  CHECK_THROWS_AS(L->triangular_flag(), IrrationalEigenvalues);
}

TEST_CASE("complex mode certifies e2 via Gaussian eigenvalues") {
  auto e2c = catalog_algebra("e2", ScalarMode::complex_gauss);
  FlagCertificate flag = e2c->triangular_flag();
  CHECK(flag.ideals.size() == 4);
  // the first step eigenvalue functional on e1 is +-i
  Scalar mu = flag.step_functionals[0][0];
  CHECK(mu * mu == Scalar(-1));
}

TEST_CASE("quotient of tri(2) by its center is af1-like") {
  auto t2 = catalog_algebra("tri(2)");
  Subspace z = t2->center();
  CHECK(z.dim() == 1);
  auto q = t2->quotient(z);
  CHECK(q.algebra->dim() == 2);
  CHECK(q.algebra->derived().dim() == 1);
}

TEST_CASE("algebra json round trip") {
  for (const char* id : {"af1", "heisenberg", "e2", "tri(3)"}) {
    auto L = catalog_algebra(id);
    Json j = algebra_to_json(*L);
    auto L2 = algebra_from_json(j);
    CHECK(L2->dim() == L->dim());
    for (int i = 0; i < L->dim(); ++i)
      for (int jj = 0; jj < L->dim(); ++jj)
        CHECK(L2->bracket_basis(i, jj) == L->bracket_basis(i, jj));
  }
  // omitted pairs mean zero bracket
  auto L = algebra_from_json(Json::parse(R"({"dim": 2, "mode": "real"})"));
  CHECK(L->derived().dim() == 0);
}

TEST_CASE("split index detects adapted bases") {
  CHECK(catalog_algebra("af1")->split_index() == 1);
  CHECK(catalog_algebra("heisenberg")->split_index() == 2);
  CHECK(catalog_algebra("e2")->split_index() == 1);
  CHECK(catalog_algebra("tri(3)")->split_index() == 3);
  CHECK(catalog_algebra("abelian(4)")->split_index() == 4);
}

TEST_CASE("lcs depth weights") {
  auto h = catalog_algebra("heisenberg");
  CHECK(h->lcs_depth(unit(3, 0)) == 1);
  CHECK(h->lcs_depth(unit(3, 2)) == 2);
}
