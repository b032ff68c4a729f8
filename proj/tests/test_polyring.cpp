#include <random>

#include "doctest.h"
#include "nd/matrix.hpp"

using namespace nd;

namespace {

RingPtr ring_of(std::vector<std::string> names, Field f = Field::rationals(),
                MonomialOrder o = MonomialOrder::degrevlex()) {
  std::vector<VarInfo> v;
  for (auto& n : names) v.push_back({n, VarRole::Algebra});
  return Ring::make(f, v, o);
}

Poly random_poly(const RingPtr& r, std::mt19937& rng, unsigned maxdeg, int nterms) {
  std::uniform_int_distribution<int> coef(-5, 5), ex(0, static_cast<int>(maxdeg));
  std::vector<Term> ts;
  for (int k = 0; k < nterms; ++k) {
    Monomial m(r->nvars());
    for (std::size_t i = 0; i < r->nvars(); ++i) m.set(i, ex(rng));
    ts.push_back({m, Coeff(coef(rng))});
  }
  return Poly::from_terms(r, ts);
}

// First-row cofactor expansion, no memo, no row reordering.
Poly cofactor_det(const PolyMatrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return Poly::constant(m.ring(), 1);
  if (n == 1) return m.at(0, 0);
  Poly acc(m.ring());
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rs, cs;
    for (std::size_t k = 1; k < n; ++k) rs.push_back(k);
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) cs.push_back(k);
    Poly t = m.at(0, j) * cofactor_det(m.submatrix(rs, cs));
    acc += (j % 2) ? -t : t;
  }
  return acc;
}

}  // namespace

TEST_CASE("arith basics") {
  auto R = ring_of({"x", "y"});
  auto x = Poly::var(R, "x"), y = Poly::var(R, "y");
  CHECK((x + y) + (x - y) == x.scale(2));
  CHECK((x + Poly::constant(R, 1)).pow(2) == x * x + x.scale(2) + Poly::constant(R, 1));
  auto F = ring_of({"x"}, Field::prime(5));
  auto fx = Poly::var(F, "x");
  CHECK((fx.scale(3) * fx.scale(2)) == fx * fx);
  CHECK_THROWS(Field::prime(6));
}

TEST_CASE("ring axioms on random triples") {
  auto R = ring_of({"a", "b", "c"});
  std::mt19937 rng(7);
  for (int it = 0; it < 30; ++it) {
    auto p = random_poly(R, rng, 3, 5), q = random_poly(R, rng, 3, 5), r = random_poly(R, rng, 2, 4);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p - p).is_zero());
  }
}

TEST_CASE("mixed rings rejected") {
  auto R = ring_of({"x"});
  auto S = ring_of({"x"}, Field::prime(7));
  CHECK_THROWS(Poly::var(R, 0) + Poly::var(S, 0));
}

TEST_CASE("substitute") {
  auto R = ring_of({"x1", "x2", "Y1", "Y2"});
  auto p = parse_poly(R, "Y1*Y2 - x1*x2");
  auto im = identity_images(R, R, {{"Y1", Poly::var(R, "x1")}, {"Y2", Poly::var(R, "x2")}});
  CHECK(p.substitute(R, im).is_zero());
  auto q = parse_poly(R, "Y1^2 - x1");
  auto im2 = identity_images(R, R, {{"Y1", Poly::var(R, "x1")}});
  CHECK(q.substitute(R, im2) == parse_poly(R, "x1^2 - x1"));
  CHECK(q.substitute(R, identity_images(R, R)) == q);
}

TEST_CASE("parse and print") {
  auto R = ring_of({"x1", "x2", "Y1", "Y2", "Y1'"});
  auto p = parse_poly(R, "3*x1^2*Y2 - 1/2*x2");
  CHECK(p.to_string() == "3*x1^2*Y2 - 1/2*x2");
  CHECK(parse_poly(R, p.to_string()) == p);
  CHECK(parse_poly(R, "-(Y1' - 1)^2").to_string() == "-Y1'^2 + 2*Y1' - 1");
  CHECK(parse_poly(R, "0").to_string() == "0");
  CHECK_THROWS_WITH_AS(parse_poly(R, "x3 + 1"), doctest::Contains("x3"), std::invalid_argument);
  CHECK_THROWS(parse_poly(R, "x1 +"));
}

TEST_CASE("orders") {
  auto R = ring_of({"x", "y", "z"});
  auto L = ring_of({"x", "y", "z"}, Field::rationals(), MonomialOrder::lex());
  CHECK(parse_poly(R, "x*z + y^2").lm() == parse_poly(R, "y^2").lm());
  CHECK(parse_poly(L, "x*z + y^2").lm() == parse_poly(L, "x*z").lm());
  auto B = R->elimination_ring({"z"});
  CHECK(B->name(0) == "z");
  CHECK(parse_poly(B, "z + x^5").lm() == parse_poly(B, "z").lm());
}

TEST_CASE("jacobian") {
  auto R = ring_of({"x1", "x2", "Y1", "Y2"});
  auto f = parse_poly(R, "Y1*Y2 - x1*x2");
  auto J = jacobian({f}, {2, 3}, R);
  CHECK(J.at(0, 0) == Poly::var(R, "Y2"));
  CHECK(J.at(0, 1) == Poly::var(R, "Y1"));
  auto J2 = jacobian({parse_poly(R, "Y1^2 - x1"), parse_poly(R, "Y2^2 - x2")}, {2, 3}, R);
  CHECK(J2.at(0, 0) == parse_poly(R, "2*Y1"));
  CHECK(J2.at(0, 1).is_zero());
  CHECK(J2.at(1, 1) == parse_poly(R, "2*Y2"));
  CHECK(jacobian({Poly::constant(R, 3)}, {2, 3}, R).is_zero());
}

TEST_CASE("minors agree with cofactor oracle") {
  auto R = ring_of({"a", "b"});
  std::mt19937 rng(11);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (int it = 0; it < 4; ++it) {
      PolyMatrix m(R, n, n + 1);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= n; ++j) m.at(i, j) = random_poly(R, rng, 2, 2);
      for (std::size_t r = 1; r <= n; ++r)
        for (const auto& mi : minors(m, r)) CHECK(mi.value == cofactor_det(m.submatrix(mi.rows, mi.cols)));
    }
  }
  auto S = ring_of({"a", "b", "c", "d"});
  PolyMatrix m(S, 2, 2);
  m.at(0, 0) = Poly::var(S, "a");
  m.at(0, 1) = Poly::var(S, "b");
  m.at(1, 0) = Poly::var(S, "c");
  m.at(1, 1) = Poly::var(S, "d");
  CHECK(minors(m, 2)[0].value == parse_poly(S, "a*d - b*c"));
  CHECK_THROWS(minors(m, 3));
  // Integer 3x3.
  PolyMatrix z(S, 3, 3);
  int vals[9] = {2, -1, 3, 0, 4, 5, 7, 1, -2};
  for (int k = 0; k < 9; ++k) z.at(k / 3, k % 3) = Poly::constant(S, vals[k]);
  CHECK(z.det() == Poly::constant(S, 2 * (-8 - 5) + 1 * (0 - 35) + 3 * (0 - 28)));
}

TEST_CASE("adjugate identity") {
  auto R = ring_of({"a", "b", "c", "d"});
  PolyMatrix m(R, 2, 2);
  m.at(0, 0) = Poly::var(R, "a");
  m.at(0, 1) = Poly::var(R, "b");
  m.at(1, 0) = Poly::var(R, "c");
  m.at(1, 1) = Poly::var(R, "d");
  auto adj = m.adjugate();
  CHECK(adj.at(0, 0) == Poly::var(R, "d"));
  CHECK(adj.at(0, 1) == -Poly::var(R, "b"));
  CHECK(adj.at(1, 0) == -Poly::var(R, "c"));
  CHECK(PolyMatrix::identity(R, 3).adjugate() == PolyMatrix::identity(R, 3));
  std::mt19937 rng(3);
  for (int it = 0; it < 5; ++it) {
    PolyMatrix q(R, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) q.at(i, j) = random_poly(R, rng, 2, 3);
    auto dI = PolyMatrix::identity(R, 3).scale(cofactor_det(q));
    CHECK(q.adjugate() * q == dI);
    CHECK(q * q.adjugate() == dI);
  }
  CHECK_THROWS(PolyMatrix(R, 2, 3).adjugate());
}

TEST_CASE("complete to square") {
  auto R = ring_of({"x1", "x2", "Y1", "Y2"});
  PolyMatrix J(R, 1, 2);
  J.at(0, 0) = Poly::var(R, "Y2");
  J.at(0, 1) = Poly::var(R, "Y1");
  auto c1 = complete_to_square(J, {0});
  CHECK(c1.sign == 1);
  CHECK(c1.h.at(1, 1).is_one());
  CHECK(c1.h.det() == Poly::var(R, "Y2"));
  auto c2 = complete_to_square(J, {1});
  CHECK(c2.h.at(1, 0).is_one());
  CHECK(c2.h.det() == Poly::var(R, "Y1").scale(c2.sign));
  CHECK(c2.sign == -1);
  std::mt19937 rng(5);
  auto S = ring_of({"a", "b"});
  for (int it = 0; it < 10; ++it) {
    PolyMatrix m(S, 2, 4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 4; ++j) m.at(i, j) = random_poly(S, rng, 2, 2);
    for (const auto& mi : minors(m, 2)) {
      auto c = complete_to_square(m, mi.cols);
      CHECK(c.h.det() == mi.value.scale(c.sign));
    }
  }
  PolyMatrix sq(S, 2, 2);
  sq.at(0, 0) = Poly::var(S, "a");
  sq.at(1, 1) = Poly::var(S, "b");
  auto c3 = complete_to_square(sq, {0, 1});
  CHECK(c3.sign == 1);
  CHECK(c3.h == sq);
}
