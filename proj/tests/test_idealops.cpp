#include "doctest.h"
#include "nd/errors.hpp"
#include "nd/idealops.hpp"

using namespace nd;

namespace {

RingPtr base_ring(std::vector<std::string> names) {
  std::vector<VarInfo> v;
  for (auto& n : names) v.push_back({n, VarRole::Base});
  return Ring::make(Field::rationals(), v);
}

Ideal ideal(const RingPtr& r, std::vector<std::string> s) {
  std::vector<Poly> g;
  for (auto& t : s) g.push_back(parse_poly(r, t));
  return Ideal(r, g);
}

bool same(const Ideal& a, const Ideal& b) {
  for (auto& g : a.gens())
    if (!b.contains(g)) return false;
  for (auto& g : b.gens())
    if (!a.contains(g)) return false;
  return true;
}

// All monomials of total degree <= d.
std::vector<Poly> monomial_grid(const RingPtr& r, unsigned d) {
  std::vector<Poly> out;
  for (unsigned a = 0; a <= d; ++a)
    for (unsigned b = 0; a + b <= d; ++b) {
      Monomial m(r->nvars());
      m.set(0, a);
      m.set(1, b);
      out.push_back(Poly::monomial(r, m, Coeff(1)));
    }
  return out;
}

}  // namespace

TEST_CASE("intersection") {
  auto R = base_ring({"x", "y"});
  CHECK(same(intersect(ideal(R, {"x"}), ideal(R, {"y"})), ideal(R, {"x*y"})));
  auto I = ideal(R, {"x^2", "y"});
  CHECK(same(intersect(I, I), I));
  auto K = intersect(I, ideal(R, {"x"}));
  CHECK(same(K, ideal(R, {"x^2", "x*y"})));
  // Grid check against the definition.
  auto X = ideal(R, {"x"});
  for (auto& m : monomial_grid(R, 4)) CHECK(K.contains(m) == (I.contains(m) && X.contains(m)));
}

TEST_CASE("quotient") {
  auto R = base_ring({"x", "y"});
  CHECK(same(ideal_quotient(ideal(R, {"x^2"}), ideal(R, {"x"})), ideal(R, {"x"})));
  CHECK(same(ideal_quotient(ideal(R, {"x*y"}), ideal(R, {"x"})), ideal(R, {"y"})));
  auto I = intersect(ideal(R, {"x"}), ideal(R, {"y"}));
  auto Q = ideal_quotient(I, ideal(R, {"x"}));
  CHECK(same(Q, ideal(R, {"y"})));
  auto x = Poly::var(R, "x");
  for (auto& m : monomial_grid(R, 4)) CHECK(Q.contains(m) == I.contains(m * x));
}

TEST_CASE("elimination") {
  std::vector<VarInfo> v{{"x", VarRole::Base}, {"Y", VarRole::Algebra}};
  auto R = Ring::make(Field::rationals(), v);
  CHECK(same(eliminate(ideal(R, {"Y - x^2", "Y"}), {"Y"}), ideal(R, {"x^2"})));
  CHECK(eliminate(ideal(R, {"Y - x^2"}), {"Y"}).gens().empty());
  auto E = eliminate(ideal(R, {"Y^2 - x", "Y*x"}), {"Y"});
  // Lex oracle: basis elements free of Y.
  auto L = Ring::make(Field::rationals(), v, MonomialOrder::lex());
  auto gl = buchberger({parse_poly(L, "Y^2 - x"), parse_poly(L, "Y*x")}, L->elimination_ring({"Y"}));
  std::vector<Poly> keep;
  for (auto& g : gl.gens)
    if (!g.uses_var(0)) keep.push_back(g.to_ring(R));
  CHECK(same(E, Ideal(R, keep)));
  CHECK(E.contains(parse_poly(R, "x^2")));
}

TEST_CASE("radical membership") {
  auto R = base_ring({"x", "y"});
  auto r1 = radical_membership(Poly::var(R, "x"), ideal(R, {"x^2"}));
  CHECK(r1.member);
  CHECK(r1.exponent == 2u);
  CHECK_FALSE(radical_membership(Poly::constant(R, 1), ideal(R, {"x"})).member);
  auto r3 = radical_membership(parse_poly(R, "x + y"), ideal(R, {"x^2", "y^2"}));
  CHECK(r3.member);
  REQUIRE(r3.exponent);
  CHECK(*r3.exponent <= 3u);
  CHECK_FALSE(ideal(R, {"x^2", "y^2"}).contains(parse_poly(R, "x + y").pow(*r3.exponent - 1)));
}

TEST_CASE("local membership") {
  auto R = base_ring({"x", "y"});
  auto x = Poly::var(R, "x");
  CHECK(local_membership(x, ideal(R, {"(1 + y)*x"})));
  CHECK_FALSE(local_membership(x, ideal(R, {"y*x"})));
  CHECK(local_membership(x * x, ideal(R, {"x"})));
}

TEST_CASE("krull dimension") {
  auto R = base_ring({"x1", "x2"});
  CHECK(krull_dim(ideal(R, {"x1"})) == 1);
  CHECK(krull_dim(ideal(R, {"x1", "x2"})) == 0);
  CHECK(krull_dim(Ideal(R, {})) == 2);
  CHECK(krull_dim(ideal(R, {"1"})) == -1);
}

TEST_CASE("m-primary") {
  auto R = base_ring({"x1", "x2"});
  CHECK(is_m_primary_local(ideal(R, {"x1", "x2"}), 2));
  CHECK_FALSE(is_m_primary_local(ideal(R, {"x1"}), 5));
  CHECK(is_m_primary_local(ideal(R, {"x1^2", "x2^3"}), 4));
  CHECK_FALSE(is_m_primary_local(ideal(R, {"x1^2", "x2^3"}), 3));
}

TEST_CASE("power in ideal") {
  auto R = base_ring({"x", "y"});
  auto x = Poly::var(R, "x");
  CHECK(power_in_ideal(x, ideal(R, {"x^2"}), 4) == 2u);
  CHECK_FALSE(power_in_ideal(x, ideal(R, {"y"}), 4));
  CHECK(power_in_ideal(parse_poly(R, "x + x^2"), ideal(R, {"x^3"}), 5) == 3u);
}

TEST_CASE("divide exact") {
  auto R = base_ring({"x", "y"});
  auto x = Poly::var(R, "x");
  auto M = ideal(R, {"x^10"});
  CHECK(M.contains(parse_poly(R, "x^3") - x * divide_exact(parse_poly(R, "x^3"), x, M)));
  auto M2 = ideal(R, {"x^4"});
  auto a = parse_poly(R, "x^2 + x^5"), d = parse_poly(R, "x^2");
  CHECK(M2.contains(a - d * divide_exact(a, d, M2)));
  CHECK_THROWS_AS(divide_exact(Poly::var(R, "y"), x, ideal(R, {"x^3"})), NotDivisible);
}
