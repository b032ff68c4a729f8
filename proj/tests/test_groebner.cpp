#include <algorithm>
#include <random>

#include "doctest.h"
#include "nd/groebner.hpp"

using namespace nd;

namespace {

RingPtr ring_of(std::vector<std::string> names, MonomialOrder o = MonomialOrder::degrevlex(),
                Field f = Field::rationals()) {
  std::vector<VarInfo> v;
  for (auto& n : names) v.push_back({n, VarRole::Algebra});
  return Ring::make(f, v, o);
}

std::vector<Poly> parse_all(const RingPtr& r, std::vector<std::string> s) {
  std::vector<Poly> out;
  for (auto& t : s) out.push_back(parse_poly(r, t));
  return out;
}

// Textbook division: reduce the leading term if possible, otherwise move it
// to the remainder. Uses only public arithmetic.
Poly naive_remainder(Poly p, const std::vector<Poly>& g) {
  const RingPtr& R = p.ring();
  Poly rem(R);
  while (!p.is_zero()) {
    bool done = false;
    for (const auto& d : g) {
      if (d.lm().divides(p.lm())) {
        Poly q = Poly::monomial(R, p.lm() / d.lm(), p.lc() / d.lc());
        p = p - q * d;
        done = true;
        break;
      }
    }
    if (!done) {
      Poly lt = Poly::monomial(R, p.lm(), p.lc());
      rem += lt;
      p -= lt;
    }
  }
  return rem;
}

Poly expand(const std::vector<Poly>& c, const std::vector<Poly>& g, const RingPtr& R) {
  Poly s(R);
  for (std::size_t i = 0; i < g.size(); ++i) s += c[i] * g[i].to_ring(R);
  return s;
}

}  // namespace

TEST_CASE("normal form") {
  auto R = ring_of({"x", "y"});
  auto x = Poly::var(R, "x");
  CHECK(normal_form(x * x, std::vector<Poly>{x}).is_zero());
  CHECK(normal_form(parse_poly(R, "x*y - 1"), std::vector<Poly>{x}) == Poly::constant(R, -1));
  auto g = buchberger(parse_all(R, {"x^2 - y", "x*y - 1"}));
  auto p = parse_poly(R, "x^2*y");
  CHECK(normal_form(p, g) == naive_remainder(p, g.gens));
}

TEST_CASE("buchberger examples") {
  auto R = ring_of({"x", "y"});
  auto g = buchberger(parse_all(R, {"x", "y"}));
  REQUIRE(g.gens.size() == 2);
  auto L = ring_of({"x", "y"}, MonomialOrder::lex());
  auto gl = buchberger(parse_all(L, {"x^2 - y", "x*y - 1"}));
  REQUIRE(gl.gens.size() == 2);
  CHECK(gl.gens[0] == parse_poly(L, "y^3 - 1"));
  CHECK(gl.gens[1] == parse_poly(L, "x - y^2"));
  CHECK(buchberger({Poly(R)}, R).is_zero());
  CHECK(buchberger(parse_all(R, {"x", "x + 1"})).is_unit());
}

TEST_CASE("randomized kernel soundness") {
  std::mt19937 rng(2024);
  for (Field f : {Field::rationals(), Field::prime(32003)}) {
    auto R = ring_of({"a", "b", "c"}, MonomialOrder::degrevlex(), f);
    std::uniform_int_distribution<int> coef(-4, 4), ex(0, 2), nt(2, 3);
    for (int it = 0; it < 8; ++it) {
      std::vector<Poly> gens;
      for (int k = 0; k < 3; ++k) {
        std::vector<Term> ts;
        int n = nt(rng);
        for (int t = 0; t < n; ++t) {
          Monomial m(3);
          for (std::size_t i = 0; i < 3; ++i) m.set(i, ex(rng));
          if (m.degree() > 3) continue;
          ts.push_back({m, Coeff(coef(rng))});
        }
        gens.push_back(Poly::from_terms(R, ts));
      }
      auto g = buchberger(gens, R);
      CHECK(is_groebner(g.gens));
      auto shuffled = gens;
      std::reverse(shuffled.begin(), shuffled.end());
      CHECK(buchberger(shuffled, R).gens == g.gens);
      auto tb = buchberger_tracked(gens, R);
      CHECK(tb.basis.gens == g.gens);
      for (std::size_t k = 0; k < tb.basis.gens.size(); ++k)
        CHECK(expand(tb.rows[k], gens, R) == tb.basis.gens[k]);
      for (const auto& p : gens) {
        auto q = p * gens[0] + Poly::var(R, 0) * gens[1];
        auto lc = lift(q, tb);
        CHECK(lc.member());
        CHECK(expand(lc.coefficients, gens, R) + lc.remainder == q);
      }
    }
  }
}

TEST_CASE("lift") {
  auto R = ring_of({"x", "y"});
  auto c = lift(parse_poly(R, "x^2 + x*y"), parse_all(R, {"x"}));
  CHECK(c.member());
  CHECK(c.coefficients[0] == parse_poly(R, "x + y"));
  auto c2 = lift(Poly::constant(R, 1), parse_all(R, {"x", "y"}));
  CHECK(c2.remainder == Poly::constant(R, 1));
  auto gens = parse_all(R, {"x^2 - y", "x*y - 1"});
  auto p = parse_poly(R, "y^3 - 1");
  auto c3 = lift(p, gens);
  CHECK(c3.member());
  CHECK(expand(c3.coefficients, gens, R) == p);
}

TEST_CASE("syzygies") {
  auto R = ring_of({"x", "y", "z"});
  auto check_all = [&](const std::vector<Poly>& g) {
    auto s = syzygies(g);
    for (const auto& v : s) CHECK(expand(v, g, R).is_zero());
    return s;
  };
  auto s1 = check_all(parse_all(R, {"x", "y"}));
  REQUIRE(!s1.empty());
  // Every syzygy of (x, y) is a multiple of the Koszul pair.
  auto koszul = parse_all(R, {"y", "-x"});
  bool found = false;
  for (auto& v : s1) found |= (v == koszul) || (v[0] == -koszul[0] && v[1] == -koszul[1]);
  CHECK(found);
  auto s2 = check_all(parse_all(R, {"x", "x"}));
  found = false;
  for (auto& v : s2) found |= (v[0] + v[1]).is_zero() && v[0].is_constant() && !v[0].is_zero();
  CHECK(found);
  auto s3 = check_all(parse_all(R, {"x", "y", "z"}));
  CHECK(s3.size() >= 3);
  check_all(parse_all(R, {"x^2 - y", "x*y - 1", "x*z"}));
}
