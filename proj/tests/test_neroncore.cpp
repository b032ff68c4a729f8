#include <random>

#include "doctest.h"
#include "neron_internal.hpp"
#include "nd/errors.hpp"

using namespace nd;

namespace {

RingPtr base2() { return Ring::make(Field::rationals(), {{"x1", VarRole::Base}, {"x2", VarRole::Base}}); }

Problem make_problem(const std::vector<std::string>& ys, const std::vector<std::string>& rels,
                     const std::vector<std::string>& map, unsigned bound) {
  std::vector<VarInfo> v{{"x1", VarRole::Base}, {"x2", VarRole::Base}};
  for (const auto& y : ys) v.push_back({y, VarRole::Algebra});
  Problem pb;
  pb.b.ring = Ring::make(Field::rationals(), v);
  for (const auto& r : rels) pb.b.relations.push_back(parse_poly(pb.b.ring, r));
  RingPtr b = base2();
  for (const auto& m : map) pb.map.push_back(parse_poly(b, m));
  pb.bound = bound;
  return pb;
}

Problem node(unsigned bound, const std::string& y1 = "x1") {
  return make_problem({"Y1", "Y2"}, {"Y1*Y2 - x1*x2"}, {y1, "x2"}, bound);
}

bool all_ok(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.ok) return false;
  return true;
}

// Every term has degree >= 2 in the named variables.
bool in_square(const Poly& q, const std::vector<std::vector<std::string>>& tvars) {
  std::vector<bool> mask(q.ring()->nvars(), false);
  for (const auto& row : tvars)
    for (const auto& nm : row) mask[q.ring()->require_index(nm)] = true;
  for (const auto& t : q.terms())
    if (t.m.degree_in(mask) < 2) return false;
  return true;
}

// y' is a root of every relation modulo (x)^N.
bool is_root(const Problem& pb) {
  JetContext ctx = jet_context(pb);
  for (const auto& g : pb.b.all_relations())
    if (!ctx.normalize(at_point(pb, g), pb.bound).is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("regular pair and absorption on the node") {
  NeronConfig cfg;
  Problem pb = node(17);
  ParameterPair pair = choose_regular_pair(pb, cfg);
  CHECK(pair.branch == 'b');
  CHECK(pair.gamma == parse_poly(base2(), "x2"));
  CHECK(pair.gamma1 == parse_poly(base2(), "x1"));
  Absorbed ab = absorb_parameters(pb, pair, cfg);
  CHECK(ab.t == 1);
  CHECK(ab.pb.b.relations.size() == 3);
  CHECK(is_root(ab.pb));
  Prepared pr = prepare_free_conormal(ab.pb);
  CHECK(pr.z_begin == 3);
  CHECK(pr.pb.b.relations.size() == 12);
  CHECK(pr.pb.b.algebra_vars().size() == 18);
  CHECK(is_root(pr.pb));
}

TEST_CASE("a truncation of b(y') serves as gamma") {
  NeronConfig cfg;
  Problem pb = node(17, "x1 + x2^17");
  ParameterPair pair = choose_regular_pair(pb, cfg);
  CHECK(pair.gamma == parse_poly(base2(), "x2"));
  CHECK(pair.gamma1 == parse_poly(base2(), "x1"));
  Absorbed ab = absorb_parameters(pb, pair, cfg);
  CHECK(is_root(ab.pb));
}

TEST_CASE("jacobian systems, identity battery and gate") {
  NeronConfig cfg;
  Problem pb = node(17);
  ParameterPair pair = choose_regular_pair(pb, cfg);
  Prepared pr = prepare_free_conormal(absorb_parameters(pb, pair, cfg).pb);
  JacobianSystem s0 = find_jacobian_system(pr.pb, pair.gamma, cfg);
  JacobianSystem s1 = find_jacobian_system(pr.pb, pair.gamma1, cfg);
  CHECK(s0.d == parse_poly(base2(), "x2^3"));
  CHECK(s1.d == parse_poly(base2(), "x1^3"));
  std::string why;
  CHECK_MESSAGE(identity_battery(pr.pb, s0, &why), why);
  CHECK_MESSAGE(identity_battery(pr.pb, s1, &why), why);
  CHECK(m_primary_gate(pr.pb, s0.d, s1.d));
  Problem low = pr.pb;
  low.bound = 16;
  CHECK_FALSE(m_primary_gate(low, s0.d, s1.d));
  JacobianSystem bad = s0;
  bad.ls[0] += Poly::var(pr.pb.b.ring, "Y1");
  CHECK_FALSE(identity_battery(pr.pb, bad));
}

TEST_CASE("divided differences telescope") {
  auto R = Ring::make(Field::rationals(), {{"x", VarRole::Base}, {"u", VarRole::Algebra}, {"v", VarRole::Algebra}});
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-3, 3), e(0, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Term> terms;
    for (int k = 0; k < 6; ++k) {
      Monomial m(3);
      for (std::size_t i = 0; i < 3; ++i) m.set(i, static_cast<unsigned>(e(rng)));
      terms.push_back({m, Coeff(c(rng))});
    }
    Poly p = Poly::from_terms(R, terms);
    std::vector<Poly> a{parse_poly(R, "x + u^2"), parse_poly(R, "v - 1")};
    std::vector<Poly> b{parse_poly(R, "2*x*v"), parse_poly(R, "u")};
    std::vector<Poly> rest{Poly::var(R, "x"), Poly(R), Poly(R)};
    auto dd = divided_differences(p, {1, 2}, a, b, rest, R);
    Poly lhs = p.substitute(R, {rest[0], a[0], a[1]}) - p.substitute(R, {rest[0], b[0], b[1]});
    Poly rhs = (a[0] - b[0]) * dd[0] + (a[1] - b[1]) * dd[1];
    CHECK(lhs == rhs);
  }
}

TEST_CASE("taylor remainder on the hand instance") {
  // n = 1, f' = Y^2, y' = 0, s = 1, d' = x1, G = 1.
  Problem pb = make_problem({"Y"}, {"Y^2"}, {"0"}, 4);
  JacobianSystem sys;
  sys.subset = {0};
  sys.cols = {{0}};
  sys.minors = {parse_poly(pb.b.ring, "2*Y")};
  sys.ls = {Poly::constant(pb.b.ring, 1)};
  sys.p = sys.minors[0];
  auto RB = Ring::make(Field::rationals(),
                       {{"x1", VarRole::Base}, {"x2", VarRole::Base}, {"Y'", VarRole::Algebra}, {"T1", VarRole::Aux}});
  StageInput in;
  in.pb = &pb;
  in.sys = &sys;
  in.ring = RB;
  in.center = {Poly(RB)};
  in.ynew = {"Y'"};
  in.tvars = {{"T1"}};
  in.dd = Poly::var(RB, "x1");
  in.sigma = Poly::constant(RB, 1);
  in.b = {Poly(RB)};
  StageOutput out = build_stage(in);
  CHECK(out.p == 2);
  CHECK(out.q[0] == parse_poly(RB, "T1^2"));
  CHECK(out.h[0] == parse_poly(RB, "Y' - x1*T1"));
  CHECK(out.g[0] == parse_poly(RB, "T1 + T1^2"));
  CHECK(out.s1 == parse_poly(RB, "1 + 2*T1"));
  // sigma^p f(Y') - dd^2 g - ... = sum h_j hcoef_j with f(c) = 0 and P(c) = 0.
  Poly lhs = parse_poly(RB, "Y'^2") - in.dd * in.dd * out.g[0] - in.dd * Poly::var(RB, "T1") * (out.pc - in.dd);
  CHECK(lhs == out.h[0] * out.hcoef[0][0]);
}

TEST_CASE("end to end on the node") {
  NeronConfig cfg;
  DesingCertificate c = desingularize(node(17), cfg);
  CHECK_FALSE(c.trivial);
  CHECK(c.neff == 11);
  auto rs = verify_certificate(c);
  for (const auto& r : rs) CHECK_MESSAGE(r.ok, r.name << ": " << r.detail);
  for (const auto& q : c.q1) CHECK(in_square(q, c.t1));
  for (const auto& q : c.q2) CHECK(in_square(q, c.t2));

  SUBCASE("tampered relation is rejected") {
    DesingCertificate bad = c;
    bad.result.relations[0] += Poly::var(bad.result.ring, "x1");
    CHECK_FALSE(all_ok(verify_certificate(bad)));
  }
  SUBCASE("tampered jet is rejected") {
    DesingCertificate bad = c;
    bad.point.at("Y1").rep += Poly::var(bad.point.at("Y1").rep.ring(), "x2");
    CHECK_FALSE(verify_certificate(bad)[2].ok);
  }
}

TEST_CASE("end to end with an inexact approximation") {
  NeronConfig cfg;
  DesingCertificate c = desingularize(node(17, "x1 + x2^17"), cfg);
  auto rs = verify_certificate(c);
  for (const auto& r : rs) CHECK_MESSAGE(r.ok, r.name << ": " << r.detail);
}

TEST_CASE("bound too small on the node at N = 8") {
  NeronConfig cfg;
  CHECK_THROWS_AS(desingularize(node(8), cfg), BoundTooSmall);
}

TEST_CASE("smooth short circuit") {
  NeronConfig cfg;
  DesingCertificate c = desingularize(make_problem({"Y"}, {"Y - x1"}, {"x1"}, 6), cfg);
  CHECK(c.trivial);
  CHECK(c.neff == 6);
  CHECK(all_ok(verify_certificate(c)));
}

TEST_CASE("cusp-like node has no regular pair") {
  NeronConfig cfg;
  Problem pb = make_problem({"Y"}, {"Y^2 - x1^2 - x1^3"}, {"x1 + 1/2*x1^2 - 1/8*x1^3"}, 4);
  CHECK_THROWS_AS(choose_regular_pair(pb, cfg), NoRegularPair);
  CHECK_THROWS_AS(desingularize(pb, cfg), BoundTooSmall);
}

TEST_CASE("problem validation") {
  CHECK_THROWS_AS(check_problem(node(4, "x1 + x2")), std::invalid_argument);
  CHECK_THROWS_AS(check_problem(node(4, "1 + x1")), std::invalid_argument);
  CHECK_NOTHROW(check_problem(node(4)));
}
