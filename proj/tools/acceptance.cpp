// One pass/fail line per acceptance criterion. Thresholds are fixed below.
// Usage: acceptance [--known-failures 5,...]
// With --known-failures the exit status is 0 iff exactly the listed criteria fail.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "neron_internal.hpp"
#include "nd/errors.hpp"
#include "nd/format.hpp"
#include "nd/groebner.hpp"

using namespace nd;
namespace fs = std::filesystem;

namespace {

constexpr double kGroebnerSeconds = 10.0;
constexpr double kEndToEndSeconds = 60.0;
constexpr double kSmoothSeconds = 1.0;
constexpr int kRandomIdeals = 24;
constexpr unsigned kHenselPrecision = 8;
constexpr unsigned kGateBoundMax = 12;
constexpr std::uint64_t kSeed = 7;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string fixed(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::fixed << v;
  return s.str();
}

std::set<std::string> failed;

void report(const std::string& id, const std::string& what, bool ok, const std::string& detail) {
  std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  " << what;
  if (!detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << std::endl;
  if (!ok) failed.insert(id);
}

struct Run {
  int code;
  std::string out, err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir() {
  fs::path d = fs::temp_directory_path() / "nd_acceptance";
  fs::create_directories(d);
  return d;
}

std::string write_file(const std::string& name, const std::string& text) {
  fs::path p = workdir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const char* const kNode =
    "char 0\nbound 8\nbase x1 x2\nvars Y1 Y2\nideal: Y1*Y2 - x1*x2\nmap: Y1 -> x1, Y2 -> x2\n";
const char* const kSmooth = "char 0\nbound 6\nbase x1 x2\nvars Y\nideal: Y - x1\nmap: Y -> x1\n";

// binom(1/2, k), computed directly.
Coeff half_binomial(unsigned k) {
  Coeff c = 1;
  for (unsigned i = 0; i < k; ++i) c = c * (Coeff(1, 2) - i) / (i + 1);
  return c;
}

// x1 * sqrt(1 + x1) truncated below degree n, as text.
std::string sqrt_jet_text(unsigned n) {
  std::string out;
  for (unsigned k = 0; k + 1 < n; ++k) {
    Coeff c = half_binomial(k);
    c.canonicalize();
    out += (out.empty() ? "" : " + ") + std::string("(") + c.get_str() + ")*x1^" + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

bool in_square(const Poly& q, const std::vector<std::vector<std::string>>& tvars) {
  std::vector<bool> mask(q.ring()->nvars(), false);
  for (const auto& row : tvars)
    for (const auto& nm : row) mask[q.ring()->require_index(nm)] = true;
  return std::all_of(q.terms().begin(), q.terms().end(), [&](const Term& t) { return t.m.degree_in(mask) >= 2; });
}

// ---- 1

std::string random_poly_text(std::mt19937_64& rng, std::size_t nvars) {
  std::uniform_int_distribution<int> coef(-5, 5), nterms(2, 4), deg(0, 3);
  std::string out;
  int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    int c = coef(rng);
    if (c == 0) c = 1;
    std::string mono = std::to_string(c);
    int left = deg(rng);
    std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
    for (int d = 0; d < left; ++d) mono += "*z" + std::to_string(var(rng) + 1);
    out += (t ? " + " : "") + std::string("(") + mono + ")";
  }
  return out;
}

void criterion_groebner() {
  auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed);
  int spolys = 0, lifts = 0, bad = 0;
  std::string why;
  for (int i = 0; i < kRandomIdeals; ++i) {
    std::size_t n = 2 + static_cast<std::size_t>(i % 3);
    Field f = i % 2 ? Field::prime(32003) : Field::rationals();
    std::vector<VarInfo> vars;
    for (std::size_t v = 0; v < n; ++v) vars.push_back({"z" + std::to_string(v + 1), VarRole::Algebra});
    RingPtr R = Ring::make(f, vars);
    std::vector<Poly> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(parse_poly(R, random_poly_text(rng, n)));
    GroebnerBasis gb = buchberger(gens, R);
    for (std::size_t a = 0; a < gb.gens.size(); ++a)
      for (std::size_t b = a + 1; b < gb.gens.size(); ++b, ++spolys)
        if (!normal_form(spoly(gb.gens[a], gb.gens[b]), gb).is_zero()) {
          ++bad;
          why = "S-polynomial does not reduce to 0";
        }
    for (int perm = 0; perm < 3; ++perm) {
      std::vector<Poly> shuffled = gens;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      GroebnerBasis g2 = buchberger(shuffled, R);
      if (g2.gens.size() != gb.gens.size() || !std::equal(g2.gens.begin(), g2.gens.end(), gb.gens.begin())) {
        ++bad;
        why = "reduced basis depends on generator order";
      }
    }
    TrackedBasis tb = buchberger_tracked(gens, R);
    std::vector<Poly> targets = gens;
    Poly combo(R);
    for (const auto& g : gens) combo += g * parse_poly(R, random_poly_text(rng, n));
    targets.push_back(combo);
    targets.push_back(parse_poly(R, random_poly_text(rng, n)));
    for (std::size_t k = 0; k < targets.size(); ++k, ++lifts) {
      LiftCertificate lc = lift(targets[k], tb);
      Poly re = lc.remainder;
      for (std::size_t j = 0; j < gens.size(); ++j) re += lc.coefficients[j] * gens[j];
      bool must_member = k + 1 < targets.size();
      if (re != targets[k] || (must_member && !lc.member())) {
        ++bad;
        why = "lift certificate does not re-expand";
      }
    }
  }
  double s = since(t0);
  report("1", "groebner kernel soundness", bad == 0 && s < kGroebnerSeconds,
         std::to_string(kRandomIdeals) + " ideals, " + std::to_string(spolys) + " S-polynomials, " +
             std::to_string(lifts) + " lifts, " + fixed(s) + " s < " + fixed(kGroebnerSeconds) + " s" +
             (bad ? "; " + why : ""));
}

// ---- 2, 3 and the supplementary run

Problem problem_of(const std::string& text, unsigned bound) {
  Problem pb = parse_problem(text);
  pb.bound = bound;
  return pb;
}

struct Systems {
  std::vector<std::pair<std::string, std::pair<Problem, JacobianSystem>>> all;
  void add(const std::string& tag, const Problem& st, const JacobianSystem& s) { all.push_back({tag, {st, s}}); }
};

void criteria_battery_and_taylor(Systems& sys, const std::vector<DesingCertificate>& runs) {
  int ok = 0;
  std::string why;
  for (const auto& [tag, ps] : sys.all) {
    std::string w;
    if (identity_battery(ps.first, ps.second, &w)) ++ok;
    else why = tag + ": " + w;
  }
  report("2", "identity battery on every jacobian system", ok == static_cast<int>(sys.all.size()) && ok > 0,
         std::to_string(ok) + "/" + std::to_string(sys.all.size()) + " systems" + (why.empty() ? "" : "; " + why));

  // Hand instance: n = 1, f' = Y^2, y' = 0, s = 1, d' = x1.
  Problem pb = problem_of("base x1 x2\nvars Y\nideal: Y^2\nmap: Y -> 0\n", 4);
  JacobianSystem js;
  js.subset = {0};
  js.cols = {{0}};
  js.minors = {parse_poly(pb.b.ring, "2*Y")};
  js.ls = {Poly::constant(pb.b.ring, 1)};
  js.p = js.minors[0];
  auto RB = Ring::make(Field::rationals(),
                       {{"x1", VarRole::Base}, {"x2", VarRole::Base}, {"Y'", VarRole::Algebra}, {"T1", VarRole::Aux}});
  StageInput in;
  in.pb = &pb;
  in.sys = &js;
  in.ring = RB;
  in.center = {Poly(RB)};
  in.ynew = {"Y'"};
  in.tvars = {{"T1"}};
  in.dd = Poly::var(RB, "x1");
  in.sigma = Poly::constant(RB, 1);
  in.b = {Poly(RB)};
  StageOutput out = build_stage(in);
  bool hand = out.q.size() == 1 && out.q[0] == parse_poly(RB, "T1^2");
  std::size_t qs = 0, good = 0;
  for (const auto& c : runs) {
    for (const auto& q : c.q1) good += in_square(q, c.t1), ++qs;
    for (const auto& q : c.q2) good += in_square(q, c.t2), ++qs;
  }
  report("3", "taylor remainder", hand && qs > 0 && good == qs,
         std::string("hand instance Q = ") + (out.q.empty() ? "?" : out.q[0].to_string()) + "; " +
             std::to_string(good) + "/" + std::to_string(qs) + " remainders in (T)^2 over " +
             std::to_string(runs.size()) + " runs");
}

// ---- 4

void criterion_hensel() {
  RingPtr base = Ring::make(Field::rationals(), {{"x1", VarRole::Base}, {"x2", VarRole::Base}});
  RingPtr R = base->extended({{"Y", VarRole::Algebra}});
  JetContext ctx(base, Ideal(base, {}), kHenselPrecision);
  JetPoint start{{"Y", ctx.make(Poly::constant(base, 1), 1)}};
  HenselStats hs;
  JetPoint got = hensel_lift(ctx, {parse_poly(R, "Y^2 - 1 - x1")}, {"Y"}, start, kHenselPrecision, &hs);
  // Independent scalar Newton on truncated coefficient vectors: y <- y - (y^2 - 1 - x) / (2y).
  std::vector<Coeff> y(kHenselPrecision, 0);
  y[0] = 1;
  auto mul = [](const std::vector<Coeff>& a, const std::vector<Coeff>& b) {
    std::vector<Coeff> c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  auto inv = [&](const std::vector<Coeff>& a) {
    std::vector<Coeff> r(a.size(), 0);
    r[0] = 1 / a[0];
    for (std::size_t k = 1; k < a.size(); ++k) {
      Coeff s = 0;
      for (std::size_t i = 1; i <= k; ++i) s += a[i] * r[k - i];
      r[k] = -s / a[0];
    }
    return r;
  };
  for (int it = 0; it < 5; ++it) {
    std::vector<Coeff> f = mul(y, y);
    f[0] -= 1;
    if (f.size() > 1) f[1] -= 1;
    std::vector<Coeff> two_y = y;
    for (auto& c : two_y) c *= 2;
    std::vector<Coeff> step = mul(f, inv(two_y));
    for (std::size_t k = 0; k < y.size(); ++k) y[k] -= step[k];
  }
  std::vector<Term> terms;
  for (unsigned k = 0; k < kHenselPrecision; ++k) {
    Monomial m(2);
    m.set(0, k);
    terms.push_back({m, y[k]});
  }
  Poly oracle = Poly::from_terms(base, terms);
  bool match = got.at("Y").prec >= kHenselPrecision &&
               ctx.normalize(got.at("Y").rep, kHenselPrecision) == ctx.normalize(oracle, kHenselPrecision);
  bool doubles = !hs.residual_orders.empty();
  std::string orders;
  for (std::size_t i = 0; i < hs.residual_orders.size(); ++i) {
    orders += (i ? "," : "") + std::to_string(hs.residual_orders[i]);
    if (i && hs.residual_orders[i] < std::min(2 * hs.residual_orders[i - 1], kHenselPrecision)) doubles = false;
  }
  report("4", "hensel lifting", match && doubles,
         std::string(match ? "matches" : "differs from") + " scalar newton to x1^" + std::to_string(kHenselPrecision) +
             "; residual orders " + orders);
}

// ---- 5, 6, 7, 8

Run desing_file(const std::string& name, const std::string& text, const std::string& out, unsigned bound = 0) {
  std::string in = write_file(name, text);
  std::vector<std::string> args{"desingularize", in, "--seed", std::to_string(kSeed)};
  if (bound) args.insert(args.end(), {"--bound", std::to_string(bound)});
  if (!out.empty()) {
    fs::remove(out);
    args.insert(args.end(), {"-o", out});
  }
  return cli(args);
}

struct Outputs {
  std::string c5, c6, c7;
};

Outputs criterion_end_to_end(bool record) {
  Outputs o;
  std::string cert = (workdir() / "node8.cert").string();
  auto t0 = Clock::now();
  Run r = desing_file("node8.nd", kNode, cert);
  double s = since(t0);
  o.c5 = std::to_string(r.code) + "\n" + r.out + slurp(cert);
  if (!record) return o;
  bool ok = r.code == 0;
  std::string detail;
  if (ok) {
    Run v = cli({"verify", cert});
    ok = v.code == 0;
    detail = v.out;
    std::replace(detail.begin(), detail.end(), '\n', ';');
  } else {
    detail = "exit " + std::to_string(r.code) + ": " + (r.out.empty() ? r.err : r.out);
    if (!detail.empty() && detail.back() == '\n') detail.pop_back();
  }
  ok = ok && s < kEndToEndSeconds;
  report("5", "end-to-end desingularization of Y1*Y2 - x1*x2 at N = 8", ok,
         detail + "; " + fixed(s) + " s < " + fixed(kEndToEndSeconds) + " s");
  return o;
}

Outputs criterion_gate(bool record, Outputs o) {
  int good = 0;
  std::string bad;
  for (unsigned n = 1; n <= kGateBoundMax; ++n) {
    std::string text = "char 0\nbound " + std::to_string(n) +
                       "\nbase x1 x2\nvars Y\nideal: Y^2 - x1^2*(1 + x1)\nmap: Y -> " + sqrt_jet_text(n) + "\n";
    Run r = desing_file("nodal_" + std::to_string(n) + ".nd", text, "");
    o.c6 += std::to_string(r.code) + "\n" + r.out;
    if (r.code == 2 && r.out == std::string(kBoundTooSmall) + "\n") ++good;
    else bad += " N=" + std::to_string(n) + " exit " + std::to_string(r.code);
  }
  if (record)
    report("6", "bound gate negative control", good == static_cast<int>(kGateBoundMax),
           std::to_string(good) + "/" + std::to_string(kGateBoundMax) + " bounds exit 2 with '" + kBoundTooSmall +
               "'" + bad);
  return o;
}

Outputs criterion_smooth(bool record, Outputs o) {
  std::string cert = (workdir() / "smooth.cert").string();
  auto t0 = Clock::now();
  Run r = desing_file("smooth.nd", kSmooth, cert);
  double s = since(t0);
  o.c7 = std::to_string(r.code) + "\n" + r.out + slurp(cert);
  if (!record) return o;
  Problem pb = parse_problem(kSmooth);
  ElkikIdeal h = elkik_ideal(pb.b);
  bool unit = (h.ideal + pb.b.ambient()).is_unit();
  bool ok = r.code == 0 && s < kSmoothSeconds && unit;
  std::string detail;
  if (r.code == 0) {
    DesingCertificate c = parse_certificate(slurp(cert));
    bool same = c.trivial && c.result.relations.size() == pb.b.relations.size();
    for (std::size_t i = 0; same && i < pb.b.relations.size(); ++i)
      same = c.result.relations[i].to_ring(pb.b.ring) == pb.b.relations[i];
    auto rs = verify_certificate(c);
    bool verified = std::all_of(rs.begin(), rs.end(), [](const CheckResult& x) { return x.ok; });
    ok = ok && same && verified;
    detail = std::string(c.trivial ? "trivial" : "not trivial") + ", B' = B " + (same ? "yes" : "no") +
             ", verify " + (verified ? "clean" : "fails");
  } else {
    detail = "exit " + std::to_string(r.code);
  }
  report("7", "smooth short circuit", ok,
         detail + ", H0 = (1) " + (unit ? "yes" : "no") + ", " + fixed(s) + " s < " + fixed(kSmoothSeconds) + " s");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> known;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--known-failures") {
      std::stringstream s(argv[i + 1]);
      for (std::string id; std::getline(s, id, ',');) known.insert(id);
    }

  criterion_groebner();

  // Library runs feeding criteria 2 and 3.
  Systems systems;
  std::vector<DesingCertificate> runs;
  std::vector<CheckResult> supp;
  double supp_seconds = 0;
  NeronConfig cfg;
  cfg.seed = kSeed;
  {
    Problem pb8 = problem_of(kNode, 8);
    ParameterPair pair = choose_regular_pair(pb8, cfg);
    Prepared pr = prepare_free_conormal(absorb_parameters(pb8, pair, cfg).pb);
    systems.add("N=8 d", pr.pb, find_jacobian_system(pr.pb, pair.gamma, cfg));
    systems.add("N=8 d'", pr.pb, find_jacobian_system(pr.pb, pair.gamma1, cfg));
  }
  for (const std::string& y1 : {"x1", "x1 + x2^17"}) {
    std::string text = "char 0\nbound 17\nbase x1 x2\nvars Y1 Y2\nideal: Y1*Y2 - x1*x2\nmap: Y1 -> " + y1 + ", Y2 -> x2\n";
    auto t0 = Clock::now();
    DesingCertificate c = desingularize(parse_problem(text), cfg);
    systems.add("y1 = " + y1 + " d", c.stage, c.sys);
    systems.add("y1 = " + y1 + " d'", c.stage, c.sys1);
    if (y1 == "x1") {
      supp = verify_certificate(c);
      supp_seconds = since(t0);
    }
    runs.push_back(std::move(c));
  }
  criteria_battery_and_taylor(systems, runs);
  criterion_hensel();

  Outputs first = criterion_smooth(true, criterion_gate(true, criterion_end_to_end(true)));
  Outputs second = criterion_smooth(false, criterion_gate(false, criterion_end_to_end(false)));
  std::string node17 = (workdir() / "node17.cert").string(), node17b = (workdir() / "node17b.cert").string();
  desing_file("node17.nd", kNode, node17, 17);
  desing_file("node17.nd", kNode, node17b, 17);
  bool same17 = !slurp(node17).empty() && slurp(node17) == slurp(node17b);
  report("8", "determinism under a fixed seed",
         first.c5 == second.c5 && first.c6 == second.c6 && first.c7 == second.c7 && same17,
         std::string("criteria 5-7 outputs ") +
             (first.c5 == second.c5 && first.c6 == second.c6 && first.c7 == second.c7 ? "identical" : "differ") +
             "; N = 17 certificate " + (same17 ? "identical" : "differs"));

  bool sok = !supp.empty();
  std::string sd;
  for (const auto& r : supp) {
    sok = sok && r.ok;
    sd += (sd.empty() ? "" : ", ") + r.name + (r.ok ? " PASS" : " FAIL");
  }
  Run v = cli({"verify", node17});
  report("supplementary", "Y1*Y2 - x1*x2 at N = 17", sok && v.code == 0,
         sd + "; N_eff = " + std::to_string(runs[0].neff) + "; " + fixed(supp_seconds) + " s; file verify exit " +
             std::to_string(v.code));

  if (known.empty()) return failed.empty() ? 0 : 1;
  return failed == known ? 0 : 1;
}
