#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "nd/errors.hpp"
#include "nd/format.hpp"

namespace nd {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Options {
  unsigned bound = 0;
  std::uint64_t seed = 0;
  std::size_t subset_bound = 3;
  unsigned t_max = 10, e_max = 10;
  bool verbose = false;
  std::string input, output;

  NeronConfig config() const {
    NeronConfig c;
    c.subset_bound = subset_bound;
    c.t_max = t_max;
    c.e_max = e_max;
    c.seed = seed;
    c.verbose = verbose;
    return c;
  }
};

Problem load_problem(const Options& o) {
  Problem pb = parse_problem(slurp(o.input));
  if (o.bound) pb.bound = o.bound;
  return pb;
}

int smooth_locus(const Options& o, std::ostream& out) {
  Problem pb = load_problem(o);
  ElkikIdeal h = elkik_ideal(pb.b, o.subset_bound);
  Ideal in_b = h.ideal + pb.b.ambient();
  out << "H0:";
  for (std::size_t i = 0; i < h.ideal.gens().size(); ++i) out << (i ? "; " : " ") << h.ideal.gens()[i].to_string();
  out << "\n";
  out << "H0 is the unit ideal in B: " << (in_b.is_unit() ? "yes" : "no") << "\n";
  SmoothSearch s = standard_smooth_certificate(pb.b, o.subset_bound);
  const char* status = s.status == SmoothStatus::Smooth ? "yes" : s.status == SmoothStatus::NotSmooth ? "no" : "undecided";
  out << "standard smooth at the origin: " << status << "\n";
  return 0;
}

int desing(const Options& o, std::ostream& out) {
  Problem pb = load_problem(o);
  check_problem(pb);
  DesingCertificate c = desingularize(pb, o.config());
  std::string text = print_certificate(c);
  if (o.output.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.output);
  f << text;
  if (!f.flush()) throw std::runtime_error("cannot write " + o.output);
  out << (c.trivial ? "trivial" : "full") << " certificate written to " << o.output << "; B' has "
      << c.result.algebra_vars().size() << " variables and " << c.result.all_relations().size()
      << " relations; N_eff = " << c.neff << "\n";
  return 0;
}

int verify(const Options& o, std::ostream& out) {
  DesingCertificate c = parse_certificate(slurp(o.input));
  auto rs = verify_certificate(c);
  bool ok = true;
  for (const auto& r : rs) {
    out << std::left << std::setw(20) << r.name << (r.ok ? "PASS" : "FAIL");
    if (!r.detail.empty()) out << "  " << r.detail;
    out << "\n";
    ok = ok && r.ok;
  }
  if (!ok) {
    out << "failed:";
    for (const auto& r : rs)
      if (!r.ok) out << " [" << r.name << "]";
    out << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Constructive Neron desingularization over two-dimensional local rings"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--bound", o.bound, "override the bound N from the file");
  app.add_option("--seed", o.seed, "seed for the pair search")->envname("ND_SEED");
  app.add_option("--subset-bound", o.subset_bound, "largest subsystem size tried")->check(CLI::PositiveNumber);
  app.add_option("--t-max", o.t_max, "largest t tried when absorbing the parameters")->check(CLI::PositiveNumber);
  app.add_option("--e-max", o.e_max, "largest power tried for gamma in H")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", o.verbose, "per-step timing and sizes on stderr");

  auto* sl = app.add_subcommand("smooth-locus", "generators of H0 and the smoothness status");
  sl->add_option("file", o.input, "problem file")->required();
  auto* de = app.add_subcommand("desingularize", "compute a certificate");
  de->add_option("file", o.input, "problem file")->required();
  de->add_option("-o,--output", o.output, "certificate file (stdout if omitted)");
  auto* ve = app.add_subcommand("verify", "check a certificate");
  ve->add_option("file", o.input, "certificate file")->required();

  std::vector<std::string> store{"nd"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (sl->parsed()) return smooth_locus(o, out);
    if (de->parsed()) return desing(o, out);
    return verify(o, out);
  } catch (const BoundTooSmall&) {
    out << kBoundTooSmall << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nd
