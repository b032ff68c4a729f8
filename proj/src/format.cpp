#include "nd/format.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "nd/errors.hpp"

namespace nd {

FormatError::FormatError(std::size_t line, std::size_t column, const std::string& msg, std::string expected)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line(line),
      column(column),
      expected(std::move(expected)) {}

namespace {

bool space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// A slice of an input line with its 1-based starting column.
struct Span {
  std::size_t line = 0, col = 1;
  std::string text;

  bool empty() const { return text.empty(); }
  [[noreturn]] void fail(const std::string& msg, const std::string& expected = {}, std::size_t at = 0) const {
    throw FormatError(line, col + at, msg, expected);
  }
};

Span trim(Span s) {
  std::size_t a = 0, b = s.text.size();
  while (a < b && space(s.text[a])) ++a;
  while (b > a && space(s.text[b - 1])) --b;
  return {s.line, s.col + a, s.text.substr(a, b - a)};
}

std::vector<Span> split(const Span& s, char sep) {
  std::vector<Span> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.text.size(); ++i)
    if (i == s.text.size() || s.text[i] == sep) {
      out.push_back(trim({s.line, s.col + start, s.text.substr(start, i - start)}));
      start = i + 1;
    }
  return out;
}

std::vector<Span> words(const Span& s) {
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < s.text.size()) {
    while (i < s.text.size() && space(s.text[i])) ++i;
    std::size_t st = i;
    while (i < s.text.size() && !space(s.text[i])) ++i;
    if (i > st) out.push_back({s.line, s.col + st, s.text.substr(st, i - st)});
  }
  return out;
}

// Splits "label: rest" at the first colon.
std::pair<Span, Span> labelled(const Span& s) {
  auto pos = s.text.find(':');
  if (pos == std::string::npos) s.fail("missing ':'", ":", s.text.size());
  return {trim({s.line, s.col, s.text.substr(0, pos)}), trim({s.line, s.col + pos + 1, s.text.substr(pos + 1)})};
}

struct Entry {
  std::string key;
  std::size_t key_col = 1;
  Span value;
};

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      std::size_t a = 0;
      while (a < raw.size() && space(raw[a])) ++a;
      if (a == raw.size()) continue;
      std::size_t b = a;
      while (b < raw.size() && !space(raw[b]) && raw[b] != ':') ++b;
      Entry e;
      e.key = raw.substr(a, b - a);
      e.key_col = a + 1;
      if (b < raw.size() && raw[b] == ':') ++b;
      e.value = trim({no, b + 1, raw.substr(b)});
      entries_.push_back(std::move(e));
      lines_.push_back(no);
    }
    last_line_ = no;
  }

  bool at_end() const { return pos_ == entries_.size(); }
  const Entry& peek() const { return entries_[pos_]; }
  bool next_is(const std::string& key) const { return !at_end() && peek().key == key; }
  Entry next() { return entries_[pos_++]; }

  Entry take(const std::string& key) {
    if (at_end()) throw FormatError(last_line_ + 1, 1, "unexpected end of input, expected '" + key + "'", key);
    if (peek().key != key)
      throw FormatError(lines_[pos_], peek().key_col, "expected '" + key + "', found '" + peek().key + "'", key);
    return next();
  }

 private:
  std::vector<Entry> entries_;
  std::vector<std::size_t> lines_;
  std::size_t pos_ = 0, last_line_ = 0;
};

Poly poly_at(const Span& s, const RingPtr& ring) {
  if (s.empty()) s.fail("expected a polynomial", "polynomial");
  try {
    return parse_poly(ring, s.text);
  } catch (const ParseError& e) {
    s.fail(e.reason, {}, e.column - 1);
  } catch (const std::exception& e) {
    s.fail(e.what());
  }
}

std::vector<Poly> poly_list(const Span& s, const RingPtr& ring) {
  std::vector<Poly> out;
  if (s.empty()) return out;
  for (const auto& piece : split(s, ';')) out.push_back(poly_at(piece, ring));
  return out;
}

unsigned long number_at(const Span& s) {
  if (s.empty() || s.text.find_first_not_of("0123456789") != std::string::npos) s.fail("expected a number", "number");
  try {
    return std::stoul(s.text);
  } catch (const std::exception&) {
    s.fail("number out of range", "number");
  }
}

std::vector<std::size_t> index_list(const Span& s) {
  std::vector<std::size_t> out;
  for (const auto& w : words(s)) out.push_back(number_at(w));
  return out;
}

std::vector<std::vector<std::string>> name_groups(const Span& s) {
  std::vector<std::vector<std::string>> out;
  if (s.empty()) return out;
  for (const auto& g : split(s, '|')) {
    out.emplace_back();
    for (const auto& w : words(g)) out.back().push_back(w.text);
  }
  return out;
}

Field field_at(const Span& s) {
  auto p = number_at(s);
  if (p == 0) return Field::rationals();
  try {
    return Field::prime(p);
  } catch (const std::exception& e) {
    s.fail(e.what());
  }
}

std::string join_polys(const std::vector<Poly>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? "; " : "") + ps[i].to_string();
  return out;
}

template <class T>
std::string join_words(const std::vector<T>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  return out.str();
}

std::string join_groups(const std::vector<std::vector<std::string>>& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? " | " : "") + join_words(g[i]);
  return out;
}

std::string join_index_groups(const std::vector<std::vector<std::size_t>>& g) {
  std::string out;
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? " | " : "") + join_words(g[i]);
  return out;
}

void line(std::string& out, const std::string& key, const std::string& value) {
  out += key;
  if (!value.empty()) out += " " + value;
  out += "\n";
}

void list_line(std::string& out, const std::string& key, const std::string& value) {
  out += key + ":";
  if (!value.empty()) out += " " + value;
  out += "\n";
}

std::string map_text(const RingPtr& ring, const std::vector<std::size_t>& alg, const std::vector<Poly>& map) {
  std::string out;
  for (std::size_t j = 0; j < alg.size(); ++j)
    out += (j ? ", " : "") + ring->name(alg[j]) + " -> " + (j < map.size() ? map[j].to_string() : "0");
  return out;
}

std::vector<Poly> parse_map(const Span& s, const RingPtr& ring, const std::vector<std::size_t>& alg,
                            const RingPtr& base) {
  std::vector<Poly> out(alg.size());
  std::vector<bool> seen(alg.size(), false);
  if (!s.empty())
    for (const auto& item : split(s, ',')) {
      auto arrow = item.text.find("->");
      if (arrow == std::string::npos) item.fail("expected '->'", "->");
      Span lhs = trim({item.line, item.col, item.text.substr(0, arrow)});
      Span rhs = trim({item.line, item.col + arrow + 2, item.text.substr(arrow + 2)});
      std::size_t j = alg.size();
      for (std::size_t k = 0; k < alg.size(); ++k)
        if (ring->name(alg[k]) == lhs.text) j = k;
      if (j == alg.size()) lhs.fail("unknown algebra variable '" + lhs.text + "'", "algebra variable");
      if (seen[j]) lhs.fail("second image for '" + lhs.text + "'");
      seen[j] = true;
      out[j] = poly_at(rhs, base);
    }
  for (std::size_t j = 0; j < alg.size(); ++j)
    if (!seen[j]) s.fail("no image for '" + ring->name(alg[j]) + "'", ring->name(alg[j]));
  return out;
}

const char* const kProblemKeys[] = {"char", "bound", "base", "base_ideal", "vars", "ideal", "map"};

Problem read_problem(Reader& r, const std::string& stop) {
  std::map<std::string, Entry> got;
  Span first{1, 1, ""};
  while (!r.at_end() && !r.next_is(stop)) {
    Entry e = r.next();
    bool known = false;
    for (const char* k : kProblemKeys) known = known || e.key == k;
    if (!known)
      throw FormatError(e.value.line, e.key_col, "unknown key '" + e.key + "'",
                        "one of char, bound, base, base_ideal, vars, ideal, map");
    if (got.count(e.key)) throw FormatError(e.value.line, e.key_col, "duplicate key '" + e.key + "'");
    got.emplace(e.key, std::move(e));
  }
  std::size_t end_line = r.at_end() ? 0 : r.peek().value.line;
  for (const char* k : {"base", "vars", "ideal", "map"})
    if (!got.count(k)) throw FormatError(end_line ? end_line : 1, 1, std::string("missing key '") + k + "'", k);

  Field field = got.count("char") ? field_at(got["char"].value) : Field::rationals();
  std::vector<VarInfo> vars;
  std::set<std::string> names;
  auto declare = [&](const Span& list, VarRole role) {
    for (const auto& w : words(list)) {
      if (!names.insert(w.text).second) w.fail("variable '" + w.text + "' declared twice");
      if (!std::isalpha(static_cast<unsigned char>(w.text[0])) && w.text[0] != '_')
        w.fail("bad variable name '" + w.text + "'", "identifier");
      vars.push_back({w.text, role});
    }
  };
  declare(got["base"].value, VarRole::Base);
  declare(got["vars"].value, VarRole::Algebra);
  Problem pb;
  pb.b.ring = Ring::make(field, vars);
  RingPtr base = pb.b.base_ring();
  if (got.count("base_ideal"))
    for (const auto& p : poly_list(got["base_ideal"].value, base)) pb.b.base_ideal.push_back(p.to_ring(pb.b.ring));
  pb.b.relations = poly_list(got["ideal"].value, pb.b.ring);
  pb.map = parse_map(got["map"].value, pb.b.ring, pb.b.algebra_vars(), base);
  pb.bound = got.count("bound") ? static_cast<unsigned>(number_at(got["bound"].value)) : 0;
  return pb;
}

// Ring with explicit roles: "x1:base x2:base Y1:alg ...".
RingPtr read_ring(const Entry& e, const Field& field) {
  std::vector<VarInfo> vars;
  for (const auto& w : words(e.value)) {
    auto c = w.text.find(':');
    if (c == std::string::npos) w.fail("expected name:role", "name:role");
    auto role = role_from_name(w.text.substr(c + 1));
    if (!role) w.fail("unknown role '" + w.text.substr(c + 1) + "'", "base, alg, aux, inv or tag", c + 1);
    vars.push_back({w.text.substr(0, c), *role});
  }
  try {
    return Ring::make(field, vars);
  } catch (const std::exception& ex) {
    e.value.fail(ex.what());
  }
}

std::string ring_text(const Ring& r) {
  std::string out;
  for (std::size_t i = 0; i < r.nvars(); ++i) out += (i ? " " : "") + r.name(i) + ":" + role_name(r.role(i));
  return out;
}

void write_presentation(std::string& out, const std::string& p, const FinitePresentation& b) {
  if (!(b.ring->order() == MonomialOrder::degrevlex()))
    throw std::invalid_argument("only degrevlex rings can be serialized");
  line(out, p + ".ring", ring_text(*b.ring));
  list_line(out, p + ".base_ideal", join_polys(b.base_ideal));
  list_line(out, p + ".ideal", join_polys(b.relations));
  for (const auto& inv : b.inversions) line(out, p + ".inverse", inv.var + " -> " + inv.unit.to_string());
}

FinitePresentation read_presentation(Reader& r, const std::string& p, const Field& field) {
  FinitePresentation b;
  b.ring = read_ring(r.take(p + ".ring"), field);
  b.base_ideal = poly_list(r.take(p + ".base_ideal").value, b.ring);
  b.relations = poly_list(r.take(p + ".ideal").value, b.ring);
  while (r.next_is(p + ".inverse")) {
    Entry e = r.next();
    auto arrow = e.value.text.find("->");
    if (arrow == std::string::npos) e.value.fail("expected '->'", "->");
    Span var = trim({e.value.line, e.value.col, e.value.text.substr(0, arrow)});
    Span unit = trim({e.value.line, e.value.col + arrow + 2, e.value.text.substr(arrow + 2)});
    if (!b.ring->index_of(var.text)) var.fail("unknown variable '" + var.text + "'");
    b.inversions.push_back({var.text, poly_at(unit, b.ring)});
  }
  return b;
}

void write_system(std::string& out, const std::string& p, const JacobianSystem& s) {
  line(out, p + ".subset", join_words(s.subset));
  line(out, p + ".cols", join_index_groups(s.cols));
  list_line(out, p + ".minors", join_polys(s.minors));
  list_line(out, p + ".ls", join_polys(s.ls));
  list_line(out, p + ".gamma", s.gamma.to_string());
  list_line(out, p + ".unit", s.unit.to_string());
  list_line(out, p + ".d", s.d.to_string());
  line(out, p + ".exponent", std::to_string(s.exponent));
  list_line(out, p + ".p", s.p.to_string());
  list_line(out, p + ".p_coeffs", join_polys(s.p_coeffs));
}

JacobianSystem read_system(Reader& r, const std::string& p, const RingPtr& ring, const RingPtr& base) {
  JacobianSystem s;
  s.subset = index_list(r.take(p + ".subset").value);
  Span cols = r.take(p + ".cols").value;
  if (!cols.empty())
    for (const auto& g : split(cols, '|')) s.cols.push_back(index_list(g));
  s.minors = poly_list(r.take(p + ".minors").value, ring);
  s.ls = poly_list(r.take(p + ".ls").value, ring);
  s.gamma = poly_at(r.take(p + ".gamma").value, base);
  s.unit = poly_at(r.take(p + ".unit").value, base);
  s.d = poly_at(r.take(p + ".d").value, base);
  s.exponent = static_cast<unsigned>(number_at(r.take(p + ".exponent").value));
  s.p = poly_at(r.take(p + ".p").value, ring);
  s.p_coeffs = poly_list(r.take(p + ".p_coeffs").value, ring);
  return s;
}

}  // namespace

Problem parse_problem(const std::string& text) {
  Reader r(text);
  Problem pb = read_problem(r, "");
  return pb;
}

std::string print_problem(const Problem& pb) {
  const Ring& R = *pb.b.ring;
  std::vector<std::string> base, vars;
  for (std::size_t i = 0; i < R.nvars(); ++i) {
    if (R.role(i) == VarRole::Base) base.push_back(R.name(i));
    else if (R.role(i) == VarRole::Algebra) vars.push_back(R.name(i));
    else throw std::invalid_argument("problem rings carry only base and algebra variables");
  }
  std::string out;
  line(out, "char", std::to_string(R.field().characteristic()));
  line(out, "bound", std::to_string(pb.bound));
  line(out, "base", join_words(base));
  if (!pb.b.base_ideal.empty()) list_line(out, "base_ideal", join_polys(pb.b.base_ideal));
  line(out, "vars", join_words(vars));
  list_line(out, "ideal", join_polys(pb.b.relations));
  list_line(out, "map", map_text(pb.b.ring, pb.b.algebra_vars(), pb.map));
  return out;
}

std::string print_certificate(const DesingCertificate& c) {
  std::string out = print_problem(c.problem);
  line(out, "certificate", c.trivial ? "trivial" : "full");
  line(out, "neff", std::to_string(c.neff));
  if (c.trivial) {
    if (!c.smooth) throw std::invalid_argument("trivial certificate without a smoothness witness");
    const SmoothCertificate& s = *c.smooth;
    line(out, "smooth.subset", join_words(s.subset));
    line(out, "smooth.r", std::to_string(s.r));
    list_line(out, "smooth.unit", s.unit.to_string());
    list_line(out, "smooth.colon", join_polys(s.colon));
    for (const auto& m : s.minors)
      line(out, "smooth.minor", join_words(m.rows) + " | " + join_words(m.cols) + ": " + m.value.to_string());
    for (const auto& pr : s.products)
      line(out, "smooth.product", std::to_string(pr.colon) + " " + std::to_string(pr.minor) + ": " + pr.coeff.to_string());
    list_line(out, "smooth.ambient", join_polys(s.ambient_coeffs));
  } else {
    line(out, "t", std::to_string(c.t));
    line(out, "pair.branch", std::string(1, c.pair.branch));
    list_line(out, "pair.gamma", c.pair.gamma.to_string());
    list_line(out, "pair.gamma1", c.pair.gamma1.to_string());
    list_line(out, "pair.h0", join_polys(c.pair.h0));
    line(out, "stage.bound", std::to_string(c.stage.bound));
    write_presentation(out, "stage", c.stage.b);
    list_line(out, "stage.map", map_text(c.stage.b.ring, c.stage.b.algebra_vars(), c.stage.map));
    write_system(out, "sys", c.sys);
    write_system(out, "sys1", c.sys1);
    line(out, "t1", join_groups(c.t1));
    line(out, "t2", join_groups(c.t2));
  }
  write_presentation(out, "result", c.result);
  line(out, "labels", join_words(c.labels));
  for (const auto& b : c.blocks) {
    line(out, "block.vars", join_words(b.vars));
    line(out, "block.eqs", join_words(b.eqs));
    list_line(out, "block.units", join_polys(b.units));
  }
  for (const auto& m : c.memberships) {
    list_line(out, "membership", m.target.to_string());
    for (std::size_t k = 0; k < m.coeffs.size(); ++k)
      if (!m.coeffs[k].is_zero()) line(out, "coeff", std::to_string(k) + ": " + m.coeffs[k].to_string());
  }
  for (const auto& [name, jet] : c.point) line(out, "jet", name + " " + std::to_string(jet.prec) + ": " + jet.rep.to_string());
  line(out, "end", "");
  return out;
}

DesingCertificate parse_certificate(const std::string& text) {
  Reader r(text);
  DesingCertificate c;
  c.problem = read_problem(r, "certificate");
  const Field field = c.problem.b.ring->field();
  const RingPtr base = c.problem.b.base_ring();
  Entry kind = r.take("certificate");
  if (kind.value.text != "trivial" && kind.value.text != "full") kind.value.fail("expected trivial or full", "trivial");
  c.trivial = kind.value.text == "trivial";
  c.neff = static_cast<unsigned>(number_at(r.take("neff").value));
  if (c.trivial) {
    const RingPtr& R = c.problem.b.ring;
    SmoothCertificate s;
    s.subset = index_list(r.take("smooth.subset").value);
    s.r = number_at(r.take("smooth.r").value);
    s.unit = poly_at(r.take("smooth.unit").value, R);
    s.colon = poly_list(r.take("smooth.colon").value, R);
    while (r.next_is("smooth.minor")) {
      auto [idx, val] = labelled(r.next().value);
      auto parts = split(idx, '|');
      if (parts.size() != 2) idx.fail("expected rows | cols", "|");
      s.minors.push_back({poly_at(val, R), index_list(parts[0]), index_list(parts[1])});
    }
    while (r.next_is("smooth.product")) {
      auto [idx, val] = labelled(r.next().value);
      auto ij = index_list(idx);
      if (ij.size() != 2) idx.fail("expected two indices", "colon minor");
      s.products.push_back({ij[0], ij[1], poly_at(val, R)});
    }
    s.ambient_coeffs = poly_list(r.take("smooth.ambient").value, R);
    c.smooth = std::move(s);
  } else {
    c.t = static_cast<unsigned>(number_at(r.take("t").value));
    Entry br = r.take("pair.branch");
    if (br.value.text != "a" && br.value.text != "b") br.value.fail("expected a or b", "a");
    c.pair.branch = br.value.text[0];
    c.pair.gamma = poly_at(r.take("pair.gamma").value, base);
    c.pair.gamma1 = poly_at(r.take("pair.gamma1").value, base);
    c.pair.h0 = poly_list(r.take("pair.h0").value, c.problem.b.ring);
    c.stage.bound = static_cast<unsigned>(number_at(r.take("stage.bound").value));
    c.stage.b = read_presentation(r, "stage", field);
    c.stage.map = parse_map(r.take("stage.map").value, c.stage.b.ring, c.stage.b.algebra_vars(), c.stage.b.base_ring());
    c.sys = read_system(r, "sys", c.stage.b.ring, base);
    c.sys1 = read_system(r, "sys1", c.stage.b.ring, base);
    c.t1 = name_groups(r.take("t1").value);
    c.t2 = name_groups(r.take("t2").value);
  }
  c.result = read_presentation(r, "result", field);
  const RingPtr& RB = c.result.ring;
  for (const auto& w : words(r.take("labels").value)) c.labels.push_back(w.text);
  while (r.next_is("block.vars")) {
    SmoothBlock b;
    for (const auto& w : words(r.next().value)) b.vars.push_back(w.text);
    b.eqs = index_list(r.take("block.eqs").value);
    b.units = poly_list(r.take("block.units").value, RB);
    c.blocks.push_back(std::move(b));
  }
  const std::size_t arity = c.result.base_ideal.size() + c.result.relations.size() + c.result.inversions.size();
  while (r.next_is("membership")) {
    Membership m;
    m.target = poly_at(r.next().value, RB);
    m.coeffs.assign(arity, Poly(RB));
    while (r.next_is("coeff")) {
      auto [idx, val] = labelled(r.next().value);
      auto k = number_at(idx);
      if (k >= arity) idx.fail("coefficient index out of range");
      m.coeffs[k] = poly_at(val, RB);
    }
    c.memberships.push_back(std::move(m));
  }
  while (r.next_is("jet")) {
    auto [head, val] = labelled(r.next().value);
    auto hw = words(head);
    if (hw.size() != 2) head.fail("expected name and precision", "name precision");
    c.point[hw[0].text] = JetSeries{poly_at(val, base), static_cast<unsigned>(number_at(hw[1]))};
  }
  r.take("end");
  if (!r.at_end()) {
    const Entry& e = r.peek();
    throw FormatError(e.value.line, e.key_col, "trailing input after 'end'");
  }
  return c;
}

}  // namespace nd
