#ifndef ND_RING_HPP
#define ND_RING_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "nd/field.hpp"

namespace nd {

// Exponent vector with cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> e);

  std::size_t size() const { return exps_.size(); }
  std::uint32_t degree() const { return deg_; }
  std::uint16_t operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, std::uint32_t e);
  const std::vector<std::uint16_t>& exponents() const { return exps_; }
  bool is_one() const { return deg_ == 0; }

  Monomial operator*(const Monomial& o) const;
  // Requires o | *this.
  Monomial operator/(const Monomial& o) const;
  bool divides(const Monomial& o) const;  // *this | o
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  // Total degree in the variable subset given by mask (mask[i] true = counted).
  std::uint32_t degree_in(const std::vector<bool>& mask) const;

  bool operator==(const Monomial& o) const { return deg_ == o.deg_ && exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::size_t hash() const;

 private:
  std::vector<std::uint16_t> exps_;
  std::uint32_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class VarRole { Base, Algebra, Aux, Inverse, Tag };

const char* role_name(VarRole r);
std::optional<VarRole> role_from_name(const std::string& s);

struct VarInfo {
  std::string name;
  VarRole role = VarRole::Algebra;
};

// Global monomial orders. Variables earlier in declaration order are larger.
// Block: consecutive blocks of the declaration order, each compared by
// degrevlex, earlier blocks dominating (an elimination order for block 0).
struct MonomialOrder {
  enum class Kind { DegRevLex, Lex, Block };
  Kind kind = Kind::DegRevLex;
  std::vector<std::size_t> blocks;

  static MonomialOrder degrevlex() { return {}; }
  static MonomialOrder lex() { return {Kind::Lex, {}}; }
  static MonomialOrder block(std::vector<std::size_t> sizes) { return {Kind::Block, std::move(sizes)}; }

  bool operator==(const MonomialOrder& o) const { return kind == o.kind && blocks == o.blocks; }
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
 public:
  Ring(Field field, std::vector<VarInfo> vars, MonomialOrder order = MonomialOrder::degrevlex());

  static RingPtr make(Field field, std::vector<VarInfo> vars,
                      MonomialOrder order = MonomialOrder::degrevlex());

  const Field& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<VarInfo>& vars() const { return vars_; }
  const std::string& name(std::size_t i) const { return vars_[i].name; }
  VarRole role(std::size_t i) const { return vars_[i].role; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t require_index(const std::string& name) const;
  std::vector<std::size_t> indices_with_role(VarRole r) const;
  std::vector<std::string> names_with_role(VarRole r) const;
  const MonomialOrder& order() const { return order_; }

  // >0 if a > b, <0 if a < b, 0 if equal.
  int compare(const Monomial& a, const Monomial& b) const;

  RingPtr with_order(MonomialOrder order) const;
  // Same field and order kind; extra variables appended (degrevlex unless lex).
  RingPtr extended(const std::vector<VarInfo>& extra) const;
  // Variables listed in `first` move to the front, forming an elimination block.
  RingPtr elimination_ring(const std::vector<std::string>& first) const;

  bool same_layout(const Ring& o) const;

 private:
  int compare_drl(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const;

  Field field_;
  std::vector<VarInfo> vars_;
  MonomialOrder order_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Builds a name not present in `ring` (or in `taken`) from `stem`.
std::string fresh_name(const Ring& ring, const std::string& stem,
                       const std::vector<std::string>& taken = {});

}  // namespace nd

#endif
