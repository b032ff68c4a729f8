#ifndef ND_POLY_HPP
#define ND_POLY_HPP

#include <map>
#include <string>
#include <vector>

#include "nd/ring.hpp"

namespace nd {

struct Term {
  Monomial m;
  Coeff c;
};

// Sparse polynomial; terms kept strictly descending in the ring's order with
// nonzero normalized coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(const RingPtr& ring, const Coeff& c);
  static Poly constant(const RingPtr& ring, long c) { return constant(ring, Coeff(c)); }
  static Poly var(const RingPtr& ring, std::size_t i);
  static Poly var(const RingPtr& ring, const std::string& name);
  static Poly monomial(const RingPtr& ring, const Monomial& m, const Coeff& c);
  // Takes terms in any order; combines duplicates and drops zeros.
  static Poly from_terms(const RingPtr& ring, std::vector<Term> terms);
  // Trusts that terms are already strictly descending and nonzero.
  static Poly from_sorted(const RingPtr& ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t nterms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  bool is_one() const;
  Coeff constant_term() const;
  const Monomial& lm() const { return terms_.front().m; }
  const Coeff& lc() const { return terms_.front().c; }

  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  std::uint32_t degree_in(const std::vector<bool>& mask) const;
  // Least total degree in the masked variables over all terms (huge if zero).
  std::uint32_t order_in(const std::vector<bool>& mask) const;
  bool uses_var(std::size_t var) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scale(const Coeff& c) const;
  Poly mul_term(const Monomial& m, const Coeff& c) const;
  Poly pow(unsigned e) const;
  // this - c*m*o, the reduction step.
  Poly sub_mul_term(const Monomial& m, const Coeff& c, const Poly& o) const;

  // Terms from index i onward.
  Poly tail_from(std::size_t i) const;
  // Content of the coefficients (Q only): gcd of numerators over lcm of denominators.
  Coeff content() const;

  Poly derivative(std::size_t var) const;
  // Drops terms whose masked degree is >= prec.
  Poly truncate(const std::vector<bool>& mask, std::uint32_t prec) const;
  Poly monic() const;
  // Over Q: scale to integer coefficients with content 1 and positive lc.
  Poly primitive() const;

  // Substitutes images (indexed by this ring's variables, all in `target`).
  Poly substitute(const RingPtr& target, const std::vector<Poly>& images) const;
  // Same polynomial viewed in a ring sharing variable names.
  Poly to_ring(const RingPtr& target) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_ring(const Poly& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

inline Poly operator*(const Coeff& c, const Poly& p) { return p.scale(c); }

// Mapping from variables of `from` into polynomials of `target`; unlisted
// variables go to the same-named variable of `target`.
std::vector<Poly> identity_images(const RingPtr& from, const RingPtr& target,
                                  const std::map<std::string, Poly>& overrides = {});

std::vector<bool> role_mask(const Ring& ring, VarRole role);

// Grammar: sums of products of numbers (integers or a/b), identifiers,
// parenthesized expressions and non-negative integer powers.
Poly parse_poly(const RingPtr& ring, const std::string& text);

}  // namespace nd

#endif
