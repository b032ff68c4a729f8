#ifndef ND_FIELD_HPP
#define ND_FIELD_HPP

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace nd {

using Coeff = mpq_class;

// The coefficient field: the rationals (characteristic 0) or GF(p).
// GF(p) elements are stored as canonical integers in [0, p) inside an mpq.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  // Throws std::invalid_argument unless p is prime.
  static Field prime(std::uint64_t p);

  std::uint64_t characteristic() const { return p_; }
  bool is_rational() const { return p_ == 0; }

  Coeff normalize(const Coeff& a) const;
  Coeff from_int(long v) const { return normalize(Coeff(v)); }

  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  // Throws std::domain_error on division by zero.
  Coeff inv(const Coeff& a) const;
  Coeff div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }

  // Decimal text; GF(p) values print as their representative in [0, p).
  std::string to_string(const Coeff& a) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }
  bool operator!=(const Field& o) const { return p_ != o.p_; }

 private:
  explicit Field(std::uint64_t p) : p_(p), pz_(static_cast<unsigned long>(p)) {}
  std::uint64_t p_ = 0;
  mpz_class pz_;
};

bool is_prime(std::uint64_t n);

}  // namespace nd

#endif
