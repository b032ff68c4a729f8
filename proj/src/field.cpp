#include "nd/field.hpp"

#include <stdexcept>

namespace nd {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p))
    throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
  return Field(p);
}

Coeff Field::normalize(const Coeff& a) const {
  if (p_ == 0) {
    Coeff r = a;
    r.canonicalize();
    return r;
  }
  mpz_class num = a.get_num() % pz_;
  if (num < 0) num += pz_;
  mpz_class den = a.get_den() % pz_;
  if (den == 0) throw std::domain_error("denominator vanishes modulo the characteristic");
  if (den != 1) {
    mpz_class dinv;
    mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pz_.get_mpz_t());
    num = (num * dinv) % pz_;
  }
  return Coeff(num);
}

Coeff Field::add(const Coeff& a, const Coeff& b) const {
  if (p_ == 0) return a + b;
  mpz_class r = a.get_num() + b.get_num();
  if (r >= pz_) r -= pz_;
  return Coeff(r);
}

Coeff Field::sub(const Coeff& a, const Coeff& b) const {
  if (p_ == 0) return a - b;
  mpz_class r = a.get_num() - b.get_num();
  if (r < 0) r += pz_;
  return Coeff(r);
}

Coeff Field::mul(const Coeff& a, const Coeff& b) const {
  if (p_ == 0) return a * b;
  mpz_class r = (a.get_num() * b.get_num()) % pz_;
  return Coeff(r);
}

Coeff Field::neg(const Coeff& a) const {
  if (p_ == 0) return -a;
  if (a == 0) return a;
  return Coeff(pz_ - a.get_num());
}

Coeff Field::inv(const Coeff& a) const {
  if (a == 0) throw std::domain_error("division by zero in coefficient field");
  if (p_ == 0) return 1 / a;
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_num().get_mpz_t(), pz_.get_mpz_t());
  return Coeff(r);
}

std::string Field::to_string(const Coeff& a) const { return a.get_str(); }

}  // namespace nd
