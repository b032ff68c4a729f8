#ifndef ND_MATRIX_HPP
#define ND_MATRIX_HPP

#include <vector>

#include "nd/poly.hpp"

namespace nd {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(const RingPtr& ring, std::size_t n);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const Poly& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Poly& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix scale(const Poly& p) const;
  PolyMatrix transpose() const;
  PolyMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  PolyMatrix substitute(const RingPtr& target, const std::vector<Poly>& images) const;
  PolyMatrix to_ring(const RingPtr& target) const;

  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;

  // Square only (std::invalid_argument otherwise).
  Poly det() const;
  PolyMatrix adjugate() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> a_;
};

// Entry (i, j) = d fs[i] / d vars[j].
PolyMatrix jacobian(const std::vector<Poly>& fs, const std::vector<std::size_t>& vars, const RingPtr& ring);

struct Minor {
  Poly value;
  std::vector<std::size_t> rows, cols;
};

// All r x r minors; row sets outer, column sets inner, both lexicographic.
std::vector<Minor> minors(const PolyMatrix& m, std::size_t r);

struct Completion {
  PolyMatrix h;
  int sign = 1;
};

// Appends unit rows for the columns outside `cols` (increasing); det(h) = sign * minor(J; all rows, cols).
Completion complete_to_square(const PolyMatrix& j, const std::vector<std::size_t>& cols);

}  // namespace nd

#endif
