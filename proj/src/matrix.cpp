#include "nd/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace nd {

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(rows * cols, Poly(ring_)) {}

PolyMatrix PolyMatrix::identity(const RingPtr& ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
  PolyMatrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o.at(k, j).is_zero()) r.at(i, j) += at(i, k) * o.at(k, j);
    }
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum: shape mismatch");
  PolyMatrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference: shape mismatch");
  PolyMatrix r(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
  return r;
}

PolyMatrix PolyMatrix::scale(const Poly& p) const {
  PolyMatrix r(*this);
  for (auto& e : r.a_) e = e * p;
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
  PolyMatrix r(ring_, rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) r.at(i, j) = at(rs[i], cs[j]);
  return r;
}

PolyMatrix PolyMatrix::substitute(const RingPtr& target, const std::vector<Poly>& images) const {
  PolyMatrix r(target, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].substitute(target, images);
  return r;
}

PolyMatrix PolyMatrix::to_ring(const RingPtr& target) const {
  PolyMatrix r(target, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].to_ring(target);
  return r;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

namespace {

// Laplace expansion down a fixed row sequence, memoized on the set of
// columns still free. Rows are visited sparsest first.
class DetEngine {
 public:
  explicit DetEngine(const PolyMatrix& m) : m_(m), n_(m.rows()) {
    if (n_ > 64) throw std::invalid_argument("determinant: matrix larger than 64x64");
    order_.resize(n_);
    std::iota(order_.begin(), order_.end(), 0);
    std::vector<std::size_t> nz(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!m.at(i, j).is_zero()) ++nz[i];
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return nz[a] < nz[b]; });
    row_sign_ = permutation_sign(order_);
  }

  Poly run() {
    if (n_ == 0) return Poly::constant(m_.ring(), 1);
    std::uint64_t all = n_ == 64 ? ~0ull : ((1ull << n_) - 1);
    Poly d = rec(0, all);
    return row_sign_ < 0 ? -d : d;
  }

  static int permutation_sign(const std::vector<std::size_t>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = i + 1; j < p.size(); ++j)
        if (p[i] > p[j]) ++inv;
    return inv % 2 ? -1 : 1;
  }

 private:
  Poly rec(std::size_t k, std::uint64_t free) {
    if (k == n_) return Poly::constant(m_.ring(), 1);
    auto it = memo_.find(free);
    if (it != memo_.end()) return it->second;
    Poly acc(m_.ring());
    std::size_t row = order_[k];
    int pos = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (!(free >> j & 1ull)) continue;
      const Poly& e = m_.at(row, j);
      if (!e.is_zero()) {
        Poly sub = rec(k + 1, free & ~(1ull << j));
        if (!sub.is_zero()) {
          Poly t = e * sub;
          acc += (pos % 2) ? -t : t;
        }
      }
      ++pos;
    }
    memo_.emplace(free, acc);
    return acc;
  }

  const PolyMatrix& m_;
  std::size_t n_;
  std::vector<std::size_t> order_;
  int row_sign_ = 1;
  std::unordered_map<std::uint64_t, Poly> memo_;
};

}  // namespace

Poly PolyMatrix::det() const {
  if (!is_square()) throw std::invalid_argument("determinant of a non-square matrix");
  return DetEngine(*this).run();
}

PolyMatrix PolyMatrix::adjugate() const {
  if (!is_square()) throw std::invalid_argument("adjugate of a non-square matrix");
  std::size_t n = rows_;
  PolyMatrix r(ring_, n, n);
  if (n == 1) {
    r.at(0, 0) = Poly::constant(ring_, 1);
    return r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rs;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i) rs.push_back(k);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::size_t> cs;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) cs.push_back(k);
      Poly c = submatrix(rs, cs).det();
      r.at(j, i) = ((i + j) % 2) ? -c : c;
    }
  }
  return r;
}

PolyMatrix jacobian(const std::vector<Poly>& fs, const std::vector<std::size_t>& vars, const RingPtr& ring) {
  if (vars.empty()) throw std::invalid_argument("jacobian: empty variable list");
  PolyMatrix m(ring, fs.size(), vars.size());
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < vars.size(); ++j) m.at(i, j) = fs[i].to_ring(ring).derivative(vars[j]);
  return m;
}

namespace {

bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  std::size_t r = s.size();
  for (std::size_t i = r; i-- > 0;) {
    if (s[i] < n - r + i) {
      ++s[i];
      for (std::size_t k = i + 1; k < r; ++k) s[k] = s[k - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Minor> minors(const PolyMatrix& m, std::size_t r) {
  if (r == 0 || r > std::min(m.rows(), m.cols())) throw std::invalid_argument("minors: size out of range");
  std::vector<Minor> out;
  std::vector<std::size_t> rs(r);
  std::iota(rs.begin(), rs.end(), 0);
  do {
    std::vector<std::size_t> cs(r);
    std::iota(cs.begin(), cs.end(), 0);
    do {
      out.push_back({m.submatrix(rs, cs).det(), rs, cs});
    } while (next_subset(cs, m.cols()));
  } while (next_subset(rs, m.rows()));
  return out;
}

Completion complete_to_square(const PolyMatrix& j, const std::vector<std::size_t>& cols) {
  std::size_t r = j.rows(), n = j.cols();
  if (cols.size() != r || r > n) throw std::invalid_argument("complete_to_square: need |cols| = rows <= cols");
  std::vector<bool> in(n, false);
  for (auto c : cols) {
    if (c >= n || in[c]) throw std::invalid_argument("complete_to_square: bad column set");
    in[c] = true;
  }
  Completion out{PolyMatrix(j.ring(), n, n), 1};
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < n; ++b) out.h.at(a, b) = j.at(a, b);
  std::vector<std::size_t> perm(cols.begin(), cols.end());
  std::size_t row = r;
  for (std::size_t c = 0; c < n; ++c) {
    if (in[c]) continue;
    out.h.at(row++, c) = Poly::constant(j.ring(), 1);
    perm.push_back(c);
  }
  // Permuting columns into (cols, rest) gives a block upper-triangular matrix.
  out.sign = DetEngine::permutation_sign(perm);
  return out;
}

}  // namespace nd
