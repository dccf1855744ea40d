#pragma once

// Dense integer matrices with arbitrary-precision entries and their Smith
// normal form.

#include <cstddef>
#include <string>
#include <vector>

#include "grope/bigint.hpp"

namespace grope {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  // row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const BigInt& factor);
  void add_col(std::size_t dst, std::size_t src, const BigInt& factor);
  void negate_row(std::size_t r);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);
// Exact determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& a);
// Rank over the rationals by fraction-free elimination.
std::size_t rational_rank(const IntMatrix& a);

struct SmithForm {
  IntMatrix u;  // rows x rows, unimodular
  IntMatrix v;  // cols x cols, unimodular
  IntMatrix d;  // u * a * v
  // Positive diagonal entries d_0 | d_1 | ... of length rank.
  std::vector<BigInt> factors;
  std::size_t rank() const noexcept { return factors.size(); }
};

// With track_transforms = false, u and v are left empty.
SmithForm smith_normal_form(const IntMatrix& a, bool track_transforms = true);

std::string to_string(const BigInt& x);

}  // namespace grope
