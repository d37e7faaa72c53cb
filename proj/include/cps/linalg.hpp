#pragma once

#include <vector>

#include "cps/field.hpp"

namespace cps {

using Vec = std::vector<FieldReal>;

FieldReal dot(const Vec& a, const Vec& b);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const FieldReal& s, const Vec& a);
Vec zero_vec(size_t n);
bool is_zero(const Vec& v);
FieldReal norm_squared(const Vec& v);

class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static FieldMatrix identity(size_t n);
  static FieldMatrix from_rows(const std::vector<Vec>& rows);
  static FieldMatrix from_columns(const std::vector<Vec>& cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  FieldReal& operator()(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const FieldReal& operator()(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  Vec row(size_t r) const;
  Vec column(size_t c) const;
  FieldMatrix transpose() const;
  FieldMatrix select_rows(const std::vector<size_t>& idx) const;
  FieldMatrix select_columns(const std::vector<size_t>& idx) const;

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend Vec operator*(const FieldMatrix& a, const Vec& v);
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b);

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<FieldReal> a_;
};

size_t rank_over_field(const FieldMatrix& m);
// Inverse of a square matrix; throws std::domain_error when singular.
FieldMatrix inverse(const FieldMatrix& m);
FieldReal determinant(const FieldMatrix& m);
// Basis of the right null space over the field.
std::vector<Vec> nullspace(const FieldMatrix& m);
// Solution of a square nonsingular system.
Vec solve(const FieldMatrix& m, const Vec& b);

}  // namespace cps
