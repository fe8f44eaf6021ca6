#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace dmiso {

using FpVec = std::vector<uint32_t>;

// Dense matrix over F_p, row-major.
class FpMatrix {
 public:
  FpMatrix(uint32_t p, size_t rows, size_t cols) : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  uint32_t p() const { return p_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  void set_col(size_t c, const FpVec& v);

  size_t rank() const;
  std::vector<FpVec> kernel() const;
  // Some x with M x = b (free variables zero), if one exists.
  std::optional<FpVec> solve(const FpVec& b) const;

 private:
  // Reduced row echelon form in place; returns pivot columns.
  std::vector<size_t> rref(std::vector<uint32_t>& m, size_t cols) const;

  uint32_t p_;
  size_t rows_, cols_;
  std::vector<uint32_t> a_;
};

// Incrementally maintained row-echelon span of F_p vectors.
class FpSpan {
 public:
  FpSpan(uint32_t p, size_t dim) : p_(p), dim_(dim) {}
  // Adds v; returns false when v was already in the span.
  bool add(FpVec v);
  bool contains(FpVec v) const;
  // Coordinates of v in terms of the vectors added so far (in insertion
  // order), or nullopt when v is outside the span.
  std::optional<FpVec> coords(FpVec v) const;
  size_t size() const { return rows_.size(); }
  size_t dim() const { return dim_; }

 private:
  void reduce(FpVec& v, FpVec* track) const;

  uint32_t p_;
  size_t dim_;
  std::vector<FpVec> rows_;     // echelon rows, leading entry 1
  std::vector<size_t> lead_;    // leading column of each row
  std::vector<FpVec> combo_;    // each row as combination of inserted vectors
  size_t inserted_ = 0;
};

uint32_t fp_inv(uint32_t x, uint32_t p);

}  // namespace dmiso
