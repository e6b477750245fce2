#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gic/field.hpp"

namespace gic {

/// Dense row-major matrix over GF(2^w). Rows are coded transmissions and
/// column c holds the coefficient of packet c+1.
class CodingMatrix {
 public:
  using element = GaloisField::element;

  CodingMatrix() = default;
  CodingMatrix(std::size_t rows, std::size_t cols, FieldSpec field = gf2);
  CodingMatrix(FieldSpec field, std::size_t cols,
               std::initializer_list<std::initializer_list<element>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  FieldSpec field() const { return field_; }
  bool empty() const { return rows_ == 0; }

  element operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const element> values);
  /// Appends every row of `other`, which must have the same shape and field.
  void append_rows(const CodingMatrix& other);

  CodingMatrix select_rows(std::span<const std::size_t> indices) const;

  bool operator==(const CodingMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  FieldSpec field_ = gf2;
  std::vector<element> data_;
};

/// Reinterprets a GF(2) matrix in the larger field `target` (GF(2) is the
/// prime subfield of every GF(2^w)). Matrices already in `target` are
/// returned unchanged.
CodingMatrix promote(const CodingMatrix& m, FieldSpec target);

/// Product a * b over the common field of both operands.
CodingMatrix multiply(const CodingMatrix& a, const CodingMatrix& b);

/// One row per line, space-separated decimal field elements.
std::string to_text(const CodingMatrix& m);
CodingMatrix matrix_from_text(std::string_view text, FieldSpec field);

/// Bit-packed GF(2) matrix; each row is a run of 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * stride_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value);
  void flip(std::size_t r, std::size_t c) { words_[r * stride_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::span<std::uint64_t> row(std::size_t r) { return {words_.data() + r * stride_, stride_}; }
  std::span<const std::uint64_t> row(std::size_t r) const { return {words_.data() + r * stride_, stride_}; }

  /// row(dst) ^= row(src)
  void xor_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  static BitMatrix from(const CodingMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> words_;
};

/// GF(2) rank by word-parallel Gaussian elimination (consumes its argument).
std::size_t rank(BitMatrix m);

/// Rank of up to 64-column GF(2) rows packed into single words; `rows` is
/// overwritten with a reduced basis in its first `rank` entries.
std::size_t rank_words(std::span<std::uint64_t> rows);

}  // namespace gic
