#include "gic/matrix.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace gic {

CodingMatrix::CodingMatrix(std::size_t rows, std::size_t cols, FieldSpec field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {
  GaloisField::get(field);
}

CodingMatrix::CodingMatrix(FieldSpec field, std::size_t cols,
                           std::initializer_list<std::initializer_list<element>> rows)
    : CodingMatrix(0, cols, field) {
  for (const auto& r : rows) {
    append_row(std::vector<element>(r));
  }
}

void CodingMatrix::append_row(std::span<const element> values) {
  if (values.size() != cols_) {
    throw std::invalid_argument("row length " + std::to_string(values.size()) +
                                " does not match column count " + std::to_string(cols_));
  }
  const auto limit = field_.order();
  for (auto v : values) {
    if (v >= limit) {
      throw std::invalid_argument("element " + std::to_string(v) + " is outside GF(2^" +
                                  std::to_string(field_.w) + ")");
    }
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

void CodingMatrix::append_rows(const CodingMatrix& other) {
  if (other.cols_ != cols_ || other.field_ != field_) {
    throw std::invalid_argument("append_rows: shape or field mismatch");
  }
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  rows_ += other.rows_;
}

CodingMatrix CodingMatrix::select_rows(std::span<const std::size_t> indices) const {
  CodingMatrix out(0, cols_, field_);
  for (auto r : indices) {
    out.append_row(row(r));
  }
  return out;
}

CodingMatrix promote(const CodingMatrix& m, FieldSpec target) {
  if (m.field() == target) {
    return m;
  }
  if (m.field() != gf2) {
    throw std::invalid_argument("only GF(2) matrices can be promoted to an extension field");
  }
  CodingMatrix out(m.rows(), m.cols(), target);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::copy(m.row(r).begin(), m.row(r).end(), out.row(r).begin());
  }
  return out;
}

CodingMatrix multiply(const CodingMatrix& a, const CodingMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("multiply: inner dimensions differ");
  }
  const FieldSpec field = std::max(a.field(), b.field());
  const auto& lhs = a.field() == field ? a : promote(a, field);
  const auto& rhs = b.field() == field ? b : promote(b, field);
  const auto& gf = GaloisField::get(field);
  CodingMatrix out(a.rows(), b.cols(), field);
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    auto dst = out.row(i);
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const auto s = lhs(i, k);
      if (s == 0) {
        continue;
      }
      auto src = rhs.row(k);
      for (std::size_t j = 0; j < dst.size(); ++j) {
        dst[j] = GaloisField::add(dst[j], gf.mul(s, src[j]));
      }
    }
  }
  return out;
}

std::string to_text(const CodingMatrix& m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) {
        out << ' ';
      }
      out << m(r, c);
    }
    out << '\n';
  }
  return out.str();
}

CodingMatrix matrix_from_text(std::string_view text, FieldSpec field) {
  std::vector<std::vector<CodingMatrix::element>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::vector<CodingMatrix::element> row;
    unsigned value = 0;
    while (tokens >> value) {
      row.push_back(static_cast<CodingMatrix::element>(value));
    }
    if (!tokens.eof()) {
      throw std::invalid_argument("matrix text contains a non-numeric token");
    }
    if (!row.empty()) {
      rows.push_back(std::move(row));
    }
  }
  CodingMatrix out(0, rows.empty() ? 0 : rows.front().size(), field);
  for (const auto& r : rows) {
    out.append_row(r);
  }
  return out;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), words_(rows * stride_, 0) {}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  auto& word = words_[r * stride_ + c / 64];
  const auto bit = std::uint64_t{1} << (c % 64);
  word = value ? (word | bit) : (word & ~bit);
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
  auto* d = words_.data() + dst * stride_;
  const auto* s = words_.data() + src * stride_;
  for (std::size_t w = 0; w < stride_; ++w) {
    d[w] ^= s[w];
  }
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) {
    return;
  }
  std::swap_ranges(words_.begin() + static_cast<std::ptrdiff_t>(a * stride_),
                   words_.begin() + static_cast<std::ptrdiff_t>((a + 1) * stride_),
                   words_.begin() + static_cast<std::ptrdiff_t>(b * stride_));
}

BitMatrix BitMatrix::from(const CodingMatrix& m) {
  if (m.field() != gf2) {
    throw std::invalid_argument("BitMatrix::from requires a GF(2) matrix");
  }
  BitMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c) != 0) {
        out.set(r, c, true);
      }
    }
  }
  return out;
}

std::size_t rank(BitMatrix m) {
  std::size_t pivot_row = 0;
  for (std::size_t word = 0; word < m.words_per_row() && pivot_row < m.rows(); ++word) {
    for (unsigned bit = 0; bit < 64 && pivot_row < m.rows(); ++bit) {
      const auto mask = std::uint64_t{1} << bit;
      std::size_t found = pivot_row;
      while (found < m.rows() && !(m.row(found)[word] & mask)) {
        ++found;
      }
      if (found == m.rows()) {
        continue;
      }
      m.swap_rows(found, pivot_row);
      for (std::size_t r = pivot_row + 1; r < m.rows(); ++r) {
        if (m.row(r)[word] & mask) {
          m.xor_row(r, pivot_row);
        }
      }
      ++pivot_row;
    }
  }
  return pivot_row;
}

std::size_t rank_words(std::span<std::uint64_t> rows) {
  std::size_t r = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto v = rows[i];
    for (std::size_t b = 0; b < r; ++b) {
      v = std::min(v, v ^ rows[b]);
    }
    if (v != 0) {
      rows[r++] = v;
    }
  }
  return r;
}

}  // namespace gic
