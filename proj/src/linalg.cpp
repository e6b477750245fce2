#include "gic/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace gic {
namespace {

using element = GaloisField::element;

// Semi-echelon basis: each stored row has a unit pivot that is zero in every
// row stored after it, so reducing against rows in insertion order clears
// all pivots. Optionally tracks each stored row as a combination of inputs.
class Echelon {
 public:
  Echelon(const GaloisField& gf, std::size_t cols, std::size_t inputs)
      : gf_(gf), cols_(cols), inputs_(inputs) {}

  std::size_t size() const { return rows_.size(); }

  // Reduces `v` in place; `acc` receives the combination of inputs removed.
  void reduce(std::vector<element>& v, std::vector<element>* acc) const {
    for (std::size_t b = 0; b < rows_.size(); ++b) {
      const element c = v[pivots_[b]];
      if (c == 0) {
        continue;
      }
      axpy(v, c, rows_[b]);
      if (acc != nullptr) {
        axpy(*acc, c, combos_[b]);
      }
    }
  }

  // Returns true when `v` (input number `input`) was independent.
  bool insert(std::vector<element> v, std::size_t input) {
    std::vector<element> combo;
    if (inputs_ > 0) {
      combo.assign(inputs_, 0);
      combo[input] = 1;
    }
    std::vector<element> removed(inputs_, 0);
    reduce(v, inputs_ > 0 ? &removed : nullptr);
    const auto it = std::find_if(v.begin(), v.end(), [](element x) { return x != 0; });
    if (it == v.end()) {
      return false;
    }
    const auto pivot = static_cast<std::size_t>(it - v.begin());
    const element scale = gf_.inv(v[pivot]);
    for (auto& x : v) {
      x = gf_.mul(x, scale);
    }
    if (inputs_ > 0) {
      // stored row = scale * (input - removed)
      for (std::size_t i = 0; i < inputs_; ++i) {
        combo[i] = gf_.mul(GaloisField::add(combo[i], removed[i]), scale);
      }
    }
    rows_.push_back(std::move(v));
    combos_.push_back(std::move(combo));
    pivots_.push_back(pivot);
    return true;
  }

 private:
  void axpy(std::vector<element>& dst, element c, const std::vector<element>& src) const {
    for (std::size_t j = 0; j < dst.size(); ++j) {
      if (src[j] != 0) {
        dst[j] = GaloisField::add(dst[j], gf_.mul(c, src[j]));
      }
    }
  }

  const GaloisField& gf_;
  std::size_t cols_;
  std::size_t inputs_;
  std::vector<std::vector<element>> rows_;
  std::vector<std::vector<element>> combos_;
  std::vector<std::size_t> pivots_;
};

std::vector<element> row_vector(const CodingMatrix& m, std::size_t r) {
  const auto span = m.row(r);
  return {span.begin(), span.end()};
}

void check_packet(int packet, std::size_t cols, const char* what) {
  if (packet < 1 || static_cast<std::size_t>(packet) > cols) {
    throw std::invalid_argument(std::string(what) + " packet " + std::to_string(packet) +
                                " is outside [1.." + std::to_string(cols) + "]");
  }
}

}  // namespace

std::size_t rank(const CodingMatrix& m) {
  if (m.field() == gf2) {
    return rank(BitMatrix::from(m));
  }
  Echelon basis(GaloisField::get(m.field()), m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    basis.insert(row_vector(m, r), r);
  }
  return basis.size();
}

std::vector<std::size_t> independent_rows(const CodingMatrix& m) {
  Echelon basis(GaloisField::get(m.field()), m.cols(), 0);
  std::vector<std::size_t> kept;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (basis.insert(row_vector(m, r), r)) {
      kept.push_back(r);
    }
  }
  return kept;
}

CodingMatrix row_basis(const CodingMatrix& m) {
  const auto kept = independent_rows(m);
  return m.select_rows(kept);
}

std::size_t conditional_entropy(const CodingMatrix& m, std::span<const int> known) {
  CodingMatrix reduced = m;
  for (int p : known) {
    check_packet(p, m.cols(), "known");
    for (std::size_t r = 0; r < reduced.rows(); ++r) {
      reduced(r, static_cast<std::size_t>(p - 1)) = 0;
    }
  }
  return rank(reduced);
}

std::optional<Decoding> solve_decode(const CodingMatrix& basis, std::span<const int> known,
                                     int target) {
  check_packet(target, basis.cols(), "target");
  std::vector<bool> is_known(basis.cols(), false);
  for (int p : known) {
    check_packet(p, basis.cols(), "known");
    is_known[static_cast<std::size_t>(p - 1)] = true;
  }
  if (is_known[static_cast<std::size_t>(target - 1)]) {
    throw std::invalid_argument("solve_decode: target packet is already known");
  }

  const auto& gf = GaloisField::get(basis.field());
  Echelon echelon(gf, basis.cols(), basis.rows());
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    auto v = row_vector(basis, r);
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (is_known[c]) {
        v[c] = 0;
      }
    }
    echelon.insert(std::move(v), r);
  }

  std::vector<element> goal(basis.cols(), 0);
  goal[static_cast<std::size_t>(target - 1)] = 1;
  std::vector<element> lambda(basis.rows(), 0);
  echelon.reduce(goal, &lambda);
  if (std::any_of(goal.begin(), goal.end(), [](element x) { return x != 0; })) {
    return std::nullopt;
  }

  Decoding out;
  out.row_coefficients = lambda;
  std::vector<element> combined(basis.cols(), 0);
  for (std::size_t r = 0; r < basis.rows(); ++r) {
    if (lambda[r] == 0) {
      continue;
    }
    const auto row = basis.row(r);
    for (std::size_t c = 0; c < combined.size(); ++c) {
      combined[c] = GaloisField::add(combined[c], gf.mul(lambda[r], row[c]));
    }
  }
  for (std::size_t c = 0; c < combined.size(); ++c) {
    if (is_known[c] && combined[c] != 0) {
      out.side_coefficients.emplace_back(static_cast<int>(c + 1), combined[c]);
    }
  }
  return out;
}

FieldSpec cauchy_field(std::size_t n, std::size_t r) {
  if (n + r <= gf256.order()) {
    return gf256;
  }
  if (n + r <= FieldSpec{16}.order()) {
    return FieldSpec{16};
  }
  throw std::invalid_argument("no supported field holds a Cauchy code of length " +
                              std::to_string(n));
}

CodingMatrix mds_generator(std::size_t n, std::size_t r, FieldSpec field) {
  if (r > n) {
    throw std::invalid_argument("mds_generator: r = " + std::to_string(r) + " exceeds n = " +
                                std::to_string(n));
  }
  CodingMatrix out(r, n, field);
  if (r == 0) {
    return out;
  }
  if (r == 1) {
    std::fill(out.row(0).begin(), out.row(0).end(), element{1});
    return out;
  }
  if (r == n) {
    for (std::size_t i = 0; i < n; ++i) {
      out(i, i) = 1;
    }
    return out;
  }
  if (field.order() < n + r) {
    throw std::invalid_argument("mds_generator: GF(2^" + std::to_string(field.w) +
                                ") is too small for a Cauchy code with n + r = " +
                                std::to_string(n + r));
  }
  const auto& gf = GaloisField::get(field);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto x = static_cast<element>(i);
      const auto y = static_cast<element>(r + j);
      out(i, j) = gf.inv(GaloisField::add(x, y));
    }
  }
  return out;
}

}  // namespace gic
