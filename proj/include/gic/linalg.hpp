#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gic/matrix.hpp"

namespace gic {

/// Row rank over the matrix's field.
std::size_t rank(const CodingMatrix& m);

/// Indices of a maximal independent set of rows, chosen greedily in row order.
std::vector<std::size_t> independent_rows(const CodingMatrix& m);

/// The rows named by independent_rows(): rank(m) original rows spanning the
/// same row space.
CodingMatrix row_basis(const CodingMatrix& m);

/// Rank of `m` after zeroing the columns of the known packets (1-based).
/// For unit-length uniform packets this is H(contents | known) in packets.
std::size_t conditional_entropy(const CodingMatrix& m, std::span<const int> known);

/// Coefficients recovering one packet: e_target equals
/// sum_r row_coefficients[r] * row_r + sum_(p, c) c * e_p.
struct Decoding {
  std::vector<GaloisField::element> row_coefficients;
  std::vector<std::pair<int, GaloisField::element>> side_coefficients;
};

/// Expresses e_target through the rows of `basis` and the unit vectors of
/// the known packets, or nullopt when e_target is outside that span.
/// `target` and `known` are 1-based packet indices; target must not be known.
std::optional<Decoding> solve_decode(const CodingMatrix& basis, std::span<const int> known,
                                     int target);

/// r x n generator whose every r x r column selection is invertible.
///
/// r = 1 gives the all-ones parity row and r = n the identity; otherwise a
/// Cauchy matrix 1 / (x_i + y_j) with x_i = i and y_j = r + j, which needs
/// 2^w >= n + r.
CodingMatrix mds_generator(std::size_t n, std::size_t r, FieldSpec field);

/// Smallest field from {GF(2^8), GF(2^16)} able to hold an (n, r) Cauchy code.
FieldSpec cauchy_field(std::size_t n, std::size_t r);

}  // namespace gic
