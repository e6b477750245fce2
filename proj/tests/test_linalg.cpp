#include <doctest.h>

#include <random>

#include "gic/linalg.hpp"
#include "gic/schemes.hpp"
#include "support.hpp"

using namespace gic;

namespace {

CodingMatrix group_xor_rows(const GicInstance& inst, const UserPartition& groups) {
  CodingMatrix out(0, static_cast<std::size_t>(inst.packet_count()), gf2);
  for (const auto& block : groups.blocks) {
    std::vector<GaloisField::element> row(out.cols(), 0);
    for (int p : demanded_packets(block)) {
      row[static_cast<std::size_t>(p - 1)] = 1;
    }
    out.append_row(row);
  }
  return out;
}

bool all_minors_invertible(const CodingMatrix& g) {
  const std::size_t n = g.cols();
  const std::size_t r = g.rows();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != r) {
      continue;
    }
    CodingMatrix minor(r, r, g.field());
    std::size_t col = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if ((mask >> c) & 1u) {
        for (std::size_t i = 0; i < r; ++i) {
          minor(i, col) = g(i, c);
        }
        ++col;
      }
    }
    if (rank(minor) != r) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("MDS generator minors are invertible for n <= 10") {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::size_t r = 0; r <= n; ++r) {
      CAPTURE(n);
      CAPTURE(r);
      const auto g = mds_generator(n, r, cauchy_field(n, r));
      CHECK(g.rows() == r);
      CHECK(g.cols() == n);
      CHECK(all_minors_invertible(g));
    }
  }
  CHECK_THROWS(mds_generator(3, 4, gf256));
  CHECK_THROWS(mds_generator(5, 2, FieldSpec{2}));
  CHECK(cauchy_field(100, 50) == gf256);
  CHECK(cauchy_field(200, 100) == FieldSpec{16});
}

TEST_CASE("conditional entropy") {
  const CodingMatrix m(gf2, 4, {{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 1, 1, 1}});
  CHECK(conditional_entropy(m, std::vector<int>{}) == 2);
  CHECK(conditional_entropy(m, std::vector<int>{1, 2}) == 1);
  CHECK(conditional_entropy(m, std::vector<int>{1, 3}) == 2);
  CHECK(conditional_entropy(m, std::vector<int>{1, 2, 3, 4}) == 0);
}

TEST_CASE("solve_decode") {
  const CodingMatrix rows(gf2, 4, {{1, 0, 0, 1}, {1, 1, 1, 0}});
  const auto d = solve_decode(rows, std::vector<int>{2, 3}, 1);
  REQUIRE(d.has_value());
  CHECK(d->row_coefficients == std::vector<GaloisField::element>{0, 1});
  CHECK_FALSE(solve_decode(rows, std::vector<int>{}, 1).has_value());
  CHECK_THROWS(solve_decode(rows, std::vector<int>{1}, 1));
  CHECK_THROWS(solve_decode(rows, std::vector<int>{}, 5));

  // Cauchy rows over GF(2^8): any two unknowns out of four are recoverable.
  const auto g = mds_generator(4, 2, gf256);
  for (int a = 1; a <= 4; ++a) {
    for (int b = a + 1; b <= 4; ++b) {
      std::vector<int> known;
      for (int p = 1; p <= 4; ++p) {
        if (p != a && p != b) {
          known.push_back(p);
        }
      }
      CHECK(solve_decode(g, known, a).has_value());
      CHECK(solve_decode(g, known, b).has_value());
    }
  }
}

TEST_CASE("group XOR ranks of the example instances") {
  const auto k6 = generate_k2(6);
  CHECK(rank(group_xor_rows(k6.instance, group_partition(k6.groups))) == 5);
  const auto ex3 = test::fixture("example3.gic");
  const auto groups = side_info_groups(ex3);
  CHECK(groups.blocks.size() == 15);
  CHECK(rank(group_xor_rows(ex3, groups)) == 10);
}

TEST_CASE("last group XOR is the sum of the others") {
  for (int k = 2; k <= 12; ++k) {
    const auto gen = generate_k2(k);
    const auto rows = group_xor_rows(gen.instance, group_partition(gen.groups));
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      GaloisField::element sum = 0;
      for (std::size_t r = 0; r + 1 < rows.rows(); ++r) {
        sum ^= rows(r, c);
      }
      REQUIRE(sum == rows(rows.rows() - 1, c));
    }
  }
}
