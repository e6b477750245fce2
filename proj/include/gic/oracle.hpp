#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gic/instance.hpp"
#include "gic/matrix.hpp"
#include "gic/solution.hpp"

namespace gic {

enum class Cell : std::uint8_t { fixed_zero, fixed_one, free };

/// users x packets template: a one at each user's own packet, a free entry
/// for every side-information packet, zero elsewhere.
class MinrankTemplate {
 public:
  explicit MinrankTemplate(const GicInstance& instance);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Cell operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  std::size_t free_count() const { return free_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t free_ = 0;
  std::vector<Cell> cells_;
};

inline constexpr std::size_t default_minrank_budget = 26;

struct MinrankResult {
  /// Empty when the free-bit count exceeds the budget.
  std::optional<int> rank;
  std::size_t free_bits = 0;
  /// A basis of the minimizing completion; it is itself a valid GF(2) code.
  CodingMatrix code;
};

/// Scalar-linear GF(2) optimum: the least rank over all completions of the
/// template. Requires m <= 64.
MinrankResult minrank_gf2(const GicInstance& instance, std::size_t budget = default_minrank_budget,
                          unsigned jobs = 1);

SchemeSolution minrank_solution(const GicInstance& instance,
                                std::size_t budget = default_minrank_budget, unsigned jobs = 1);

inline constexpr int default_decode_trials = 16;

struct DecodeReport {
  bool passed = true;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<UserId> failed_users;
  /// Description of the first failure, including the offending system.
  std::string failure;
};

/// Symbolic span check for every user, then `trials` rounds of random
/// packet symbols pushed through the rows and each user's decoder.
DecodeReport simulate_decode(const GicInstance& instance, const CodingMatrix& transmissions,
                             int trials = default_decode_trials, std::uint64_t seed = 0);
DecodeReport simulate_decode(const GicInstance& instance, const SchemeSolution& solution,
                             int trials = default_decode_trials, std::uint64_t seed = 0);

}  // namespace gic
