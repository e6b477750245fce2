#include "gic/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gic/linalg.hpp"

namespace gic {

MinrankTemplate::MinrankTemplate(const GicInstance& instance)
    : rows_(instance.user_count()),
      cols_(static_cast<std::size_t>(instance.packet_count())),
      cells_(rows_ * cols_, Cell::fixed_zero) {
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto& u = instance.user(r);
    cells_[r * cols_ + static_cast<std::size_t>(u.id.packet - 1)] = Cell::fixed_one;
    for (int p : u.side_info) {
      cells_[r * cols_ + static_cast<std::size_t>(p - 1)] = Cell::free;
      ++free_;
    }
  }
}

MinrankResult minrank_gf2(const GicInstance& instance, std::size_t budget, unsigned jobs) {
  const MinrankTemplate tmpl(instance);
  MinrankResult out;
  out.free_bits = tmpl.free_count();
  if (out.free_bits > budget) {
    return out;
  }
  if (tmpl.cols() > 64) {
    throw std::invalid_argument("minrank_gf2 supports at most 64 packets");
  }

  // Fixed ones per row, and the free cells as single-bit masks.
  std::vector<std::uint64_t> base(tmpl.rows(), 0);
  std::vector<std::size_t> free_row;
  std::vector<std::uint64_t> free_mask;
  for (std::size_t r = 0; r < tmpl.rows(); ++r) {
    for (std::size_t c = 0; c < tmpl.cols(); ++c) {
      if (tmpl(r, c) == Cell::fixed_one) {
        base[r] |= std::uint64_t{1} << c;
      } else if (tmpl(r, c) == Cell::free) {
        free_row.push_back(r);
        free_mask.push_back(std::uint64_t{1} << c);
      }
    }
  }

  const std::size_t rows = tmpl.rows();
  std::vector<std::vector<std::uint64_t>> masks(rows);
  for (std::size_t b = 0; b < free_row.size(); ++b) {
    masks[free_row[b]].push_back(free_mask[b]);
  }
  auto row_value = [&](std::size_t r, std::uint64_t choice) {
    auto v = base[r];
    for (std::size_t b = 0; choice != 0; ++b, choice >>= 1) {
      if (choice & 1u) {
        v ^= masks[r][b];
      }
    }
    return v;
  };

  // Rows are fixed one at a time, depth first, choices in increasing order;
  // the echelon basis of the fixed prefix is shared by every completion
  // below it and partial rank never decreases, so branches at or above the
  // best rank are cut. Prefixes over the first rows are the parallel units.
  std::size_t depth = 0;
  std::uint64_t chunks = 1;
  while (depth < rows && chunks < 256) {
    chunks <<= masks[depth].size();
    ++depth;
  }

  struct Best {
    int rank = 65;
    std::vector<std::uint64_t> rows;
  };
  std::vector<Best> per_chunk(chunks);
  std::atomic<std::uint64_t> cursor{0};
  std::atomic<int> global_best{65};

  auto worker = [&] {
    std::vector<std::uint64_t> chosen(rows);
    std::vector<std::vector<std::uint64_t>> basis(rows + 1);
    for (std::uint64_t chunk = cursor++; chunk < chunks; chunk = cursor++) {
      auto& best = per_chunk[chunk];
      basis[0].clear();
      auto rest = chunk;
      bool viable = true;
      for (std::size_t r = depth; r-- > 0;) {
        const auto width = masks[r].size();
        chosen[r] = row_value(r, rest & ((std::uint64_t{1} << width) - 1));
        rest >>= width;
      }
      for (std::size_t r = 0; r < depth; ++r) {
        basis[r + 1] = basis[r];
        auto v = chosen[r];
        for (auto b : basis[r]) {
          v = std::min(v, v ^ b);
        }
        if (v != 0) {
          basis[r + 1].push_back(v);
        }
      }
      auto cut = [&](std::size_t level) {
        const int have = static_cast<int>(basis[level].size());
        return have >= best.rank || have > global_best.load(std::memory_order_relaxed);
      };
      if (cut(depth)) {
        viable = false;
      }
      auto dfs = [&](auto&& self, std::size_t r) -> void {
        if (r == rows) {
          best.rank = static_cast<int>(basis[r].size());
          best.rows = chosen;
          return;
        }
        const std::uint64_t options = std::uint64_t{1} << masks[r].size();
        for (std::uint64_t c = 0; c < options; ++c) {
          chosen[r] = row_value(r, c);
          auto v = chosen[r];
          for (auto b : basis[r]) {
            v = std::min(v, v ^ b);
          }
          basis[r + 1] = basis[r];
          if (v != 0) {
            basis[r + 1].push_back(v);
          }
          if (!cut(r + 1)) {
            self(self, r + 1);
          }
        }
      };
      if (viable) {
        dfs(dfs, depth);
      }
      int seen = global_best.load();
      while (best.rank < seen && !global_best.compare_exchange_weak(seen, best.rank)) {
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(chunks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }

  const Best* best = nullptr;
  for (const auto& b : per_chunk) {
    if (best == nullptr || b.rank < best->rank) {
      best = &b;
    }
  }
  out.rank = best->rank;

  CodingMatrix completion(rows, tmpl.cols(), gf2);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < tmpl.cols(); ++c) {
      completion(r, c) = static_cast<GaloisField::element>((best->rows[r] >> c) & 1u);
    }
  }
  out.code = row_basis(completion);
  return out;
}

SchemeSolution minrank_solution(const GicInstance& instance, std::size_t budget, unsigned jobs) {
  auto result = minrank_gf2(instance, budget, jobs);
  if (!result.rank) {
    throw std::length_error("minrank: " + std::to_string(result.free_bits) +
                            " free bits exceed the budget of " + std::to_string(budget));
  }
  SchemeSolution out;
  out.scheme = "minrank";
  out.rate = *result.rank;
  out.transmissions = std::move(result.code);
  out.detail = "scalar-linear GF(2) optimum, free_bits=" + std::to_string(result.free_bits);
  return out;
}

DecodeReport simulate_decode(const GicInstance& instance, const CodingMatrix& transmissions,
                             int trials, std::uint64_t seed) {
  const auto m = static_cast<std::size_t>(instance.packet_count());
  if (transmissions.cols() != m) {
    throw std::invalid_argument("transmissions have " + std::to_string(transmissions.cols()) +
                                " columns but the instance has " + std::to_string(m) + " packets");
  }
  DecodeReport report;
  report.trials = trials;
  report.seed = seed;

  std::vector<std::optional<Decoding>> decoders;
  for (const auto& u : instance.users()) {
    auto d = solve_decode(transmissions, u.side_info, u.id.packet);
    if (!d) {
      report.passed = false;
      report.failed_users.push_back(u.id);
      if (report.failure.empty()) {
        std::ostringstream msg;
        msg << "user " << to_string(u.id) << ": e_" << u.id.packet
            << " is outside span(rows, side info {";
        for (std::size_t i = 0; i < u.side_info.size(); ++i) {
          msg << (i == 0 ? "" : ",") << u.side_info[i];
        }
        msg << "}) for rows\n" << to_text(transmissions);
        report.failure = msg.str();
      }
    }
    decoders.push_back(std::move(d));
  }
  if (!report.passed) {
    return report;
  }

  const auto& gf = GaloisField::get(transmissions.field());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> symbol(0, transmissions.field().order() - 1);
  std::vector<GaloisField::element> packets(m);
  std::vector<GaloisField::element> received(transmissions.rows());
  for (int trial = 0; trial < trials; ++trial) {
    for (auto& x : packets) {
      x = static_cast<GaloisField::element>(symbol(rng));
    }
    for (std::size_t r = 0; r < transmissions.rows(); ++r) {
      GaloisField::element y = 0;
      for (std::size_t c = 0; c < m; ++c) {
        y = GaloisField::add(y, gf.mul(transmissions(r, c), packets[c]));
      }
      received[r] = y;
    }
    for (std::size_t idx = 0; idx < instance.user_count(); ++idx) {
      const auto& u = instance.user(idx);
      const auto& d = *decoders[idx];
      GaloisField::element estimate = 0;
      for (std::size_t r = 0; r < received.size(); ++r) {
        estimate = GaloisField::add(estimate, gf.mul(d.row_coefficients[r], received[r]));
      }
      for (const auto& [p, coeff] : d.side_coefficients) {
        estimate = GaloisField::add(estimate, gf.mul(coeff, packets[static_cast<std::size_t>(p - 1)]));
      }
      const auto truth = packets[static_cast<std::size_t>(u.id.packet - 1)];
      if (estimate != truth) {
        report.passed = false;
        report.failed_users.push_back(u.id);
        if (report.failure.empty()) {
          std::ostringstream msg;
          msg << "user " << to_string(u.id) << " trial " << trial << ": decoded " << estimate
              << " but packet " << u.id.packet << " is " << truth << "; rows\n"
              << to_text(transmissions);
          report.failure = msg.str();
        }
      }
    }
    if (!report.passed) {
      break;
    }
  }
  return report;
}

DecodeReport simulate_decode(const GicInstance& instance, const SchemeSolution& solution,
                             int trials, std::uint64_t seed) {
  auto report = simulate_decode(instance, solution.transmissions, trials, seed);
  if (report.passed && static_cast<std::size_t>(solution.rate) != solution.transmissions.rows()) {
    report.passed = false;
    report.failure = "solution reports rate " + std::to_string(solution.rate) + " but carries " +
                     std::to_string(solution.transmissions.rows()) + " rows";
  }
  return report;
}

}  // namespace gic
