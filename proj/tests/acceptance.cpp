// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "gic/heuristic.hpp"
#include "gic/linalg.hpp"
#include "gic/oracle.hpp"
#include "gic/partition.hpp"
#include "gic/schemes.hpp"
#include "support.hpp"

using namespace gic;

namespace {

// Every solution built below goes through here; criterion 9 reports the tally.
struct Ledger {
  int checked = 0;
  int failed = 0;
  std::string first_failure;

  bool verify(const GicInstance& inst, const SchemeSolution& sol) {
    ++checked;
    const auto report = simulate_decode(inst, sol, default_decode_trials, static_cast<std::uint64_t>(checked));
    if (!report.passed) {
      ++failed;
      if (first_failure.empty()) {
        first_failure = sol.scheme + ": " + report.failure;
      }
    }
    return report.passed;
  }
} ledger;

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<std::string()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string problem;
  try {
    problem = body();
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (problem.empty() && secs >= limit_s) {
    problem = "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s";
  }
  std::ostringstream line;
  line << (problem.empty() ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " ("
       << std::fixed;
  line.precision(3);
  line << secs << " s)";
  if (!problem.empty()) {
    line << " -- " << problem;
    ++failures;
  }
  std::cout << line.str() << std::endl;
}

template <class T>
std::string expect(const std::string& what, const T& got, const T& want) {
  if (got == want) {
    return {};
  }
  std::ostringstream out;
  out << what << " = " << got << ", expected " << want;
  return out.str();
}

}  // namespace

int main() {
  criterion(1, "example 1: PPM 3, UPM 2, minrank 2, UPM witness decodes", 1.0, [] {
    const auto inst = test::fixture("example1.gic");
    const auto ppm = exhaustive_ppm(inst);
    const auto upm = exhaustive_upm(inst);
    const auto oracle = minrank_solution(inst);
    ledger.verify(inst, ppm);
    ledger.verify(inst, oracle);
    if (!ledger.verify(inst, upm) || upm.transmissions.rows() != 2) {
      return std::string("UPM witness does not decode for all 5 users");
    }
    for (auto r : {expect("ppm", ppm.rate, 3), expect("upm", upm.rate, 2), expect("minrank", oracle.rate, 2)}) {
      if (!r.empty()) {
        return r;
      }
    }
    return std::string();
  });

  criterion(2, "example 2: k=6 group UPM 6, IUPM 5, dropped row is the XOR of the rest", 1.0, [] {
    const auto gen = generate_k2(6);
    const auto groups = group_partition(gen.groups);
    const auto upm = upm_solution(gen.instance, groups);
    const auto iupm = iupm_solution(gen.instance, groups);
    ledger.verify(gen.instance, upm);
    ledger.verify(gen.instance, iupm);
    if (auto r = expect("upm", upm.rate, 6); !r.empty()) {
      return r;
    }
    if (auto r = expect("iupm", iupm.rate, 5); !r.empty()) {
      return r;
    }
    const auto& rows = upm.transmissions;
    const auto kept = independent_rows(rows);
    if (kept != std::vector<std::size_t>{0, 1, 2, 3, 4}) {
      return std::string("IUPM did not keep w_1..w_5");
    }
    for (std::size_t c = 0; c < rows.cols(); ++c) {
      GaloisField::element sum = 0;
      for (auto r : kept) {
        sum ^= rows(r, c);
      }
      if (sum != rows(5, c)) {
        return std::string("w_6 differs from the XOR of w_1..w_5");
      }
    }
    return std::string();
  });

  criterion(3, "example 3: group-XOR rank 10, all 60 users decode from 10 rows", 1.0, [] {
    const auto inst = test::fixture("example3.gic");
    const auto groups = side_info_groups(inst);
    if (groups.blocks.size() != 15) {
      return std::string("expected 15 groups");
    }
    const auto iupm = iupm_solution(inst, groups);
    if (auto r = expect("rank", iupm.rate, 10); !r.empty()) {
      return r;
    }
    const auto report = simulate_decode(inst, iupm);
    ++ledger.checked;
    if (!report.passed || inst.user_count() != 60) {
      ++ledger.failed;
      return "decode failure: " + report.failure;
    }
    return std::string();
  });

  criterion(4, "k=2..10: group UPM = k, IUPM = k-1, last group XOR identity", 5.0, [] {
    for (int k = 2; k <= 10; ++k) {
      const auto gen = generate_k2(k);
      const auto groups = group_partition(gen.groups);
      const auto upm = upm_solution(gen.instance, groups);
      const auto iupm = iupm_solution(gen.instance, groups);
      ledger.verify(gen.instance, upm);
      ledger.verify(gen.instance, iupm);
      const auto tag = "k=" + std::to_string(k) + " ";
      if (auto r = expect(tag + "upm", upm.rate, k); !r.empty()) {
        return r;
      }
      if (auto r = expect(tag + "iupm", iupm.rate, k - 1); !r.empty()) {
        return r;
      }
      const auto& rows = upm.transmissions;
      for (std::size_t c = 0; c < rows.cols(); ++c) {
        GaloisField::element sum = 0;
        for (std::size_t r = 0; r < rows.rows(); ++r) {
          sum ^= rows(r, c);
        }
        if (sum != 0) {
          return tag + "XOR of all group rows is nonzero";
        }
      }
    }
    return std::string();
  });

  criterion(5, "k=2..10: heuristic-user = k, heuristic-packet = k(k-3)/2+2", 10.0, [] {
    for (int k = 2; k <= 10; ++k) {
      const auto inst = generate_k2(k).instance;
      const auto user = run_heuristic(inst, HeuristicInit::user).solution;
      const auto packet = run_heuristic(inst, HeuristicInit::packet).solution;
      ledger.verify(inst, user);
      ledger.verify(inst, packet);
      const auto tag = "k=" + std::to_string(k) + " ";
      if (auto r = expect(tag + "heuristic-user", user.rate, k); !r.empty()) {
        return r;
      }
      if (k >= 3) {
        if (auto r = expect(tag + "heuristic-packet", packet.rate, k * (k - 3) / 2 + 2); !r.empty()) {
          return r;
        }
      }
    }
    return std::string();
  });

  criterion(6, "exhaustive PPM for k=3,4 meets k(k-1)/6 + 1", 5.0, [] {
    for (int k : {3, 4}) {
      const auto inst = generate_k2(k).instance;
      const auto ppm = exhaustive_ppm(inst);
      ledger.verify(inst, ppm);
      if (6 * ppm.rate < k * (k - 1) + 6) {
        return "k=" + std::to_string(k) + " ppm " + std::to_string(ppm.rate) + " below bound";
      }
    }
    return std::string();
  });

  criterion(7, "k=4 exhaustive UPM over Bell(12) partitions = 4 (jobs=4)", 120.0, [] {
    const auto inst = generate_k2(4).instance;
    SearchOptions options;
    options.jobs = 4;
    const auto upm = exhaustive_upm(inst, options);
    ledger.verify(inst, upm);
    if (upm.detail != "partitions=" + std::to_string(bell_number(12))) {
      return "searched " + upm.detail;
    }
    return expect("upm", upm.rate, 4);
  });

  criterion(8, "200 random instances: minrank <= IUPM <= UPM <= PPM, ppm_as_upm keeps rates", 60.0, [] {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const auto inst = test::random_instance(rng, 4, 7);
      const auto ppm = exhaustive_ppm(inst);
      const auto upm = exhaustive_upm(inst);
      const auto iupm = exhaustive_iupm(inst);
      const auto oracle = minrank_solution(inst);
      for (const auto* sol : {&ppm, &upm, &iupm, &oracle}) {
        ledger.verify(inst, *sol);
      }
      if (!(oracle.rate <= iupm.rate && iupm.rate <= upm.rate && upm.rate <= ppm.rate)) {
        return "ordering violated on\n" + save_instance(inst);
      }
      SetPartitions parts(static_cast<std::size_t>(inst.packet_count()));
      do {
        const auto pp = packet_partition_from_labels(parts.labels());
        if (upm_rate(inst, ppm_as_upm(inst, pp)).rate != ppm_rate(inst, pp).rate) {
          return "ppm_as_upm changed the rate of " + to_string(pp);
        }
      } while (parts.next());
    }
    return std::string();
  });

  criterion(9, "decode certification of every produced solution", 60.0, [] {
    // Sweep every scheme over the fixtures, the family and random instances.
    std::vector<GicInstance> pool{test::fixture("example1.gic"), test::fixture("example3.gic")};
    for (int k = 2; k <= 10; ++k) {
      pool.push_back(generate_k2(k).instance);
    }
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
      pool.push_back(test::random_instance(rng, 6, 10));
    }
    for (const auto& inst : pool) {
      const auto groups = side_info_groups(inst);
      ledger.verify(inst, upm_solution(inst, groups));
      ledger.verify(inst, iupm_solution(inst, groups));
      ledger.verify(inst, iupm_solution(inst, groups, CoefficientPolicy::randomized(8, 1)));
      ledger.verify(inst, run_heuristic(inst, HeuristicInit::user).solution);
      ledger.verify(inst, run_heuristic(inst, HeuristicInit::packet).solution);
      if (static_cast<std::size_t>(inst.packet_count()) <= 8) {
        ledger.verify(inst, exhaustive_ppm(inst));
      }
      if (inst.user_count() <= 8) {
        ledger.verify(inst, exhaustive_upm(inst));
        ledger.verify(inst, exhaustive_iupm(inst));
      }
      if (MinrankTemplate(inst).free_count() <= 20) {
        ledger.verify(inst, minrank_solution(inst));
      }
    }
    std::cout << "  solutions checked: " << ledger.checked << ", failures: " << ledger.failed << '\n';
    if (ledger.failed != 0) {
      return std::to_string(ledger.failed) + " failures, first: " + ledger.first_failure;
    }
    return std::string();
  });

  criterion(10, "Bell(10), GF(2^8) inverses, Cauchy minors for n <= 10", 30.0, [] {
    if (bell_number(10) != 115975) {
      return std::string("Bell(10) wrong");
    }
    std::uint64_t count = 0;
    SetPartitions parts(10);
    do {
      ++count;
    } while (parts.next());
    if (count != 115975) {
      return "enumerated " + std::to_string(count) + " partitions of 10";
    }
    const auto& gf = GaloisField::get(8);
    for (std::uint32_t a = 1; a < 256; ++a) {
      const auto x = static_cast<GaloisField::element>(a);
      if (gf.mul(x, gf.inv(x)) != 1) {
        return "inverse of " + std::to_string(a) + " wrong";
      }
      for (std::uint32_t b = 0; b < 256; ++b) {
        const auto y = static_cast<GaloisField::element>(b);
        if (gf.mul(x, y) != gf.mul_slow(x, y)) {
          return std::string("table product disagrees with shift-and-add");
        }
      }
    }
    for (std::size_t n = 1; n <= 10; ++n) {
      for (std::size_t r = 1; r <= n; ++r) {
        const auto g = mds_generator(n, r, cauchy_field(n, r));
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
            return "singular minor for n=" + std::to_string(n) + " r=" + std::to_string(r);
          }
        }
      }
    }
    return std::string();
  });

  return failures == 0 ? 0 : 1;
}
