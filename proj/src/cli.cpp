#include "gic/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "gic/heuristic.hpp"
#include "gic/oracle.hpp"
#include "gic/schemes.hpp"

namespace gic {
namespace {

const std::vector<std::string> solve_schemes = {
    "ppm-exhaustive", "upm-exhaustive",   "iupm-exhaustive", "heuristic-user",
    "heuristic-packet", "minrank",        "upm-groups",      "iupm-groups"};

struct Settings {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::size_t cap = default_enumeration_cap;
  bool randomized = false;
  bool trace = false;
};

std::string describe(const GicInstance& instance) {
  return "m=" + std::to_string(instance.packet_count()) +
         " users=" + std::to_string(instance.user_count());
}

CoefficientPolicy policy_of(const Settings& s) {
  return s.randomized ? CoefficientPolicy::randomized(32, s.seed) : CoefficientPolicy::deterministic();
}

template <class F>
SchemeRun timed_run(const std::string& scheme, const GicInstance& instance, const Settings& s, F&& f) {
  SchemeRun run;
  run.scheme = scheme;
  const auto start = std::chrono::steady_clock::now();
  try {
    run.solution = f();
  } catch (const SizeCapExceeded& e) {
    run.note = e.what();
  } catch (const std::length_error& e) {
    run.note = e.what();
  }
  run.time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (run.solution) {
    const auto report = simulate_decode(instance, *run.solution, default_decode_trials, s.seed);
    run.verified = report.passed;
    if (!report.passed) {
      run.note = report.failure;
    }
  }
  return run;
}

SchemeRun run_scheme(const std::string& scheme, const GicInstance& instance, const Settings& s,
                     std::vector<std::string>* trace) {
  SearchOptions options;
  options.cap = s.cap;
  options.jobs = s.jobs;
  options.policy = policy_of(s);
  return timed_run(scheme, instance, s, [&]() -> SchemeSolution {
    if (scheme == "ppm-exhaustive") {
      return exhaustive_ppm(instance, options);
    }
    if (scheme == "upm-exhaustive") {
      return exhaustive_upm(instance, options);
    }
    if (scheme == "iupm-exhaustive") {
      return exhaustive_iupm(instance, options);
    }
    if (scheme == "heuristic-user" || scheme == "heuristic-packet") {
      auto run = run_heuristic(instance, scheme == "heuristic-user" ? HeuristicInit::user
                                                                    : HeuristicInit::packet);
      if (trace != nullptr) {
        *trace = std::move(run.trace);
      }
      return std::move(run.solution);
    }
    if (scheme == "minrank") {
      return minrank_solution(instance, default_minrank_budget, s.jobs);
    }
    if (scheme == "upm-groups") {
      return upm_solution(instance, side_info_groups(instance), scheme);
    }
    return iupm_solution(instance, side_info_groups(instance), policy_of(s), scheme);
  });
}

std::string format_ms(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << ms;
  return out.str();
}

void print_runs(std::ostream& out, const RunReport& report) {
  out << "instance " << report.instance << " seed=" << report.seed << '\n';
  out << std::left << std::setw(18) << "scheme" << std::setw(6) << "rate" << std::setw(12)
      << "time_ms" << std::setw(10) << "verified" << "detail\n";
  for (const auto& run : report.runs) {
    out << std::setw(18) << run.scheme << std::setw(6)
        << (run.solution ? std::to_string(run.solution->rate) : "-") << std::setw(12)
        << format_ms(run.time_ms) << std::setw(10) << (run.verified ? "yes" : "no")
        << (run.solution ? run.solution->detail : run.note) << '\n';
  }
  out << std::right;
}

int emit(std::ostream& out, const std::string& text, const std::string& path, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot write " << path << '\n';
    return 2;
  }
  file << text;
  return 0;
}

std::pair<int, int> parse_k_range(const std::string& text) {
  auto sep = text.find("..");
  std::size_t skip = 2;
  if (sep == std::string::npos) {
    sep = text.find('-');
    skip = 1;
  }
  try {
    if (sep == std::string::npos) {
      const int k = std::stoi(text);
      return {k, k};
    }
    return {std::stoi(text.substr(0, sep)), std::stoi(text.substr(sep + skip))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--k", "expected K or LO..HI, got '" + text + "'");
  }
}

std::string format_bound(int k) {
  // k(k-1)/6 + 1, printed exactly with at most two decimals.
  const int num = k * (k - 1) + 6;
  std::ostringstream out;
  if (num % 6 == 0) {
    out << num / 6;
  } else {
    out << std::fixed << std::setprecision(2) << num / 6.0;
  }
  return out.str();
}

int cmd_gen(int k, const std::string& path, std::ostream& out, std::ostream& err) {
  const auto generated = generate_k2(k);
  return emit(out, save_instance(generated.instance), path, err);
}

GicInstance load_checked(const std::string& path) {
  auto instance = read_instance_file(path);
  const auto problems = validate(instance);
  if (!problems.empty()) {
    std::string msg = path + ": invalid instance";
    for (const auto& p : problems) {
      msg += "\n  " + p;
    }
    throw std::invalid_argument(msg);
  }
  return instance;
}

int cmd_solve(const std::string& path, const std::vector<std::string>& schemes, const Settings& s,
              const std::string& format, const std::string& out_path, std::ostream& out,
              std::ostream& err) {
  const auto instance = load_checked(path);
  RunReport report;
  report.instance = describe(instance);
  report.seed = s.seed;
  std::ostringstream text;
  for (const auto& scheme : schemes) {
    std::vector<std::string> trace;
    report.runs.push_back(run_scheme(scheme, instance, s, s.trace ? &trace : nullptr));
    for (const auto& line : trace) {
      text << "trace " << line << '\n';
    }
  }
  if (format == "records") {
    text << to_records(report);
  } else {
    print_runs(text, report);
    for (const auto& run : report.runs) {
      if (!run.solution) {
        continue;
      }
      text << '\n' << run.scheme << " witness: " << describe_witness(run.solution->witness) << '\n';
      text << run.scheme << " transmissions (GF(2^" << run.solution->transmissions.field().w
           << ")):\n"
           << to_text(run.solution->transmissions);
      if (!run.verified) {
        text << run.scheme << " decode failure: " << run.note << '\n';
      }
    }
  }
  if (const int rc = emit(out, text.str(), out_path, err); rc != 0) {
    return rc;
  }
  for (const auto& run : report.runs) {
    if (!run.solution) {
      err << "error: " << run.scheme << ": " << run.note << '\n';
    } else if (!run.verified) {
      err << "error: " << run.scheme << " failed decode verification\n";
    }
  }
  return report.ok() ? 0 : 1;
}

int cmd_table(int lo, int hi, const Settings& s, const std::string& format,
              const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (lo < 2 || hi < lo) {
    err << "error: k range must satisfy 2 <= LO <= HI\n";
    return 2;
  }
  std::ostringstream text;
  const char* columns[] = {"k",         "m",       "ppm_bound", "ppm_exh",     "upm_exh",
                           "upm_group", "iupm",    "heur_user", "heur_packet", "oracle"};
  if (format != "records") {
    for (const char* c : columns) {
      text << std::setw(12) << c;
    }
    text << '\n';
  }
  bool ok = true;
  for (int k = lo; k <= hi; ++k) {
    const auto gen = generate_k2(k);
    const auto& instance = gen.instance;
    const auto groups = group_partition(gen.groups);
    const std::size_t cap = s.cap;

    RunReport report;
    report.instance = "k=" + std::to_string(k) + " " + describe(instance);
    report.seed = s.seed;
    std::vector<std::string> cells{std::to_string(k), std::to_string(instance.packet_count()),
                                   format_bound(k)};
    auto add = [&](SchemeRun run) {
      std::string cell = run.solution ? std::to_string(run.solution->rate) : "-";
      if (run.solution && !run.verified) {
        cell += "!";
      }
      cells.push_back(cell);
      report.runs.push_back(std::move(run));
    };
    auto skipped = [](std::string scheme, std::string why) {
      SchemeRun run;
      run.scheme = std::move(scheme);
      run.note = std::move(why);
      return run;
    };

    if (static_cast<std::size_t>(instance.packet_count()) <= cap) {
      add(run_scheme("ppm-exhaustive", instance, s, nullptr));
    } else {
      add(skipped("ppm-exhaustive", "above cap"));
    }
    if (instance.user_count() <= cap) {
      add(run_scheme("upm-exhaustive", instance, s, nullptr));
    } else {
      add(skipped("upm-exhaustive", "above cap"));
    }
    add(timed_run("upm-groups", instance, s, [&] { return upm_solution(instance, groups, "upm-groups"); }));
    add(timed_run("iupm-groups", instance, s,
                  [&] { return iupm_solution(instance, groups, policy_of(s), "iupm-groups"); }));
    add(run_scheme("heuristic-user", instance, s, nullptr));
    add(run_scheme("heuristic-packet", instance, s, nullptr));
    if (MinrankTemplate(instance).free_count() <= default_minrank_budget) {
      add(run_scheme("minrank", instance, s, nullptr));
    } else {
      add(skipped("minrank", "above budget"));
    }

    for (const auto& run : report.runs) {
      if (run.solution && !run.verified) {
        ok = false;
        err << "error: k=" << k << " " << run.scheme << " failed decode verification: " << run.note
            << '\n';
      }
    }
    if (format == "records") {
      std::istringstream lines(to_records(report));
      for (std::string line; std::getline(lines, line);) {
        text << "k=" << k << ' ' << line << '\n';
      }
    } else {
      for (const auto& c : cells) {
        text << std::setw(12) << c;
      }
      text << '\n';
    }
  }
  if (const int rc = emit(out, text.str(), out_path, err); rc != 0) {
    return rc;
  }
  return ok ? 0 : 1;
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const auto instance = read_instance_file(path);
  const auto problems = validate(instance);
  if (problems.empty()) {
    out << path << ": ok (" << describe(instance) << ")\n";
    return 0;
  }
  for (const auto& p : problems) {
    out << path << ": " << p << '\n';
  }
  return 1;
}

}  // namespace

bool RunReport::ok() const {
  return std::all_of(runs.begin(), runs.end(),
                     [](const SchemeRun& r) { return r.solution && r.verified; });
}

std::string to_records(const RunReport& report) {
  std::ostringstream out;
  for (const auto& run : report.runs) {
    out << "scheme=" << run.scheme << " rate=" << (run.solution ? std::to_string(run.solution->rate) : "-")
        << " time_ms=" << format_ms(run.time_ms) << " verified=" << (run.verified ? "true" : "false")
        << " seed=" << report.seed << '\n';
  }
  return out.str();
}

std::vector<Record> parse_records(const std::string& text) {
  std::vector<Record> out;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    std::istringstream fields(line);
    Record rec;
    bool any = false;
    for (std::string field; fields >> field;) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) {
        continue;
      }
      const auto key = field.substr(0, eq);
      const auto value = field.substr(eq + 1);
      if (key == "scheme") {
        rec.scheme = value;
        any = true;
      } else if (key == "rate") {
        rec.rate = value == "-" ? -1 : std::stoi(value);
      } else if (key == "time_ms") {
        rec.time_ms = std::stod(value);
      } else if (key == "verified") {
        rec.verified = value == "true";
      }
    }
    if (any) {
      out.push_back(rec);
    }
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Groupcast index coding: instance generation, coding schemes, comparison tables", "gic"};
  app.require_subcommand(1);

  Settings s;
  std::string format = "table";
  std::string out_path;
  std::string k_text;
  int k = 0;
  std::string path;
  std::vector<std::string> schemes;
  std::size_t cap_override = 0;
  std::string coefficients = "deterministic";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", s.seed, "seed for randomized coefficients and the decode simulator");
    sub->add_option("--jobs", s.jobs, "worker threads for exhaustive searches")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"table", "records"}));
    sub->add_option("--out", out_path, "write output to this file instead of stdout");
    sub->add_option("--cap-override", cap_override, "enumeration cap for exhaustive searches")
        ->check(CLI::PositiveNumber);
    sub->add_option("--coefficients", coefficients, "IUPM coefficient policy")
        ->check(CLI::IsMember({"deterministic", "randomized"}));
  };

  auto* gen = app.add_subcommand("gen", "emit the (k,2) instance");
  gen->add_option("--k", k, "number of user groups")->required()->check(CLI::Range(2, 1000));
  gen->add_option("--out", out_path, "write to this file instead of stdout");

  auto* solve = app.add_subcommand("solve", "run schemes on an instance file");
  solve->add_option("instance", path, "instance file")->required();
  solve->add_option("--scheme", schemes, "scheme(s) to run")
      ->required()
      ->check(CLI::IsMember(solve_schemes));
  solve->add_flag("--trace", s.trace, "print heuristic Step-2 promotions");
  add_common(solve);

  auto* table = app.add_subcommand("table", "comparison table over a range of k");
  table->add_option("--k", k_text, "K or LO..HI")->required();
  add_common(table);

  auto* check = app.add_subcommand("validate", "check an instance file");
  check->add_option("instance", path, "instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  if (cap_override != 0) {
    s.cap = cap_override;
  }
  s.randomized = coefficients == "randomized";

  try {
    if (*gen) {
      return cmd_gen(k, out_path, out, err);
    }
    if (*solve) {
      return cmd_solve(path, schemes, s, format, out_path, out, err);
    }
    if (*table) {
      const auto [lo, hi] = parse_k_range(k_text);
      return cmd_table(lo, hi, s, format, out_path, out, err);
    }
    return cmd_validate(path, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << path << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace gic
