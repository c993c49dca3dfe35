#pragma once

// pathsum command-line front end: simulate, generate, bench.
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pathsum/bench.hpp"
#include "pathsum/circuit.hpp"
#include "pathsum/generators.hpp"
#include "pathsum/pathsum_engine.hpp"
#include "pathsum/statevector.hpp"
#include "pathsum/text_io.hpp"

namespace pathsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shortest round-trip decimal, always with a fractional part or exponent
// ("0.0", "-0.7071067811865476").
inline std::string format_real(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, p);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

inline Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file '" + path + "'");
  try {
    return parse_circuit(in);
  } catch (const ParseError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

template <typename Enum, typename ParseFn>
std::vector<Enum> parse_list(const std::vector<std::string>& names,
                             ParseFn parse, const char* what) {
  std::vector<Enum> out;
  for (const auto& s : names) {
    auto v = parse(s);
    if (!v) throw UsageError(std::string("unknown ") + what + " '" + s + "'");
    out.push_back(*v);
  }
  return out;
}

inline int run(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Recursive path-sum quantum circuit simulator"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "compute <end|C|start> for a circuit file");
  std::string circuit_path, start_bits, end_bits, method = "pathsum";
  bool no_prune = false, show_stats = false, parallel = false;
  sim->add_option("--circuit", circuit_path, "circuit file")->required();
  sim->add_option("--start", start_bits, "start basis state, qubit 0 leftmost")->required();
  sim->add_option("--end", end_bits, "end basis state, qubit 0 leftmost")->required();
  sim->add_option("--method", method, "pathsum or statevector")
      ->check(CLI::IsMember({"pathsum", "statevector"}));
  sim->add_flag("--no-prune", no_prune, "disable reachability pruning");
  sim->add_flag("--stats", show_stats, "print traversal statistics");
  sim->add_flag("--parallel", parallel, "split the first branching gate across two threads");

  // generate
  auto* gen = app.add_subcommand("generate", "write a benchmark circuit");
  std::string family;
  int n = 0;
  std::uint64_t seed = 1;
  std::optional<int> a_size;
  std::string out_path;
  gen->add_option("--family", family, "h-layer, qft-layer or hsp")
      ->required()
      ->check(CLI::IsMember({"h-layer", "qft-layer", "hsp"}));
  gen->add_option("--n", n, "qubit count")->required();
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--a-size", a_size, "hsp register a size (default floor(2n/3))");
  gen->add_option("--out", out_path, "output file, '-' for stdout")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
  std::vector<std::string> families, methods{"pathsum", "statevector"};
  int n_min = 0, n_max = 0, trials = 3;
  double cap = 3600.0;
  std::string csv_path, plots_dir;
  bench->add_option("--family", families, "families, comma separated")
      ->required()
      ->delimiter(',');
  bench->add_option("--n-min", n_min)->required();
  bench->add_option("--n-max", n_max)->required();
  bench->add_option("--seed", seed, "generator seed");
  bench->add_option("--trials", trials, "trials per point");
  bench->add_option("--cap", cap, "per-run time cap in seconds");
  bench->add_option("--methods", methods, "pathsum,statevector")->delimiter(',');
  bench->add_option("--csv", csv_path, "CSV output path")->required();
  bench->add_option("--plots", plots_dir, "directory for .dat series");
  bool bench_no_prune = false;
  bench->add_flag("--no-prune", bench_no_prune, "disable reachability pruning");

  std::ostringstream parse_out, parse_err;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, parse_out, parse_err);
    out << parse_out.str();
    err << parse_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sim) {
      const Circuit c = load_circuit(circuit_path);
      AmplitudeQuery q{BasisState::zero(c.num_qubits()), BasisState::zero(c.num_qubits())};
      try {
        q = {parse_basis_state(start_bits, c.num_qubits()),
             parse_basis_state(end_bits, c.num_qubits())};
      } catch (const BasisStateError& e) {
        throw UsageError(e.what());
      }
      Amplitude amp;
      if (method == "pathsum") {
        EngineOptions opts;
        opts.prune = !no_prune;
        opts.parallel = parallel;
        const PathSumResult r = path_sum_amplitude(c, q, opts);
        amp = r.amplitude;
        out << format_real(amp.real()) << ' ' << format_real(amp.imag()) << '\n';
        if (show_stats) {
          out << "qubits " << c.num_qubits() << '\n'
              << "branching " << c.branching_count() << '\n'
              << "nonbranching " << c.nonbranching_count() << '\n'
              << "recursion_calls " << r.stats.recursion_calls << '\n'
              << "edges_traversed " << r.stats.edges_traversed << '\n'
              << "prunes " << r.stats.prunes << '\n'
              << "max_depth_reached " << r.stats.max_depth_reached << '\n';
        }
      } else {
        if (no_prune || parallel)
          throw UsageError("--no-prune and --parallel apply to --method pathsum only");
        amp = statevector_amplitude(c, q);
        out << format_real(amp.real()) << ' ' << format_real(amp.imag()) << '\n';
        if (show_stats) {
          out << "qubits " << c.num_qubits() << '\n'
              << "gates " << c.size() << '\n'
              << "vector_bytes " << statevector_bytes(c.num_qubits()) << '\n';
        }
      }
      return kExitOk;
    }

    if (*gen) {
      const Family f = *parse_family(family);
      if (a_size && f != Family::Hsp)
        throw UsageError("--a-size applies to --family hsp only");
      if (n < family_min_qubits(f) || n > kMaxQubits)
        throw UsageError(family + " requires --n in [" +
                         std::to_string(family_min_qubits(f)) + ", " +
                         std::to_string(kMaxQubits) + "]");
      Circuit c = [&] {
        try {
          return generate(f, n, seed, a_size);
        } catch (const CircuitError& e) {
          throw UsageError(e.what());
        }
      }();
      const std::string text = serialize_circuit(c);
      if (out_path == "-") {
        out << text;
      } else {
        std::ofstream f_out(out_path, std::ios::binary | std::ios::trunc);
        if (!f_out || !(f_out << text) || !f_out.flush())
          throw std::runtime_error("cannot write '" + out_path + "'");
      }
      return kExitOk;
    }

    if (*bench) {
      BenchPlan plan;
      plan.families = parse_list<Family>(families, parse_family, "family");
      plan.methods = parse_list<Method>(methods, parse_method, "method");
      plan.n_min = n_min;
      plan.n_max = n_max;
      plan.seeds = {seed};
      plan.trials = trials;
      plan.cap_seconds = cap;
      plan.prune = !bench_no_prune;
      try {
        plan.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const BenchReport report = run_benchmark(plan, [&](const BenchRecord& r) {
        err << r.family << " n=" << r.n << ' ' << method_name(r.method)
            << " trial " << r.trial << ": " << r.wall_time_s << " s"
            << (r.timed_out ? " (timed out)" : "")
            << (r.error.empty() ? "" : " error: " + r.error) << '\n';
      });
      for (const auto& s : report.skipped) err << s << '\n';
      write_csv(report.records, csv_path);
      write_csv_metadata(report, csv_path + ".meta");
      out << "wrote " << report.records.size() << " records to " << csv_path << '\n';
      if (!plots_dir.empty()) {
        for (const auto& p : write_plot_data(report.records, plots_dir))
          out << "wrote " << p.string() << '\n';
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace pathsum::cli
