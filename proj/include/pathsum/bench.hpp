#pragma once

// Benchmark harness: sweeps (family, n, seed, method, trial), timing one
// amplitude query per run and recording peak memory, then writes a CSV and
// per-series two-column .dat files for plotting.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "pathsum/circuit.hpp"
#include "pathsum/generators.hpp"
#include "pathsum/pathsum_engine.hpp"
#include "pathsum/statevector.hpp"

namespace pathsum {

enum class Method { PathSum, StateVector };

inline constexpr std::string_view method_name(Method m) {
  return m == Method::PathSum ? "pathsum" : "statevector";
}

inline std::optional<Method> parse_method(std::string_view s) {
  if (s == "pathsum") return Method::PathSum;
  if (s == "statevector") return Method::StateVector;
  return std::nullopt;
}

// Peak resident set size. On Linux the VmHWM high-water mark can be reset
// per run through /proc/self/clear_refs; elsewhere only the process-lifetime
// ru_maxrss is available.
class PeakMemoryProbe {
 public:
  enum class Source { VmHwmReset, ProcessMaxRss };

  // Returns false when the high-water mark could not be reset.
  bool reset() {
    std::ofstream f("/proc/self/clear_refs");
    if (f && (f << "5" << std::flush)) {
      source_ = Source::VmHwmReset;
      return true;
    }
    source_ = Source::ProcessMaxRss;
    return false;
  }

  std::uint64_t peak_bytes() const {
    std::ifstream f("/proc/self/status");
    std::string line;
    while (std::getline(f, line)) {
      if (line.rfind("VmHWM:", 0) == 0) {
        std::istringstream ss(line.substr(6));
        std::uint64_t kb = 0;
        ss >> kb;
        return kb * 1024;
      }
    }
    rusage ru{};
    getrusage(RUSAGE_SELF, &ru);
    return static_cast<std::uint64_t>(ru.ru_maxrss) * 1024;
  }

  Source source() const { return source_; }

  static std::string_view describe(Source s) {
    return s == Source::VmHwmReset
               ? "process peak RSS (VmHWM, reset before each run)"
               : "process-lifetime peak RSS (getrusage ru_maxrss)";
  }

 private:
  Source source_ = Source::ProcessMaxRss;
};

struct BenchPlan {
  std::vector<Family> families;
  int n_min = 0;
  int n_max = 0;
  std::vector<std::uint64_t> seeds{1};
  std::vector<Method> methods{Method::PathSum, Method::StateVector};
  int trials = 3;
  double cap_seconds = 3600.0;
  bool prune = true;

  void validate() const {
    if (families.empty()) throw std::invalid_argument("plan has no families");
    if (methods.empty()) throw std::invalid_argument("plan has no methods");
    if (seeds.empty()) throw std::invalid_argument("plan has no seeds");
    if (n_min > n_max)
      throw std::invalid_argument("n range is empty: " + std::to_string(n_min) +
                                  " > " + std::to_string(n_max));
    if (n_max > kMaxQubits)
      throw std::invalid_argument("n_max exceeds " + std::to_string(kMaxQubits));
    for (Family f : families)
      if (n_min < family_min_qubits(f))
        throw std::invalid_argument(std::string(family_name(f)) +
                                    " requires n >= " +
                                    std::to_string(family_min_qubits(f)));
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (!(cap_seconds > 0)) throw std::invalid_argument("cap must be > 0");
  }
};

struct BenchRecord {
  std::string family;
  int n = 0;
  std::uint64_t seed = 0;
  Method method = Method::PathSum;
  int trial = 0;
  double wall_time_s = 0.0;
  std::uint64_t peak_mem_bytes = 0;
  Amplitude amplitude{std::numeric_limits<double>::quiet_NaN(),
                      std::numeric_limits<double>::quiet_NaN()};
  std::optional<std::uint64_t> recursion_calls;  // pathsum only
  std::optional<std::uint64_t> prunes;           // pathsum only
  bool timed_out = false;
  std::string error;  // empty on success
};

struct BenchReport {
  std::vector<BenchRecord> records;
  std::vector<std::string> skipped;  // plan points not run, with reasons
  PeakMemoryProbe::Source memory_source = PeakMemoryProbe::Source::ProcessMaxRss;
};

inline BenchRecord run_single(const Circuit& c, Method method, bool prune,
                              double cap_seconds, PeakMemoryProbe& probe) {
  BenchRecord rec;
  rec.method = method;
  const AmplitudeQuery q{BasisState::zero(c.num_qubits()),
                         BasisState::zero(c.num_qubits())};
  probe.reset();
  const auto t0 = Clock::now();
  const auto deadline =
      t0 + std::chrono::duration_cast<Clock::duration>(
               std::chrono::duration<double>(cap_seconds));
  try {
    if (method == Method::PathSum) {
      EngineOptions opts;
      opts.prune = prune;
      opts.deadline = deadline;
      const PathSumResult r = path_sum_amplitude(c, q, opts);
      rec.recursion_calls = r.stats.recursion_calls;
      rec.prunes = r.stats.prunes;
      rec.timed_out = r.stats.timed_out;
      if (!rec.timed_out) rec.amplitude = r.amplitude;
    } else {
      rec.amplitude = statevector_amplitude(c, q, deadline);
    }
  } catch (const TimeoutError&) {
    rec.timed_out = true;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  rec.wall_time_s = std::chrono::duration<double>(Clock::now() - t0).count();
  rec.peak_mem_bytes = probe.peak_bytes();
  return rec;
}

// Runs every plan point in plan order. Failures land in the record and
// never abort the sweep; state-vector points above the memory guard are
// skipped and listed in the report.
inline BenchReport run_benchmark(
    const BenchPlan& plan,
    const std::function<void(const BenchRecord&)>& on_record = {}) {
  plan.validate();
  BenchReport report;
  PeakMemoryProbe probe;
  report.memory_source = probe.reset() ? PeakMemoryProbe::Source::VmHwmReset
                                       : PeakMemoryProbe::Source::ProcessMaxRss;
  for (Family f : plan.families) {
    for (int n = plan.n_min; n <= plan.n_max; ++n) {
      for (std::uint64_t seed : plan.seeds) {
        const Circuit c = generate(f, n, seed);
        for (Method m : plan.methods) {
          if (m == Method::StateVector && n > kStateVectorMaxQubits) {
            report.skipped.push_back(
                std::string(family_name(f)) + " n=" + std::to_string(n) +
                " seed=" + std::to_string(seed) +
                " statevector: skipped, needs " +
                std::to_string(statevector_bytes(n)) + " bytes (limit " +
                std::to_string(kStateVectorMaxQubits) + " qubits)");
            continue;
          }
          for (int trial = 1; trial <= plan.trials; ++trial) {
            BenchRecord rec = run_single(c, m, plan.prune, plan.cap_seconds, probe);
            rec.family = family_name(f);
            rec.n = n;
            rec.seed = seed;
            rec.trial = trial;
            if (on_record) on_record(rec);
            report.records.push_back(std::move(rec));
          }
        }
      }
    }
  }
  return report;
}

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline std::string fmt_double(double v, int digits = 17) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace detail

inline constexpr std::string_view kCsvHeader =
    "family,n,seed,method,trial,wall_time_s,peak_mem_bytes,amp_re,amp_im,"
    "recursion_calls,prunes,timed_out";

inline std::string format_csv(const std::vector<BenchRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += detail::csv_field(r.family) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.seed) + ',' + std::string(method_name(r.method)) +
           ',' + std::to_string(r.trial) + ',' +
           detail::fmt_double(r.wall_time_s, 9) + ',' +
           std::to_string(r.peak_mem_bytes) + ',' +
           detail::fmt_double(r.amplitude.real()) + ',' +
           detail::fmt_double(r.amplitude.imag()) + ',' +
           (r.recursion_calls ? std::to_string(*r.recursion_calls) : "") + ',' +
           (r.prunes ? std::to_string(*r.prunes) : "") + ',' +
           (r.timed_out ? "true" : "false") + '\n';
  }
  return out;
}

inline void write_csv(const std::vector<BenchRecord>& records,
                      const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  out << format_csv(records);
  detail::finish_write(out, path);
}

// Companion to the CSV: memory metric source, skipped points and per-run
// errors, one key=value per line.
inline void write_csv_metadata(const BenchReport& report,
                               const std::filesystem::path& path) {
  auto out = detail::open_for_write(path);
  out << "peak_mem_source=" << PeakMemoryProbe::describe(report.memory_source)
      << '\n';
  for (const auto& s : report.skipped) out << "skipped=" << s << '\n';
  for (const auto& r : report.records)
    if (!r.error.empty())
      out << "error=" << r.family << " n=" << r.n << " seed=" << r.seed << ' '
          << method_name(r.method) << " trial=" << r.trial << ": " << r.error
          << '\n';
  detail::finish_write(out, path);
}

// Value written for an n where no trial produced a usable measurement
// (every trial hit the time cap or failed).
inline constexpr double kPlotSentinel = -1.0;

enum class Metric { Time, Space };

struct PlotSeries {
  std::string family;
  Method method;
  Metric metric;
  std::vector<std::pair<int, double>> points;  // (n, mean over trials)

  std::string file_name() const {
    return family + (metric == Metric::Time ? "_time_" : "_space_") +
           std::string(method_name(method)) + ".dat";
  }
};

// Groups records into (family, method, metric) series. Time is the mean
// wall time in seconds over all trials and seeds at each n, counting timed
// out trials at their capped time; space is the mean peak memory in MB.
inline std::vector<PlotSeries> plot_series(const std::vector<BenchRecord>& records) {
  using Key = std::tuple<std::string, int, int>;  // family, method, n
  struct Acc {
    double time_sum = 0, mem_sum = 0;
    int time_count = 0, mem_count = 0, timeouts = 0;
  };
  std::map<Key, Acc> acc;
  std::vector<std::pair<std::string, Method>> order;
  for (const auto& r : records) {
    auto key = Key{r.family, static_cast<int>(r.method), r.n};
    auto& a = acc[key];
    bool seen = false;
    for (const auto& o : order) seen = seen || (o.first == r.family && o.second == r.method);
    if (!seen) order.emplace_back(r.family, r.method);
    if (!r.error.empty()) continue;
    a.time_sum += r.wall_time_s;
    ++a.time_count;
    if (r.timed_out) {
      ++a.timeouts;
    } else {
      a.mem_sum += static_cast<double>(r.peak_mem_bytes) / (1024.0 * 1024.0);
      ++a.mem_count;
    }
  }
  std::vector<PlotSeries> out;
  for (const auto& [family, method] : order) {
    PlotSeries time{family, method, Metric::Time, {}};
    PlotSeries space{family, method, Metric::Space, {}};
    for (const auto& [key, a] : acc) {
      if (std::get<0>(key) != family || std::get<1>(key) != static_cast<int>(method))
        continue;
      const int n = std::get<2>(key);
      const bool all_capped = a.time_count == 0 || a.timeouts == a.time_count;
      time.points.emplace_back(n, all_capped ? kPlotSentinel : a.time_sum / a.time_count);
      space.points.emplace_back(n, a.mem_count == 0 ? kPlotSentinel : a.mem_sum / a.mem_count);
    }
    out.push_back(std::move(time));
    out.push_back(std::move(space));
  }
  return out;
}

inline std::string format_plot_series(const PlotSeries& s) {
  std::string out = "# family=" + s.family + " method=" +
                    std::string(method_name(s.method)) + " metric=" +
                    (s.metric == Metric::Time ? "time" : "space") + "\n";
  out += s.metric == Metric::Time ? "# columns: n mean_wall_time_s\n"
                                  : "# columns: n mean_peak_mem_mb\n";
  out += "# " + detail::fmt_double(kPlotSentinel) +
         " = every trial at this n hit the time cap or failed\n";
  for (const auto& [n, v] : s.points)
    out += std::to_string(n) + ' ' + detail::fmt_double(v, 9) + '\n';
  return out;
}

inline std::vector<std::filesystem::path> write_plot_data(
    const std::vector<BenchRecord>& records, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& s : plot_series(records)) {
    const auto path = dir / s.file_name();
    auto out = detail::open_for_write(path);
    out << format_plot_series(s);
    detail::finish_write(out, path);
    written.push_back(path);
  }
  return written;
}

}  // namespace pathsum
