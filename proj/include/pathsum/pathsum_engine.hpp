#pragma once

// Recursive path summation: computes <end|C|start> by a depth-first walk of
// the computation tree.
//
// Live state is one machine word for the current basis state plus an
// amplitude register with one slot per recursion depth (h + 1 slots).
// Non-branching gates rewrite the state word and the running phase in
// place; each Hadamard recurses once per branch and sums the child slot
// into its own. Time is proportional to the number of tree edges,
// bounded by (t + 2) * 2^h.

#include <bit>
#include <chrono>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <future>
#include <optional>
#include <vector>

#include "pathsum/circuit.hpp"
#include "pathsum/gate_semantics.hpp"

namespace pathsum {

using Clock = std::chrono::steady_clock;

struct EngineOptions {
  bool prune = true;
  // Evaluate the two branches of the first Hadamard on separate threads.
  bool parallel = false;
  // Cooperative time cap, polled at branching nodes.
  std::optional<Clock::time_point> deadline;
};

struct TraversalStats {
  std::uint64_t recursion_calls = 0;  // branch recursions below the root
  std::uint64_t edges_traversed = 0;  // tree edges, counted once on descent
  std::uint64_t prunes = 0;
  int max_depth_reached = 0;
  bool timed_out = false;

  TraversalStats& operator+=(const TraversalStats& o) {
    recursion_calls += o.recursion_calls;
    edges_traversed += o.edges_traversed;
    prunes += o.prunes;
    max_depth_reached = std::max(max_depth_reached, o.max_depth_reached);
    timed_out = timed_out || o.timed_out;
    return *this;
  }
};

struct PathSumResult {
  Amplitude amplitude;
  TraversalStats stats;
};

// hamming(current, end) <= gates_remaining. Every gate changes at most one
// bit, so a larger distance cannot be closed.
inline bool end_state_reachable(const BasisState& current,
                                const BasisState& end,
                                std::size_t gates_remaining) {
  if (current.width() != end.width())
    throw CircuitError("end_state_reachable: width mismatch");
  return static_cast<std::size_t>(hamming_distance(current, end)) <=
         gates_remaining;
}

namespace detail {

// Gate lowered to masks and a precomputed phase so the hot loop touches no
// trigonometry.
struct CompiledGate {
  enum class Op : std::uint8_t { Branch, Flip, FlipPhase, Phase, Identity };
  Op op;
  std::uint64_t target;   // target bit mask
  std::uint64_t control;  // all-controls mask; 0 when uncontrolled
  // Phase when the condition mask is fully set (Phase), or when the target
  // bit was clear before the flip (FlipPhase, i.e. Y).
  Amplitude phase;
  std::uint64_t condition;
};

inline std::vector<CompiledGate> compile(const Circuit& c) {
  using Op = CompiledGate::Op;
  std::vector<CompiledGate> out;
  out.reserve(c.size());
  for (const Gate& g : c.gates()) {
    auto qs = g.qubits();
    const std::uint64_t t = bit(g.target());
    switch (g.kind()) {
      case GateKind::H:
        out.push_back({Op::Branch, t, 0, 1.0, 0});
        break;
      case GateKind::I:
        out.push_back({Op::Identity, t, 0, 1.0, 0});
        break;
      case GateKind::X:
        out.push_back({Op::Flip, t, 0, 1.0, 0});
        break;
      case GateKind::CX:
        out.push_back({Op::Flip, t, bit(qs[0]), 1.0, 0});
        break;
      case GateKind::CCX:
        out.push_back({Op::Flip, t, bit(qs[0]) | bit(qs[1]), 1.0, 0});
        break;
      case GateKind::Y:
        out.push_back({Op::FlipPhase, t, 0, Amplitude(0.0, 1.0), 0});
        break;
      case GateKind::Z:
        out.push_back({Op::Phase, t, 0, -1.0, t});
        break;
      case GateKind::S:
        out.push_back({Op::Phase, t, 0, Amplitude(0.0, 1.0), t});
        break;
      case GateKind::T:
        out.push_back(
            {Op::Phase, t, 0, std::polar(1.0, std::numbers::pi / 4), t});
        break;
      case GateKind::P:
        out.push_back({Op::Phase, t, 0, std::polar(1.0, g.theta()), t});
        break;
      case GateKind::CP:
        out.push_back(
            {Op::Phase, t, 0, std::polar(1.0, g.theta()), t | bit(qs[0])});
        break;
    }
  }
  return out;
}

}  // namespace detail

// Owns the mutable traversal state for one query at a time. Distinct
// engines may share one Circuit across threads.
class PathSumEngine {
 public:
  explicit PathSumEngine(const Circuit& c)
      : circuit_(&c), ops_(detail::compile(c)) {}

  PathSumResult amplitude(const AmplitudeQuery& q,
                          const EngineOptions& opts = {}) {
    check_query(*circuit_, q);
    if (opts.parallel) return run_parallel(q, opts);
    return run(q.start.bits(), q.end.bits(), 0, 0, 1.0, opts);
  }

  const Circuit& circuit() const { return *circuit_; }

 private:
  // Walks the tree rooted at gate `first` with the register at `state`,
  // sitting at recursion depth `depth` with running phase `phase`.
  PathSumResult run(std::uint64_t state, std::uint64_t end, std::size_t first,
                    int depth, Amplitude phase, const EngineOptions& opts) {
    state_ = state;
    end_ = end;
    prune_ = opts.prune;
    deadline_ = opts.deadline;
    poll_ = 0;
    stats_ = {};
    stats_.max_depth_reached = depth;
    const std::size_t remaining_h = count_branching(first);
    register_.assign(static_cast<std::size_t>(depth) + remaining_h + 1,
                     Amplitude{});
    step(first, depth, phase);
    return {register_[depth], stats_};
  }

  std::size_t count_branching(std::size_t first) const {
    std::size_t h = 0;
    for (std::size_t i = first; i < ops_.size(); ++i)
      if (ops_[i].op == detail::CompiledGate::Op::Branch) ++h;
    return h;
  }

  bool expired() {
    if (!deadline_) return false;
    if (stats_.timed_out) return true;
    if ((++poll_ & 0x3FF) != 0) return false;
    if (Clock::now() >= *deadline_) stats_.timed_out = true;
    return stats_.timed_out;
  }

  void step(std::size_t idx, int depth, Amplitude phase) {
    using Op = detail::CompiledGate::Op;
    const std::size_t l = ops_.size();
    for (; idx < l; ++idx) {
      if (prune_ && static_cast<std::size_t>(std::popcount(state_ ^ end_)) >
                        l - idx) {
        ++stats_.prunes;
        register_[depth] = 0.0;
        return;
      }
      const detail::CompiledGate& g = ops_[idx];
      switch (g.op) {
        case Op::Branch: {
          Amplitude& slot = register_[depth];
          slot = 0.0;
          if (expired()) return;
          const std::uint64_t saved = state_;
          const double sign1 = (saved & g.target) ? -kInvSqrt2 : kInvSqrt2;
          const int child = depth + 1;
          if (child > stats_.max_depth_reached)
            stats_.max_depth_reached = child;

          state_ = saved & ~g.target;
          ++stats_.edges_traversed;
          ++stats_.recursion_calls;
          step(idx + 1, child, phase * kInvSqrt2);
          slot += register_[child];

          state_ = saved | g.target;
          ++stats_.edges_traversed;
          ++stats_.recursion_calls;
          step(idx + 1, child, phase * sign1);
          slot += register_[child];

          state_ = saved;
          return;
        }
        case Op::Flip:
          if ((state_ & g.control) == g.control) state_ ^= g.target;
          break;
        case Op::FlipPhase:
          phase *= (state_ & g.target) ? std::conj(g.phase) : g.phase;
          state_ ^= g.target;
          break;
        case Op::Phase:
          if ((state_ & g.condition) == g.condition) phase *= g.phase;
          break;
        case Op::Identity:
          break;
      }
      ++stats_.edges_traversed;
    }
    register_[depth] = state_ == end_ ? phase : Amplitude{};
  }

  // Runs the straight-line prefix up to the first Hadamard serially, then
  // hands each of its two branches to its own engine. The sum is taken in
  // the same order as the serial walk.
  PathSumResult run_parallel(const AmplitudeQuery& q,
                             const EngineOptions& opts) {
    using Op = detail::CompiledGate::Op;
    const std::size_t l = ops_.size();
    std::uint64_t state = q.start.bits();
    const std::uint64_t end = q.end.bits();
    Amplitude phase = 1.0;
    TraversalStats prefix;
    std::size_t idx = 0;
    for (; idx < l && ops_[idx].op != Op::Branch; ++idx) {
      if (opts.prune &&
          static_cast<std::size_t>(std::popcount(state ^ end)) > l - idx) {
        ++prefix.prunes;
        return {Amplitude{}, prefix};
      }
      const auto& g = ops_[idx];
      switch (g.op) {
        case Op::Flip:
          if ((state & g.control) == g.control) state ^= g.target;
          break;
        case Op::FlipPhase:
          phase *= (state & g.target) ? std::conj(g.phase) : g.phase;
          state ^= g.target;
          break;
        case Op::Phase:
          if ((state & g.condition) == g.condition) phase *= g.phase;
          break;
        default:
          break;
      }
      ++prefix.edges_traversed;
    }
    if (idx == l || (opts.prune && static_cast<std::size_t>(std::popcount(
                                       state ^ end)) > l - idx)) {
      EngineOptions serial = opts;
      serial.parallel = false;
      return run(q.start.bits(), end, 0, 0, 1.0, serial);
    }

    const std::uint64_t t = ops_[idx].target;
    const double sign1 = (state & t) ? -kInvSqrt2 : kInvSqrt2;
    EngineOptions child_opts = opts;
    child_opts.parallel = false;
    auto launch = [&](std::uint64_t s, Amplitude ph) {
      return std::async(std::launch::async, [this, s, end, idx, ph,
                                             child_opts] {
        PathSumEngine sub(*circuit_);
        return sub.run(s, end, idx + 1, 1, ph, child_opts);
      });
    };
    auto f0 = launch(state & ~t, phase * kInvSqrt2);
    auto f1 = launch(state | t, phase * sign1);
    PathSumResult r0 = f0.get();
    PathSumResult r1 = f1.get();

    PathSumResult out{Amplitude{}, prefix};
    out.amplitude += r0.amplitude;
    out.amplitude += r1.amplitude;
    out.stats.edges_traversed += 2;
    out.stats.recursion_calls += 2;
    out.stats += r0.stats;
    out.stats += r1.stats;
    out.stats.max_depth_reached =
        std::max(r0.stats.max_depth_reached, r1.stats.max_depth_reached);
    return out;
  }

  const Circuit* circuit_;
  std::vector<detail::CompiledGate> ops_;
  std::vector<Amplitude> register_;
  std::uint64_t state_ = 0;
  std::uint64_t end_ = 0;
  bool prune_ = true;
  std::optional<Clock::time_point> deadline_;
  std::uint64_t poll_ = 0;
  TraversalStats stats_;
};

inline PathSumResult path_sum_amplitude(const Circuit& c,
                                        const AmplitudeQuery& q,
                                        const EngineOptions& opts = {}) {
  PathSumEngine engine(c);
  return engine.amplitude(q, opts);
}

}  // namespace pathsum
