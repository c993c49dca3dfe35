#pragma once

// Dense state-vector backend: O(2^n) memory, O(l * 2^n) time. Serves as the
// correctness oracle for the path-sum engine and as the benchmark baseline.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathsum/circuit.hpp"
#include "pathsum/gate_semantics.hpp"

namespace pathsum {

// Desk-scale cap: 2^26 amplitudes * 16 bytes = 1 GiB.
inline constexpr int kStateVectorMaxQubits = 26;

class MemoryGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t statevector_bytes(int n) {
  return (std::uint64_t{1} << n) * sizeof(Amplitude);
}

class StateVector {
 public:
  StateVector(int num_qubits, std::uint64_t basis_index)
      : num_qubits_(num_qubits) {
    if (num_qubits > kStateVectorMaxQubits) {
      const double gib =
          std::ldexp(static_cast<double>(sizeof(Amplitude)), num_qubits) /
          (1024.0 * 1024.0 * 1024.0);
      throw MemoryGuardError(
          "state vector for " + std::to_string(num_qubits) + " qubits needs " +
          std::to_string(gib) + " GiB (2^" + std::to_string(num_qubits) +
          " amplitudes x 16 bytes); limit is " +
          std::to_string(kStateVectorMaxQubits) + " qubits");
    }
    amplitudes_.assign(std::size_t{1} << num_qubits, Amplitude{});
    amplitudes_[basis_index] = 1.0;
  }

  int num_qubits() const { return num_qubits_; }
  const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
  const Amplitude& operator[](std::uint64_t i) const { return amplitudes_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return s;
  }

  void apply(const Gate& g) {
    const std::size_t dim = amplitudes_.size();
    auto qs = g.qubits();
    const std::uint64_t t = detail::bit(g.target());
    switch (g.kind()) {
      case GateKind::I:
        return;
      case GateKind::H:
        // Butterfly over index pairs (i, i | t) with bit t clear in i.
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & t) continue;
          const Amplitude a0 = amplitudes_[i];
          const Amplitude a1 = amplitudes_[i | t];
          amplitudes_[i] = (a0 + a1) * kInvSqrt2;
          amplitudes_[i | t] = (a0 - a1) * kInvSqrt2;
        }
        return;
      case GateKind::X:
      case GateKind::CX:
      case GateKind::CCX: {
        std::uint64_t c = 0;
        for (std::size_t k = 0; k + 1 < qs.size(); ++k) c |= detail::bit(qs[k]);
        for (std::size_t i = 0; i < dim; ++i)
          if (!(i & t) && (i & c) == c) std::swap(amplitudes_[i], amplitudes_[i | t]);
        return;
      }
      case GateKind::Y: {
        const Amplitude plus_i(0.0, 1.0);
        for (std::size_t i = 0; i < dim; ++i) {
          if (i & t) continue;
          const Amplitude a0 = amplitudes_[i];
          const Amplitude a1 = amplitudes_[i | t];
          // Y|0> = i|1>, Y|1> = -i|0>
          amplitudes_[i] = -plus_i * a1;
          amplitudes_[i | t] = plus_i * a0;
        }
        return;
      }
      case GateKind::Z:
      case GateKind::S:
      case GateKind::T:
      case GateKind::P:
      case GateKind::CP: {
        Amplitude phase;
        std::uint64_t cond = t;
        switch (g.kind()) {
          case GateKind::Z: phase = -1.0; break;
          case GateKind::S: phase = Amplitude(0.0, 1.0); break;
          case GateKind::T: phase = std::polar(1.0, std::numbers::pi / 4); break;
          case GateKind::CP: cond |= detail::bit(qs[0]); [[fallthrough]];
          default: phase = std::polar(1.0, g.theta()); break;
        }
        for (std::size_t i = 0; i < dim; ++i)
          if ((i & cond) == cond) amplitudes_[i] *= phase;
        return;
      }
    }
  }

 private:
  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
};

inline StateVector statevector_simulate(
    const Circuit& c, const BasisState& start,
    std::optional<std::chrono::steady_clock::time_point> deadline = {}) {
  if (start.width() != c.num_qubits())
    throw CircuitError("start state width " + std::to_string(start.width()) +
                       " does not match circuit width " +
                       std::to_string(c.num_qubits()));
  StateVector sv(c.num_qubits(), start.bits());
  for (const Gate& g : c.gates()) {
    if (deadline && std::chrono::steady_clock::now() >= *deadline)
      throw TimeoutError("state-vector simulation exceeded its time cap");
    sv.apply(g);
  }
  return sv;
}

inline Amplitude statevector_amplitude(
    const Circuit& c, const AmplitudeQuery& q,
    std::optional<std::chrono::steady_clock::time_point> deadline = {}) {
  check_query(c, q);
  return statevector_simulate(c, q.start, deadline)[q.end.bits()];
}

}  // namespace pathsum
