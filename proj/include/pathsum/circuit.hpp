#pragma once

// Circuit data model shared by the path-sum engine, the state-vector oracle,
// the generators and the text format.
//
// Qubit i is bit i of a basis-state mask. Rendered bitstrings put qubit 0 in
// the leftmost character.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pathsum {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 62;

class CircuitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An n-bit classical register state.
class BasisState {
 public:
  BasisState(std::uint64_t bits, int width) : bits_(bits), width_(width) {
    if (width < 1 || width > kMaxQubits)
      throw CircuitError("basis state width " + std::to_string(width) +
                         " outside [1, " + std::to_string(kMaxQubits) + "]");
    if (bits >> width != 0)
      throw CircuitError("basis state has bits set at or above width " +
                         std::to_string(width));
  }

  static BasisState zero(int width) { return BasisState(0, width); }

  std::uint64_t bits() const { return bits_; }
  int width() const { return width_; }
  bool test(int qubit) const { return (bits_ >> qubit) & 1U; }

  friend bool operator==(const BasisState&, const BasisState&) = default;

 private:
  std::uint64_t bits_;
  int width_;
};

inline int hamming_distance(const BasisState& a, const BasisState& b) {
  return std::popcount(a.bits() ^ b.bits());
}

enum class GateKind : std::uint8_t { I, H, X, Y, Z, S, T, P, CP, CX, CCX };

enum class GateClass : std::uint8_t { Branching, NonBranching };

constexpr int arity(GateKind kind) {
  switch (kind) {
    case GateKind::CP:
    case GateKind::CX:
      return 2;
    case GateKind::CCX:
      return 3;
    default:
      return 1;
  }
}

constexpr bool has_angle(GateKind kind) {
  return kind == GateKind::P || kind == GateKind::CP;
}

// Only the Hadamard has more than one nonzero entry per matrix row.
constexpr GateClass classify_gate(GateKind kind) {
  return kind == GateKind::H ? GateClass::Branching : GateClass::NonBranching;
}

constexpr const char* mnemonic(GateKind kind) {
  switch (kind) {
    case GateKind::I: return "id";
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::S: return "s";
    case GateKind::T: return "t";
    case GateKind::P: return "p";
    case GateKind::CP: return "cp";
    case GateKind::CX: return "cx";
    case GateKind::CCX: return "ccx";
  }
  return "?";
}

// One circuit element. Controls come before the target in `qubits()`; the
// target is always the last operand.
class Gate {
 public:
  static Gate i(int q) { return Gate(GateKind::I, {q}); }
  static Gate h(int q) { return Gate(GateKind::H, {q}); }
  static Gate x(int q) { return Gate(GateKind::X, {q}); }
  static Gate y(int q) { return Gate(GateKind::Y, {q}); }
  static Gate z(int q) { return Gate(GateKind::Z, {q}); }
  static Gate s(int q) { return Gate(GateKind::S, {q}); }
  static Gate t(int q) { return Gate(GateKind::T, {q}); }
  static Gate p(int q, double theta) { return Gate(GateKind::P, {q}, theta); }
  static Gate cp(int control, int target, double theta) {
    return Gate(GateKind::CP, {control, target}, theta);
  }
  static Gate cx(int control, int target) {
    return Gate(GateKind::CX, {control, target});
  }
  static Gate ccx(int c0, int c1, int target) {
    return Gate(GateKind::CCX, {c0, c1, target});
  }

  // Generic constructor used by the parser. Operand count and angle presence
  // must match the kind; index bounds are checked when the circuit is built.
  Gate(GateKind kind, std::initializer_list<int> qubits, double theta = 0.0)
      : Gate(kind, std::span<const int>(qubits.begin(), qubits.size()), theta) {}

  Gate(GateKind kind, std::span<const int> qubits, double theta = 0.0)
      : kind_(kind), theta_(theta) {
    if (static_cast<int>(qubits.size()) != arity(kind))
      throw CircuitError(std::string("gate ") + mnemonic(kind) + " takes " +
                         std::to_string(arity(kind)) + " operand(s), got " +
                         std::to_string(qubits.size()));
    if (!has_angle(kind) && theta != 0.0)
      throw CircuitError(std::string("gate ") + mnemonic(kind) +
                         " does not take an angle");
    if (!std::isfinite(theta))
      throw CircuitError(std::string("gate ") + mnemonic(kind) +
                         " has a non-finite angle");
    std::copy(qubits.begin(), qubits.end(), qubits_.begin());
  }

  GateKind kind() const { return kind_; }
  double theta() const { return theta_; }
  std::span<const int> qubits() const {
    return {qubits_.data(), static_cast<std::size_t>(arity(kind_))};
  }
  int target() const { return qubits_[arity(kind_) - 1]; }
  GateClass gate_class() const { return classify_gate(kind_); }

  friend bool operator==(const Gate& a, const Gate& b) {
    return a.kind_ == b.kind_ && a.theta_ == b.theta_ &&
           std::ranges::equal(a.qubits(), b.qubits());
  }

 private:
  GateKind kind_;
  std::array<int, 3> qubits_{};
  double theta_ = 0.0;
};

// Ordered gate list over a fixed register. Immutable once built; branching
// and non-branching counts are computed at construction.
class Circuit {
 public:
  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  std::size_t branching_count() const { return branching_; }
  std::size_t nonbranching_count() const { return gates_.size() - branching_; }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  friend Circuit make_circuit(int num_qubits, std::vector<Gate> gates);
  Circuit(int n, std::vector<Gate> gates, std::size_t h)
      : num_qubits_(n), gates_(std::move(gates)), branching_(h) {}

  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  std::size_t branching_ = 0;
};

inline Circuit make_circuit(int num_qubits, std::vector<Gate> gates) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw CircuitError("qubit count " + std::to_string(num_qubits) +
                       " outside [1, " + std::to_string(kMaxQubits) + "]");
  std::size_t h = 0;
  for (std::size_t pos = 0; pos < gates.size(); ++pos) {
    const Gate& g = gates[pos];
    auto where = [&] {
      return "gate " + std::to_string(pos) + " (" + mnemonic(g.kind()) + "): ";
    };
    auto qs = g.qubits();
    for (std::size_t a = 0; a < qs.size(); ++a) {
      if (qs[a] < 0 || qs[a] >= num_qubits)
        throw CircuitError(where() + "qubit index " + std::to_string(qs[a]) +
                           " out of range for " + std::to_string(num_qubits) +
                           " qubits");
      for (std::size_t b = 0; b < a; ++b)
        if (qs[a] == qs[b])
          throw CircuitError(where() + "duplicate operand " +
                             std::to_string(qs[a]));
    }
    if (g.gate_class() == GateClass::Branching) ++h;
  }
  return Circuit(num_qubits, std::move(gates), h);
}

// Adjoint: reversed order, each gate replaced by its inverse.
inline Gate invert_gate(const Gate& g) {
  auto qs = g.qubits();
  switch (g.kind()) {
    case GateKind::S:
      return Gate::p(qs[0], -std::numbers::pi / 2);
    case GateKind::T:
      return Gate::p(qs[0], -std::numbers::pi / 4);
    case GateKind::P:
      return Gate::p(qs[0], -g.theta());
    case GateKind::CP:
      return Gate::cp(qs[0], qs[1], -g.theta());
    default:
      return g;
  }
}

inline Circuit invert_circuit(const Circuit& c) {
  std::vector<Gate> out;
  out.reserve(c.size());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it)
    out.push_back(invert_gate(*it));
  return make_circuit(c.num_qubits(), std::move(out));
}

struct AmplitudeQuery {
  BasisState start;
  BasisState end;
};

inline void check_query(const Circuit& c, const AmplitudeQuery& q) {
  if (q.start.width() != c.num_qubits() || q.end.width() != c.num_qubits())
    throw CircuitError("query width mismatch: circuit has " +
                       std::to_string(c.num_qubits()) + " qubits, start has " +
                       std::to_string(q.start.width()) + ", end has " +
                       std::to_string(q.end.width()));
}

}  // namespace pathsum
