#pragma once

// Action of a single gate on a classical basis state.
//
// Non-branching gates map a basis state to exactly one successor times a
// unit-modulus phase. The Hadamard maps it to two successors with factors
// of modulus 1/sqrt(2); the q=0 branch is always listed first.

#include <array>
#include <complex>
#include <cstdint>
#include <numbers>

#include "pathsum/circuit.hpp"

namespace pathsum {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

struct Branch {
  BasisState next_state;
  Amplitude factor;
};

namespace detail {

inline std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

// Successor mask and phase for a non-branching gate acting on `bits`.
// The caller guarantees the gate is non-branching.
inline std::uint64_t apply_nonbranching_bits(const Gate& g, std::uint64_t bits,
                                             Amplitude& factor) {
  auto qs = g.qubits();
  const std::uint64_t tmask = bit(g.target());
  const bool tset = (bits & tmask) != 0;
  factor = 1.0;
  switch (g.kind()) {
    case GateKind::I:
      return bits;
    case GateKind::X:
      return bits ^ tmask;
    case GateKind::Y:
      factor = tset ? Amplitude(0.0, -1.0) : Amplitude(0.0, 1.0);
      return bits ^ tmask;
    case GateKind::Z:
      if (tset) factor = -1.0;
      return bits;
    case GateKind::S:
      if (tset) factor = Amplitude(0.0, 1.0);
      return bits;
    case GateKind::T:
      if (tset) factor = std::polar(1.0, std::numbers::pi / 4);
      return bits;
    case GateKind::P:
      if (tset) factor = std::polar(1.0, g.theta());
      return bits;
    case GateKind::CP:
      if (tset && (bits & bit(qs[0]))) factor = std::polar(1.0, g.theta());
      return bits;
    case GateKind::CX:
      return (bits & bit(qs[0])) ? bits ^ tmask : bits;
    case GateKind::CCX: {
      const std::uint64_t cmask = bit(qs[0]) | bit(qs[1]);
      return (bits & cmask) == cmask ? bits ^ tmask : bits;
    }
    case GateKind::H:
      break;
  }
  throw CircuitError("apply_nonbranching: gate h is branching");
}

}  // namespace detail

inline Branch apply_nonbranching(const Gate& g, const BasisState& s) {
  if (g.gate_class() != GateClass::NonBranching)
    throw CircuitError(std::string("apply_nonbranching: gate ") +
                       mnemonic(g.kind()) + " is branching");
  Amplitude factor;
  const auto next = detail::apply_nonbranching_bits(g, s.bits(), factor);
  return {BasisState(next, s.width()), factor};
}

inline std::array<Branch, 2> branch_gate(const Gate& g, const BasisState& s) {
  if (g.gate_class() != GateClass::Branching)
    throw CircuitError(std::string("branch_gate: gate ") + mnemonic(g.kind()) +
                       " is non-branching");
  const std::uint64_t m = detail::bit(g.target());
  const bool set = s.test(g.target());
  return {Branch{BasisState(s.bits() & ~m, s.width()), kInvSqrt2},
          Branch{BasisState(s.bits() | m, s.width()),
                 set ? -kInvSqrt2 : kInvSqrt2}};
}

}  // namespace pathsum
