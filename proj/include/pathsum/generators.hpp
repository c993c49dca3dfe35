#pragma once

// Seeded benchmark circuit families:
//   h-layer   - H on every qubit, n random Toffolis, H on every qubit
//   qft-layer - QFT, n random Toffolis, QFT
//   hsp       - H on register a, n Toffolis controlled by a onto b, QFT on a
// Same (family, n, seed) always yields the same gate list.

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pathsum/circuit.hpp"
#include "pathsum/rng.hpp"

namespace pathsum {

enum class Family { HLayer, QftLayer, Hsp };

inline constexpr std::string_view family_name(Family f) {
  switch (f) {
    case Family::HLayer: return "h-layer";
    case Family::QftLayer: return "qft-layer";
    case Family::Hsp: return "hsp";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view s) {
  for (Family f : {Family::HLayer, Family::QftLayer, Family::Hsp})
    if (s == family_name(f)) return f;
  return std::nullopt;
}

inline constexpr int family_min_qubits(Family f) {
  return f == Family::Hsp ? 5 : 3;
}

// QFT cascade without the terminal swaps: for each qubit an H followed by
// CP(2*pi/2^k) rotations controlled by the later qubits. m(m+1)/2 gates.
inline std::vector<Gate> gen_qft(std::span<const int> qubits) {
  std::vector<Gate> out;
  const std::size_t m = qubits.size();
  out.reserve(m * (m + 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back(Gate::h(qubits[i]));
    for (std::size_t k = 2; i + k - 1 < m; ++k) {
      const double theta = 2.0 * std::numbers::pi / static_cast<double>(std::uint64_t{1} << k);
      out.push_back(Gate::cp(qubits[i + k - 1], qubits[i], theta));
    }
  }
  return out;
}

struct HspLayout {
  int a_size;
  int b_size;

  // a occupies qubits [0, a_size), b occupies [a_size, n).
  static HspLayout standard(int n) { return {2 * n / 3, n - 2 * n / 3}; }
};

namespace detail {

inline void require_min(Family f, int n) {
  if (n < family_min_qubits(f))
    throw CircuitError(std::string(family_name(f)) + " needs n >= " +
                       std::to_string(family_min_qubits(f)) + ", got " +
                       std::to_string(n));
  if (n > kMaxQubits)
    throw CircuitError(std::string(family_name(f)) + " needs n <= " +
                       std::to_string(kMaxQubits) + ", got " + std::to_string(n));
}

// Three distinct qubits uniform over ordered triples; first two are controls.
inline Gate random_toffoli(SplitMix64& rng, int n) {
  const int a = static_cast<int>(rng.below(n));
  int b = static_cast<int>(rng.below(n - 1));
  if (b >= a) ++b;
  int c = static_cast<int>(rng.below(n - 2));
  for (int skip : {std::min(a, b), std::max(a, b)})
    if (c >= skip) ++c;
  return Gate::ccx(a, b, c);
}

inline std::vector<int> iota(int from, int to) {
  std::vector<int> v;
  for (int q = from; q < to; ++q) v.push_back(q);
  return v;
}

}  // namespace detail

inline Circuit gen_layered_hadamard(int n, std::uint64_t seed) {
  detail::require_min(Family::HLayer, n);
  SplitMix64 rng(seed);
  std::vector<Gate> gates;
  for (int q = 0; q < n; ++q) gates.push_back(Gate::h(q));
  for (int k = 0; k < n; ++k) gates.push_back(detail::random_toffoli(rng, n));
  for (int q = 0; q < n; ++q) gates.push_back(Gate::h(q));
  return make_circuit(n, std::move(gates));
}

inline Circuit gen_layered_qft(int n, std::uint64_t seed) {
  detail::require_min(Family::QftLayer, n);
  SplitMix64 rng(seed);
  const auto all = detail::iota(0, n);
  std::vector<Gate> gates = gen_qft(all);
  for (int k = 0; k < n; ++k) gates.push_back(detail::random_toffoli(rng, n));
  const auto tail = gen_qft(all);
  gates.insert(gates.end(), tail.begin(), tail.end());
  return make_circuit(n, std::move(gates));
}

// `a_size` overrides the default floor(2n/3) split; register a needs two
// distinct controls and b at least one target.
inline Circuit gen_hsp_standard(int n, std::uint64_t seed,
                                std::optional<int> a_size = std::nullopt) {
  detail::require_min(Family::Hsp, n);
  HspLayout layout = HspLayout::standard(n);
  if (a_size) {
    if (*a_size < 2 || *a_size > n - 1)
      throw CircuitError("hsp register a size " + std::to_string(*a_size) +
                         " must be in [2, " + std::to_string(n - 1) + "]");
    layout = {*a_size, n - *a_size};
  }
  SplitMix64 rng(seed);
  const auto a = detail::iota(0, layout.a_size);
  std::vector<Gate> gates;
  for (int q : a) gates.push_back(Gate::h(q));
  for (int k = 0; k < n; ++k) {
    const int c0 = static_cast<int>(rng.below(layout.a_size));
    int c1 = static_cast<int>(rng.below(layout.a_size - 1));
    if (c1 >= c0) ++c1;
    const int target = layout.a_size + static_cast<int>(rng.below(layout.b_size));
    gates.push_back(Gate::ccx(c0, c1, target));
  }
  const auto qft = gen_qft(a);
  gates.insert(gates.end(), qft.begin(), qft.end());
  return make_circuit(n, std::move(gates));
}

inline Circuit generate(Family f, int n, std::uint64_t seed,
                        std::optional<int> a_size = std::nullopt) {
  switch (f) {
    case Family::HLayer: return gen_layered_hadamard(n, seed);
    case Family::QftLayer: return gen_layered_qft(n, seed);
    case Family::Hsp: return gen_hsp_standard(n, seed, a_size);
  }
  throw CircuitError("unknown family");
}

}  // namespace pathsum
