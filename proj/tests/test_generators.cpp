#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "pathsum/generators.hpp"
#include "pathsum/pathsum_engine.hpp"
#include "pathsum/rng.hpp"
#include "pathsum/statevector.hpp"
#include "pathsum/text_io.hpp"

using namespace pathsum;

TEST(SplitMix64, ReferenceStream) {
  // First outputs for seed 0 from the reference C implementation.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, BelowStaysInRangeAndCoversIt) {
  SplitMix64 rng(42);
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 2000; ++k) {
    const auto v = rng.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(GenQft, GateCountsAndShape) {
  EXPECT_EQ(gen_qft(std::vector<int>{0}), (std::vector<Gate>{Gate::h(0)}));
  const auto three = gen_qft(std::vector<int>{0, 1, 2});
  ASSERT_EQ(three.size(), 6u);
  int hs = 0, cps = 0;
  for (const auto& g : three) (g.kind() == GateKind::H ? hs : cps)++;
  EXPECT_EQ(hs, 3);
  EXPECT_EQ(cps, 3);
  EXPECT_EQ(three[1], Gate::cp(1, 0, std::numbers::pi / 2));
  EXPECT_EQ(three[2], Gate::cp(2, 0, std::numbers::pi / 4));
  for (int m = 1; m <= 12; ++m) {
    std::vector<int> qs;
    for (int q = 0; q < m; ++q) qs.push_back(q);
    EXPECT_EQ(gen_qft(qs).size(), static_cast<std::size_t>(m * (m + 1) / 2));
  }
}

TEST(GenQft, UniformModulusFromZero) {
  for (int m = 1; m <= 6; ++m) {
    std::vector<int> qs;
    for (int q = 0; q < m; ++q) qs.push_back(q);
    const auto sv = statevector_simulate(make_circuit(m, gen_qft(qs)), BasisState::zero(m));
    for (const auto& a : sv.amplitudes()) EXPECT_NEAR(std::abs(a), std::pow(2.0, -m / 2.0), 1e-12);
  }
}

TEST(GenLayeredHadamard, CountsAndDeterminism) {
  const auto c = gen_layered_hadamard(4, 1);
  EXPECT_EQ(c.branching_count(), 8u);
  EXPECT_EQ(c.nonbranching_count(), 4u);
  EXPECT_EQ(gen_layered_hadamard(3, 9), gen_layered_hadamard(3, 9));
  EXPECT_NE(gen_layered_hadamard(8, 1), gen_layered_hadamard(8, 2));
  EXPECT_THROW(gen_layered_hadamard(2, 1), CircuitError);
}

TEST(GenLayeredHadamard, BackendsAgreeAtFiveQubits) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = gen_layered_hadamard(5, seed);
    const AmplitudeQuery q{BasisState::zero(5), BasisState::zero(5)};
    EXPECT_NEAR(std::abs(path_sum_amplitude(c, q).amplitude - statevector_amplitude(c, q)), 0.0,
                1e-9);
  }
}

TEST(GenLayeredQft, Counts) {
  EXPECT_EQ(gen_layered_qft(4, 1).branching_count(), 8u);
  EXPECT_EQ(gen_layered_qft(4, 1).nonbranching_count(), 16u);
  EXPECT_EQ(gen_layered_qft(3, 1).branching_count(), 6u);
  EXPECT_EQ(gen_layered_qft(3, 1).nonbranching_count(), 9u);
  EXPECT_EQ(gen_layered_qft(5, 3), gen_layered_qft(5, 3));
  EXPECT_THROW(gen_layered_qft(2, 1), CircuitError);
}

TEST(GenHsp, LayoutAndCounts) {
  EXPECT_EQ(HspLayout::standard(6).a_size, 4);
  EXPECT_EQ(HspLayout::standard(6).b_size, 2);
  const auto six = gen_hsp_standard(6, 1);
  EXPECT_EQ(six.branching_count(), 8u);
  EXPECT_EQ(six.nonbranching_count(), 12u);
  const auto nine = gen_hsp_standard(9, 1);
  EXPECT_EQ(nine.branching_count(), 12u);
  EXPECT_EQ(nine.nonbranching_count(), 24u);
  EXPECT_THROW(gen_hsp_standard(4, 1), CircuitError);
}

TEST(GenHsp, ToffolisRunFromAOntoB) {
  for (int n = 5; n <= 20; ++n) {
    const auto c = gen_hsp_standard(n, static_cast<std::uint64_t>(n));
    const int a = 2 * n / 3;
    for (const auto& g : c.gates()) {
      if (g.kind() != GateKind::CCX) {
        EXPECT_LT(g.target(), a);
        continue;
      }
      EXPECT_LT(g.qubits()[0], a);
      EXPECT_LT(g.qubits()[1], a);
      EXPECT_GE(g.target(), a);
    }
  }
}

TEST(GenHsp, CustomSplit) {
  const auto even = gen_hsp_standard(8, 1, 4);
  EXPECT_EQ(even.branching_count(), 8u);
  EXPECT_EQ(even.nonbranching_count(), 4u * 3u / 2u + 8u);
  EXPECT_THROW(gen_hsp_standard(8, 1, 1), CircuitError);
  EXPECT_THROW(gen_hsp_standard(8, 1, 8), CircuitError);
}

TEST(Generators, FormulasHoldAcrossSupportedRange) {
  for (int n = 3; n <= 40; ++n) {
    const auto nn = static_cast<std::size_t>(n);
    for (std::uint64_t seed : {0ULL, 1ULL, 123456789ULL}) {
      const auto hl = gen_layered_hadamard(n, seed);
      EXPECT_EQ(hl.branching_count(), 2 * nn);
      EXPECT_EQ(hl.nonbranching_count(), nn);
      const auto ql = gen_layered_qft(n, seed);
      EXPECT_EQ(ql.branching_count(), 2 * nn);
      EXPECT_EQ(ql.nonbranching_count(), nn * (nn - 1) + nn);
      if (n >= 5) {
        const std::size_t a = 2 * nn / 3;
        const auto hsp = gen_hsp_standard(n, seed);
        EXPECT_EQ(hsp.branching_count(), 2 * a);
        EXPECT_EQ(hsp.nonbranching_count(), a * (a - 1) / 2 + nn);
        EXPECT_LT(hsp.branching_count(), hl.branching_count());
      }
    }
  }
}

TEST(Generators, SerializedOutputIsSeedDeterministic) {
  for (Family f : {Family::HLayer, Family::QftLayer, Family::Hsp})
    for (int n = family_min_qubits(f); n <= 14; ++n)
      EXPECT_EQ(serialize_circuit(generate(f, n, 5)), serialize_circuit(generate(f, n, 5)));
}

TEST(Generators, FamilyNames) {
  EXPECT_EQ(parse_family("h-layer"), Family::HLayer);
  EXPECT_EQ(parse_family("qft-layer"), Family::QftLayer);
  EXPECT_EQ(parse_family("hsp"), Family::Hsp);
  EXPECT_FALSE(parse_family("qft"));
}
