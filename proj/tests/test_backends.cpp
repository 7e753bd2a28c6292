// Copyright 2026 The SEQSS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>

#include "oracle.hpp"
#include "seqss/backends.hpp"
#include "seqss/protocol.hpp"
#include "seqss/stats.hpp"
#include "seqss/verify.hpp"

namespace seqss {
namespace {

using Dist = std::map<std::uint64_t, double>;

/// Exact tuple distribution from the dense oracle: GHZ_n, phase (-1)^s on the
/// spymaster's qubit, H on every qubit.
Dist tuple_oracle(std::size_t n, bool s) {
    auto v = oracle::ghz(n);
    v = oracle::apply(oracle::parity_phase(n, {n - 1}, s ? 1 : 0), v);
    for (std::size_t q = 0; q < n; ++q) {
        v = oracle::apply(oracle::single(n, q, oracle::hadamard_1q()), v);
    }
    Dist d;
    const auto p = oracle::probabilities(v);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 1e-12) {
            d[i] = p[i];
        }
    }
    return d;
}

/// Exact joint-circuit distribution of the n*m measured qubits.
Dist joint_oracle(std::size_t n, std::size_t m, std::uint64_t s) {
    const std::size_t k = n * m + 1;
    const std::size_t out = n * m;
    auto v = oracle::basis(k, std::size_t{1} << out);
    for (std::size_t j = 0; j < m; ++j) {
        v = oracle::apply(oracle::single(k, (n - 1) * m + j, oracle::hadamard_1q()), v);
        for (std::size_t slot = n - 1; slot > 0; --slot) {
            v = oracle::apply(oracle::cnot(k, slot * m + j, (slot - 1) * m + j), v);
        }
    }
    v = oracle::apply(oracle::single(k, out, oracle::hadamard_1q()), v);
    std::vector<std::size_t> inputs(m);
    for (std::size_t j = 0; j < m; ++j) {
        inputs[j] = (n - 1) * m + j;
    }
    v = oracle::apply(oracle::bitflip_oracle(k, inputs, out, s), v);
    for (std::size_t q = 0; q < out; ++q) {
        v = oracle::apply(oracle::single(k, q, oracle::hadamard_1q()), v);
    }
    Dist d;
    const auto p = oracle::probabilities(v);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] > 1e-12) {
            d[i & ((std::size_t{1} << out) - 1)] += p[i];
        }
    }
    return d;
}

std::set<std::string> strings_of(const Dist &d, std::size_t width) {
    std::set<std::string> out;
    for (const auto &[k, p] : d) {
        out.insert(BitString::from_uint(k, width).to_string());
    }
    return out;
}

TEST(TupleOracle, FrozenSupports) {
    // The dense oracle yields the parity classes, each with probability 1/4.
    const auto even = tuple_oracle(3, false);
    const auto odd = tuple_oracle(3, true);
    EXPECT_EQ(strings_of(even, 3), (std::set<std::string>{"000", "011", "101", "110"}));
    EXPECT_EQ(strings_of(odd, 3), (std::set<std::string>{"001", "010", "100", "111"}));
    for (const auto *d : {&even, &odd}) {
        for (const auto &[k, p] : *d) {
            EXPECT_NEAR(p, 0.25, 1e-12);
        }
    }
}

stats::Histogram tuple_hist(bool analytic, std::size_t n, bool s, std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    stats::Histogram h;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto o = analytic ? run_tuple_analytic(n, s, rng) : run_tuple_factorized(n, s, rng);
        ++h[o.bits.to_uint()];
    }
    return h;
}

TEST(TupleFactorized, EvenSecretUniformOverEvenStrings) {
    const auto h = tuple_hist(false, 3, false, 10000, 1);
    std::set<std::string> seen;
    for (const auto &[k, c] : h) {
        seen.insert(BitString::from_uint(k, 3).to_string());
        EXPECT_NEAR(c / 10000.0, 0.25, 0.02);
    }
    EXPECT_EQ(seen, (std::set<std::string>{"000", "011", "101", "110"}));
}

TEST(TupleFactorized, OddSecretSupport) {
    const auto h = tuple_hist(false, 3, true, 2000, 2);
    EXPECT_EQ(strings_of(Dist(h.begin(), h.end()), 3), strings_of(tuple_oracle(3, true), 3));
}

TEST(TupleFactorized, Deterministic) {
    Rng a(3), b(3);
    EXPECT_EQ(run_tuple_factorized(3, false, a), run_tuple_factorized(3, false, b));
}

TEST(TupleFactorized, PhaseChecksPass) {
    Rng rng(4);
    for (std::size_t n = 3; n <= 8; ++n) {
        for (bool s : {false, true}) {
            EXPECT_TRUE(simulate_tuple_factorized(n, s, rng).checks.all()) << n;
        }
    }
}

TEST(TupleBackends, RejectTooFewPlayers) {
    Rng rng(5);
    EXPECT_THROW(run_tuple_factorized(2, false, rng), ProtocolSizeError);
    EXPECT_THROW(run_tuple_analytic(2, false, rng), ProtocolSizeError);
}

TEST(TupleAnalytic, OddParityAlways) {
    Rng rng(6);
    for (int i = 0; i < 1000; ++i) {
        ASSERT_TRUE(run_tuple_analytic(3, true, rng).bits.parity());
    }
}

TEST(TupleAnalytic, FourPlayersEightOutcomes) {
    const auto h = tuple_hist(true, 4, false, 10000, 7);
    EXPECT_EQ(h.size(), 8U);
    for (const auto &[k, c] : h) {
        EXPECT_EQ(std::popcount(k) % 2, 0);
        EXPECT_NEAR(c / 10000.0, 0.125, 0.02);
    }
}

TEST(TupleAnalytic, CloseToFactorized) {
    const auto a = tuple_hist(true, 3, false, 10000, 8);
    const auto f = tuple_hist(false, 3, false, 10000, 9);
    EXPECT_LT(stats::total_variation_distance(a, f), 0.03);
}

/// Per-cell z bound whose family-wise false-alarm rate over `cells` cells
/// equals that of a single 3 sigma check.
double family_z(std::size_t cells) {
    const double single = 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), 3.0));
    const double per_cell = 1.0 - std::pow(1.0 - single, 1.0 / static_cast<double>(cells));
    return boost::math::quantile(boost::math::complement(boost::math::normal(), per_cell / 2.0));
}

TEST(TupleBackends, UniformWithinParityClass) {
    std::uint64_t config = 0;
    for (std::size_t n = 3; n <= 5; ++n) {
        for (bool analytic : {false, true}) {
            for (bool s : {false, true}) {
                const std::size_t trials = 10000;
                const auto h = tuple_hist(analytic, n, s, trials, derive_seed(101, config++));
                const std::size_t cells = std::size_t{1} << (n - 1);
                const double p = 1.0 / static_cast<double>(cells);
                const double bound = family_z(cells) * stats::binomial_sigma(p, trials);
                ASSERT_EQ(h.size(), cells);
                for (const auto &[k, c] : h) {
                    EXPECT_EQ(std::popcount(k) % 2 == 1, s);
                    EXPECT_NEAR(c / static_cast<double>(trials), p, bound)
                        << "n=" << n << " analytic=" << analytic << " key=" << k;
                }
            }
        }
    }
}

TEST(TupleBackends, DroppingAnyPlayerLeavesUniformBits) {
    for (std::size_t n = 3; n <= 5; ++n) {
        for (bool analytic : {false, true}) {
            const auto h = tuple_hist(analytic, n, true, 10000, 200 + n);
            for (std::size_t drop = 0; drop < n; ++drop) {
                stats::Histogram reduced;
                for (const auto &[k, c] : h) {
                    const std::uint64_t low = k & ((std::uint64_t{1} << drop) - 1);
                    const std::uint64_t high = k >> (drop + 1);
                    reduced[low | (high << drop)] += c;
                }
                const auto chi = stats::chi_square_uniform(reduced, std::uint64_t{1} << (n - 1), 0.001);
                EXPECT_TRUE(chi.passed) << "n=" << n << " drop=" << drop << " chi2=" << chi.statistic;
            }
        }
    }
}

TEST(JointOracle, FrozenDistributionThreePlayersTwoBits) {
    // s = 10: the dense circuit puts 1/16 on each (b, c) with a = s ^ b ^ c.
    const auto d = joint_oracle(3, 2, 0b10);
    ASSERT_EQ(d.size(), 16U);
    for (const auto &[k, p] : d) {
        const std::uint64_t c = k & 3, b = (k >> 2) & 3, a = (k >> 4) & 3;
        EXPECT_EQ(a ^ b ^ c, 0b10U);
        EXPECT_NEAR(p, 1.0 / 16.0, 1e-12);
    }
}

TEST(JointBackend, SingleBitXorIsSecret) {
    Rng rng(10);
    for (bool s : {false, true}) {
        const Secret sec(BitString(1).set(0, s));
        for (int i = 0; i < 200; ++i) {
            EXPECT_EQ(reconstruct(run_joint_oracle(3, 1, sec, rng)), sec);
        }
    }
}

TEST(JointBackend, ZeroSecret) {
    Rng rng(11);
    const Secret sec(BitString(2));
    for (int i = 0; i < 200; ++i) {
        EXPECT_EQ(reconstruct(run_joint_oracle(3, 2, sec, rng)).bits.to_string(), "00");
    }
}

TEST(JointBackend, PairFrequenciesMatchOracle) {
    Rng rng(12);
    const Secret sec(BitString::parse("10"));
    const std::size_t trials = 10000;
    stats::Histogram pairs;
    stats::Histogram full;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto out = run_joint_oracle(3, 2, sec, rng);
        ASSERT_EQ(out[0].party, PartyId::spymaster());
        const auto a = out[0].bits.to_uint(), b = out[1].bits.to_uint(), c = out[2].bits.to_uint();
        ASSERT_EQ(a, 0b10U ^ b ^ c);
        ++pairs[(b << 2) | c];
        ++full[(a << 4) | (b << 2) | c];
    }
    ASSERT_EQ(pairs.size(), 16U);
    for (const auto &[k, cnt] : pairs) {
        EXPECT_NEAR(cnt / static_cast<double>(trials), 1.0 / 16.0, 0.02) << k;
    }
    stats::Histogram expected;
    for (const auto &[k, p] : joint_oracle(3, 2, 0b10)) {
        expected[k] = static_cast<std::size_t>(std::llround(p * 1e6));
    }
    EXPECT_LT(stats::total_variation_distance(full, expected), 0.05);
}

TEST(JointBackend, PhaseChecksAndOutputRegister) {
    Rng rng(13);
    const auto run = simulate_joint(4, 2, BitString::parse("11"), rng);
    EXPECT_TRUE(run.checks.all());
    EXPECT_TRUE(run.output_minus);
}

TEST(JointBackend, RunsAtCeiling) {
    // 5 * 5 + 1 = 26 qubits, the largest joint register allowed.
    Rng rng(17);
    const Secret sec(BitString::parse("10110"));
    const auto run = simulate_joint(5, 5, sec.bits, rng);
    EXPECT_TRUE(run.checks.all());
    EXPECT_EQ(reconstruct(shares_to_outcomes(run.shares)), sec);
}

TEST(JointBackend, CapacityError) {
    Rng rng(14);
    EXPECT_THROW(run_joint_oracle(5, 6, Secret(BitString(6)), rng), CapacityError);
    EXPECT_TRUE(joint_fits(5, 5));
    EXPECT_FALSE(joint_fits(5, 6));
}

TEST(Backends, ParityLawExactOnEveryBackend) {
    Rng rng(15);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + rng.below(4);
        const std::size_t m = 1 + rng.below(4);
        const auto s = BitString::random(m, rng);
        for (auto kind : {BackendKind::factorized, BackendKind::analytic, BackendKind::joint}) {
            if (kind == BackendKind::joint && joint_qubits(n, m) > 16) {
                continue;
            }
            const auto run = run_backend(kind, n, m, s, rng.next());
            for (std::size_t j = 0; j < m; ++j) {
                bool parity = false;
                for (const auto &share : run.shares) {
                    parity ^= share.test(j);
                }
                ASSERT_EQ(parity, s.test(j)) << to_string(kind) << " n=" << n << " m=" << m;
            }
            ASSERT_TRUE(run.checks.all());
        }
    }
}

TEST(Backends, EquivalenceAcrossSmallSizes) {
    std::vector<std::pair<std::size_t, std::size_t>> cases;
    for (std::size_t n = 3; n <= 5; ++n) {
        for (std::size_t m = 1; m <= 3; ++m) {
            cases.emplace_back(n, m);
        }
    }
    const auto r = verify::backend_equivalence(cases, 10000, 16, 0.05);
    EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Backends, WholeOutcomeFollowsExactLaw) {
    // Exact law: agents' shares uniform on {0,1}^((n-1)m), spymaster's share
    // fixed by parity. Checked for every backend including the cases that the
    // TVD comparison handles tuple by tuple.
    for (std::size_t n = 3; n <= 5; ++n) {
        for (std::size_t m = 1; m <= 3; ++m) {
            Rng srng(derive_seed(300, n * 8 + m));
            const auto s = BitString::random(m, srng);
            for (auto kind : {BackendKind::factorized, BackendKind::analytic, BackendKind::joint}) {
                stats::Histogram agents;
                for (std::size_t k = 0; k < 10000; ++k) {
                    const auto run = run_backend(kind, n, m, s, derive_seed(400 + n * 8 + m, k),
                                                 BackendOptions{std::nullopt, false});
                    BitString acc = s;
                    std::uint64_t key = 0;
                    for (std::size_t p = 0; p + 1 < n; ++p) {
                        key |= run.shares[p].to_uint() << (p * m);
                        acc ^= run.shares[p];
                    }
                    ASSERT_EQ(run.shares[n - 1], acc);
                    ++agents[key];
                }
                const auto chi = stats::chi_square_uniform(agents, std::uint64_t{1} << ((n - 1) * m), 0.001);
                EXPECT_TRUE(chi.passed) << to_string(kind) << " n=" << n << " m=" << m << " chi2=" << chi.statistic
                                        << " critical=" << chi.critical;
            }
        }
    }
}

TEST(Backends, SameSeedSameShares) {
    const auto s = BitString::parse("1011");
    for (auto kind : {BackendKind::factorized, BackendKind::analytic, BackendKind::joint}) {
        EXPECT_EQ(run_backend(kind, 4, 4, s, 99).shares, run_backend(kind, 4, 4, s, 99).shares);
    }
}

TEST(Backends, ParseAndName) {
    for (auto kind : {BackendKind::factorized, BackendKind::analytic, BackendKind::joint}) {
        EXPECT_EQ(parse_backend(to_string(kind)), kind);
    }
    EXPECT_THROW(parse_backend("dense"), ArgumentError);
}

} // namespace
} // namespace seqss
