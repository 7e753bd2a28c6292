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
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "seqss/adversary.hpp"
#include "seqss/backends.hpp"
#include "seqss/stats.hpp"

namespace seqss {
namespace {

/// Exact outcome law of one n-qubit tuple after the qubit at `slot` is
/// measured in transit, by dense enumeration of both collapse branches.
std::vector<double> intercepted_tuple_law(std::size_t n, std::size_t slot, bool s) {
    const auto ghz = oracle::ghz(n);
    std::vector<double> law(std::size_t{1} << n, 0.0);
    for (int z = 0; z < 2; ++z) {
        // Project onto qubit `slot` = z and renormalize.
        oracle::Vec v(ghz.size(), 0.0);
        double w = 0.0;
        for (std::size_t i = 0; i < ghz.size(); ++i) {
            if (static_cast<int>((i >> slot) & 1U) == z) {
                v[i] = ghz[i];
                w += std::norm(ghz[i]);
            }
        }
        for (auto &a : v) {
            a /= std::sqrt(w);
        }
        v = oracle::apply(oracle::parity_phase(n, {n - 1}, s ? 1 : 0), v);
        for (std::size_t q = 0; q < n; ++q) {
            v = oracle::apply(oracle::single(n, q, oracle::hadamard_1q()), v);
        }
        const auto p = oracle::probabilities(v);
        for (std::size_t i = 0; i < p.size(); ++i) {
            law[i] += w * p[i];
        }
    }
    return law;
}

double parity_hit_rate(const std::vector<double> &law, bool s) {
    double hit = 0.0;
    for (std::size_t i = 0; i < law.size(); ++i) {
        if ((std::popcount(i) % 2 == 1) == s) {
            hit += law[i];
        }
    }
    return hit;
}

TEST(InterceptOracle, FrozenLaw) {
    // After collapse every outcome string is equally likely, so the parity
    // matches the secret bit with probability exactly 1/2, for any target.
    for (std::size_t slot = 0; slot < 3; ++slot) {
        for (bool s : {false, true}) {
            const auto law = intercepted_tuple_law(3, slot, s);
            for (double p : law) {
                EXPECT_NEAR(p, 0.125, 1e-12);
            }
            EXPECT_NEAR(parity_hit_rate(law, s), 0.5, 1e-12);
        }
    }
}

TEST(Intercept, PerBitSuccessHalf) {
    Rng rng(1);
    const auto rep = run_intercept_resend(3, 1, std::nullopt, 10000, rng);
    EXPECT_NEAR(rep.per_bit_success, 0.5, 0.02);
}

TEST(Intercept, EightBitMessageRarelySurvives) {
    Rng rng(2);
    const auto rep = run_intercept_resend(3, 8, std::nullopt, 10000, rng);
    const double p = std::ldexp(1.0, -8);
    EXPECT_NEAR(rep.agent_reconstruction_success, p, 3 * stats::binomial_sigma(p, 10000) + 1e-4);
    EXPECT_NEAR(rep.per_bit_success, 0.5, 0.02);
}

TEST(Intercept, HonestBaselineExact) {
    Rng rng(3);
    const auto rep = run_honest(3, 4, std::nullopt, 2000, rng);
    EXPECT_EQ(rep.agent_reconstruction_success, 1.0);
    EXPECT_EQ(rep.per_bit_success, 1.0);
}

TEST(Intercept, SameDamageForEveryTarget) {
    for (std::size_t t = 0; t < 3; ++t) {
        Rng rng(10 + t);
        const PartyId target = t == 2 ? PartyId::spymaster() : PartyId::agent(t);
        const auto rep = run_intercept_resend(3, 1, std::nullopt, 10000, rng, target);
        EXPECT_NEAR(rep.per_bit_success, 0.5, 0.02) << target.to_string();
    }
}

TEST(Intercept, EveryBackendAgreesWithOracle) {
    for (auto kind : {BackendKind::factorized, BackendKind::analytic, BackendKind::joint}) {
        Rng rng(20);
        const auto rep = run_intercept_resend(3, 1, std::nullopt, 10000, rng, PartyId::spymaster(),
                                              AttackOptions{kind, false});
        EXPECT_NEAR(rep.per_bit_success, parity_hit_rate(intercepted_tuple_law(3, 2, false), false), 0.02)
            << to_string(kind);
    }
}

TEST(Intercept, JointOutcomeLawMatchesOracle) {
    const auto law = intercepted_tuple_law(3, 2, true);
    stats::Histogram h;
    stats::Histogram want;
    for (std::size_t i = 0; i < law.size(); ++i) {
        want[i] = static_cast<std::size_t>(std::llround(law[i] * 1e6));
    }
    const BitString s = BitString::parse("1");
    for (std::uint64_t k = 0; k < 10000; ++k) {
        const auto run = run_backend(BackendKind::joint, 3, 1, s, batch_seed(30, k),
                                     BackendOptions{PartyId::spymaster(), false});
        std::uint64_t key = 0;
        for (std::size_t p = 0; p < 3; ++p) {
            key |= static_cast<std::uint64_t>(run.shares[p].test(0)) << p;
        }
        ++h[key];
    }
    EXPECT_LT(stats::total_variation_distance(h, want), 0.05);
}

TEST(Intercept, PhaseChecksFlagDamage) {
    const auto run = execute(3, 2, Secret(BitString::parse("01")), BackendKind::joint, 4,
                             ExecuteOptions{PartyId::spymaster(), true});
    EXPECT_FALSE(run.all_phases_passed());
    const auto honest = execute(3, 2, Secret(BitString::parse("01")), BackendKind::joint, 4);
    EXPECT_TRUE(honest.all_phases_passed());
}

TEST(Intercept, CheckBitsDetect) {
    Rng rng(5);
    const auto rep = run_intercept_resend(3, 8, std::nullopt, 4000, rng, PartyId::spymaster(),
                                          AttackOptions{BackendKind::factorized, true});
    ASSERT_TRUE(rep.detection_rate.has_value());
    // Four revealed positions each mismatch with probability 1/2.
    EXPECT_NEAR(*rep.detection_rate, 1.0 - 1.0 / 16.0, 0.02);
    Rng hrng(6);
    const auto honest = run_honest(3, 8, std::nullopt, 1000, hrng, AttackOptions{BackendKind::factorized, true});
    EXPECT_EQ(*honest.detection_rate, 0.0);
}

TEST(Eavesdrop, TwoBitGuess) {
    Rng rng(7);
    const auto rep = run_classical_eavesdrop(3, 2, std::nullopt, 10000, rng);
    ASSERT_TRUE(rep.eve_guess_success.has_value());
    EXPECT_NEAR(*rep.eve_guess_success, 0.25, 0.02);
    EXPECT_EQ(rep.agent_reconstruction_success, 1.0);
}

TEST(Eavesdrop, OneBitGuess) {
    Rng rng(8);
    EXPECT_NEAR(*run_classical_eavesdrop(3, 1, std::nullopt, 10000, rng).eve_guess_success, 0.5, 0.02);
}

TEST(Eavesdrop, AllSharesBreaksScheme) {
    Rng rng(9);
    EXPECT_EQ(*run_classical_eavesdrop(4, 3, std::nullopt, 500, rng, true).eve_guess_success, 1.0);
}

TEST(Eavesdrop, BroadcastIndependentOfSecret) {
    Rng rng(10);
    const auto rep = run_classical_eavesdrop(3, 2, std::nullopt, 10000, rng);
    // eve_view keys (a << 2 | s): 16 cells, uniform when a and s are independent.
    const auto chi = stats::chi_square_uniform(rep.eve_view, 16, 0.001);
    EXPECT_TRUE(chi.passed) << chi.statistic;
}

TEST(Eavesdrop, MatchesAgentsWithoutBroadcastLaw) {
    Rng rng(11);
    const auto eve = run_classical_eavesdrop(3, 3, std::nullopt, 10000, rng);
    const double agents = agents_only_success_rate(3, Secret(BitString::parse("110")), 10000, 12);
    EXPECT_NEAR(*eve.eve_guess_success, 0.125, 0.02);
    EXPECT_NEAR(agents, 0.125, 0.02);
    EXPECT_NEAR(*eve.eve_guess_success, agents, 0.02);
}

TEST(Rogue, FlipAllGivesComplement) {
    Rng rng(13);
    const Secret s(BitString::parse("1010"));
    for (int i = 0; i < 200; ++i) {
        const auto res = run_attack_once(RogueAgent{1, RogueStrategy::report_flipped, ~BitString(4)}, 4, s, rng.next());
        EXPECT_EQ(res.agents_result, ~s.bits);
    }
}

TEST(Rogue, ZeroMaskHonest) {
    Rng rng(14);
    const auto rep = run_rogue_agent(3, 3, std::nullopt, RogueAgent{0, RogueStrategy::report_flipped, BitString(3)},
                                     1000, rng);
    EXPECT_EQ(rep.agent_reconstruction_success, 1.0);
}

TEST(Rogue, NonzeroMaskNeverSilentlyCorrect) {
    Rng rng(15);
    const auto rep = run_rogue_agent(3, 3, std::nullopt,
                                     RogueAgent{1, RogueStrategy::report_flipped, BitString::parse("010")}, 1000, rng);
    EXPECT_EQ(rep.agent_reconstruction_success, 0.0);
}

TEST(Rogue, GuessAloneThreeBits) {
    Rng rng(16);
    const auto rep = run_rogue_agent(3, 3, std::nullopt, RogueAgent{0, RogueStrategy::guess_alone, {}}, 10000, rng);
    EXPECT_NEAR(*rep.eve_guess_success, 0.125, 0.02);
}

TEST(Rogue, Errors) {
    Rng rng(17);
    EXPECT_THROW(run_rogue_agent(3, 1, std::nullopt, RogueAgent{2, RogueStrategy::guess_alone, {}}, 1, rng),
                 ArgumentError);
    EXPECT_THROW(run_rogue_agent(3, 2, std::nullopt, RogueAgent{0, RogueStrategy::report_flipped, BitString(1)}, 1,
                                 rng),
                 LengthError);
}

TEST(Report, NoSinglePartyAdvantage) {
    for (std::size_t m : {1U, 2U}) {
        for (const char *bits : {"0", "1", "00", "11", "01"}) {
            const auto s = BitString::parse(bits);
            if (s.size() != m) {
                continue;
            }
            Rng rng(18 + m);
            const auto rep = run_honest(3, m, Secret(s), 10000, rng);
            ASSERT_EQ(rep.party_marginals.size(), 3U);
            for (const auto &h : rep.party_marginals) {
                const auto chi = stats::chi_square_uniform(h, std::uint64_t{1} << m, 0.001);
                EXPECT_TRUE(chi.passed) << "m=" << m << " s=" << bits << " chi2=" << chi.statistic;
            }
        }
    }
}

TEST(Report, AttackMonotonicity) {
    const std::size_t runs = 4000;
    Rng h(30);
    const double honest = run_honest(3, 2, std::nullopt, runs, h).agent_reconstruction_success;
    EXPECT_EQ(honest, 1.0);
    const std::vector<AttackModel> models = {
        ClassicalEavesdrop{}, InterceptResend{}, RogueAgent{0, RogueStrategy::report_flipped, BitString::parse("01")},
        RogueAgent{1, RogueStrategy::guess_alone, {}}};
    for (const auto &model : models) {
        Rng rng(31);
        const auto rep = run_attack_experiment(model, 3, 2, std::nullopt, runs, rng);
        EXPECT_LE(rep.agent_reconstruction_success, honest) << model_name(model);
        EXPECT_EQ(rep.runs, runs);
        EXPECT_GE(rep.per_bit_success, 0.0);
        EXPECT_LE(rep.per_bit_success, 1.0);
    }
}

TEST(Report, ReproducibleForSeed) {
    Rng a(40), b(40);
    const auto ra = run_intercept_resend(4, 3, std::nullopt, 500, a);
    const auto rb = run_intercept_resend(4, 3, std::nullopt, 500, b);
    EXPECT_EQ(ra.per_bit_success, rb.per_bit_success);
    EXPECT_EQ(ra.party_marginals, rb.party_marginals);
}

} // namespace
} // namespace seqss
