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

/**
 * @file
 * Invariant sweeps behind `seqss verify`. Each check is deterministic in its
 * seed and returns a one-line verdict.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "seqss/adversary.hpp"
#include "seqss/backends.hpp"
#include "seqss/protocol.hpp"
#include "seqss/qcore.hpp"
#include "seqss/stats.hpp"

namespace seqss::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

inline CheckResult ghz_states(std::size_t max_n = 10) {
    CheckResult r{"ghz", true, ""};
    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto s = prepare_ghz(n);
        const std::size_t last = s.size() - 1;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double want = (i == 0 || i == last) ? kInvSqrt2 : 0.0;
            if (std::abs(s[i] - Amplitude{want}) > kTolerance) {
                r.passed = false;
                r.detail = "n=" + std::to_string(n) + " amplitude " + std::to_string(i) + " off";
                return r;
            }
        }
    }
    r.detail = "n=1.." + std::to_string(max_n) + " two-term state within 1e-12";
    return r;
}

/// sum_x (-1)^((s^t).x) == 2^m [s == t], in integers, for all s, t.
inline CheckResult delta_identity(std::size_t max_m = 4) {
    CheckResult r{"delta", true, ""};
    std::size_t cases = 0;
    for (std::size_t m = 1; m <= max_m; ++m) {
        const std::uint64_t size = std::uint64_t{1} << m;
        for (std::uint64_t s = 0; s < size; ++s) {
            for (std::uint64_t t = 0; t < size; ++t) {
                const BitString d = BitString::from_uint(s ^ t, m);
                long long sum = 0;
                for (std::uint64_t x = 0; x < size; ++x) {
                    sum += d.dot(BitString::from_uint(x, m)) ? -1 : 1;
                }
                const long long want = s == t ? static_cast<long long>(size) : 0;
                ++cases;
                if (sum != want) {
                    r.passed = false;
                    r.detail = "m=" + std::to_string(m) + " s=" + std::to_string(s) +
                               " t=" + std::to_string(t) + " sum=" + std::to_string(sum);
                    return r;
                }
            }
        }
    }
    r.detail = std::to_string(cases) + " (s,t) pairs, m=1.." + std::to_string(max_m);
    return r;
}

/// Every tuple outcome of every backend has parity equal to its secret bit.
inline CheckResult parity_law(std::size_t n, std::size_t m, std::size_t runs, std::uint64_t seed) {
    CheckResult r{"parity", true, ""};
    std::ostringstream os;
    os << "n=" << n << " m=" << m;
    Rng secrets(derive_seed(seed, 7));
    for (auto kind : {BackendKind::factorized, BackendKind::analytic, BackendKind::joint}) {
        if (kind == BackendKind::joint && !joint_fits(n, m)) {
            continue;
        }
        std::size_t violations = 0;
        const std::size_t reps = kind == BackendKind::joint && joint_qubits(n, m) > 16 ? 16 : runs;
        for (std::size_t k = 0; k < reps; ++k) {
            const auto s = BitString::random(m, secrets);
            const auto run = run_backend(kind, n, m, s, batch_seed(seed, k));
            BitString acc(m);
            for (const auto &share : run.shares) {
                acc ^= share;
            }
            violations += (acc ^ s).popcount();
        }
        os << " " << to_string(kind) << "=" << violations << "/" << reps * m;
        r.passed = r.passed && violations == 0;
    }
    r.detail = os.str() + " violations";
    return r;
}

/// Agents alone recover s with frequency 2^-m.
inline CheckResult a_zero_frequency(std::size_t n, std::size_t m, std::size_t runs, std::uint64_t seed,
                                    double tol) {
    Rng rng(derive_seed(seed, 11));
    const Secret s(BitString::random(m, rng));
    const double freq = agents_only_success_rate(n, s, runs, seed);
    const double want = std::ldexp(1.0, -static_cast<int>(m));
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " observed=" << freq << " expected=" << want << " +/- " << tol;
    return {"a-zero", std::abs(freq - want) <= tol, os.str()};
}

/// Joint outcomes of every strict, non-empty subset of parties are uniform.
inline CheckResult subset_uniformity(std::size_t n, std::size_t m, std::size_t runs, std::uint64_t seed,
                                     double alpha) {
    CheckResult r{"subset", true, ""};
    Rng rng(derive_seed(seed, 13));
    const Secret s(BitString::random(m, rng));
    std::vector<ProtocolRun> samples;
    samples.reserve(runs);
    for (std::size_t k = 0; k < runs; ++k) {
        samples.push_back(execute(n, m, s, BackendKind::factorized, batch_seed(seed, k)));
    }
    std::ostringstream os;
    os << "n=" << n << " m=" << m;
    std::size_t tested = 0;
    double worst = 0.0;
    for (std::uint64_t subset = 1; subset + 1 < (std::uint64_t{1} << n); ++subset) {
        const std::size_t width = static_cast<std::size_t>(std::popcount(subset)) * m;
        if (width > 16) {
            continue;
        }
        stats::Histogram h;
        for (const auto &run : samples) {
            std::uint64_t key = 0;
            std::size_t shift = 0;
            for (std::size_t p = 0; p < n; ++p) {
                if ((subset >> p & 1U) != 0) {
                    key |= run.outcomes[p].bits.to_uint() << shift;
                    shift += m;
                }
            }
            ++h[key];
        }
        const auto chi = stats::chi_square_uniform(h, std::uint64_t{1} << width, alpha);
        worst = std::max(worst, chi.statistic / chi.critical);
        ++tested;
        if (!chi.passed) {
            r.passed = false;
            os << " subset=" << subset << " chi2=" << chi.statistic << ">" << chi.critical;
        }
    }
    os << " subsets=" << tested << " worst chi2/critical=" << worst;
    r.detail = os.str();
    return r;
}

/// Whole-outcome comparison up to 2^5 possible outcomes. Two empirical
/// histograms over K cells from N samples each sit about 0.4 * sqrt(2K/N)
/// apart in TVD even when the laws agree, which passes 0.05 at N = 10^4 only
/// for K below ~40.
inline bool compare_whole_outcome(std::size_t n, std::size_t m) { return (n - 1) * m <= 5; }

/// Outcome histogram of one backend: the whole outcome or, tuple by tuple,
/// keys (j << n | tuple bits).
inline stats::Histogram backend_histogram(BackendKind kind, std::size_t n, std::size_t m,
                                          const BitString &s, std::size_t samples, std::uint64_t seed,
                                          bool whole) {
    stats::Histogram h;
    for (std::size_t k = 0; k < samples; ++k) {
        const auto run = run_backend(kind, n, m, s, batch_seed(seed, k), {std::nullopt, false});
        if (whole) {
            std::uint64_t key = 0;
            for (std::size_t p = 0; p < n; ++p) {
                key |= run.shares[p].to_uint() << (p * m);
            }
            ++h[key];
        } else {
            for (std::size_t j = 0; j < m; ++j) {
                std::uint64_t key = j << n;
                for (std::size_t p = 0; p < n; ++p) {
                    key |= static_cast<std::uint64_t>(run.shares[p].test(j)) << p;
                }
                ++h[key];
            }
        }
    }
    return h;
}

/// Pairwise total variation distance between the three backends.
inline CheckResult backend_equivalence(const std::vector<std::pair<std::size_t, std::size_t>> &cases,
                                       std::size_t samples, std::uint64_t seed, double max_tvd) {
    CheckResult r{"backend", true, ""};
    std::ostringstream os;
    for (auto [n, m] : cases) {
        Rng rng(derive_seed(seed, 17 + n * 64 + m));
        const auto s = BitString::random(m, rng);
        const bool whole = compare_whole_outcome(n, m);
        std::vector<stats::Histogram> hs;
        std::vector<BackendKind> kinds = {BackendKind::factorized, BackendKind::analytic};
        if (joint_fits(n, m)) {
            kinds.push_back(BackendKind::joint);
        }
        for (std::size_t b = 0; b < kinds.size(); ++b) {
            hs.push_back(backend_histogram(kinds[b], n, m, s, samples, derive_seed(seed, 1000 + b), whole));
        }
        double worst = 0.0;
        for (std::size_t a = 0; a < hs.size(); ++a) {
            for (std::size_t b = a + 1; b < hs.size(); ++b) {
                worst = std::max(worst, stats::total_variation_distance(hs[a], hs[b]));
            }
        }
        os << " (" << n << "," << m << ")=" << worst;
        r.passed = r.passed && worst < max_tvd;
    }
    r.detail = "max tvd" + os.str() + " threshold " + std::to_string(max_tvd);
    return r;
}

/// Intercept-resend on the spymaster drives per-bit success to 1/2; honest is exactly 1.
inline CheckResult intercept_damage(std::size_t n, std::size_t m, std::size_t runs, std::uint64_t seed,
                                    double tol) {
    Rng honest_rng(derive_seed(seed, 19));
    Rng attack_rng(derive_seed(seed, 23));
    const auto honest = run_honest(n, m, std::nullopt, runs, honest_rng);
    const auto attacked = run_intercept_resend(n, m, std::nullopt, runs, attack_rng);
    std::ostringstream os;
    os << "n=" << n << " m=" << m << " honest=" << honest.per_bit_success
       << " attacked per-bit=" << attacked.per_bit_success << " expected 0.5 +/- " << tol;
    const bool ok = honest.per_bit_success == 1.0 && honest.agent_reconstruction_success == 1.0 &&
                    std::abs(attacked.per_bit_success - 0.5) <= tol;
    return {"intercept", ok, os.str()};
}

} // namespace seqss::verify
