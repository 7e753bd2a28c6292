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

// Small statistics kit for the distributional checks.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "seqss/errors.hpp"

namespace seqss::stats {

/// Empirical counts keyed by outcome value.
using Histogram = std::map<std::uint64_t, std::size_t>;

inline std::size_t total(const Histogram &h) {
    std::size_t t = 0;
    for (const auto &[k, c] : h) {
        t += c;
    }
    return t;
}

/// Half the L1 distance between the two normalized histograms.
inline double total_variation_distance(const Histogram &a, const Histogram &b) {
    const double na = static_cast<double>(total(a));
    const double nb = static_cast<double>(total(b));
    if (na == 0 || nb == 0) {
        throw ArgumentError("total variation distance of an empty histogram");
    }
    Histogram keys = a;
    for (const auto &[k, c] : b) {
        keys[k] += 0;
    }
    double sum = 0.0;
    for (const auto &[k, unused] : keys) {
        const auto ia = a.find(k);
        const auto ib = b.find(k);
        const double pa = ia == a.end() ? 0.0 : static_cast<double>(ia->second) / na;
        const double pb = ib == b.end() ? 0.0 : static_cast<double>(ib->second) / nb;
        sum += std::abs(pa - pb);
    }
    return 0.5 * sum;
}

struct ChiSquareResult {
    double statistic = 0.0;
    double critical = 0.0;
    std::size_t dof = 0;
    bool passed = false;
};

/// Upper-tail critical value of chi^2 with `dof` degrees of freedom.
inline double chi_square_critical(std::size_t dof, double alpha) {
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

/// Goodness of fit of `h` to the uniform law on {0, ..., cells-1}.
/// Keys outside that range count as a failure.
inline ChiSquareResult chi_square_uniform(const Histogram &h, std::uint64_t cells, double alpha) {
    if (cells < 2) {
        throw ArgumentError("uniformity test needs at least two cells");
    }
    const double n = static_cast<double>(total(h));
    const double expected = n / static_cast<double>(cells);
    ChiSquareResult r;
    r.dof = cells - 1;
    r.critical = chi_square_critical(r.dof, alpha);
    std::size_t seen = 0;
    bool outside = false;
    for (const auto &[k, c] : h) {
        if (k >= cells) {
            outside = true;
            continue;
        }
        const double d = static_cast<double>(c) - expected;
        r.statistic += d * d / expected;
        ++seen;
    }
    // Empty cells each contribute (0 - E)^2 / E = E.
    r.statistic += static_cast<double>(cells - seen) * expected;
    r.passed = !outside && r.statistic <= r.critical;
    return r;
}

/// Standard deviation of an empirical frequency with success probability p.
inline double binomial_sigma(double p, std::size_t trials) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

inline double frequency(std::size_t hits, std::size_t trials) {
    return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
}

} // namespace seqss::stats
