#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "sdof/reduction.hpp"

namespace sdof {

enum class AllocationTarget { P3, P4, Custom };

/// Orthogonal dimension split: user 1 occupies t1 links in A then B, user 2
/// occupies t2 links in C then B from the other end, never sharing a link.
struct SignalingScheme {
    long t1 = 0;
    long t2 = 0;
    long b_links_user1 = 0;
    long b_links_user2 = 0;
};

struct SweepResult {
    std::vector<double> powers;
    std::vector<double> legit_rate_1, legit_rate_2;
    std::vector<double> leakage_cap_1, leakage_cap_2;
    std::vector<double> secrecy_rate_1, secrecy_rate_2;
    double slope_1 = 0.0;  // bits per log2 P, fitted on the upper half
    double slope_2 = 0.0;
};

inline SignalingScheme allocate(const ParallelModel& m, AllocationTarget target,
                                long t1 = 0, long t2 = 0) {
    SignalingScheme s;
    switch (target) {
        case AllocationTarget::P3:
            s.t1 = m.a_size + m.b_size;
            s.t2 = m.c_size;
            break;
        case AllocationTarget::P4:
            s.t1 = m.a_size;
            s.t2 = m.b_size + m.c_size;
            break;
        case AllocationTarget::Custom:
            s.t1 = t1;
            s.t2 = t2;
            break;
    }
    if (s.t1 < 0 || s.t2 < 0)
        throw InfeasibleAllocation("allocate: negative dimension count");
    if (s.t1 > m.a_size + m.b_size)
        throw InfeasibleAllocation("allocate: t1 exceeds |A| + |B|");
    if (s.t2 > m.b_size + m.c_size)
        throw InfeasibleAllocation("allocate: t2 exceeds |B| + |C|");
    if (s.t1 + s.t2 > m.a_size + m.b_size + m.c_size)
        throw InfeasibleAllocation("allocate: t1 + t2 exceeds r0");
    s.b_links_user1 = std::max(0L, s.t1 - m.a_size);
    s.b_links_user2 = std::max(0L, s.t2 - m.c_size);
    if (s.b_links_user1 + s.b_links_user2 > m.b_size)
        throw InfeasibleAllocation("allocate: shared links oversubscribed");
    return s;
}

/// Gaussian-signaling rate with a uniform power split across the user's
/// links and noise power (sigma/s_bar)^2 on every link.
inline std::pair<double, double> legit_rate(const SignalingScheme& s, double p,
                                            const ParallelModel& m) {
    if (p <= 0.0) throw InvalidDims("legit_rate: power must be positive");
    const double noise = std::pow(m.degradation_scale / m.s_bar, 2);
    auto rate = [&](long t) {
        if (t == 0) return 0.0;
        return static_cast<double>(t) * std::log2(1.0 + (p / static_cast<double>(t)) / noise);
    };
    return {rate(s.t1), rate(s.t2)};
}

/// Worst-case leakage surrogate: the eavesdropper picks its n_e rows inside
/// the user's strongest input directions, so min(n_e, t) directions leak at
/// full per-link power against the eps regularizer.
inline std::pair<double, double> leakage_cap(const SignalingScheme& s, double p, long n_e,
                                             double norm_bound = 1.0, double eps = 1.0) {
    if (eps <= 0.0 || norm_bound <= 0.0)
        throw InvalidDims("leakage_cap: eps and norm_bound must be positive");
    auto cap = [&](long t) {
        if (t == 0 || n_e == 0) return 0.0;
        const double dirs = static_cast<double>(std::min(n_e, t));
        const double snr = norm_bound * norm_bound * (p / static_cast<double>(t)) / (eps * eps);
        return dirs * std::log2(1.0 + snr);
    };
    return {cap(s.t1), cap(s.t2)};
}

namespace detail {

/// Ordinary least squares slope of y against log2 x over the top half of
/// the samples, suppressing the constant offset.
inline double fit_slope(const std::vector<double>& powers, const std::vector<double>& y) {
    const size_t n = powers.size();
    const size_t start = n / 2;
    const size_t m = n - start;
    if (m < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = start; i < n; ++i) {
        const double x = std::log2(powers[i]);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    const double denom = m * sxx - sx * sx;
    return denom != 0.0 ? (m * sxy - sx * sy) / denom : 0.0;
}

}  // namespace detail

inline SweepResult sweep(const ParallelModel& m, const SignalingScheme& s,
                         const std::vector<double>& powers, double norm_bound = 1.0,
                         double eps = 1.0) {
    if (powers.size() < 2) throw InvalidDims("sweep: need at least 2 power points");
    for (size_t i = 1; i < powers.size(); ++i)
        if (powers[i] <= powers[i - 1])
            throw InvalidDims("sweep: powers must be strictly increasing");

    SweepResult r;
    r.powers = powers;
    for (double p : powers) {
        const auto [l1, l2] = legit_rate(s, p, m);
        const auto [k1, k2] = leakage_cap(s, p, m.n_e, norm_bound, eps);
        r.legit_rate_1.push_back(l1);
        r.legit_rate_2.push_back(l2);
        r.leakage_cap_1.push_back(k1);
        r.leakage_cap_2.push_back(k2);
        r.secrecy_rate_1.push_back(std::max(0.0, l1 - k1));
        r.secrecy_rate_2.push_back(std::max(0.0, l2 - k2));
    }
    r.slope_1 = detail::fit_slope(powers, r.secrecy_rate_1);
    r.slope_2 = detail::fit_slope(powers, r.secrecy_rate_2);
    return r;
}

/// Default power grid 2^20 .. 2^40 in x2^4 steps.
inline std::vector<double> default_powers(double lo_log2 = 20.0, double hi_log2 = 40.0,
                                          double step_log2 = 4.0) {
    std::vector<double> p;
    for (double e = lo_log2; e <= hi_log2 + 1e-9; e += step_log2)
        p.push_back(std::exp2(e));
    return p;
}

inline std::string sweep_to_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "log2_p,r1_legit,r2_legit,r1_leak,r2_leak,r1_sec,r2_sec\n";
    os.precision(17);
    for (size_t i = 0; i < r.powers.size(); ++i) {
        os << std::log2(r.powers[i]) << ',' << r.legit_rate_1[i] << ',' << r.legit_rate_2[i]
           << ',' << r.leakage_cap_1[i] << ',' << r.leakage_cap_2[i] << ','
           << r.secrecy_rate_1[i] << ',' << r.secrecy_rate_2[i] << '\n';
    }
    return os.str();
}

}  // namespace sdof
