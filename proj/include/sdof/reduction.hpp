#pragma once

#include <algorithm>
#include <cmath>

#include "sdof/gsvd.hpp"

namespace sdof {

/// Parallel-channel shape of a MIMO-MAC instance: link-set sizes for the
/// user-1-only (A), shared (B) and user-2-only (C) links, plus the noise
/// scale constants of the enhancement/degradation constructions.
struct ParallelModel {
    long a_size = 0;
    long b_size = 0;
    long c_size = 0;
    long n_e = 0;
    double enhancement_scale = 1.0;  // sigma_plus, in (0, 1]
    double degradation_scale = 1.0;  // sigma, in [1, inf)
    double s_bar = 1.0;              // min S diagonal entry, 1 when s = 0
};

/// Largest sigma_plus <= 1 such that I - sigma_plus^2 A^H A stays PSD,
/// nudged strictly inside the feasible set.
inline double enhancement_sigma(const ComplexMatrix& a, double tol = 1e-10) {
    if (a.rows() != a.cols()) throw DimensionMismatch("enhancement_sigma: matrix not square");
    if (a.rows() == 0) return 1.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const double smax = svd.singularValues()(0);
    if (smax <= tol) throw SingularMatrix("enhancement_sigma: zero spectral norm");
    return std::min(1.0, 1.0 / smax) * (1.0 - 1e-12);
}

/// Smallest sigma >= 1 such that sigma^2 A^H A - I stays PSD, nudged
/// strictly inside the feasible set.
inline double degradation_sigma(const ComplexMatrix& a, double tol = 1e-10) {
    if (a.rows() != a.cols()) throw DimensionMismatch("degradation_sigma: matrix not square");
    if (a.rows() == 0) return 1.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (smin <= tol) throw SingularMatrix("degradation_sigma: singular value below tolerance");
    return std::max(1.0, 1.0 / smin) * (1.0 + 1e-12);
}

/// Link-set sizes |A| = r0-r2, |B| = s, |C| = r0-r1 and the noise scales of
/// the coupling factor. The discarded trailing receiver components are
/// represented purely by the dimension profile.
inline ParallelModel to_parallel(const GsvdResult& g, long n_e) {
    if (n_e < 0) throw InvalidDims("to_parallel: n_e must be nonnegative");
    ParallelModel m;
    m.a_size = g.dims.r0 - g.dims.r2;
    m.b_size = g.dims.s;
    m.c_size = g.dims.r0 - g.dims.r1;
    m.n_e = n_e;
    if (g.dims.r0 > 0) {
        const ComplexMatrix a = g.coupling();
        m.enhancement_scale = enhancement_sigma(a);
        m.degradation_scale = degradation_sigma(a);
    }
    m.s_bar = 1.0;
    for (double v : g.s1_diagonal()) m.s_bar = std::min(m.s_bar, v);
    for (double v : g.s2_diagonal()) m.s_bar = std::min(m.s_bar, v);
    return m;
}

inline json parallel_to_json(const ParallelModel& m) {
    json j;
    j["a"] = m.a_size;
    j["b"] = m.b_size;
    j["c"] = m.c_size;
    j["n_e"] = m.n_e;
    j["sigma_plus"] = m.enhancement_scale;
    j["sigma"] = m.degradation_scale;
    j["s_bar"] = m.s_bar;
    return j;
}

inline ParallelModel parallel_from_json(const json& j) {
    ParallelModel m;
    m.a_size = j.at("a").get<long>();
    m.b_size = j.at("b").get<long>();
    m.c_size = j.at("c").get<long>();
    m.n_e = j.at("n_e").get<long>();
    m.enhancement_scale = j.value("sigma_plus", 1.0);
    m.degradation_scale = j.value("sigma", 1.0);
    m.s_bar = j.value("s_bar", 1.0);
    if (m.a_size < 0 || m.b_size < 0 || m.c_size < 0 || m.n_e < 0)
        throw InvalidDims("parallel model: sizes must be nonnegative");
    return m;
}

}  // namespace sdof
