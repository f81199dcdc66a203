#pragma once

#include <cmath>
#include <vector>

#include "sdof/matrix.hpp"

namespace sdof {

/// Rank bookkeeping shared by the factorization and everything downstream.
/// r1 = rank(h1), r2 = rank(h2), r0 = rank of the stacked pair,
/// s = r1 + r2 - r0, r1_tilde = r1 - s, r2_tilde = r2 - s.
struct DimProfile {
    long r0 = 0;
    long r1 = 0;
    long r2 = 0;
    long s = 0;
    long r1_tilde = 0;
    long r2_tilde = 0;
};

/// Generalized singular value decomposition of a matrix pair (h1, h2) sharing
/// their column space:
///
///   u1^H h1 q = sigma1 [w^H r_factor, 0]
///   u2^H h2 q = sigma2 [w^H r_factor, 0]
///
/// sigma1 is block diagonal (identity of size r1_tilde, diagonal S1 of size s,
/// zeros), sigma2 is the mirrored form (zeros, S2, identity of size r2_tilde),
/// and S1^2 + S2^2 = I.
struct GsvdResult {
    ComplexMatrix u1;        // m1 x m1 unitary
    ComplexMatrix u2;        // m2 x m2 unitary
    ComplexMatrix q;         // n x n unitary
    ComplexMatrix w;         // r0 x r0 unitary
    ComplexMatrix r_factor;  // r0 x r0 nonsingular upper triangular
    ComplexMatrix sigma1;    // m1 x r0
    ComplexMatrix sigma2;    // m2 x r0
    DimProfile dims;

    /// The nonsingular square factor w^H * r_factor.
    ComplexMatrix coupling() const { return w.adjoint() * r_factor; }

    /// Diagonal entries of the interior S1 block, decreasing.
    std::vector<double> s1_diagonal() const {
        std::vector<double> d;
        for (long i = 0; i < dims.s; ++i)
            d.push_back(sigma1(dims.r1_tilde + i, dims.r1_tilde + i).real());
        return d;
    }

    std::vector<double> s2_diagonal() const {
        std::vector<double> d;
        const long row0 = u2.rows() - dims.s - dims.r2_tilde;
        for (long i = 0; i < dims.s; ++i)
            d.push_back(sigma2(row0 + i, dims.r1_tilde + i).real());
        return d;
    }
};

namespace detail {

/// Fill every column of u not listed in `placed` with an orthonormal
/// complement of the placed columns, via a Householder QR of the placed set.
inline void complete_unitary(ComplexMatrix& u, const std::vector<bool>& placed) {
    const long m = u.rows();
    std::vector<long> have, free_slots;
    for (long c = 0; c < m; ++c) (placed[c] ? have : free_slots).push_back(c);
    if (free_slots.empty()) return;
    if (have.empty()) {
        for (long i = 0; i < m; ++i) u.col(i) = Eigen::VectorXcd::Unit(m, i);
        return;
    }
    ComplexMatrix p(m, static_cast<long>(have.size()));
    for (size_t i = 0; i < have.size(); ++i) p.col(static_cast<long>(i)) = u.col(have[i]);
    Eigen::HouseholderQR<ComplexMatrix> qr(p);
    const ComplexMatrix qfull = qr.householderQ();
    for (size_t i = 0; i < free_slots.size(); ++i)
        u.col(free_slots[i]) = qfull.col(static_cast<long>(have.size() + i));
}

inline void check(bool ok, const char* what) {
    if (!ok) throw ToleranceViolation(std::string("gsvd: ") + what);
}

}  // namespace detail

/// GSVD via the QR + CS-decomposition route: orthonormal range factor of the
/// stacked pair, SVD of its top partition, then the shared right structure is
/// peeled off with a QR factorization.
///
/// h1 and h2 are the channel matrices mapped into a common receiver space,
/// one row per transmit antenna (shared column count).
inline GsvdResult gsvd(const ComplexMatrix& h1, const ComplexMatrix& h2, double tol = 1e-10) {
    if (tol <= 0.0) throw InvalidDims("gsvd: tol must be positive");
    if (h1.cols() != h2.cols())
        throw DimensionMismatch("gsvd: h1 and h2 must have the same column count");

    const long m1 = h1.rows();
    const long m2 = h2.rows();
    const long n = h1.cols();

    GsvdResult out;

    // Rank-revealing factorization of the stacked pair: K = Y1 * T with Y1
    // having r0 orthonormal columns and T of full row rank.
    ComplexMatrix stacked(m1 + m2, n);
    stacked.topRows(m1) = h1;
    stacked.bottomRows(m2) = h2;

    long r0 = 0;
    ComplexMatrix y1, t;
    if (stacked.rows() > 0 && n > 0) {
        Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double smax = sv.size() > 0 ? sv(0) : 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (smax > 0.0 && sv(i) > tol * smax) ++r0;
        y1 = svd.matrixU().leftCols(r0);
        t = sv.head(r0).asDiagonal() * svd.matrixV().leftCols(r0).adjoint();  // r0 x n
    } else {
        y1 = ComplexMatrix::Zero(m1 + m2, 0);
        t = ComplexMatrix::Zero(0, n);
    }

    const ComplexMatrix q1 = y1.topRows(m1);     // m1 x r0
    const ComplexMatrix q2 = y1.bottomRows(m2);  // m2 x r0

    // CS step: q1 = u1 * C * vc^H with C decreasing in [0,1]; then
    // q2 * vc has orthogonal columns of norm sqrt(1 - c^2).
    ComplexMatrix u1, vc;
    Eigen::VectorXd cvals = Eigen::VectorXd::Zero(r0);
    if (m1 > 0 && r0 > 0) {
        Eigen::JacobiSVD<ComplexMatrix> svd(q1, Eigen::ComputeFullU | Eigen::ComputeFullV);
        u1 = svd.matrixU();
        vc = svd.matrixV();
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            cvals(i) = std::min(1.0, svd.singularValues()(i));
    } else {
        u1 = ComplexMatrix::Identity(m1, m1);
        vc = ComplexMatrix::Identity(r0, r0);
    }

    // Snap values at the block boundaries so the diagonal blocks are
    // strictly interior, reclassifying the dimension counts.
    long r1t = 0;
    while (r1t < r0 && cvals(r1t) >= 1.0 - tol) ++r1t;
    long s = 0;
    while (r1t + s < r0 && cvals(r1t + s) > tol) ++s;
    const long r2t = r0 - r1t - s;
    const long r1 = r1t + s;
    const long r2 = s + r2t;
    if (r2 > m2)
        throw ToleranceViolation("gsvd: inconsistent rank split between the pair");

    out.dims = DimProfile{r0, r1, r2, s, r1t, r2t};

    out.sigma1 = ComplexMatrix::Zero(m1, r0);
    for (long j = 0; j < r1t; ++j) out.sigma1(j, j) = 1.0;
    for (long j = r1t; j < r1; ++j) out.sigma1(j, j) = cvals(j);

    // Columns of z = q2 * vc are mutually orthogonal with norms sqrt(1-c^2);
    // normalizing them gives the columns of u2 that carry S2 and I2, placed in
    // the bottom rows per the mirrored block layout.
    out.sigma2 = ComplexMatrix::Zero(m2, r0);
    out.u2 = ComplexMatrix::Zero(m2, m2);
    std::vector<bool> placed(static_cast<size_t>(m2), false);
    if (r0 > 0 && m2 > 0) {
        const ComplexMatrix z = q2 * vc;
        for (long j = r1t; j < r0; ++j) {
            const long row = (m2 - r2) + (j - r1t);
            const double c = cvals(j);
            const double sval = j < r1 ? std::sqrt(std::max(0.0, 1.0 - c * c)) : 1.0;
            const double nrm = z.col(j).norm();
            detail::check(nrm > 0.5 * tol, "vanishing S2 column");
            out.u2.col(row) = z.col(j) / nrm;
            out.sigma2(row, j) = sval;
        }
        for (long j = r1t; j < r0; ++j) placed[(m2 - r2) + (j - r1t)] = true;
    }
    detail::complete_unitary(out.u2, placed);

    // Shared right structure: vc^H * t = [w^H r_factor, 0] q^H.
    out.q = ComplexMatrix::Identity(n, n);
    ComplexMatrix coupling = ComplexMatrix::Zero(r0, r0);
    if (r0 > 0) {
        const ComplexMatrix b = vc.adjoint() * t;  // r0 x n, full row rank
        Eigen::HouseholderQR<ComplexMatrix> qr(b.adjoint());
        out.q = qr.householderQ();
        const ComplexMatrix rt =
            qr.matrixQR().topRows(r0).triangularView<Eigen::Upper>();
        coupling = rt.adjoint();  // lower triangular, nonsingular
    }

    // Split the coupling factor as w^H * r_factor with w unitary and
    // r_factor upper triangular with a real positive diagonal.
    out.w = ComplexMatrix::Identity(r0, r0);
    out.r_factor = ComplexMatrix::Zero(r0, r0);
    if (r0 > 0) {
        Eigen::HouseholderQR<ComplexMatrix> qr(coupling);
        ComplexMatrix qm = qr.householderQ();
        ComplexMatrix rm = qr.matrixQR().triangularView<Eigen::Upper>();
        for (long i = 0; i < r0; ++i) {
            const Complex d = rm(i, i);
            const double mag = std::abs(d);
            detail::check(mag > tol, "r_factor diagonal below tolerance");
            const Complex phase = d / mag;
            rm.row(i) *= std::conj(phase);
            qm.col(i) *= phase;
        }
        out.w = qm.adjoint();
        out.r_factor = rm;
    }
    out.u1 = u1;

    // Invariant audit; failure signals numerical breakdown.
    const double scale = std::max(1.0, std::max(h1.norm(), h2.norm()));
    const double bound = 1e3 * tol * scale;
    auto unitarity = [](const ComplexMatrix& m) {
        return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).norm();
    };
    detail::check(unitarity(out.u1) <= bound, "u1 not unitary");
    detail::check(unitarity(out.u2) <= bound, "u2 not unitary");
    detail::check(unitarity(out.q) <= bound, "q not unitary");
    detail::check(unitarity(out.w) <= bound, "w not unitary");

    ComplexMatrix rhs(r0, n);
    rhs.leftCols(r0) = out.coupling();
    rhs.rightCols(n - r0).setZero();
    detail::check((out.u1.adjoint() * h1 * out.q - out.sigma1 * rhs).norm() <= bound,
                  "h1 reconstruction residual");
    detail::check((out.u2.adjoint() * h2 * out.q - out.sigma2 * rhs).norm() <= bound,
                  "h2 reconstruction residual");

    for (long i = 0; i < s; ++i) {
        const double c = out.s1_diagonal()[i];
        const double sv = out.s2_diagonal()[i];
        detail::check(c > 0.0 && c < 1.0 && sv > 0.0 && sv < 1.0,
                      "S diagonals not strictly interior");
        detail::check(std::abs(c * c + sv * sv - 1.0) <= bound, "S1^2 + S2^2 != I");
    }
    return out;
}

inline json dims_to_json(const DimProfile& d) {
    json j;
    j["r0"] = d.r0;
    j["r1"] = d.r1;
    j["r2"] = d.r2;
    j["s"] = d.s;
    j["r1_tilde"] = d.r1_tilde;
    j["r2_tilde"] = d.r2_tilde;
    return j;
}

inline json gsvd_to_json(const GsvdResult& g) {
    json j;
    j["u1"] = matrix_to_json(g.u1);
    j["u2"] = matrix_to_json(g.u2);
    j["q"] = matrix_to_json(g.q);
    j["w"] = matrix_to_json(g.w);
    j["r_factor"] = matrix_to_json(g.r_factor);
    j["sigma1"] = matrix_to_json(g.sigma1);
    j["sigma2"] = matrix_to_json(g.sigma2);
    j["dims"] = dims_to_json(g.dims);
    return j;
}

}  // namespace sdof
