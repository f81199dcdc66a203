#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "sdof/gsvd.hpp"

using namespace sdof;

namespace {

ComplexMatrix reconstruct(const GsvdResult& g, const ComplexMatrix& sigma) {
    const long n = g.q.rows();
    const long r0 = g.dims.r0;
    ComplexMatrix rhs = ComplexMatrix::Zero(r0, n);
    rhs.leftCols(r0) = g.coupling();
    const ComplexMatrix& u = (&sigma == &g.sigma1) ? g.u1 : g.u2;
    return u * sigma * rhs * g.q.adjoint();
}

double reconstruction_residual(const GsvdResult& g, const ComplexMatrix& h1,
                               const ComplexMatrix& h2) {
    // Residual assembled with the hand-rolled multiply oracle.
    const long n = g.q.rows();
    ComplexMatrix rhs = ComplexMatrix::Zero(g.dims.r0, n);
    rhs.leftCols(g.dims.r0) = oracles::naive_multiply(g.w.adjoint(), g.r_factor);
    const ComplexMatrix lhs1 =
        oracles::naive_multiply(oracles::naive_multiply(g.u1.adjoint(), h1), g.q);
    const ComplexMatrix lhs2 =
        oracles::naive_multiply(oracles::naive_multiply(g.u2.adjoint(), h2), g.q);
    const double scale = std::max(1.0, std::max(h1.norm(), h2.norm()));
    return std::max((lhs1 - oracles::naive_multiply(g.sigma1, rhs)).norm(),
                    (lhs2 - oracles::naive_multiply(g.sigma2, rhs)).norm()) /
           scale;
}

void check_invariants(const GsvdResult& g, const ComplexMatrix& h1, const ComplexMatrix& h2,
                      double tol) {
    auto unitary_defect = [](const ComplexMatrix& m) {
        return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).norm();
    };
    CHECK(unitary_defect(g.u1) <= tol);
    CHECK(unitary_defect(g.u2) <= tol);
    CHECK(unitary_defect(g.q) <= tol);
    CHECK(unitary_defect(g.w) <= tol);

    for (long r = 0; r < g.r_factor.rows(); ++r) {
        CHECK(std::abs(g.r_factor(r, r)) > 1e-10);
        for (long c = 0; c < r; ++c) CHECK(g.r_factor(r, c) == Complex(0.0, 0.0));
    }

    const auto& d = g.dims;
    CHECK(d.s == d.r1 + d.r2 - d.r0);
    CHECK(d.r1_tilde == d.r1 - d.s);
    CHECK(d.r2_tilde == d.r2 - d.s);
    CHECK(d.r1_tilde + d.s + d.r2_tilde == d.r0);
    CHECK(std::max(d.r1, d.r2) <= d.r0);
    CHECK(d.r0 <= d.r1 + d.r2);
    CHECK(d.s >= 0);

    const auto s1 = g.s1_diagonal();
    const auto s2 = g.s2_diagonal();
    for (long i = 0; i < d.s; ++i) {
        CHECK(s1[i] > 0.0);
        CHECK(s1[i] < 1.0);
        CHECK(std::abs(s1[i] * s1[i] + s2[i] * s2[i] - 1.0) <= tol);
        if (i > 0) CHECK(s1[i] <= s1[i - 1]);  // decreasing
    }

    const double scale = std::max(1.0, std::max(h1.norm(), h2.norm()));
    CHECK((reconstruct(g, g.sigma1) - h1).norm() / scale <= tol);
    CHECK((reconstruct(g, g.sigma2) - h2).norm() / scale <= tol);
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(rank(ComplexMatrix::Zero(3, 3), 1e-10) == 0);
    CHECK(rank(ComplexMatrix::Identity(3, 3), 1e-10) == 3);
    CHECK(rank(ComplexMatrix(0, 5), 1e-10) == 0);
}

TEST_CASE("rank of a forced low-rank product, against the elimination oracle") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix m =
            oracles::random_complex(4, 2, rng) * oracles::random_complex(2, 3, rng);
        CHECK(rank(m, 1e-10) == 2);
        CHECK(oracles::gauss_rank(m, 1e-10) == 2);
    }
}

TEST_CASE("rank is invariant under unitary multiplication") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        std::uniform_int_distribution<long> dim(1, 6);
        const long m = dim(rng), n = dim(rng), r = std::min(m, n) > 1 ? dim(rng) % std::min(m, n) + 1 : 1;
        const ComplexMatrix a =
            oracles::random_complex(m, r, rng) * oracles::random_complex(r, n, rng);
        const ComplexMatrix left = oracles::random_unitary(m, rng);
        const ComplexMatrix right = oracles::random_unitary(n, rng);
        CHECK(rank(left * a * right, 1e-10) == rank(a, 1e-10));
    }
}

TEST_CASE("gsvd: disjoint ranges, s = 0") {
    const GsvdResult g = gsvd(ComplexMatrix::Identity(3, 3), ComplexMatrix::Zero(3, 3));
    CHECK(g.dims.r0 == 3);
    CHECK(g.dims.r1 == 3);
    CHECK(g.dims.r2 == 0);
    CHECK(g.dims.s == 0);
    CHECK(g.sigma1.topRows(3).isApprox(ComplexMatrix::Identity(3, 3), 1e-12));
    CHECK(g.sigma2.norm() == 0.0);
    check_invariants(g, ComplexMatrix::Identity(3, 3), ComplexMatrix::Zero(3, 3), 1e-9);
}

TEST_CASE("gsvd: parallel-model block pair with |A|=|B|=|C|=1") {
    ComplexMatrix h1 = ComplexMatrix::Zero(3, 3);
    h1(0, 0) = 1.0;
    h1(1, 1) = 1.0;
    ComplexMatrix h2 = ComplexMatrix::Zero(3, 3);
    h2(1, 1) = 1.0;
    h2(2, 2) = 1.0;
    const GsvdResult g = gsvd(h1, h2);
    CHECK(g.dims.r0 == 3);
    CHECK(g.dims.r1 == 2);
    CHECK(g.dims.r2 == 2);
    CHECK(g.dims.s == 1);
    CHECK(g.dims.r1_tilde == 1);
    CHECK(g.dims.r2_tilde == 1);
    check_invariants(g, h1, h2, 1e-9);
}

TEST_CASE("gsvd: random rectangular pair reconstruction residual") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h1 = oracles::random_complex(3, 4, rng);
        const ComplexMatrix h2 = oracles::random_complex(3, 4, rng);
        const GsvdResult g = gsvd(h1, h2);
        CHECK(reconstruction_residual(g, h1, h2) <= 1e-10);
    }
}

TEST_CASE("gsvd: column count mismatch") {
    CHECK_THROWS_AS(gsvd(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 4)),
                    DimensionMismatch);
}

TEST_CASE("gsvd: invariants across 100 random shapes") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<long> dim(0, 8);
    std::uniform_int_distribution<long> pos(1, 8);
    for (int seed = 0; seed < 100; ++seed) {
        const long n = pos(rng);
        const long m1 = dim(rng), m2 = dim(rng);
        ComplexMatrix h1 = oracles::random_complex(m1, n, rng);
        ComplexMatrix h2 = oracles::random_complex(m2, n, rng);
        // Occasionally overlap the row spaces to force s > 0 structure.
        if (seed % 3 == 0 && m1 > 0 && m2 > 0) h2.row(0) = h1.row(0);
        const GsvdResult g = gsvd(h1, h2, 1e-9);
        check_invariants(g, h1, h2, 1e-9);
    }
}

TEST_CASE("gsvd: structural idempotence") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix h1 = oracles::random_complex(4, 5, rng);
        ComplexMatrix h2 = oracles::random_complex(3, 5, rng);
        if (trial % 2 == 0) h2.row(0) = h1.row(0);
        const GsvdResult g = gsvd(h1, h2);
        const GsvdResult g2 = gsvd(reconstruct(g, g.sigma1), reconstruct(g, g.sigma2));
        CHECK(g2.dims.r0 == g.dims.r0);
        CHECK(g2.dims.r1 == g.dims.r1);
        CHECK(g2.dims.r2 == g.dims.r2);
        CHECK(g2.dims.s == g.dims.s);
    }
}

TEST_CASE("matrix json round trip") {
    std::mt19937 rng(99);
    const ComplexMatrix m = oracles::random_complex(3, 2, rng);
    const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
    CHECK(back.rows() == 3);
    CHECK((back - m).norm() == 0.0);
    CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows":2,"cols":2,"re":[1],"im":[0]})")),
                    DimensionMismatch);
}
