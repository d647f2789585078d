#include <doctest.h>

#include "abeltomo/random.hpp"
#include "abeltomo/tomogram.hpp"

using namespace abeltomo;

namespace {

CMatrixd basis_projector(int n, int j) {
    CMatrixd p = CMatrixd::Zero(n, n);
    p(j, j) = 1;
    return p;
}

CMatrixd power(const CMatrixd& m, int k) {
    CMatrixd out = CMatrixd::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

}  // namespace

TEST_CASE("restricted characteristic function") {
    const CyclicGroup g3(3);
    for (int l = 0; l <= 3; ++l) {
        const CVectord r = restricted_char(CMatrixd(CMatrixd::Identity(3, 3) / 3.0), l, g3);
        CHECK(std::abs(r(0) - 1.0) < 1e-12);
        CHECK(r.tail(2).cwiseAbs().maxCoeff() < 1e-12);
    }
    const CVectord ones = restricted_char(basis_projector(3, 0), 3, g3);
    CHECK(max_abs(ones - CVectord::Ones(3)) < 1e-12);

    Rng rng(3);
    const CVectord f = random_state_vector(3, rng);
    const CMatrixd uv = build_U(g3) * build_V(g3);
    const CVectord r = restricted_char(projector(f), 1, g3);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(r(k) - f.dot(power(uv, k) * f)) < 1e-12);
}

TEST_CASE("MUB basis structure") {
    for (int n : {3, 5, 7}) {
        const CyclicGroup grp(n);
        const auto std_basis = mub_basis(n, grp);
        CHECK(max_abs(std_basis.vectors - CMatrixd::Identity(n, n)) < 1e-10);
        CHECK(std_basis.guaranteed);
        for (int l = 0; l <= n; ++l) {
            const auto b = mub_basis(l, grp);
            CHECK(unitarity_defect(b.vectors) < 1e-10);
            // Phase convention: first nonzero component real positive.
            for (int j = 0; j < n; ++j) {
                for (int a = 0; a < n; ++a) {
                    if (std::abs(b.vectors(a, j)) > 1e-8) {
                        CHECK(b.vectors(a, j).real() > 0);
                        CHECK(std::abs(b.vectors(a, j).imag()) < 1e-14);
                        break;
                    }
                }
            }
            // Each vector is an eigenvector of the line generator.
            const CMatrixd gen = pi_line(l, 1, grp);
            for (int j = 0; j < n; ++j) {
                const CVectord e = b.vectors.col(j);
                CHECK(max_abs(gen * e - std::polar(1.0, 2 * kPi<double> * j / n) * e) < 1e-10);
            }
        }
    }
    const CyclicGroup g5(5);
    for (int l = 0; l <= 5; ++l) {
        for (int m = l + 1; m <= 5; ++m) {
            const CMatrixd ov = mub_basis(l, g5).vectors.adjoint() * mub_basis(m, g5).vectors;
            CHECK((ov.cwiseAbs2().array() - 0.2).abs().maxCoeff() < 1e-10);
        }
    }
    CHECK_THROWS_AS(mub_basis(6, g5), IndexError);
}

TEST_CASE("line zero of Z_3 diagonalizes V") {
    const CyclicGroup g3(3);
    const CMatrixd v = build_V(g3);
    Eigen::ComplexEigenSolver<CMatrixd> es(v);
    const auto b = mub_basis(0, g3);
    for (int j = 0; j < 3; ++j) {
        const CVectord e = b.vectors.col(j);
        CHECK((e.cwiseAbs().array() - 1.0 / std::sqrt(3.0)).abs().maxCoeff() < 1e-12);
        // Matches the oracle eigenvector with the same eigenvalue up to phase.
        const auto lambda = std::polar(1.0, 2 * kPi<double> * j / 3);
        int match = -1;
        for (int c = 0; c < 3; ++c)
            if (std::abs(es.eigenvalues()(c) - lambda) < 1e-10) match = c;
        REQUIRE(match >= 0);
        const CVectord w = es.eigenvectors().col(match).normalized();
        CHECK(std::abs(std::abs(w.dot(e)) - 1.0) < 1e-10);
    }
}

TEST_CASE("MUB construction breaks for n = 2") {
    CHECK_THROWS_AS(mub_basis(1, CyclicGroup(2)), DegenerateBasis);
    try {
        mub_basis(1, CyclicGroup(2));
    } catch (const DegenerateBasis& e) {
        CHECK(e.l == 1);
    }
    CHECK_FALSE(mub_basis(2, CyclicGroup(2)).guaranteed);
}

TEST_CASE("tomogram examples") {
    for (int n : {3, 5}) {
        const CyclicGroup grp(n);
        const auto t = tomogram(CMatrixd(CMatrixd::Identity(n, n) / n), grp);
        CHECK(t.rows.rows() == n + 1);
        CHECK((t.rows.array() - 1.0 / n).abs().maxCoeff() < 1e-12);
        const auto t0 = tomogram(basis_projector(n, 0), grp);
        CHECK(std::abs(t0.rows(n, 0) - 1.0) < 1e-12);
        CHECK(t0.rows.row(n).tail(n - 1).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("DFT path equals MUB overlaps") {
    Rng rng(17);
    for (int n : {3, 5, 7}) {
        const CyclicGroup grp(n);
        std::vector<CMatrixd> bases;
        for (int l = 0; l <= n; ++l) bases.push_back(mub_basis(l, grp).vectors);
        for (int trial = 0; trial < 100; ++trial) {
            const CVectord f = random_state_vector(n, rng);
            const auto t = tomogram(projector(f), grp);
            for (int l = 0; l <= n; ++l)
                for (int j = 0; j < n; ++j) CHECK(std::abs(t.rows(l, j) - std::norm(bases[l].col(j).dot(f))) < 1e-10);
            const auto [sum_defect, min_entry] = tomogram_defects(t);
            CHECK(sum_defect < 1e-10);
            CHECK(min_entry >= -1e-10);
            const CMatrixd rho = random_density_matrix(n, rng);
            CHECK(max_abs(tomogram(rho, grp).rows - overlap_tomogram(rho, grp).rows) < 1e-10);
        }
    }
}

TEST_CASE("Bochner diagnostic") {
    Rng rng(5);
    const CyclicGroup g5(5);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrixd rho = random_density_matrix(5, rng);
        for (int l = 0; l <= 5; ++l) CHECK(bochner_check(rho, l, g5) >= -1e-10);
    }
    for (int l = 0; l <= 5; ++l) CHECK(std::abs(bochner_check(CMatrixd(CMatrixd::Identity(5, 5) / 5.0), l, g5) - 0.2) < 1e-12);

    // Hermitian, unit trace, eigenvalues (1.1, -0.1, 0).
    const CyclicGroup g3(3);
    CMatrixd bad = CMatrixd::Zero(3, 3);
    bad(0, 0) = 1.1;
    bad(1, 1) = -0.1;
    CHECK(bochner_check(bad, 3, g3) < -0.05);
    CHECK_THROWS_AS(tomogram(bad, g3), InvalidState);
}

TEST_CASE("reconstruction") {
    const CyclicGroup g3(3);
    Tomogram<double> uniform{RMatrixd::Constant(4, 3, 1.0 / 3)};
    CHECK(max_abs(reconstruct_from_tomogram(uniform, g3) - CMatrixd::Identity(3, 3) / 3.0) < 1e-12);
    CHECK(max_abs(reconstruct_from_tomogram(tomogram(basis_projector(3, 0), g3), g3) - basis_projector(3, 0)) < 1e-10);

    Rng rng(23);
    for (int n : {3, 5, 7}) {
        const CyclicGroup grp(n);
        for (int trial = 0; trial < 50; ++trial) {
            const CMatrixd rho = random_density_matrix(n, rng);
            const auto t = tomogram(rho, grp);
            const CMatrixd back = reconstruct_from_tomogram(t, grp);
            CHECK(max_abs(back - rho) < 1e-8);
            CHECK(max_abs(tomogram(back, grp).rows - t.rows) < 1e-8);
        }
    }

    Tomogram<double> broken = uniform;
    broken.rows(2, 1) += 0.01;
    CHECK_THROWS_AS(reconstruct_from_tomogram(broken, g3), InvalidTomogram);
    CHECK_THROWS_AS(reconstruct_from_tomogram(Tomogram<double>{RMatrixd::Constant(5, 4, 0.25)}, CyclicGroup(4)),
                    UnsupportedRegime);
    CHECK_THROWS_AS(reconstruct_from_tomogram(Tomogram<double>{RMatrixd::Constant(4, 3, 1.0 / 3)}, CyclicGroup(5)),
                    DimensionMismatch);
}

TEST_CASE("standard-basis row is invariant under clock phases") {
    Rng rng(41);
    for (int n : {3, 5, 7}) {
        const CyclicGroup grp(n);
        const CVectord f = random_state_vector(n, rng);
        const auto t = tomogram(projector(f), grp);
        for (int k = 1; k < n; ++k) {
            const CVectord uf = pi_line(n, k, grp) * f;
            const auto tu = tomogram(projector(uf), grp);
            CHECK(max_abs(tu.rows.row(n) - t.rows.row(n)) < 1e-10);
        }
        // V shifts the standard-basis row cyclically by one.
        const CVectord vf = build_V(grp) * f;
        const auto tv = tomogram(projector(vf), grp);
        for (int j = 0; j < n; ++j) CHECK(std::abs(tv.rows(n, (j + 1) % n) - t.rows(n, j)) < 1e-10);
    }
}
