#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "gnc/error.hpp"
#include "gnc/linalg.hpp"
#include "gnc/rng.hpp"
#include "test_support.hpp"

using gnc::Matrix;
using gnc::RngSeed;

TEST_CASE("rng streams are reproducible and keyed") {
    gnc::Rng a(RngSeed{42});
    gnc::Rng b(RngSeed{42});
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next() == b.next());
    }
    CHECK(gnc::derive_seed(RngSeed{1}, 0) != gnc::derive_seed(RngSeed{1}, 1));
    CHECK(gnc::derive_seed(RngSeed{1}, 5) == gnc::derive_seed(RngSeed{1}, 5));

    gnc::Rng r(RngSeed{3});
    double sum = 0.0;
    double sumsq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        sum += x;
        sumsq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sumsq / n - 1.0) < 0.02);

    std::vector<int> hist(5, 0);
    for (int i = 0; i < 50000; ++i) {
        const auto k = r.below(5);
        REQUIRE(k < 5);
        ++hist[k];
    }
    for (int h : hist) {
        CHECK(std::abs(h - 10000) < 500);
    }
    CHECK_THROWS_AS(r.below(0), gnc::DomainError);
}

TEST_CASE("matrix construction and products") {
    CHECK_THROWS_AS(Matrix(0, 2), gnc::DomainError);
    CHECK_THROWS_AS(Matrix(1, 2, {1.0}), gnc::DomainError);
    CHECK_THROWS_AS(Matrix(1, 1, {std::nan("")}), gnc::DomainError);
    const Matrix a(2, 3, {1, 2, 3, 4, 5, 6});
    const Matrix b = a.transpose();
    const Matrix p = a * b;
    CHECK(p == Matrix(2, 2, {14, 32, 32, 77}));
    CHECK_THROWS_AS(a * a, gnc::DomainError);
    CHECK(Matrix::from_columns({{1, 4}, {2, 5}, {3, 6}}) == a);
    CHECK(a.column(1) == std::vector<double>{2, 5});
}

TEST_CASE("softmax examples") {
    const std::vector<double> zeros{0, 0, 0};
    for (double p : gnc::softmax(zeros)) {
        CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    const std::vector<double> v{std::log(2.0), 0.0};
    const auto s = gnc::softmax(v);
    CHECK(s[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(s[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const std::vector<double> big{1000.0, 0.0};
    const auto t = gnc::softmax(big);
    CHECK(std::isfinite(t[0]));
    CHECK(t[0] == doctest::Approx(1.0));
    CHECK(t[1] < 1e-300);
    CHECK_THROWS_AS(gnc::softmax(std::span<const double>{}), gnc::DomainError);
}

TEST_CASE("softmax is sqrt(C/2)-Lipschitz") {
    gnc::Rng rng(RngSeed{11});
    for (std::size_t c = 2; c <= 10; ++c) {
        const double bound = std::sqrt(static_cast<double>(c) / 2.0);
        int violations = 0;
        for (int t = 0; t < 1000; ++t) {
            std::vector<double> x(c);
            std::vector<double> y(c);
            const double scale = 0.1 + 5.0 * rng.uniform();
            for (std::size_t k = 0; k < c; ++k) {
                x[k] = scale * rng.normal();
                y[k] = scale * rng.normal();
            }
            const auto sx = gnc::softmax(x);
            const auto sy = gnc::softmax(y);
            if (gnc::distance(sx, sy) > bound * gnc::distance(x, y)) {
                ++violations;
            }
        }
        CHECK(violations == 0);
    }
}

TEST_CASE("matrix_exp_skew examples") {
    CHECK(gnc::max_abs_diff(gnc::matrix_exp_skew(Matrix(2, 2)), Matrix::identity(2)) < 1e-15);
    // A - A^T = [[0, -pi/2], [pi/2, 0]]
    const Matrix a(2, 2, {0.0, -std::numbers::pi / 2.0, 0.0, 0.0});
    const Matrix q = gnc::matrix_exp_skew(a);
    CHECK(gnc::max_abs_diff(q, Matrix(2, 2, {0, -1, 1, 0})) < 1e-12);
    CHECK_THROWS_AS(gnc::matrix_exp_skew(Matrix(2, 3)), gnc::DomainError);
}

TEST_CASE("matrix_exp_skew is a rotation for random inputs up to n = 10") {
    gnc::Rng rng(RngSeed{5});
    for (std::size_t n = 1; n <= 10; ++n) {
        for (int t = 0; t < 10; ++t) {
            const Matrix a = oracle::random_matrix(n, n, rng, 1.0 + 3.0 * t);
            const Matrix q = gnc::matrix_exp_skew(a);
            CHECK(gnc::max_abs_diff(q.transpose() * q, Matrix::identity(n)) < 1e-9);
            CHECK(oracle::lu_determinant(q) == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("random_rotation") {
    CHECK(gnc::random_rotation(1, RngSeed{9}) == Matrix::identity(1));
    const Matrix q = gnc::random_rotation(3, RngSeed{7});
    CHECK(gnc::max_abs_diff(q.transpose() * q, Matrix::identity(3)) < 1e-9);
    CHECK(oracle::lu_determinant(q) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gnc::random_rotation(3, RngSeed{7}) == q);
    CHECK(gnc::random_rotation(3, RngSeed{8}) != q);
    CHECK(gnc::is_orthogonal(q, 1e-12));
}

TEST_CASE("random_permutation") {
    CHECK(gnc::random_permutation(1, RngSeed{3}) == Matrix::identity(1));
    const Matrix p = gnc::random_permutation(4, RngSeed{5});
    CHECK(gnc::is_permutation_matrix(p));
    CHECK(p * p.transpose() == Matrix::identity(4));
    CHECK(p.transpose() * p == Matrix::identity(4));
    CHECK(gnc::random_permutation(4, RngSeed{5}) == p);

    const auto idx = gnc::random_permutation_indices(4, RngSeed{5});
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(p(i, idx[i]) == 1.0);
    }
    // Every permutation of 3 items shows up across seeds.
    std::set<std::vector<std::size_t>> seen;
    for (std::uint64_t s = 0; s < 200; ++s) {
        seen.insert(gnc::random_permutation_indices(3, RngSeed{s}));
    }
    CHECK(seen.size() == 6);
    CHECK_FALSE(gnc::is_permutation_matrix(Matrix(2, 2, {0.5, 0.5, 0.5, 0.5})));
}

TEST_CASE("structured_determinant examples") {
    CHECK(gnc::structured_determinant(1, 0, 5) == doctest::Approx(1.0));
    CHECK(gnc::structured_determinant(1, 1, 3) == doctest::Approx(0.0));
    CHECK(gnc::structured_determinant(2, 1, 3) == doctest::Approx(4.0));
    CHECK(oracle::lu_determinant(oracle::structured_matrix(2, 1, 3)) == doctest::Approx(4.0));
}

TEST_CASE("structured_determinant agrees with LU for n <= 6") {
    gnc::Rng rng(RngSeed{21});
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int t = 0; t < 200; ++t) {
            const double a = 20.0 * rng.uniform() - 10.0;
            const double c = 20.0 * rng.uniform() - 10.0;
            const double got = gnc::structured_determinant(a, c, n);
            const double want = oracle::lu_determinant(oracle::structured_matrix(a, c, n));
            const double scale = std::pow(std::max(std::abs(a), std::abs(c)) * static_cast<double>(n),
                                          static_cast<double>(n));
            CHECK(std::abs(got - want) <= 1e-10 * std::max(std::abs(want), 1e-6 * scale));
        }
    }
}

TEST_CASE("numerical_rank examples") {
    CHECK(gnc::numerical_rank(Matrix::identity(3), 1e-8) == 3);
    CHECK(gnc::numerical_rank(Matrix::from_columns({{1, 2}, {1, 2}}), 1e-8) == 1);
    CHECK(gnc::numerical_rank(oracle::cross_columns(), 1e-8) == 2);
    CHECK_THROWS_AS(gnc::numerical_rank(Matrix::identity(2), 0.0), gnc::DomainError);

    const auto sv = gnc::singular_values(oracle::cross_columns());
    REQUIRE(sv.size() == 2);
    CHECK(sv[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(sv[1] == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("symmetric_eigenvalues match known spectra") {
    const Matrix s(2, 2, {2, 1, 1, 2});
    const auto ev = gnc::symmetric_eigenvalues(s);
    CHECK(ev[0] == doctest::Approx(1.0));
    CHECK(ev[1] == doctest::Approx(3.0));
    // a I + c (11^T - I) has eigenvalues a - c (n - 1 times) and a + (n - 1) c.
    const auto ev5 = gnc::symmetric_eigenvalues(oracle::structured_matrix(3.0, 0.5, 5));
    for (int k = 0; k < 4; ++k) {
        CHECK(ev5[k] == doctest::Approx(2.5));
    }
    CHECK(ev5[4] == doctest::Approx(5.0));
}
