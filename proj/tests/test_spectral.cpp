#include "doctest.h"

#include <array>
#include <cmath>

#include "gbq/reference.hpp"
#include "gbq/spectral.hpp"
#include "test_helpers.hpp"

using namespace gbq;
using gbq::test::random_field;
using gbq::test::sampled;

TEST_CASE("forward: DC mode") {
    const auto g = FourierGrid::make(16, 2.0 * M_PI);
    const Spectrum F = spectral::forward(sampled(g, [](double) { return 1.0; }));
    for (int j = 0; j < g.M; ++j) {
        const double expected = (j == g.zero_index()) ? 2.0 * M_PI : 0.0;
        CHECK(std::abs(F.c[j] - expected) <= 1e-12);
    }
}

TEST_CASE("forward: single cosine mode") {
    const auto g = FourierGrid::make(16, 2.0 * M_PI);
    const Spectrum F = spectral::forward(sampled(g, [](double x) { return std::cos(x); }));
    const int z = g.zero_index();
    CHECK(std::abs(F.c[z + 1] - M_PI) <= 1e-12);
    CHECK(std::abs(F.c[z - 1] - M_PI) <= 1e-12);
    double rest = 0.0;
    for (int j = 0; j < g.M; ++j)
        if (j != z + 1 && j != z - 1) rest = std::max(rest, std::abs(F.c[j]));
    CHECK(rest <= 1e-12);
}

TEST_CASE("forward: gaussian matches the continuum transform") {
    const auto g = FourierGrid::make(1024, 80.0);
    const Spectrum F =
        spectral::forward(sampled(g, [](double x) { return std::exp(-x * x / 2.0); }));
    const double peak = std::sqrt(2.0 * M_PI);
    for (int j = 0; j < g.M; ++j) {
        const double xi = g.xi[j];
        if (std::abs(xi) > 10.0) continue;
        const double exact = std::sqrt(2.0 * M_PI) * std::exp(-xi * xi / 2.0);
        // roundoff floor of the transform sits near 1e-16 * sum|f|, so the
        // strict relative comparison only makes sense above it
        if (std::abs(xi) <= 5.0)
            CHECK(std::abs(F.c[j] - exact) <= 1e-10 * exact);
        CHECK(std::abs(F.c[j] - exact) <= 1e-14 * peak);
    }
}

TEST_CASE("forward agrees with the O(M^2) reference") {
    const auto g = FourierGrid::make(64, 7.5);
    const Field f = random_field(g, 21);
    const Spectrum a = spectral::forward(f);
    const Spectrum b = ref::brute_forward(f);
    CHECK(gbq::test::rel_l2_diff(a, b) <= 1e-12);
}

TEST_CASE("inverse round trip and contract checks") {
    const auto g = FourierGrid::make(128, 12.0);
    const Field f = random_field(g, 33);
    const Field back = spectral::inverse(spectral::forward(f));
    double worst = 0.0, scale = 0.0;
    for (int n = 0; n < g.M; ++n) {
        worst = std::max(worst, std::abs(back.v[n] - f.v[n]));
        scale = std::max(scale, std::abs(f.v[n]));
    }
    CHECK(worst <= 1e-12 * scale);

    Spectrum zero(g);
    const Field z = spectral::inverse(zero);
    for (double v : z.v) CHECK(v == 0.0);

    Spectrum broken = spectral::forward(f);
    broken.c[g.zero_index() + 3] += cplx(0.0, 1.0);
    CHECK_THROWS_AS((void)spectral::inverse(broken), std::invalid_argument);

    Field bad = f;
    bad.v[5] = std::nan("");
    CHECK_THROWS_AS((void)spectral::forward(bad), std::invalid_argument);
}

TEST_CASE("apply_multiplier: identity, derivative, inverse laplacian") {
    const auto g = FourierGrid::make(64, 2.0 * M_PI);

    SymbolTable one(g);
    for (auto& v : one.v) v = 1.0;
    const Field f = random_field(g, 5);
    const Spectrum F = spectral::forward(f);
    const Spectrum Fid = spectral::apply_multiplier(F, one);
    for (int j = 0; j < g.M; ++j) CHECK(Fid.c[j] == F.c[j]);

    SymbolTable ddx(g);
    for (int j = 0; j < g.M; ++j) ddx.v[j] = cplx(0.0, g.xi[j]);
    const Spectrum C = spectral::forward(sampled(g, [](double x) { return std::cos(x); }));
    const Field ds = spectral::inverse(spectral::apply_multiplier(C, ddx));
    for (int n = 0; n < g.M; ++n)
        CHECK(std::abs(ds.v[n] + std::sin(g.x(n))) <= 1e-12);

    SymbolTable invabs(g);
    for (int j = 0; j < g.M; ++j)
        invabs.v[j] = g.xi[j] == 0.0 ? 0.0 : 1.0 / std::abs(g.xi[j]);
    const Spectrum S2 =
        spectral::forward(sampled(g, [](double x) { return std::sin(2.0 * x); }));
    const Field quarter = spectral::inverse(
        spectral::apply_multiplier(spectral::apply_multiplier(S2, invabs), invabs));
    for (int n = 0; n < g.M; ++n)
        CHECK(std::abs(quarter.v[n] - 0.25 * std::sin(2.0 * g.x(n))) <= 1e-12);
}

TEST_CASE("multiplier application composes to the product symbol") {
    const auto g = FourierGrid::make(64, 5.0);
    SymbolTable s1(g), s2(g), s12(g);
    for (int j = 0; j < g.M; ++j) {
        s1.v[j] = cplx(0.3 * j, 0.1);
        s2.v[j] = cplx(1.0, -0.02 * j);
        s12.v[j] = s1.v[j] * s2.v[j];
    }
    const Spectrum F = spectral::forward(random_field(g, 8));
    const Spectrum a =
        spectral::apply_multiplier(spectral::apply_multiplier(F, s1), s2);
    const Spectrum b = spectral::apply_multiplier(F, s12);
    for (int j = 0; j < g.M; ++j) {
        // same arithmetic up to the reassociation of complex products
        CHECK(std::abs(a.c[j] - b.c[j]) <= 1e-14 * (1.0 + std::abs(b.c[j])));
    }
}

TEST_CASE("sobolev_norm examples") {
    const auto g = FourierGrid::make(64, 2.0 * M_PI);
    Spectrum zero(g);
    CHECK(spectral::sobolev_norm(zero, 0.7) == 0.0);

    const Spectrum C = spectral::forward(sampled(g, [](double x) { return std::cos(x); }));
    CHECK(spectral::sobolev_norm(C, 0.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(spectral::sobolev_norm(C, 1.0) ==
          doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-13));
}

TEST_CASE("sobolev_norm is monotone in s") {
    const auto g = FourierGrid::make(128, 9.0);
    const Spectrum F = spectral::forward(random_field(g, 12));
    double prev = 0.0;
    for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        const double cur = spectral::sobolev_norm(F, s);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("lp_norm examples") {
    const auto g10 = FourierGrid::make(64, 10.0);
    const Field ones = sampled(g10, [](double) { return 1.0; });
    CHECK(spectral::lp_norm(ones, 2.0) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-13));

    const auto g = FourierGrid::make(64, 2.0 * M_PI);
    const Field c = sampled(g, [](double x) { return std::cos(x); });
    CHECK(spectral::lp_norm(c, 4.0) ==
          doctest::Approx(std::pow(3.0 * M_PI / 4.0, 0.25)).epsilon(1e-13));
    CHECK(spectral::lp_norm(c, INFINITY) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS((void)spectral::lp_norm(c, 0.5), std::invalid_argument);
}

TEST_CASE("parseval identity") {
    const auto g = FourierGrid::make(256, 17.0);
    const Field f = random_field(g, 44);
    const Spectrum F = spectral::forward(f);
    const double phys = spectral::lp_norm(f, 2.0);
    const double spec = spectral::sobolev_norm(F, 0.0);
    CHECK(phys == doctest::Approx(spec).epsilon(1e-12));
}

TEST_CASE("dealias_product: product-to-sum identity") {
    const auto g = FourierGrid::make(32, 2.0 * M_PI);
    const Spectrum C = spectral::forward(sampled(g, [](double x) { return std::cos(x); }));
    const Spectrum CC = spectral::dealias_product(std::array{C, C}, 2);
    const Field f = spectral::inverse(CC);
    for (int n = 0; n < g.M; ++n) {
        const double x = g.x(n);
        CHECK(std::abs(f.v[n] - (0.5 + 0.5 * std::cos(2.0 * x))) <= 1e-12);
    }
}

TEST_CASE("dealias_product: nyquist-adjacent cube vs dense convolution") {
    const auto g = FourierGrid::make(32, 2.0 * M_PI);
    // content concentrated at the highest resolved paired modes
    Field f(g);
    for (int n = 0; n < g.M; ++n) {
        const double x = g.x(n);
        f.v[n] = std::cos((g.M / 2 - 1) * x) + 0.3 * std::sin((g.M / 2 - 2) * x);
    }
    const Spectrum F = spectral::forward(f);
    const Spectrum fast = spectral::dealias_product(std::array{F, F, F}, 3);
    const Spectrum oracle = ref::dense_convolution(std::array{F, F, F});
    double scale = 0.0;
    for (int j = 0; j < g.M; ++j) scale = std::max(scale, std::abs(oracle.c[j]));
    CHECK(gbq::test::max_abs_diff(fast, oracle) <= 1e-12 * scale);
}

TEST_CASE("dealias_product agrees with dense convolution on random data") {
    const auto g = FourierGrid::make(64, 3.0);
    const Spectrum A = spectral::forward(random_field(g, 1));
    const Spectrum B = spectral::forward(random_field(g, 2));
    const Spectrum C = spectral::forward(random_field(g, 3));
    const Spectrum fast = spectral::dealias_product(std::array{A, B, C}, 3);
    const Spectrum oracle = ref::dense_convolution(std::array{A, B, C});
    double scale = 0.0;
    for (int j = 0; j < g.M; ++j) scale = std::max(scale, std::abs(oracle.c[j]));
    CHECK(gbq::test::max_abs_diff(fast, oracle) <= 1e-12 * scale);
}

TEST_CASE("dealias_product: zero factor annihilates") {
    const auto g = FourierGrid::make(32, 4.0);
    const Spectrum A = spectral::forward(random_field(g, 6));
    const Spectrum Z(g);
    const Spectrum P = spectral::dealias_product(std::array{A, Z}, 2);
    for (int j = 0; j < g.M; ++j) CHECK(std::abs(P.c[j]) == 0.0);
}

TEST_CASE("dealias resource ceiling") {
    const auto g = FourierGrid::make(1024, 4.0);
    const Spectrum A = spectral::forward(random_field(g, 6));
    CHECK_THROWS_AS((void)spectral::dealias_power(A, 3, 1024), std::length_error);
}

TEST_CASE("dealias_power equals repeated product") {
    const auto g = FourierGrid::make(64, 6.0);
    const Spectrum A = spectral::forward(random_field(g, 10));
    const Spectrum p1 = spectral::dealias_power(A, 3);
    const Spectrum p2 = spectral::dealias_product(std::array{A, A, A}, 3);
    CHECK(gbq::test::rel_l2_diff(p1, p2) <= 1e-13);
}
