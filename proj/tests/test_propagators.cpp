#include "doctest.h"

#include <cmath>

#include "gbq/propagators.hpp"
#include "gbq/spectral.hpp"
#include "test_helpers.hpp"

using namespace gbq;
using gbq::test::random_field;
using gbq::test::sampled;

TEST_CASE("gamma symbol values") {
    CHECK(prop::gamma_of(0.0) == 0.0);
    CHECK(prop::gamma_of(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(prop::gamma_of(2.0) == doctest::Approx(std::sqrt(20.0)).epsilon(1e-15));
    const auto g = FourierGrid::make(32, 2.0 * M_PI);
    const SymbolTable t = prop::gamma(g);
    for (int j = 0; j < g.M; ++j)
        CHECK(t.v[j].real() == prop::gamma_of(g.xi[j]));
}

TEST_CASE("propagator cache invariants") {
    const auto g = FourierGrid::make(64, 7.0);
    const double h = 0.37;
    const auto P = prop::PropagatorCache::make(g, h);
    CHECK(P.sinc_t[g.zero_index()] == h); // removable singularity, exact
    CHECK(P.gam[g.zero_index()] == 0.0);
    for (int j = 0; j < g.M; ++j) {
        CHECK(P.gam[j] >= 0.0);
        const double c = P.cos_t[j];
        const double s = P.gam[j] * P.sinc_t[j];
        CHECK(std::abs(c * c + s * s - 1.0) <= 1e-12);
    }
}

TEST_CASE("sinc_gamma series fallback is smooth across the switch") {
    const double g1 = 0.9999e-4 / 0.5, g2 = 1.0001e-4 / 0.5;
    const double a = prop::sinc_gamma(0.5, g1);
    const double b = prop::sinc_gamma(0.5, g2);
    CHECK(std::abs(a - b) <= 1e-12);
}

TEST_CASE("apply_Vc / apply_Vs basic behavior") {
    const auto g = FourierGrid::make(32, 2.0 * M_PI);
    const Spectrum C = spectral::forward(sampled(g, [](double x) { return std::cos(x); }));

    const Spectrum id = prop::apply_Vc(0.0, C);
    for (int j = 0; j < g.M; ++j) CHECK(id.c[j] == C.c[j]);

    // gamma(1) = sqrt(2): cos(pi) = -1 at t = pi/sqrt(2)
    const Spectrum flip = prop::apply_Vc(M_PI / std::sqrt(2.0), C);
    const int z = g.zero_index();
    CHECK(std::abs(flip.c[z + 1] + C.c[z + 1]) <= 1e-12 * std::abs(C.c[z + 1]));

    const Spectrum zero = prop::apply_Vs(0.0, C);
    for (int j = 0; j < g.M; ++j) CHECK(std::abs(zero.c[j]) == 0.0);

    Spectrum dc(g);
    dc.c[z] = 2.0;
    const Spectrum scaled = prop::apply_Vs(3.0, dc);
    CHECK(scaled.c[z] == cplx(6.0, 0.0));

    const Spectrum vs = prop::apply_Vs(M_PI / (2.0 * std::sqrt(2.0)), C);
    CHECK(std::abs(vs.c[z + 1] - C.c[z + 1] / std::sqrt(2.0)) <=
          1e-12 * std::abs(C.c[z + 1]));

    // |cos| <= 1: no Sobolev norm can grow under Vc
    const Spectrum F = spectral::forward(random_field(g, 3));
    for (double t : {0.1, 1.7, 12.0})
        CHECK(spectral::sobolev_norm(prop::apply_Vc(t, F), 0.8) <=
              spectral::sobolev_norm(F, 0.8) * (1.0 + 1e-14));
}

TEST_CASE("free_evolution: initial condition and single-mode closed form") {
    const auto g = FourierGrid::make(32, 2.0 * M_PI);
    const Spectrum phi = spectral::forward(sampled(g, [](double x) { return std::cos(x); }));
    const Spectrum psix(g);

    auto [u0, ut0] = prop::free_evolution(0.0, phi, psix);
    for (int j = 0; j < g.M; ++j) {
        CHECK(u0.c[j] == phi.c[j]);
        CHECK(ut0.c[j] == cplx{});
    }

    const double t = 0.83;
    auto [u, ut] = prop::free_evolution(t, phi, psix);
    const Field f = spectral::inverse(u);
    const double amp = std::cos(std::sqrt(2.0) * t);
    for (int n = 0; n < g.M; ++n)
        CHECK(std::abs(f.v[n] - amp * std::cos(g.x(n))) <= 1e-13);
}

TEST_CASE("free_evolution: group property and time reversal") {
    const auto g = FourierGrid::make(128, 11.0);
    const Spectrum phi = spectral::forward(random_field(g, 7));
    Spectrum psix = spectral::forward(random_field(g, 8));
    psix.c[g.zero_index()] = 0.0; // psi_x has zero mean

    auto [ua, uta] = prop::free_evolution(0.4, phi, psix);
    auto [ub, utb] = prop::free_evolution(0.9, ua, uta);
    auto [uc, utc] = prop::free_evolution(1.3, phi, psix);
    CHECK(gbq::test::rel_l2_diff(ub, uc) <= 1e-12);
    CHECK(gbq::test::rel_l2_diff(utb, utc) <= 1e-12);

    auto [ur, utr] = prop::free_evolution(-1.3, uc, utc);
    CHECK(gbq::test::rel_l2_diff(ur, phi) <= 1e-12);
}

TEST_CASE("free_evolution: linear energy conservation over long times") {
    const auto g = FourierGrid::make(128, 13.0);
    const Spectrum phi = spectral::forward(random_field(g, 17));
    Spectrum psix = spectral::forward(random_field(g, 18));
    const int z = g.zero_index();
    psix.c[z] = 0.0;

    auto quad = [&](const Spectrum& u, const Spectrum& ut) {
        double e = 0.0;
        for (int j = 0; j < g.M; ++j) {
            const double xi = g.xi[j];
            e += (1.0 + xi * xi) * std::norm(u.c[j]);
            if (xi != 0.0) e += std::norm(ut.c[j]) / (xi * xi);
        }
        return 0.5 * e / g.L;
    };
    const double e0 = quad(phi, psix);
    for (double t : {0.5, 3.0, 27.0, 100.0}) {
        auto [u, ut] = prop::free_evolution(t, phi, psix);
        CHECK(std::abs(quad(u, ut) - e0) <= 1e-12 * e0);
    }
}

TEST_CASE("free_evolution acts mode by mode") {
    const auto g = FourierGrid::make(32, 2.0 * M_PI);
    Spectrum one_mode(g);
    const int z = g.zero_index();
    one_mode.c[z + 5] = cplx(0.7, -0.2);
    one_mode.c[z - 5] = std::conj(one_mode.c[z + 5]);
    auto [u, ut] = prop::free_evolution(2.1, one_mode, Spectrum(g));
    for (int j = 0; j < g.M; ++j) {
        if (j == z + 5 || j == z - 5) continue;
        CHECK(std::abs(u.c[j]) == 0.0);
        CHECK(std::abs(ut.c[j]) == 0.0);
    }
}
