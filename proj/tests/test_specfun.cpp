#include <boost/math/special_functions/lambert_w.hpp>
#include <cmath>
#include <random>

#include "bubblescat/specfun.hpp"
#include "doctest.h"

using namespace bubblescat;

namespace {
const cplx I(0.0, 1.0);
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("LogComplex round trip and exact log arithmetic") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> e(-300.0, 300.0), ph(-3.1, 3.1);
    for (int i = 0; i < 200; ++i) {
        double l = e(rng), p = ph(rng);
        cplx z = std::polar(std::pow(10.0, l), p);
        LogComplex lz(z);
        CHECK(rel(lz.value(), z) < 1e-14);
        CHECK(std::abs(lz.log10_magnitude() - std::log10(std::abs(z))) < 1e-12);
        CHECK(std::abs(lz.phase() - std::arg(z)) < 1e-14);
    }
    LogComplex big = LogComplex::from_log10_polar(900000.0, 0.3);
    LogComplex tiny = LogComplex::from_log10_polar(-900000.0, -0.1);
    CHECK(std::abs((big * tiny).log10_magnitude()) < 1e-6);
    CHECK(std::abs((big * tiny).phase() - 0.2) < 1e-12);
    CHECK(std::abs((big / tiny).log10_magnitude() - 1.8e6) < 1e-3);
    CHECK(LogComplex::zero().is_zero());
    CHECK((LogComplex(2.0) - LogComplex(2.0)).is_zero());
    CHECK((big * LogComplex::zero()).is_zero());
}

TEST_CASE("log_double_factorial") {
    CHECK(log_double_factorial(-1) == 0.0);
    CHECK(log_double_factorial(0) == 0.0);
    CHECK(log_double_factorial(5) == doctest::Approx(2.708050201).epsilon(1e-10));
    CHECK(log_double_factorial(7) == doctest::Approx(4.653960350).epsilon(1e-10));
    CHECK_THROWS_AS(log_double_factorial(-2), DomainError);
    // The gamma-function branch agrees with the direct sum at the switchover.
    double direct = 0.0;
    for (long k = 401; k > 1; k -= 2) direct += std::log(static_cast<double>(k));
    CHECK(log_double_factorial(401) == doctest::Approx(direct).epsilon(1e-14));
    double direct_even = 0.0;
    for (long k = 10000; k > 1; k -= 2) direct_even += std::log(static_cast<double>(k));
    CHECK(log_double_factorial(10000) == doctest::Approx(direct_even).epsilon(1e-13));
}

TEST_CASE("spherical Bessel j: examples and std oracle") {
    CHECK(spherical_bessel_j(0, 0.5).value.value().real() == doctest::Approx(0.9588510772).epsilon(1e-10));
    CHECK(spherical_bessel_j(1, 0.5).value.value().real() == doctest::Approx(0.1625370306).epsilon(1e-10));
    CHECK(spherical_bessel_j(3, 0.0).value.is_zero());
    CHECK(spherical_bessel_j(0, 0.0).value.value().real() == 1.0);
    for (int n : {0, 1, 2, 5, 10, 20, 40}) {
        for (double z : {1e-3, 0.05, 0.3, 1.0, 3.7, 9.0, 25.0, 49.0}) {
            double ref = std::sph_bessel(n, z);
            if (std::abs(ref) < 1e-280) continue;
            auto v = spherical_bessel_j(n, z);
            CHECK_MESSAGE(rel(v.value.value(), ref) < 1e-12, "n=" << n << " z=" << z);
            // derivative oracle: j_n' = j_{n-1} - (n+1)/z j_n
            double dref = n == 0 ? -std::sph_bessel(1, z) : std::sph_bessel(n - 1, z) - (n + 1) / z * ref;
            CHECK_MESSAGE(std::abs(v.derivative.value() - dref) < 1e-11 * (std::abs(dref) + std::abs(ref) * (n + 1) / z),
                          "n=" << n << " z=" << z);
        }
    }
}

TEST_CASE("series and recurrence branches agree in the overlap band") {
    for (int n : {0, 3, 10, 30}) {
        double zc = 1e-2 * std::sqrt(2.0 * n + 3.0);
        double e = 1e-9;
        auto a = spherical_bessel_j(n, zc * (1.0 - e));
        auto b = spherical_bessel_j(n, zc * (1.0 + e));
        double expect = std::pow((1.0 - e) / (1.0 + e), n);
        CHECK(std::abs(LogComplex::ratio(a.value, b.value) - expect) < 1e-10);
    }
}

TEST_CASE("spherical Hankel h1") {
    auto h = spherical_hankel_h1(0, 0.5).value.value();
    CHECK(h.real() == doctest::Approx(0.9588510772).epsilon(1e-10));
    CHECK(h.imag() == doctest::Approx(-1.7551651238).epsilon(1e-10));
    CHECK_THROWS_AS(spherical_hankel_h1(2, 0.0), DomainError);
    for (int n : {0, 1, 4, 15}) {
        for (double z : {0.01, 0.5, 2.0, 12.0}) {
            cplx ref(std::sph_bessel(n, z), std::sph_neumann(n, z));
            CHECK(rel(spherical_hankel_h1(n, z).value.value(), ref) < 1e-12);
        }
    }
    double z = 1e-3;
    cplx scaled = (spherical_hankel_h1(2, z).value * LogComplex(I * z * z * z / 3.0)).value();
    CHECK(std::abs(scaled - 1.0) < 1e-6);
    // Wronskian at (3, 0.7)
    auto j = spherical_bessel_j(3, 0.7);
    auto hh = spherical_hankel_h1(3, 0.7);
    cplx w = (j.value * hh.derivative - j.derivative * hh.value).value();
    CHECK(std::abs(w - I / 0.49) < 1e-12);
}

TEST_CASE("property: Wronskian, recurrence and small-argument law") {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        double z = std::pow(10.0, -4.0 + 5.0 * i / 19.0);
        for (int n = 0; n <= 30; ++n) {
            auto j = spherical_bessel_j(n, z);
            auto h = spherical_hankel_h1(n, z);
            LogComplex w = j.value * h.derivative - j.derivative * h.value - LogComplex(I / (z * z));
            worst = std::max(worst, w.abs() * z * z);
        }
    }
    CHECK(worst <= 1e-11);
    for (double z : {0.01, 0.3, 2.0, 9.0}) {
        for (int n = 1; n < 30; ++n) {
            LogComplex hm = spherical_hankel_h1(n - 1, z).value, h0 = spherical_hankel_h1(n, z).value,
                       hp = spherical_hankel_h1(n + 1, z).value;
            double lm = hm.log10_magnitude(), l0 = h0.log10_magnitude(), lp = hp.log10_magnitude();
            if (std::max({lm, l0, lp}) - std::min({lm, l0, lp}) > 3.0) continue;
            LogComplex res = hp - LogComplex((2.0 * n + 1.0) / z) * h0 + hm;
            CHECK(res.abs() / hp.abs() < 1e-11);
        }
    }
    double z = 1e-3;
    for (int n = 2; n <= 8; ++n) {
        double v = (spherical_bessel_j(n, z).value *
                    LogComplex::from_exp(log_double_factorial(2L * n + 1) - n * std::log(z)))
                       .value()
                       .real();
        CHECK(v <= 1.0);
        CHECK(v >= 1.0 - z * z);
    }
}

TEST_CASE("large order stays finite in log scale") {
    auto j = spherical_bessel_j(60, 2.9e-4);
    auto h = spherical_hankel_h1(60, 9.8e-5);
    CHECK(std::isfinite(j.value.log10_magnitude()));
    CHECK(std::isfinite(h.value.log10_magnitude()));
    CHECK(j.value.log10_magnitude() < -300);
    CHECK(h.value.log10_magnitude() > 300);
    double expect = 60 * std::log10(2.9e-4) - log_double_factorial(121) / std::log(10.0);
    CHECK(j.value.log10_magnitude() == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("cylindrical Bessel") {
    CHECK(cylindrical_bessel(CylKind::J, 0, 0.0).value.value().real() == 1.0);
    CHECK(cylindrical_bessel(CylKind::J, 1, 1.0).value.value().real() == doctest::Approx(0.4400505857).epsilon(1e-10));
    cplx h = cylindrical_bessel(CylKind::H1, 0, 1.0).value.value();
    CHECK(h.real() == doctest::Approx(0.7651976866).epsilon(1e-10));
    CHECK(h.imag() == doctest::Approx(0.0882569642).epsilon(1e-9));
    CHECK_THROWS_AS(cylindrical_bessel(CylKind::Y, 0, 0.0), DomainError);
    for (int n : {0, 1, 2, 7, 20, 45}) {
        for (double z : {1e-3, 0.2, 1.0, 5.5, 14.0, 40.0}) {
            double jr = std::cyl_bessel_j(static_cast<double>(n), z);
            auto J = cylindrical_bessel(CylKind::J, n, z);
            if (std::abs(jr) > 1e-280) CHECK_MESSAGE(rel(J.value.value(), jr) < 1e-11, "J n=" << n << " z=" << z);
            double djr = n == 0 ? -std::cyl_bessel_j(1.0, z)
                                : std::cyl_bessel_j(n - 1.0, z) - n / z * jr;
            if (std::abs(jr) > 1e-280)
                CHECK(std::abs(J.derivative.value() - djr) < 1e-11 * (std::abs(djr) + std::abs(jr) * (n + 1) / z));
            double yr = std::cyl_neumann(static_cast<double>(n), z);
            auto Y = cylindrical_bessel(CylKind::Y, n, z);
            if (std::abs(yr) < 1e280) CHECK_MESSAGE(rel(Y.value.value(), yr) < 1e-11, "Y n=" << n << " z=" << z);
        }
    }
    auto big = cylindrical_bessel(CylKind::H1, 60, 9.8e-5);
    CHECK(std::isfinite(big.value.log10_magnitude()));
    CHECK(big.value.log10_magnitude() > 300);
}

TEST_CASE("spherical harmonics: values, std oracle, orthonormality") {
    CHECK(spherical_harmonic({0, 0}, 0.3, 1.1).real() == doctest::Approx(0.2820947918).epsilon(1e-10));
    CHECK(spherical_harmonic({1, 0}, 0.0, 0.0).real() == doctest::Approx(0.4886025119).epsilon(1e-10));
    CHECK_THROWS_AS(SphericalHarmonicIndex(2, 3), DomainError);
    for (int n = 0; n <= 12; ++n)
        for (int m = -n; m <= n; ++m)
            for (double th : {0.0, 0.4, 1.3, 2.9, M_PI}) {
                cplx ref = std::sph_legendre(n, std::abs(m), th) * std::polar(1.0, m * 0.7);
                if (m < 0) ref = std::conj(std::sph_legendre(n, -m, th) * std::polar(1.0, -m * 0.7));
                CHECK(std::abs(spherical_harmonic({n, m}, th, 0.7) - ref) < 1e-13);
            }
    // Gauss x trapezoid quadrature
    auto quad = [](auto f, int nt, int np) {
        auto g = gauss_legendre(nt);
        cplx s = 0.0;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double th = std::acos(g.x[i]);
            for (int j = 0; j < np; ++j) s += g.w[i] * (2 * M_PI / np) * f(th, 2 * M_PI * j / np);
        }
        return s;
    };
    struct Case { int n, m, n2, m2; double expect; };
    for (Case c : {Case{3, 1, 3, 1, 1.0}, Case{3, 1, 4, 1, 0.0}, Case{2, 2, 2, -2, 0.0}}) {
        cplx v = quad([&](double t, double p) {
            return spherical_harmonic({c.n, c.m}, t, p) * std::conj(spherical_harmonic({c.n2, c.m2}, t, p));
        }, 24, 24);
        CHECK(std::abs(v - c.expect) <= 1e-12);
    }
    double worst = 0.0;
    for (int n = 0; n <= 15; ++n)
        for (int m : {-n, 0, n / 2, n}) {
            cplx a = quad([&](double t, double p) { return std::norm(spherical_harmonic({n, m}, t, p)) + 0.0 * I; },
                          n + 4, 2 * n + 4);
            cplx b = quad([&](double t, double p) {
                auto g = surface_gradient(n, m, t, p);
                return cplx(std::norm(g[0]) + std::norm(g[1]) + std::norm(g[2]));
            }, n + 4, 2 * n + 4);
            worst = std::max({worst, std::abs(a - 1.0), std::abs(b - n * (n + 1.0)) / std::max(1.0, n * (n + 1.0))});
        }
    CHECK(worst <= 1e-10);
}

TEST_CASE("surface gradient matches finite differences and is finite at the poles") {
    double h = 1e-6;
    for (int n = 1; n <= 8; ++n)
        for (int m = -n; m <= n; ++m) {
            double th = 0.9, ph = 2.1;
            auto g = spherical_harmonic_grad(n, m, th, ph);
            cplx dth = (spherical_harmonic({n, m}, th + h, ph) - spherical_harmonic({n, m}, th - h, ph)) / (2 * h);
            cplx dph = (spherical_harmonic({n, m}, th, ph + h) - spherical_harmonic({n, m}, th, ph - h)) / (2 * h);
            CHECK(std::abs(g.dtheta - dth) < 1e-8);
            CHECK(std::abs(g.dphi_over_sin - dph / std::sin(th)) < 1e-8);
        }
    // At the pole the Cartesian gradient equals the limit from a nearby point.
    for (int n = 1; n <= 6; ++n)
        for (int m = -n; m <= n; ++m) {
            auto a = surface_gradient(n, m, 0.0, 0.4);
            auto b = surface_gradient(n, m, 1e-9, 0.4);
            for (int i = 0; i < 3; ++i) {
                CHECK(std::isfinite(a[i].real()));
                CHECK(std::abs(a[i] - b[i]) < 1e-7);
            }
        }
}

TEST_CASE("vector spherical harmonic identities") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ut(0.0, M_PI), up(0.0, 2 * M_PI);
    double worst_t = 0, worst_i = 0, worst_n = 0, worst_sum = 0;
    for (int k = 0; k < 50; ++k) {
        double th = ut(rng), ph = up(rng);
        if (k == 0) th = 0.0;
        if (k == 1) th = M_PI;
        auto f = spherical_frame(th, ph);
        for (int n = 1; n <= 10; ++n)
            for (int m = -n; m <= n; ++m) {
                auto t = vector_spherical_harmonics(n, m, th, ph);
                auto tm = vector_spherical_harmonics(n - 1, m, th, ph);
                auto tp = vector_spherical_harmonics(n + 1, m, th, ph);
                cplx Y = spherical_harmonic({n, m}, th, ph);
                cplx dotT = 0, dotI = 0, dotN = 0;
                for (int i = 0; i < 3; ++i) {
                    dotT += t.T[i] * f.r[i];
                    dotI += tm.I[i] * f.r[i];
                    dotN += tp.N[i] * f.r[i];
                    worst_sum = std::max(worst_sum, std::abs((tm.I[i] + tp.N[i]) / (2.0 * n + 1.0) - Y * f.r[i]));
                }
                worst_t = std::max(worst_t, std::abs(dotT));
                worst_i = std::max(worst_i, std::abs(dotI - static_cast<double>(n) * Y));
                worst_n = std::max(worst_n, std::abs(dotN - (n + 1.0) * Y));
            }
    }
    CHECK(worst_t <= 1e-13);
    CHECK(worst_i <= 1e-13);
    CHECK(worst_n <= 1e-13);
    CHECK(worst_sum <= 1e-13);
}

TEST_CASE("Lambert W0") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lambert_w0(1.0) == doctest::Approx(0.5671432904).epsilon(1e-10));
    CHECK_THROWS_AS(lambert_w0(-0.5), DomainError);
    double worst = 0.0;
    for (double x : {-0.36787944117, -0.3, -0.1, -1e-8, 1e-10, 0.2, 0.605618, 2.5, 10.0, 1e3, 1e10, 1e100, 1e300}) {
        double w = lambert_w0(x);
        worst = std::max(worst, std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x)));
        CHECK(w == doctest::Approx(boost::math::lambert_w0(x)).epsilon(1e-13));
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
    for (int n : {1, 2, 5, 16, 64, 200}) {
        auto g = gauss_legendre(n, 0.0, 2.0);
        double s = 0.0, p = 0.0;
        for (size_t i = 0; i < g.x.size(); ++i) {
            s += g.w[i];
            p += g.w[i] * std::pow(g.x[i], 2 * n - 1);
        }
        CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(p == doctest::Approx(std::pow(2.0, 2 * n) / (2 * n)).epsilon(1e-12));
    }
}

TEST_CASE("real part of h_n keeps j_n when y_n dominates by many decades") {
    for (int n : {3, 10, 25})
        for (double z : {1e-4, 3e-3, 0.2}) {
            auto h = spherical_hankel_h1(n, z);
            auto j = spherical_bessel_j(n, z);
            auto hv = h.value, jv = j.value;
            cplx ratio = LogComplex::ratio(hv + hv.conj(), jv);  // 2 Re h / j
            CHECK(std::abs(ratio - 2.0) < 1e-13);
            cplx dratio = LogComplex::ratio(h.derivative + h.derivative.conj(), j.derivative);
            CHECK(std::abs(dratio - 2.0) < 1e-12);
        }
}
