#include <cmath>
#include <random>
#include <string>

#include "bubblescat/kupradze.hpp"
#include "doctest.h"
#include "bubblescat/finite_difference.hpp"

using namespace bubblescat;

namespace {
NondimensionalMedium pdms() { return nondimensionalize(pdms_medium()); }

double rel_mat(const Mat3c& a, const Mat3c& b) {
    double d = 0.0, s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            d = std::max(d, std::abs(a[i][j] - b[i][j]));
            s = std::max(s, std::abs(b[i][j]));
        }
    return d / s;
}

double rel_vec(const Vec3c& a, const Vec3c& b) {
    double d = 0.0, s = 0.0;
    for (int i = 0; i < 3; ++i) {
        d += std::norm(a[i] - b[i]);
        s += std::norm(b[i]);
    }
    return std::sqrt(d / s);
}
}  // namespace

TEST_CASE("Kupradze tensor: series and closed form agree, symmetric, correct gradient") {
    auto nm = make_nondimensional(1.0, 0.8, 0.01, 0.3);
    std::mt19937 rng(3);
    std::normal_distribution<double> g;
    for (double r : {0.2, 0.6, 0.9, 1.5}) {
        Vec3 d{g(rng), g(rng), g(rng)};
        double s = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
        Vec3 x{d[0] / s * r, d[1] / s * r, d[2] / s * r};
        auto a = kupradze_series(x, nm), b = kupradze_closed_form(x, nm);
        CHECK(rel_mat(a.G, b.G) < 1e-10);
        for (int k = 0; k < 3; ++k) CHECK(rel_mat(a.dG[k], b.dG[k]) < 1e-10);
        auto K = kupradze(x, nm);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(std::abs(K.G[i][j] - K.G[j][i]) <= 1e-13 * std::abs(K.G[0][0]));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                auto f = [&](const Vec3& y) { return kupradze(y, nm).G[i][j]; };
                for (int k = 0; k < 3; ++k)
                    CHECK(std::abs(fdcheck::diff6(f, x, k, 1e-3) - K.dG[k][i][j]) <= 1e-7 * rel_mat(K.G, K.G) +
                                                                                        1e-7 * std::abs(K.G[0][0]) / r);
            }
    }
}

TEST_CASE("Kupradze tensor solves the Lame system away from the origin") {
    for (auto nm : {make_nondimensional(1.0, 0.8, 0.01, 0.3), pdms()}) {
        const double w2 = nm.k * nm.tau * nm.k * nm.tau;
        for (Vec3 x : {Vec3{0.3, -0.5, 0.4}, Vec3{1.1, 0.2, -0.7}}) {
            double worst = 0.0;
            for (int j = 0; j < 3; ++j) {
                // column j as a displacement field
                for (int i = 0; i < 3; ++i) {
                    cplx lap = 0.0, gd = 0.0;
                    double terms = 0.0;
                    for (int k = 0; k < 3; ++k) {
                        auto dik = [&, i, k](const Vec3& y) { return kupradze(y, nm).dG[k][i][j]; };
                        cplx t = fdcheck::diff6(dik, x, k, 1e-3);
                        lap += t;
                        terms += nm.mu * std::abs(t);
                        auto dkk = [&, k](const Vec3& y) { return kupradze(y, nm).dG[k][k][j]; };
                        cplx u = fdcheck::diff6(dkk, x, i, 1e-3);
                        gd += u;
                        terms += (nm.lambda + nm.mu) * std::abs(u);
                    }
                    cplx res = nm.mu * lap + (nm.lambda + nm.mu) * gd + w2 * kupradze(x, nm).G[i][j];
                    worst = std::max(worst, std::abs(res) / terms);
                }
            }
            CHECK(worst < 1e-7);
        }
    }
}

TEST_CASE("omega -> 0 limit is the Kelvin tensor") {
    auto nm = make_nondimensional(1e-8, 1.0, 0.01, 0.3);
    for (Vec3 x : {Vec3{1.0, 0.0, 0.0}, Vec3{0.6, 0.0, 0.8}, Vec3{0.48, -0.6, 0.64}}) {
        Mat3c K0 = kelvin(x, nm.lambda, nm.mu);
        Mat3c re{};
        auto K = kupradze(x, nm).G;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) re[i][j] = K[i][j].real();
        CHECK(rel_mat(re, K0) < 1e-5);
    }
}

TEST_CASE("off-surface oracle refuses aliasing orders and surface points") {
    auto nm = pdms();
    CHECK_THROWS_AS(oracle_single_layer({0, 0, 1.5}, 3, 0, LayerDensity::YNu, nm, 9), DomainError);
    CHECK_THROWS_AS(oracle_single_layer({0, 0, 1.0}, 1, 0, LayerDensity::YNu, nm, 40), DomainError);
    CHECK_NOTHROW(oracle_single_layer({0, 0, 1.5}, 3, 0, LayerDensity::YNu, nm, 10));
}

TEST_CASE("off-surface quadrature oracle agrees with the spectral single layer") {
    for (auto nm : {pdms(), make_nondimensional(0.8, 1.0, 0.01, 0.3)}) {
        for (int n : {1, 2})
            for (auto d : {LayerDensity::YNu, LayerDensity::I, LayerDensity::N, LayerDensity::T})
                for (int m : {0, n})
                    for (Vec3 x : {Vec3{0.0, 0.0, 1.5}, Vec3{0.9, -0.7, 0.8}, Vec3{-1.6, 0.3, -0.2}}) {
                        // on the axis T_n^0 and every m != 0 harmonic vanish
                        if (x[0] == 0.0 && (m != 0 || d == LayerDensity::T)) continue;
                        auto o = oracle_single_layer(x, n, m, d, nm, 40).u;
                        auto s = spectral_single_layer(x, n, m, d, nm);
                        INFO("n = " << n << " m = " << m << " density " << std::string(to_string(d)));
                        CHECK(rel_vec(o, s) < 1e-3);
                        CHECK(rel_vec(o, s) < 1e-9);
                    }
    }
}

TEST_CASE("radial exterior profile versus the quadrature oracle (reported)") {
    // The leading-order exterior representation keeps only a radial field; its size
    // relative to the full single layer is printed for the record.
    auto nm = pdms();
    for (int n : {1, 2}) {
        Vec3 x{0.0, 0.0, 1.5};
        auto o = oracle_single_layer(x, n, 0, LayerDensity::YNu, nm, 40).u;
        auto p = radial_profile_single_layer(x, n, 0, nm);
        double mo = std::sqrt(std::norm(o[0]) + std::norm(o[1]) + std::norm(o[2]));
        double mp = std::sqrt(std::norm(p[0]) + std::norm(p[1]) + std::norm(p[2]));
        MESSAGE("n = ", n, ": |oracle| = ", mo, ", |radial profile| = ", mp, ", relative difference ", rel_vec(p, o));
        CHECK(std::isfinite(mp));
    }
}

TEST_CASE("boundary trace oracle reproduces the layer and traction coefficients") {
    double worst_u = 0.0, worst_t = 0.0;
    for (auto nm : {pdms(), make_nondimensional(0.8, 1.0, 0.01, 0.3)}) {
        for (int n : {1, 2})
            for (auto d : {LayerDensity::YNu, LayerDensity::I, LayerDensity::N, LayerDensity::T}) {
                double th = 0.9, ph = 0.4;
                int m = n == 1 ? 1 : -1;
                auto o = oracle_single_layer_trace(th, ph, n, m, d, nm, 24);
                auto s = spectral_single_layer_trace(th, ph, n, m, d, nm);
                INFO("n = " << n << " density " << std::string(to_string(d)) << " spread " << o.spread);
                CHECK(rel_vec(o.displacement, s.displacement) < 1e-4);
                CHECK(rel_vec(o.traction, s.traction) < 1e-4);
                worst_u = std::max(worst_u, rel_vec(o.displacement, s.displacement));
                worst_t = std::max(worst_t, rel_vec(o.traction, s.traction));
            }
    }
    MESSAGE("trace oracle: displacement ", worst_u, ", traction ", worst_t);
}
