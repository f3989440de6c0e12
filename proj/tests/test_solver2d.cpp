#include <cmath>
#include <numbers>

#include "bubblescat/solver2d.hpp"
#include "doctest.h"
#include "bubblescat/finite_difference.hpp"

using namespace bubblescat;

namespace {
NondimensionalMedium pdms() { return nondimensionalize(pdms_medium()); }

ModalSolution2D solve(int n, const NondimensionalMedium& nm, cplx amp = cplx(0.7, -0.4), bool normalized = false) {
    IncidentSpec2D s;
    s.n = n;
    s.amplitude = amp;
    s.normalized = normalized;
    return solve_modes_2d(s, nm);
}

double norm2(const Vec2c& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

Vec2c traction(const Mat2c& g, cplx div, const NondimensionalMedium& nm, const Vec2& nu) {
    Vec2c t{};
    for (int i = 0; i < 2; ++i) {
        t[i] = nm.lambda * div * nu[i];
        for (int j = 0; j < 2; ++j) t[i] += nm.mu * (g[i][j] + g[j][i]) * nu[j];
    }
    return t;
}

struct Reassembly {
    double displacement = 0.0, traction = 0.0;
};

// Boundary conditions re-evaluated through the field evaluators; each residual is
// divided by the largest of its individual terms.
Reassembly reassemble(const ModalSolution2D& sol, int angles) {
    const auto& nm = sol.medium;
    const double k2 = nm.k * nm.k, dt2 = nm.delta * nm.tau * nm.tau;
    Reassembly out;
    for (int j = 0; j < angles; ++j) {
        double th = 2.0 * std::numbers::pi * j / angles;
        Vec2 nu{std::cos(th), std::sin(th)};
        auto in = eval_interior_2d(sol, nu);
        auto inc = eval_incident_2d(sol, nu);
        auto sc = eval_scattered_2d(sol, nu);
        cplx u = in.value();
        cplx s = in.scale.value();
        cplx dnu = s * (in.grad[0] * nu[0] + in.grad[1] * nu[1]);
        Vec2c ui = inc.value(), us = sc.value();
        cplx ui_n = ui[0] * nu[0] + ui[1] * nu[1], us_n = us[0] * nu[0] + us[1] * nu[1];
        // the compressional and shear parts of u^s cancel to leading order in k
        auto vp = eval_scattered_2d(sol, nu, ScatteredPart::Compressional).value();
        auto vs = eval_scattered_2d(sol, nu, ScatteredPart::Shear).value();
        double part = std::max(std::abs(vp[0] * nu[0] + vp[1] * nu[1]), std::abs(vs[0] * nu[0] + vs[1] * nu[1]));
        double r1 = std::abs(ui_n + us_n - dnu / k2) / std::max({std::abs(ui_n), part, std::abs(dnu) / k2});
        Vec2c ti = traction(inc.gradient(), inc.scale.value() * inc.div, nm, nu);
        Vec2c ts = traction(sc.gradient(), sc.scale.value() * sc.div, nm, nu);
        Vec2c t{ti[0] + ts[0] + dt2 * u * nu[0], ti[1] + ts[1] + dt2 * u * nu[1]};
        auto sp = eval_scattered_2d(sol, nu, ScatteredPart::Compressional);
        auto ss = eval_scattered_2d(sol, nu, ScatteredPart::Shear);
        Vec2c tp = traction(sp.gradient(), sp.scale.value() * sp.div, nm, nu);
        Vec2c tsh = traction(ss.gradient(), ss.scale.value() * ss.div, nm, nu);
        double r2 = norm2(t) / std::max({norm2(ti), norm2(tp), norm2(tsh), dt2 * std::abs(u)});
        out.displacement = std::max(out.displacement, r1);
        out.traction = std::max(out.traction, r2);
    }
    return out;
}

Vec2 point(double r, double th) { return {r * std::cos(th), r * std::sin(th)}; }
}  // namespace

TEST_CASE("2D transmission conditions reassemble at 64 boundary angles") {
    for (auto nm : {pdms(), make_nondimensional(0.8, 1.0, 0.01, 0.3), make_nondimensional(0.05, 0.5, 1e-3, 0.2)}) {
        for (int n : {1, 2, 3, 5, 10, 15, 20}) {
            auto sol = solve(n, nm);
            auto r = reassemble(sol, 64);
            INFO("n = " << n << " k = " << nm.k);
            CHECK(r.displacement <= 1e-8);
            CHECK(r.traction <= 1e-8);
            CHECK(sol.system_residual <= 1e-10);
            CHECK(std::isfinite(sol.condition_number));
        }
    }
}

TEST_CASE("2D solve is linear in the amplitude and rejects bad specs") {
    auto nm = pdms();
    auto s1 = solve(4, nm, 1.0), s2 = solve(4, nm, cplx(-2.0, 3.0));
    for (auto [x, y] : {std::pair{s1.a, s2.a}, std::pair{s1.b, s2.b}, std::pair{s1.c, s2.c}}) {
        cplx q = LogComplex::ratio(y, x);
        CHECK(std::abs(q - cplx(-2.0, 3.0)) <= 1e-12 * std::abs(q));
    }
    IncidentSpec2D bad;
    bad.n = 0;
    CHECK_THROWS_AS(solve_modes_2d(bad, nm), DomainError);
    bad.n = 2;
    bad.amplitude = 0.0;
    CHECK_THROWS_AS(solve_modes_2d(bad, nm), DomainError);
}

TEST_CASE("normalized 2D incident field has unit L2 norm on the disk") {
    auto nm = make_nondimensional(0.6, 0.8, 0.01, 0.3);
    for (int n : {1, 3, 7}) {
        auto sol = solve(n, nm, cplx(2.0, 1.0), true);
        // tensor Gauss in r and trapezoid in theta on the Cartesian field
        auto gr = gauss_legendre(40, 0.0, 1.0);
        const int nt = 64;
        double sum = 0.0;
        for (size_t i = 0; i < gr.x.size(); ++i)
            for (int j = 0; j < nt; ++j) {
                double th = 2.0 * std::numbers::pi * j / nt;
                auto u = eval_incident_2d(sol, point(gr.x[i], th)).value();
                sum += gr.w[i] * gr.x[i] * (2.0 * std::numbers::pi / nt) * (std::norm(u[0]) + std::norm(u[1]));
            }
        CHECK(std::abs(sum - 1.0) <= 1e-10);
        // scale invariance of normalized outputs
        auto other = solve(n, nm, cplx(-5.0, 0.5), true);
        auto x = point(1.4, 0.3);
        auto a = eval_scattered_2d(sol, x).value(), b = eval_scattered_2d(other, x).value();
        cplx phase = cplx(-5.0, 0.5) / std::abs(cplx(-5.0, 0.5)) / (cplx(2.0, 1.0) / std::abs(cplx(2.0, 1.0)));
        CHECK(norm2({a[0] * phase - b[0], a[1] * phase - b[1]}) <= 1e-12 * norm2(b));
    }
}

TEST_CASE("2D gradients match finite differences") {
    auto nm = make_nondimensional(0.6, 0.8, 0.01, 0.3);
    for (int n : {1, 4}) {
        auto sol = solve(n, nm);
        for (double th : {0.3, 2.1, -1.2}) {
            auto xe = point(1.6, th);
            auto f = eval_scattered_2d(sol, xe);
            auto g = f.gradient();
            for (int j = 0; j < 2; ++j) {
                auto d = fdcheck::diff6([&](const Vec2& y) { return eval_scattered_2d(sol, y).value(); }, xe, j, 1e-3);
                for (int i = 0; i < 2; ++i) CHECK(std::abs(d[i] - g[i][j]) <= 1e-9 * norm2(f.value()));
            }
            CHECK(std::abs(f.scale.value() * f.div - (g[0][0] + g[1][1])) <= 1e-10 * std::abs(g[0][0]) + 1e-14);
            auto xi = point(0.6, th);
            auto s = eval_interior_2d(sol, xi);
            for (int j = 0; j < 2; ++j) {
                cplx d = fdcheck::diff6([&](const Vec2& y) { return eval_interior_2d(sol, y).value(); }, xi, j, 1e-3);
                CHECK(std::abs(d - s.scale.value() * s.grad[j]) <= 1e-9 * std::abs(s.value()) / 0.6);
            }
        }
    }
}

TEST_CASE("2D fields solve Helmholtz inside and Navier outside (finite differences, 20 points)") {
    for (auto nm : {pdms(), make_nondimensional(0.6, 0.8, 0.01, 0.3)}) {
        const double w2 = nm.k * nm.k * nm.tau * nm.tau;
        for (int n : {1, 3, 8}) {
            auto sol = solve(n, nm);
            double worst_h = 0.0, worst_n = 0.0;
            for (int p = 0; p < 20; ++p) {
                double th = 0.31 * p + 0.1;
                // interior Helmholtz
                double ri = 0.3 + 0.03 * p;
                auto xi = point(ri, th);
                double h = 1e-3 * ri;
                cplx lap = 0.0;
                double terms = 0.0;
                for (int j = 0; j < 2; ++j) {
                    cplx t = fdcheck::diff6(
                        [&](const Vec2& y) {
                            auto s = eval_interior_2d(sol, y);
                            return s.scale.value() * s.grad[j];
                        },
                        xi, j, h);
                    lap += t;
                    terms += std::abs(t);
                }
                cplx u = eval_interior_2d(sol, xi).value();
                // for n = 1 the second derivatives of J_1(kr) e^{i theta} nearly vanish,
                // so the difference quotient error eps |u| / h^2 sets the scale
                worst_h = std::max(worst_h, std::abs(lap + nm.k * nm.k * u) /
                                                (terms + nm.k * nm.k * std::abs(u) + 30.0 * std::abs(u) / (ri * ri)));

                // exterior Navier on the scattered field
                double re = 1.2 + 0.05 * p;
                auto xe = point(re, th);
                h = 1e-3;
                for (int i = 0; i < 2; ++i) {
                    cplx l = 0.0, gd = 0.0;
                    double sc = 0.0;
                    for (int j = 0; j < 2; ++j) {
                        cplx t = fdcheck::diff6([&](const Vec2& y) { return eval_scattered_2d(sol, y).gradient()[i][j]; },
                                                xe, j, h);
                        l += t;
                        sc += nm.mu * std::abs(t);
                    }
                    gd = fdcheck::diff6(
                        [&](const Vec2& y) {
                            auto f = eval_scattered_2d(sol, y);
                            return f.scale.value() * f.div;
                        },
                        xe, i, h);
                    sc += (nm.lambda + nm.mu) * std::abs(gd);
                    cplx ui = eval_scattered_2d(sol, xe).value()[i];
                    sc += w2 * std::abs(ui);
                    worst_n = std::max(worst_n, std::abs(nm.mu * l + (nm.lambda + nm.mu) * gd + w2 * ui) / sc);
                }
            }
            INFO("n = " << n << " k = " << nm.k);
            CHECK(worst_h <= 1e-6);
            CHECK(worst_n <= 1e-6);
        }
    }
}

TEST_CASE("2D radial laws: interior growth r^n and exterior decay") {
    auto nm = pdms();
    const int n = 10;
    auto sol = solve(n, nm);
    double th = 0.7;
    double gi = std::abs(eval_interior_2d(sol, point(0.9, th)).value()) /
                std::abs(eval_interior_2d(sol, point(0.5, th)).value());
    CHECK(std::abs(gi / std::pow(0.9 / 0.5, n) - 1.0) <= 0.01);
    // the compressional potential H_n(k_p r) ~ r^{-n}; its displacement ~ r^{-n-1}
    auto cp = [&](double r) { return norm2(eval_scattered_2d(sol, point(r, th), ScatteredPart::Compressional).value()); };
    CHECK(std::abs(cp(1.5) / cp(1.1) / std::pow(1.1 / 1.5, n + 1) - 1.0) <= 0.01);
    auto sh = [&](double r) { return norm2(eval_scattered_2d(sol, point(r, th), ScatteredPart::Shear).value()); };
    CHECK(std::abs(sh(1.5) / sh(1.1) / std::pow(1.1 / 1.5, n + 1) - 1.0) <= 0.01);
    // the two cancel at leading order: the total is much smaller than either part
    double tot = norm2(eval_scattered_2d(sol, point(1.1, th)).value());
    MESSAGE("n = 10, r = 1.1: |u^s| / |compressional part| = ", tot / cp(1.1));
    CHECK(tot < cp(1.1));
}

TEST_CASE("n = 60 at PDMS stays finite in log-scaled arithmetic") {
    auto nm = pdms();
    auto sol = solve(60, nm, 1.0, true);
    CHECK(std::isfinite(sol.a.log10_magnitude()));
    CHECK(std::isfinite(sol.b.log10_magnitude()));
    CHECK(std::isfinite(sol.c.log10_magnitude()));
    CHECK(std::isfinite(sol.incident_norm.log10_magnitude()));
    // raw Bessel magnitudes are out of double range here
    CHECK(std::abs(sol.b.log10_magnitude()) > 308.0);
    auto f = eval_fields_2d(sol, point(1.3, 0.2));
    CHECK(f.exterior);
    CHECK(std::isfinite(f.total.scale.log10_magnitude()));
    CHECK(std::isfinite(f.stress_density.log10_magnitude()));
    auto r = reassemble(sol, 16);
    MESSAGE("n = 60 reassembly: displacement ", r.displacement, ", traction ", r.traction);
    CHECK(sol.system_residual <= 1e-10);
}

TEST_CASE("2D boundary localization ratios") {
    auto nm = pdms();
    double prev_u = 2.0, prev_s = 2.0;
    for (int n : {20, 40, 60}) {
        auto sol = solve(n, nm, 1.0, true);
        auto eta = localization_ratio_2d(sol, 0.9, 1.1, 2.0);
        MESSAGE("n = ", n, ": eta_u = ", eta.eta_u, ", eta_us = ", eta.eta_us);
        CHECK(eta.eta_u >= 0.0);
        CHECK(eta.eta_u <= 1.0);
        CHECK(eta.eta_us >= 0.0);
        CHECK(eta.eta_us <= 1.0);
        CHECK(eta.eta_u < prev_u);
        CHECK(eta.eta_us < prev_s);
        prev_u = eta.eta_u;
        prev_s = eta.eta_us;
        if (n == 60) {
            CHECK(eta.eta_u < 0.1);
            CHECK(eta.eta_us < 0.3);
        }
        if (n == 20) {
            CHECK(std::abs(eta.eta_u * eta.eta_u - std::pow(0.9, 2 * n + 2)) <= 1e-3);
        }
    }
    // vanishing excluded layer
    auto sol = solve(20, nm, 1.0, true);
    CHECK(localization_ratio_2d(sol, 0.9999, 1.0001, 2.0).eta_u >= 0.99);
    CHECK(localization_ratio_2d(sol, 0.9999, 1.0001, 2.0).eta_us >= 0.99);
    CHECK_THROWS_AS(localization_ratio_2d(sol, 1.1, 1.2, 2.0), DomainError);
}

TEST_CASE("2D norms: quadrature panels versus a dense tensor rule") {
    auto nm = make_nondimensional(0.6, 0.8, 0.01, 0.3);
    auto sol = solve(6, nm);
    auto gr = gauss_legendre(200, 1.0, 2.0);
    const int nt = 64;
    double sum = 0.0;
    for (size_t i = 0; i < gr.x.size(); ++i)
        for (int j = 0; j < nt; ++j) {
            auto u = eval_scattered_2d(sol, point(gr.x[i], 2.0 * std::numbers::pi * j / nt)).value();
            sum += gr.w[i] * gr.x[i] * (2.0 * std::numbers::pi / nt) * (std::norm(u[0]) + std::norm(u[1]));
        }
    double q = scattered_norm_sq_2d(sol, 1.0, 2.0).abs();
    CHECK(std::abs(q / sum - 1.0) <= 1e-10);
}

TEST_CASE("2D stress density: real-part convention and simple fields") {
    auto nm = make_nondimensional(0.6, 0.8, 0.01, 0.3);
    ScaledVectorField2D f;
    f.scale = LogComplex(1.0);
    f.grad = {{{1.0, 0.0}, {0.0, 1.0}}};
    f.div = 2.0;
    // u = x: sigma = (2 lambda + 2 mu) I, sigma : I = 4 lambda + 4 mu
    CHECK(std::abs(stress_density_2d(f, nm).value().real() - (4.0 * nm.lambda + 4.0 * nm.mu)) <= 1e-13);
    f.scale = LogComplex(cplx(0.0, 3.0));
    CHECK(std::abs(stress_density_2d(f, nm).value().real() - 9.0 * (4.0 * nm.lambda + 4.0 * nm.mu)) <= 1e-12);
    f.grad = {};
    f.div = 0.0;
    CHECK(stress_density_2d(f, nm).value().real() == 0.0);
}
