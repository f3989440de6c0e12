#include "bubblescat/verify.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "bubblescat/diagnostics.hpp"
#include "bubblescat/finite_difference.hpp"
#include "bubblescat/kupradze.hpp"
#include "bubblescat/solver2d.hpp"
#include "bubblescat/solver3d.hpp"
#include "bubblescat/specfun.hpp"

namespace bubblescat {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

NondimensionalMedium pdms() { return nondimensionalize(pdms_medium()); }
NondimensionalMedium moderate() { return make_nondimensional(0.8, 1.0, 0.01, 0.3); }

IncidentSpec3D mixed_spec(int n, IncidentForm form, unsigned seed) {
    IncidentSpec3D s;
    s.n = n;
    s.f.assign(2 * static_cast<size_t>(n) + 1, 0.0);
    std::mt19937 rng(seed + n);
    std::normal_distribution<double> g;
    for (auto& v : s.f) v = cplx(g(rng), g(rng));
    s.normalized = true;
    s.form = form;
    return s;
}

double norm3(const Vec3c& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2])); }
double norm2(const Vec2c& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

double rel_vec(const Vec3c& a, const Vec3c& b) {
    double d = 0.0, s = 0.0;
    for (int i = 0; i < 3; ++i) {
        d += std::norm(a[i] - b[i]);
        s += std::norm(b[i]);
    }
    return std::sqrt(d / s);
}

double rel(const LogComplex& a, const LogComplex& b) { return ((a - b) / b).abs(); }

Vec3 random_point(std::mt19937& rng, double rmin, double rmax) {
    std::uniform_real_distribution<double> u(-1.0, 1.0), ur(rmin, rmax);
    Vec3 d;
    double nrm;
    do {
        d = {u(rng), u(rng), u(rng)};
        nrm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    } while (nrm < 0.1 || nrm > 1.0);
    double r = ur(rng);
    return {d[0] / nrm * r, d[1] / nrm * r, d[2] / nrm * r};
}

double wronskian() {
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
    // cylindrical: J_n Y_n' - J_n' Y_n = 2 / (pi z), through H = J + iY
    for (double z : {1e-3, 0.05, 0.7, 3.0}) {
        for (int n = 0; n <= 20; ++n) {
            auto j = cylindrical_bessel(CylKind::J, n, z);
            auto h = cylindrical_bessel(CylKind::H1, n, z);
            LogComplex w = j.value * h.derivative - j.derivative * h.value - LogComplex(2.0 * I / (pi * z));
            worst = std::max(worst, w.abs() * pi * z / 2.0);
        }
    }
    return worst;
}

double orthonormality() {
    auto quad = [](auto f, int nt, int np) {
        auto g = gauss_legendre(nt);
        cplx s = 0.0;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double th = std::acos(g.x[i]);
            for (int j = 0; j < np; ++j) s += g.w[i] * (2 * pi / np) * f(th, 2 * pi * j / np);
        }
        return s;
    };
    double worst = 0.0;
    for (int n = 0; n <= 12; ++n)
        for (int m : {-n, 0, n / 2, n})
            for (int n2 : {n, n + 1})
                for (int m2 : {m, -m}) {
                    if (std::abs(m2) > n2) continue;
                    cplx v = quad([&](double t, double p) {
                        return spherical_harmonic({n, m}, t, p) * std::conj(spherical_harmonic({n2, m2}, t, p));
                    }, n + 8, 2 * n + 8);
                    double expect = (n == n2 && m == m2) ? 1.0 : 0.0;
                    worst = std::max(worst, std::abs(v - expect));
                }
    return worst;
}

double vector_harmonics() {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ut(0.0, pi), up(0.0, 2 * pi);
    double worst = 0.0;
    for (int k = 0; k < 30; ++k) {
        double th = k == 0 ? 0.0 : (k == 1 ? pi : ut(rng)), ph = up(rng);
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
                    worst = std::max(worst, std::abs((tm.I[i] + tp.N[i]) / (2.0 * n + 1.0) - Y * f.r[i]));
                }
                worst = std::max({worst, std::abs(dotT), std::abs(dotI - static_cast<double>(n) * Y),
                                  std::abs(dotN - (n + 1.0) * Y)});
            }
    }
    return worst;
}

double lambert() {
    double worst = 0.0;
    for (double x : {-0.36787944117, -0.3, -0.1, -1e-8, 1e-10, 0.2, 0.605618, 2.5, 10.0, 1e3, 1e10, 1e100, 1e300}) {
        double w = lambert_w0(x);
        worst = std::max(worst, std::abs(w * std::exp(w) - x) / std::max(1.0, std::abs(x)));
    }
    return worst;
}

double lame_normalization() {
    double worst = 0.0;
    PhysicalMedium pm = pdms_medium();
    for (double s : {1.0, 1e-3, 7.0, 1e4}) {
        PhysicalMedium q = pm;
        q.lambda_t *= s;
        q.mu_t *= s;
        q.kappa *= s;
        worst = std::max(worst, std::abs(nondimensionalize(q).lame_sum() - 1.0));
    }
    return worst;
}

double energy_identity() {
    double worst = 0.0;
    for (int n : {1, 5, 15, 25})
        for (auto form : {IncidentForm::LayerHarmonic, IncidentForm::Gradient})
            for (auto model : {ExteriorModel::RadialProfile, ExteriorModel::ExactLayer}) {
                ShellOptions opt;
                opt.model = model;
                auto sol = solve_modes(mixed_spec(n, form, 5), pdms());
                worst = std::max(worst, stress_energies(sol, ShellRegion{}, ShellMethod::ModalClosedForm, opt)
                                            .identity_residual);
                if (n <= 5)
                    worst = std::max(worst, stress_energies(sol, ShellRegion{}, ShellMethod::Quadrature, opt)
                                                .identity_residual);
            }
    return worst;
}

double modal_vs_quadrature() {
    struct Shell {
        FieldKind field;
        double a, b;
    };
    const Shell shells[] = {{FieldKind::Incident, 0.0, 1.0},  {FieldKind::Interior, 0.0, 0.9},
                            {FieldKind::Interior, 0.9, 1.0},  {FieldKind::Scattered, 1.0, 1.1},
                            {FieldKind::Scattered, 1.1, 2.0}, {FieldKind::ExteriorTotal, 1.0, 1.1}};
    double worst = 0.0;
    for (int n : {1, 3, 5, 10})
        for (auto form : {IncidentForm::LayerHarmonic, IncidentForm::Gradient}) {
            auto sol = solve_modes(mixed_spec(n, form, 7), pdms());
            for (auto model : {ExteriorModel::RadialProfile, ExteriorModel::ExactLayer}) {
                ShellOptions opt;
                opt.model = model;
                for (const auto& s : shells)
                    for (auto kind : {NormKind::Value, NormKind::Gradient})
                        worst = std::max(worst, rel(shell_norm_sq(sol, s.field, kind, s.a, s.b,
                                                                  ShellMethod::ModalClosedForm, opt),
                                                    shell_norm_sq(sol, s.field, kind, s.a, s.b,
                                                                  ShellMethod::Quadrature, opt)));
            }
        }
    return worst;
}

double transmission_3d() {
    double worst = 0.0;
    for (auto nm : {pdms(), moderate()})
        for (int n = 1; n <= 10; ++n)
            for (auto form : {IncidentForm::LayerHarmonic, IncidentForm::Gradient}) {
                auto sol = solve_modes(mixed_spec(n, form, 11), nm);
                std::mt19937 rng(100 + n);
                std::uniform_real_distribution<double> ut(0.05, pi - 0.05), up(0, 2 * pi);
                for (int p = 0; p < 12; ++p) {
                    double th = ut(rng), ph = up(rng);
                    auto fr = spherical_frame(th, ph);
                    auto traces = [&](const ScaledVectorField& f) {
                        Vec3c u = f.value();
                        Mat3c g = f.gradient();
                        cplx un = 0.0, tn = nm.lambda * (g[0][0] + g[1][1] + g[2][2]);
                        for (int i = 0; i < 3; ++i) {
                            un += u[i] * fr.r[i];
                            for (int j = 0; j < 3; ++j) tn += fr.r[i] * (nm.mu * (g[i][j] + g[j][i])) * fr.r[j];
                        }
                        return std::pair{un, tn};
                    };
                    auto inc = eval_incident(sol, fr.r);
                    auto [un, tn] = traces(eval_total_exterior(sol, fr.r, ExteriorModel::ExactLayer));
                    auto [un_i, tn_i] = traces(inc);
                    auto in = eval_interior(sol, fr.r);
                    cplx dr = 0.0;
                    for (int i = 0; i < 3; ++i) dr += (in.scale * LogComplex(in.grad[i])).value() * fr.r[i];
                    double t_scale = std::max(std::abs(tn_i), nm.lame_sum() * norm3(inc.value()));
                    worst = std::max(worst, std::abs(un - dr / (nm.k * nm.k)) / std::abs(un_i));
                    worst = std::max(worst, std::abs(tn + nm.delta * nm.tau * nm.tau * in.value()) / t_scale);
                }
            }
    return worst;
}

Vec2c traction2(const Mat2c& g, cplx div, const NondimensionalMedium& nm, const Vec2& nu) {
    Vec2c t{};
    for (int i = 0; i < 2; ++i) {
        t[i] = nm.lambda * div * nu[i];
        for (int j = 0; j < 2; ++j) t[i] += nm.mu * (g[i][j] + g[j][i]) * nu[j];
    }
    return t;
}

ModalSolution2D solve2(int n, const NondimensionalMedium& nm) {
    IncidentSpec2D s;
    s.n = n;
    s.amplitude = cplx(0.7, -0.4);
    return solve_modes_2d(s, nm);
}

double transmission_2d() {
    double worst = 0.0;
    for (auto nm : {pdms(), moderate()})
        for (int n : {1, 2, 3, 5, 10, 15, 20}) {
            auto sol = solve2(n, nm);
            const double k2 = nm.k * nm.k, dt2 = nm.delta * nm.tau * nm.tau;
            for (int j = 0; j < 64; ++j) {
                double th = 2.0 * pi * j / 64;
                Vec2 nu{std::cos(th), std::sin(th)};
                auto in = eval_interior_2d(sol, nu);
                auto inc = eval_incident_2d(sol, nu);
                auto sc = eval_scattered_2d(sol, nu);
                auto sp = eval_scattered_2d(sol, nu, ScatteredPart::Compressional);
                auto ss = eval_scattered_2d(sol, nu, ScatteredPart::Shear);
                cplx u = in.value();
                cplx dnu = in.scale.value() * (in.grad[0] * nu[0] + in.grad[1] * nu[1]);
                auto dot = [&](const Vec2c& v) { return v[0] * nu[0] + v[1] * nu[1]; };
                cplx ui_n = dot(inc.value()), us_n = dot(sc.value());
                double part = std::max(std::abs(dot(sp.value())), std::abs(dot(ss.value())));
                worst = std::max(worst, std::abs(ui_n + us_n - dnu / k2) /
                                            std::max({std::abs(ui_n), part, std::abs(dnu) / k2}));
                Vec2c ti = traction2(inc.gradient(), inc.scale.value() * inc.div, nm, nu);
                Vec2c ts = traction2(sc.gradient(), sc.scale.value() * sc.div, nm, nu);
                Vec2c tp = traction2(sp.gradient(), sp.scale.value() * sp.div, nm, nu);
                Vec2c tsh = traction2(ss.gradient(), ss.scale.value() * ss.div, nm, nu);
                Vec2c t{ti[0] + ts[0] + dt2 * u * nu[0], ti[1] + ts[1] + dt2 * u * nu[1]};
                worst = std::max(worst, norm2(t) / std::max({norm2(ti), norm2(tp), norm2(tsh), dt2 * std::abs(u)}));
            }
        }
    return worst;
}

double system_residual_2d() {
    double worst = 0.0;
    for (auto nm : {pdms(), moderate()})
        for (int n : {1, 5, 20, 40, 60}) worst = std::max(worst, solve2(n, nm).system_residual);
    return worst;
}

// mu Lap u + (lambda+mu) grad div u + (k tau)^2 u relative to its individual terms
template <class Eval>
double navier_residual(const Eval& eval, const Vec3& x, const NondimensionalMedium& nm, double h) {
    auto divf = [&](const Vec3& y) {
        Mat3c g = eval(y).gradient();
        return g[0][0] + g[1][1] + g[2][2];
    };
    Vec3c u = eval(x).value();
    double w2 = nm.k * nm.tau * nm.k * nm.tau;
    double res = 0.0, scale = 0.0;
    for (int i = 0; i < 3; ++i) {
        cplx lap = 0.0;
        double lap_terms = 0.0, div_terms = 0.0;
        for (int j = 0; j < 3; ++j) {
            auto gij = [&, j](const Vec3& y) { return eval(y).gradient()[i][j]; };
            cplx t = fdcheck::diff6(gij, x, j, h);
            lap += t;
            lap_terms += std::abs(t);
            auto gjj = [&, j](const Vec3& y) { return eval(y).gradient()[j][j]; };
            div_terms += std::abs(fdcheck::diff6(gjj, x, i, h));
        }
        cplx gd = fdcheck::diff6(divf, x, i, h);
        res = std::max(res, std::abs(nm.mu * lap + (nm.lambda + nm.mu) * gd + w2 * u[i]));
        scale = std::max(scale, nm.mu * lap_terms + std::abs(nm.lambda + nm.mu) * div_terms + w2 * std::abs(u[i]));
    }
    return res / scale;
}

double fd_residual_3d() {
    auto nm = pdms();
    double worst = 0.0;
    std::mt19937 rng(9);
    auto sol = solve_modes(mixed_spec(5, IncidentForm::LayerHarmonic, 13), nm);
    for (int p = 0; p < 20; ++p) {
        Vec3 x = random_point(rng, 0.2, 0.95);
        cplx lap = 0.0;
        for (int j = 0; j < 3; ++j) {
            auto gj = [&, j](const Vec3& y) {
                auto t = eval_interior(sol, y);
                return (t.scale * LogComplex(t.grad[j])).value();
            };
            lap += fdcheck::diff6(gj, x, j, 1e-3);
        }
        cplx u = eval_interior(sol, x).value();
        double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        worst = std::max(worst, std::abs(lap + nm.k * nm.k * u) / (30.0 * std::abs(u) / r2));
    }
    for (int p = 0; p < 20; ++p) {
        Vec3 x = random_point(rng, 1.1, 1.9);
        worst = std::max(worst, navier_residual([&](const Vec3& y) {
            return eval_exterior_scattered(sol, y, ExteriorModel::ExactLayer);
        }, x, nm, 2e-3));
    }
    auto solg = solve_modes(mixed_spec(5, IncidentForm::Gradient, 17), nm);
    for (int p = 0; p < 20; ++p) {
        Vec3 x = random_point(rng, 0.3, 0.95);
        worst = std::max(worst, navier_residual([&](const Vec3& y) { return eval_incident(solg, y); }, x, nm, 2e-3));
    }
    return worst;
}

double fd_residual_2d() {
    double worst = 0.0;
    for (auto nm : {pdms(), make_nondimensional(0.6, 0.8, 0.01, 0.3)}) {
        const double w2 = nm.k * nm.k * nm.tau * nm.tau;
        for (int n : {1, 3, 8}) {
            auto sol = solve2(n, nm);
            for (int p = 0; p < 20; ++p) {
                double th = 0.31 * p + 0.1;
                double ri = 0.3 + 0.03 * p;
                Vec2 xi{ri * std::cos(th), ri * std::sin(th)};
                double h = 1e-3 * ri;
                cplx lap = 0.0;
                double terms = 0.0;
                for (int j = 0; j < 2; ++j) {
                    cplx t = fdcheck::diff6([&](const Vec2& y) {
                        auto s = eval_interior_2d(sol, y);
                        return s.scale.value() * s.grad[j];
                    }, xi, j, h);
                    lap += t;
                    terms += std::abs(t);
                }
                cplx u = eval_interior_2d(sol, xi).value();
                worst = std::max(worst, std::abs(lap + nm.k * nm.k * u) /
                                            (terms + nm.k * nm.k * std::abs(u) + 30.0 * std::abs(u) / (ri * ri)));
                double re = 1.2 + 0.05 * p;
                Vec2 xe{re * std::cos(th), re * std::sin(th)};
                for (int i = 0; i < 2; ++i) {
                    cplx l = 0.0;
                    double sc = 0.0;
                    for (int j = 0; j < 2; ++j) {
                        cplx t = fdcheck::diff6([&](const Vec2& y) { return eval_scattered_2d(sol, y).gradient()[i][j]; },
                                                xe, j, 1e-3);
                        l += t;
                        sc += nm.mu * std::abs(t);
                    }
                    cplx gd = fdcheck::diff6([&](const Vec2& y) {
                        auto f = eval_scattered_2d(sol, y);
                        return f.scale.value() * f.div;
                    }, xe, i, 1e-3);
                    sc += (nm.lambda + nm.mu) * std::abs(gd);
                    cplx ui = eval_scattered_2d(sol, xe).value()[i];
                    sc += w2 * std::abs(ui);
                    worst = std::max(worst, std::abs(nm.mu * l + (nm.lambda + nm.mu) * gd + w2 * ui) / sc);
                }
            }
        }
    }
    return worst;
}

double oracle_vs_spectral() {
    double worst = 0.0;
    for (auto nm : {pdms(), moderate()})
        for (int n : {1, 2})
            for (auto d : {LayerDensity::YNu, LayerDensity::I, LayerDensity::N, LayerDensity::T})
                for (int m : {0, n})
                    for (Vec3 x : {Vec3{0.0, 0.0, 1.5}, Vec3{0.9, -0.7, 0.8}, Vec3{-1.6, 0.3, -0.2}}) {
                        if (x[0] == 0.0 && (m != 0 || d == LayerDensity::T)) continue;
                        worst = std::max(worst, rel_vec(oracle_single_layer(x, n, m, d, nm, 40).u,
                                                        spectral_single_layer(x, n, m, d, nm)));
                    }
    return worst;
}

// largest excursion of a localization ratio outside [0, 1]
double ratio_range() {
    double worst = 0.0;
    auto excess = [](double v) { return std::max({0.0, -v, v - 1.0}); };
    for (int n : {1, 5, 25, 60}) {
        auto sol = solve_modes(IncidentSpec3D::single(n, 0, 1.0, true), pdms());
        for (auto model : {ExteriorModel::RadialProfile, ExteriorModel::ExactLayer}) {
            ShellOptions opt;
            opt.model = model;
            auto l = localization_ratios(sol, ShellRegion{}, ShellMethod::ModalClosedForm, opt);
            worst = std::max({worst, excess(l.eta_u), excess(l.eta_us)});
        }
        auto l2 = localization_ratios(solve2(n, pdms()), ShellRegion{});
        worst = std::max({worst, excess(l2.eta_u), excess(l2.eta_us)});
    }
    return worst;
}

double beta_ratio_law() {
    auto nm = pdms();
    double worst = 0.0;
    for (int n = 1; n < 60; ++n) {
        double measured = (stress_lower_bound(n + 1, 1.1, nm) / stress_lower_bound(n, 1.1, nm)).abs();
        double law = std::pow((n + 1.0) / n, 2) / (nm.tau * nm.tau);
        worst = std::max(worst, std::abs(measured / law - 1.0));
    }
    return worst;
}

}  // namespace

std::vector<PropertySuite> property_suites() {
    return {
        {"bessel_wronskian", "spherical and cylindrical Bessel/Hankel Wronskians", 1e-11, wronskian},
        {"harmonic_orthonormality", "spherical harmonics by Gauss x trapezoid quadrature", 1e-10, orthonormality},
        {"vector_harmonic_identities", "pointwise radial projections and I + N = (2n+1) Y nu", 1e-13, vector_harmonics},
        {"lambert_residual", "|W e^W - x| / max(1, |x|)", 1e-13, lambert},
        {"lame_normalization", "lambda + 2 mu = 1 under modulus rescaling", 1e-15, lame_normalization},
        {"energy_identity", "E(u) = E(us) + E(ui) + Rest", 1e-10, energy_identity},
        {"shell_norm_modal_vs_quadrature", "modal closed form against product quadrature, n <= 10", 1e-6,
         modal_vs_quadrature},
        {"transmission_3d", "boundary conditions reassembled from field evaluators, n <= 10", 1e-8, transmission_3d},
        {"transmission_2d", "boundary conditions at 64 angles, n <= 20", 1e-8, transmission_2d},
        {"system_residual_2d", "balanced 3x3 residual up to n = 60", 1e-10, system_residual_2d},
        {"fd_residual_3d", "Helmholtz and Navier residuals by finite differences", 1e-6, fd_residual_3d},
        {"fd_residual_2d", "Helmholtz and Navier residuals by finite differences", 1e-6, fd_residual_2d},
        {"oracle_vs_spectral", "Kupradze quadrature against the spectral single layer, n = 1, 2", 1e-3,
         oracle_vs_spectral},
        {"localization_ratio_range", "excursion of eta outside [0, 1]", 0.0, ratio_range},
        {"beta_ratio_law", "beta(n+1)/beta(n) = ((n+1)/n)^2 / tau^2", 1e-10, beta_ratio_law},
    };
}

CheckResult run_suite(const PropertySuite& s) {
    CheckResult r{s.name, s.description, 0.0, s.threshold, false, 0.0};
    auto t0 = std::chrono::steady_clock::now();
    try {
        r.measured = s.worst();
        r.pass = std::isfinite(r.measured) && r.measured <= s.threshold;
    } catch (const std::exception& e) {
        r.measured = std::nan("");
        r.description += std::string(" (error: ") + e.what() + ")";
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CheckResult> run_property_suites(const std::string& filter) {
    std::vector<CheckResult> out;
    for (const auto& s : property_suites())
        if (filter.empty() || s.name.find(filter) != std::string::npos) out.push_back(run_suite(s));
    return out;
}

}  // namespace bubblescat
