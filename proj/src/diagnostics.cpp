#include "bubblescat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "bubblescat/specfun.hpp"

namespace bubblescat {

namespace {

constexpr double kPi = std::numbers::pi;

// Radial functions of A(r) Y r^ + B(r) grad_S Y, their r-derivatives, and X = A - B
// (kept separately: it vanishes at leading order for gradient fields).
struct Radial4 {
    LogComplex A, B, X, dA, dB;
};
struct Radial4c {
    cplx A, B, X, dA, dB;
};

Radial4 incident_radial(const ModalSolution3D& sol, const RadialData3D& rd) {
    const double n = sol.incident.n;
    const RadialTriple& t = rd.incident;
    if (sol.incident.form == IncidentForm::LayerHarmonic)
        return {LogComplex(n) * t.F, t.F, LogComplex(n - 1.0) * t.F, LogComplex(n) * t.dF, t.dF};
    // grad(F Y) = F' Y r^ + (F / r) grad_S Y; (F/r)' = (F' - n F / r + (n - 1) F / r) / r
    LogComplex inv_r(1.0 / rd.r);
    LogComplex x = t.tan + LogComplex(n - 1.0) * t.F * inv_r;
    return {t.dF, t.F * inv_r, x, t.d2F, x * inv_r};
}

Radial4 scattered_radial(const ModalSolution3D& sol, const RadialData3D& rd, ExteriorModel model) {
    if (model == ExteriorModel::RadialProfile)
        return {rd.profile.F, LogComplex(), rd.profile.F, rd.profile.dF, LogComplex()};
    // I_{n-1} = n Y r^ + grad_S Y, N_{n+1} = (n+1) Y r^ - grad_S Y
    const double n = sol.incident.n;
    const RadialTriple& I = rd.layer_I;
    const RadialTriple& N = rd.layer_N;
    return {LogComplex(n) * I.F + LogComplex(n + 1.0) * N.F, I.F - N.F,
            LogComplex(n - 1.0) * I.F + LogComplex(n + 2.0) * N.F, LogComplex(n) * I.dF + LogComplex(n + 1.0) * N.dF,
            I.dF - N.dF};
}

Radial4 operator+(const Radial4& x, const Radial4& y) {
    return {x.A + y.A, x.B + y.B, x.X + y.X, x.dA + y.dA, x.dB + y.dB};
}

LogComplex peak(std::initializer_list<LogComplex> xs) {
    LogComplex best;
    for (const auto& x : xs)
        if (!x.is_zero() && (best.is_zero() || x.ln_magnitude() > best.ln_magnitude())) best = x;
    return best;
}

LogComplex peak(const Radial4& x) { return peak({x.A, x.B, x.X, x.dA, x.dB}); }

cplx rel(const LogComplex& x, const LogComplex& s) { return x.is_zero() ? cplx(0.0) : LogComplex::ratio(x, s); }

Radial4c relative(const Radial4& x, const LogComplex& s) {
    return {rel(x.A, s), rel(x.B, s), rel(x.X, s), rel(x.dA, s), rel(x.dB, s)};
}

// Angular integrals (per sum_m |f_m|^2) of products of two fields with the same
// harmonic content; N = n(n+1).
struct Sesquilinear {
    double N, r;

    cplx value(const Radial4c& u, const Radial4c& v) const { return u.A * std::conj(v.A) + N * u.B * std::conj(v.B); }
    // 2 A conj(C) - N (A conj(D) + B conj(C)) + N (N - 1) B conj(D), regrouped in X = A - B
    cplx tangential(const Radial4c& u, const Radial4c& v) const {
        return (2.0 * u.X * std::conj(v.X) + (2.0 - N) * (u.X * std::conj(v.B) + u.B * std::conj(v.X)) +
                (N - 1.0) * (N - 2.0) * u.B * std::conj(v.B)) /
               (r * r);
    }
    // grad u : conj(grad v)
    cplx grad(const Radial4c& u, const Radial4c& v) const {
        return u.dA * std::conj(v.dA) + N * u.dB * std::conj(v.dB) + N * u.X * std::conj(v.X) / (r * r) +
               tangential(u, v);
    }
    // grad u : conj(grad v)^T
    cplx grad_t(const Radial4c& u, const Radial4c& v) const {
        return u.dA * std::conj(v.dA) + N / r * (u.dB * std::conj(v.X) + u.X * std::conj(v.dB)) + tangential(u, v);
    }
    cplx div(const Radial4c& u) const { return u.dA + (2.0 * u.X + (2.0 - N) * u.B) / r; }
    // sigma(u) : conj(grad v)
    cplx stress(const Radial4c& u, const Radial4c& v, const NondimensionalMedium& nm) const {
        return nm.lambda * div(u) * std::conj(div(v)) + nm.mu * (grad(u, v) + grad_t(u, v));
    }
};

LogComplex sum_abs2(const std::vector<cplx>& f) {
    double s = 0.0;
    for (cplx v : f) s += std::norm(v);
    return LogComplex(s);
}

// Real value times |s|^2 as a LogComplex.
LogComplex real_scaled(double v, const LogComplex& s) {
    if (v == 0.0 || s.is_zero()) return LogComplex();
    return LogComplex(v) * s * s.conj();
}

double relative_difference(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    const LogComplex& ref = a.is_zero() ? b : a;
    return ((a - b) / ref).abs();
}

// Gauss-Legendre integral of a vector of integrands over [a, b], doubled until
// every component agrees to tol relative (measured against the largest component).
using VecIntegrand = std::function<std::vector<LogComplex>(double)>;
std::vector<LogComplex> integrate_radial(double a, double b, const VecIntegrand& fn, const ShellOptions& opt) {
    auto run = [&](int nodes) {
        auto g = gauss_legendre(nodes, a, b);
        std::vector<LogComplex> acc;
        for (size_t i = 0; i < g.x.size(); ++i) {
            auto v = fn(g.x[i]);
            if (acc.empty()) acc.resize(v.size());
            for (size_t j = 0; j < v.size(); ++j)
                if (!v[j].is_zero()) acc[j] += v[j] * LogComplex(g.w[i]);
        }
        return acc;
    };
    if (!(b > a)) return std::vector<LogComplex>(fn(a).size());
    int nodes = std::max(2, opt.radial_nodes);
    auto prev = run(nodes);
    while (nodes < opt.max_radial_nodes) {
        nodes *= 2;
        auto cur = run(nodes);
        double worst = 0.0;
        for (size_t j = 0; j < cur.size(); ++j) {
            if (cur[j].is_zero() && prev[j].is_zero()) continue;
            worst = std::max(worst, relative_difference(cur[j], prev[j]));
        }
        prev = std::move(cur);
        if (worst <= opt.radial_tol) break;
    }
    return prev;
}

bool is_exterior_field(FieldKind f) { return f == FieldKind::Scattered || f == FieldKind::ExteriorTotal; }

void check_domain(FieldKind field, double a, double b) {
    if (!(a >= 0.0) || !(b >= a)) throw std::invalid_argument("shell: need 0 <= a <= b");
    if (field == FieldKind::Interior && b > 1.0 + 1e-12) throw std::invalid_argument("shell: interior field needs b <= 1");
    if (is_exterior_field(field) && a < 1.0 - 1e-12) throw std::invalid_argument("shell: exterior field needs a >= 1");
}

// ---- modal path -----------------------------------------------------------

LogComplex modal_norm_sq(const ModalSolution3D& sol, FieldKind field, NormKind kind, double a, double b,
                         const ShellOptions& opt) {
    const int n = sol.incident.n;
    const double N = n * (n + 1.0);
    const LogComplex fsum = sum_abs2(sol.incident.f);
    auto fn = [&](double r) -> std::vector<LogComplex> {
        RadialData3D rd = radial_data(sol, r, is_exterior_field(field));
        if (field == FieldKind::Interior) {
            const RadialTriple& t = rd.interior;
            LogComplex s = peak({t.F, t.dF});
            if (s.is_zero()) return {LogComplex()};
            cplx F = rel(t.F, s), dF = rel(t.dF, s);
            double v = kind == NormKind::Value ? std::norm(F) : std::norm(dF) + N * std::norm(F) / (r * r);
            return {real_scaled(v * r * r, s)};
        }
        Radial4 x;
        if (field == FieldKind::Incident)
            x = incident_radial(sol, rd);
        else if (field == FieldKind::Scattered)
            x = scattered_radial(sol, rd, opt.model);
        else
            x = incident_radial(sol, rd) + scattered_radial(sol, rd, opt.model);
        LogComplex s = peak(x);
        if (s.is_zero()) return {LogComplex()};
        Radial4c u = relative(x, s);
        Sesquilinear q{N, r};
        double v = kind == NormKind::Value ? q.value(u, u).real() : q.grad(u, u).real();
        return {real_scaled(v * r * r, s)};
    };
    return integrate_radial(a, b, fn, opt)[0] * fsum;
}

StressEnergies modal_energies(const ModalSolution3D& sol, double a, double b, const ShellOptions& opt) {
    const int n = sol.incident.n;
    const double N = n * (n + 1.0);
    const auto& nm = sol.medium;
    auto fn = [&](double r) -> std::vector<LogComplex> {
        RadialData3D rd = radial_data(sol, r, true);
        Radial4 xi = incident_radial(sol, rd), xs = scattered_radial(sol, rd, opt.model);
        Radial4 xt = xi + xs;
        LogComplex s = peak({peak(xi), peak(xs), peak(xt)});
        if (s.is_zero()) return std::vector<LogComplex>(4);
        Radial4c ui = relative(xi, s), us = relative(xs, s), ut = relative(xt, s);
        Sesquilinear q{N, r};
        double w = r * r;
        return {real_scaled(w * q.stress(ut, ut, nm).real(), s), real_scaled(w * q.stress(us, us, nm).real(), s),
                real_scaled(w * q.stress(ui, ui, nm).real(), s),
                real_scaled(w * 2.0 * q.stress(us, ui, nm).real(), s)};
    };
    auto v = integrate_radial(a, b, fn, opt);
    LogComplex fsum = sum_abs2(sol.incident.f);
    return {v[0] * fsum, v[1] * fsum, v[2] * fsum, v[3] * fsum, 0.0};
}

// ---- full quadrature path -------------------------------------------------

struct AngularGrid {
    std::vector<AngularData3D> data;
    std::vector<double> weight;
};

AngularGrid angular_grid(const ModalSolution3D& sol, const ShellOptions& opt) {
    const int n = sol.incident.n;
    const int nt = std::max(opt.angular_nodes, 2 * n + 8);
    const int np = nt;
    auto g = gauss_legendre(nt, -1.0, 1.0);
    AngularGrid grid;
    grid.data.reserve(static_cast<size_t>(nt) * np);
    for (int i = 0; i < nt; ++i) {
        double theta = std::acos(g.x[i]);
        for (int j = 0; j < np; ++j) {
            double phi = 2.0 * kPi * j / np;
            grid.data.push_back(angular_data(sol, theta, phi));
            grid.weight.push_back(g.w[i] * 2.0 * kPi / np);
        }
    }
    return grid;
}

Mat3c rescaled(const Mat3c& m, cplx c) {
    Mat3c r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = m[i][j] * c;
    return r;
}

cplx sigma_contract(const Mat3c& ga, const Mat3c& gb, const NondimensionalMedium& nm) {
    cplx tra = ga[0][0] + ga[1][1] + ga[2][2];
    cplx trb = gb[0][0] + gb[1][1] + gb[2][2];
    cplx s = nm.lambda * tra * std::conj(trb);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += nm.mu * (ga[i][j] + ga[j][i]) * std::conj(gb[i][j]);
    return s;
}

double frob(const Mat3c& g) {
    double s = 0.0;
    for (const auto& row : g)
        for (cplx v : row) s += std::norm(v);
    return s;
}

double vnorm(const Vec3c& u) { return std::norm(u[0]) + std::norm(u[1]) + std::norm(u[2]); }

LogComplex quadrature_norm_sq(const ModalSolution3D& sol, FieldKind field, NormKind kind, double a, double b,
                              const ShellOptions& opt) {
    AngularGrid grid = angular_grid(sol, opt);
    auto fn = [&](double r) -> std::vector<LogComplex> {
        RadialData3D rd = radial_data(sol, r, is_exterior_field(field));
        double acc = 0.0;
        LogComplex s;
        if (field == FieldKind::Interior) {
            for (size_t p = 0; p < grid.data.size(); ++p) {
                ScaledScalarField f = combine_interior(sol, rd, grid.data[p]);
                s = f.scale;
                double v = kind == NormKind::Value
                               ? std::norm(f.u)
                               : std::norm(f.grad[0]) + std::norm(f.grad[1]) + std::norm(f.grad[2]);
                acc += grid.weight[p] * v;
            }
            return {real_scaled(acc * r * r, s)};
        }
        for (size_t p = 0; p < grid.data.size(); ++p) {
            ScaledVectorField f;
            if (field == FieldKind::Incident) {
                f = combine_incident(sol, rd, grid.data[p]);
            } else if (field == FieldKind::Scattered) {
                f = combine_scattered(sol, rd, grid.data[p], opt.model);
            } else {
                f = combine_incident(sol, rd, grid.data[p]);
                f += combine_scattered(sol, rd, grid.data[p], opt.model);
            }
            // the scale depends on r only, so every angle shares it
            s = f.scale;
            acc += grid.weight[p] * (kind == NormKind::Value ? vnorm(f.u) : frob(f.grad));
        }
        return {real_scaled(acc * r * r, s)};
    };
    return integrate_radial(a, b, fn, opt)[0];
}

StressEnergies quadrature_energies(const ModalSolution3D& sol, double a, double b, const ShellOptions& opt) {
    AngularGrid grid = angular_grid(sol, opt);
    const auto& nm = sol.medium;
    auto fn = [&](double r) -> std::vector<LogComplex> {
        RadialData3D rd = radial_data(sol, r, true);
        double e_u = 0.0, e_s = 0.0, e_i = 0.0, rest = 0.0;
        LogComplex s;
        for (size_t p = 0; p < grid.data.size(); ++p) {
            ScaledVectorField fi = combine_incident(sol, rd, grid.data[p]);
            ScaledVectorField fs = combine_scattered(sol, rd, grid.data[p], opt.model);
            s = peak({fi.scale, fs.scale});
            if (s.is_zero()) return std::vector<LogComplex>(4);
            Mat3c gi = rescaled(fi.grad, rel(fi.scale, s));
            Mat3c gs = rescaled(fs.grad, rel(fs.scale, s));
            Mat3c gt;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) gt[i][j] = gi[i][j] + gs[i][j];
            const double w = grid.weight[p];
            e_u += w * sigma_contract(gt, gt, nm).real();
            e_s += w * sigma_contract(gs, gs, nm).real();
            e_i += w * sigma_contract(gi, gi, nm).real();
            rest += w * (sigma_contract(gs, gi, nm) + sigma_contract(gi, gs, nm)).real();
        }
        double w = r * r;
        return {real_scaled(w * e_u, s), real_scaled(w * e_s, s), real_scaled(w * e_i, s), real_scaled(w * rest, s)};
    };
    auto v = integrate_radial(a, b, fn, opt);
    return {v[0], v[1], v[2], v[3], 0.0};
}

LogComplex sqrt_abs(const LogComplex& x) {
    if (x.is_zero()) return x;
    return LogComplex::from_exp(0.5 * x.ln_magnitude());
}

double ratio_sqrt(const LogComplex& num, const LogComplex& den) {
    if (num.is_zero()) return 0.0;
    return std::sqrt(std::abs(LogComplex::ratio(num, den).real()));
}

LogComplex from_log(double ln_value) { return LogComplex::from_exp(ln_value); }

}  // namespace

void ShellRegion::validate() const {
    if (!(zeta1 > 0.0 && zeta1 < 1.0)) throw std::invalid_argument("shell: zeta1 must lie in (0, 1)");
    if (!(zeta2 > 1.0)) throw std::invalid_argument("shell: zeta2 must exceed 1");
    if (!(R > zeta2)) throw std::invalid_argument("shell: R must exceed zeta2");
}

LogComplex shell_norm_sq(const ModalSolution3D& sol, FieldKind field, NormKind kind, double a, double b,
                         ShellMethod method, const ShellOptions& opt) {
    check_domain(field, a, b);
    if (method == ShellMethod::ModalClosedForm) return modal_norm_sq(sol, field, kind, a, b, opt);
    return quadrature_norm_sq(sol, field, kind, a, b, opt);
}

LogComplex shell_norm(const ModalSolution3D& sol, FieldKind field, NormKind kind, double a, double b,
                      ShellMethod method, const ShellOptions& opt) {
    return sqrt_abs(shell_norm_sq(sol, field, kind, a, b, method, opt));
}

LogComplex shell_norm_sq_2d(const ModalSolution2D& sol, FieldKind field, double a, double b, ShellMethod method) {
    if (method != ShellMethod::ModalClosedForm)
        throw std::invalid_argument("shell: the 2D solution supports only the modal closed-form method");
    check_domain(field, a, b);
    if (field == FieldKind::Interior) return interior_norm_sq_2d(sol, a, b);
    if (field == FieldKind::Scattered) return scattered_norm_sq_2d(sol, a, b);
    throw std::invalid_argument("shell: the 2D solution provides interior and scattered norms only");
}

double interior_localization_closed_form(int n, double zeta1) { return std::pow(zeta1, 2.0 * n + 3.0); }

double exterior_localization_closed_form(int n, double zeta2, double R) {
    double e = 1.0 - 2.0 * n;
    return (std::pow(zeta2, e) - std::pow(R, e)) / (1.0 - std::pow(R, e));
}

LocalizationRatios localization_ratios(const ModalSolution3D& sol, const ShellRegion& region, ShellMethod method,
                                       const ShellOptions& opt) {
    region.validate();
    const double z1 = region.zeta1, z2 = region.zeta2, R = region.R;
    LogComplex in_core = shell_norm_sq(sol, FieldKind::Interior, NormKind::Value, 0.0, z1, method, opt);
    LogComplex in_layer = shell_norm_sq(sol, FieldKind::Interior, NormKind::Value, z1, 1.0, method, opt);
    LogComplex ex_layer = shell_norm_sq(sol, FieldKind::Scattered, NormKind::Value, 1.0, z2, method, opt);
    LogComplex ex_far = shell_norm_sq(sol, FieldKind::Scattered, NormKind::Value, z2, R, method, opt);
    return {ratio_sqrt(in_core, in_core + in_layer), ratio_sqrt(ex_far, ex_layer + ex_far)};
}

LocalizationRatios localization_ratios(const ModalSolution2D& sol, const ShellRegion& region) {
    region.validate();
    auto r = localization_ratio_2d(sol, region.zeta1, region.zeta2, region.R);
    return {r.eta_u, r.eta_us};
}

LogComplex interior_gradient_bound(int n, double zeta1, const NondimensionalMedium& nm) {
    double ln = 2.0 * std::log(n) + 0.5 * std::log(1.0 - zeta1) - std::log(3.0) - (n + 2.0) * std::log(nm.tau) -
                std::log(nm.delta);
    return from_log(ln);
}

LogComplex exterior_gradient_bound(int n, double zeta2, const NondimensionalMedium& nm) {
    double ln = std::log(n) + std::log(nm.k) + 0.5 * std::log(10.0 * (zeta2 - 1.0)) - std::log(3.0) -
                0.5 * std::log(3.0 * zeta2) - 1.5 * std::log(nm.lame_sum()) - (n - 1.0) * std::log(nm.tau);
    return from_log(ln);
}

ResonanceRatios resonance_ratios(const ModalSolution3D& sol, const ShellRegion& region, ShellMethod method,
                                 const ShellOptions& opt) {
    region.validate();
    const int n = sol.incident.n;
    LogComplex inc = shell_norm(sol, FieldKind::Incident, NormKind::Value, 0.0, 1.0, method, opt);
    LogComplex gu = shell_norm(sol, FieldKind::Interior, NormKind::Gradient, region.zeta1, 1.0, method, opt);
    LogComplex gs = shell_norm(sol, FieldKind::Scattered, NormKind::Gradient, 1.0, region.zeta2, method, opt);
    ResonanceRatios rr;
    rr.grad_ratio_u = gu / inc;
    rr.grad_ratio_us = gs / inc;
    rr.bound_u = interior_gradient_bound(n, region.zeta1, sol.medium);
    rr.bound_us = exterior_gradient_bound(n, region.zeta2, sol.medium);
    return rr;
}

StressEnergies stress_energies(const ModalSolution3D& sol, const ShellRegion& region, ShellMethod method,
                               const ShellOptions& opt) {
    region.validate();
    StressEnergies e = method == ShellMethod::ModalClosedForm ? modal_energies(sol, 1.0, region.zeta2, opt)
                                                              : quadrature_energies(sol, 1.0, region.zeta2, opt);
    LogComplex sum = e.E_us + e.E_ui + e.Rest;
    e.identity_residual = e.E_u.is_zero() ? 0.0 : ((e.E_u - sum) / e.E_u).abs();
    return e;
}

PrintedEnergies printed_energy_forms(const ModalSolution3D& sol, double zeta2) {
    const int n = sol.incident.n;
    const auto& nm = sol.medium;
    const double lam = nm.lambda, mu = nm.mu, L = nm.lame_sum();
    const double lk = std::log(nm.k), lt = std::log(nm.tau), lL = std::log(L), ln = std::log(n);
    const double l2n1 = std::log(2.0 * n + 1.0);
    const double ldf_2n1 = log_double_factorial(2 * n + 1);
    const double ldf_2nm1 = log_double_factorial(2 * n - 1);
    const double ldf_2nm3 = n >= 2 ? log_double_factorial(2 * n - 3) : 0.0;
    // ln(zeta2^{2n+1} - 1)
    const double lz = std::log(std::expm1((2.0 * n + 1.0) * std::log(zeta2)));
    LogComplex out = sol.output_factor();
    LogComplex fsum = sum_abs2(sol.incident.f) * out * out.conj();

    PrintedEnergies p;
    p.E_us = fsum * from_log(std::log(4.0 * kPi) + std::log(lam + 3.0 * mu) + 6.0 * ln + (2.0 * n + 2.0) * lk +
                             2.0 * lt + lz - 2.0 * ldf_2n1 - (n + 3.0) * lL - 3.0 * l2n1 -
                             (2.0 * n + 1.0) * std::log(zeta2));
    const double poly = 4.0 * n * n * n + (lam + 8.0) * n * n + (2.0 * mu + 5.0) * n + (mu + 1.0);
    p.E_ui = fsum * from_log(std::log(4.0 * kPi) + 2.0 * ln + 2.0 * n * (lk + lt) + lz + std::log(poly) -
                             3.0 * l2n1 - 2.0 * ldf_2nm1 - n * lL);
    const double c = lam * n * (n + 1.0) + 2.0 * mu * (n * n + n + 1.0);
    p.Rest = fsum * from_log(std::log(2.0) + 2.0 * ln + l2n1 + (2.0 * n + 2.0) * (lk + lt) + std::log(c) +
                             std::log(zeta2 - 1.0) - 3.0 * ldf_2n1 - ldf_2nm3 - (2.0 * n + 2.0) * lL);
    p.ratio_law = from_log(ln + 2.0 * n * (lt + std::log(zeta2)) + std::log(zeta2) - 2.0 * (lk + lt));
    return p;
}

LogComplex stress_lower_bound(int n, double zeta2, const NondimensionalMedium& nm) {
    if (n < 1 || !(zeta2 > 1.0)) throw std::invalid_argument("stress_lower_bound: need n >= 1 and zeta2 > 1");
    double ln = 2.0 * std::log(n) + std::log(zeta2 - 1.0) + 2.0 * std::log(nm.k) - std::log(27.0 * zeta2) -
                2.0 * std::log(nm.lame_sum()) - (2.0 * n - 2.0) * std::log(nm.tau);
    return from_log(ln);
}

Thresholds thresholds(double eta, double M, const ShellRegion& region, const NondimensionalMedium& nm) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("thresholds: eta must lie in (0, 1)");
    if (!(M > 1.0)) throw std::invalid_argument("thresholds: M must exceed 1");
    region.validate();
    const double z1 = region.zeta1, z2 = region.zeta2;
    const double lt = std::log(nm.tau), le = std::log(eta);
    const double L = nm.lame_sum();
    Thresholds t;
    t.n1 = 0.5 * (le / std::log(z1) - 3.0);
    t.n2 = 0.5 * (1.0 - le / std::log(z2));
    double x3 = -nm.tau * lt * std::sqrt(3.0 * M * nm.delta) / (2.0 * std::pow(1.0 - z1, 0.25));
    double x4 = -3.0 * std::sqrt(3.0 * z2) * lt * std::pow(L, 1.5) * M / (nm.k * nm.tau * std::sqrt(10.0 * (z2 - 1.0)));
    t.n3 = 2.0 / (-lt) * lambert_w0(x3);
    t.n4 = 1.0 / (-lt) * lambert_w0(x4);
    t.N1 = std::max(t.n1, t.n2);
    t.N2 = std::max(t.n3, t.n4);
    auto log_base = [](double x, double base) { return std::log(x) / std::log(base); };
    double a0 = log_base(eta / (z1 * z1 * z1), z1);
    t.M0 = a0 * a0 * std::sqrt(1.0 - z1) * std::pow(nm.tau, -0.5 * log_base(z1 * eta, z1)) / (12.0 * nm.delta);
    t.M1 = nm.k * log_base(z2 / eta, z2) * std::sqrt(10.0 * (z2 - 1.0) / (3.0 * z2)) *
           std::pow(nm.tau, 0.5 * log_base(z2 * eta, z2)) / (6.0 * std::pow(L, 1.5));
    return t;
}

std::string Phenomena::to_string() const {
    std::string s;
    auto add = [&s](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += "+";
        s += name;
    };
    add(BL, "BL");
    add(SR, "SR");
    add(QMR, "QMR");
    add(SC, "SC");
    return s.empty() ? "-" : s;
}

RegimeFlags classify_regime(int n, double M, const Thresholds& th) {
    RegimeFlags f;
    const double x = n;
    if (x >= th.N1) {
        f.interior.BL = f.scattered.BL = true;
        f.rows.push_back("n>=N1");
    }
    if (x > th.N2) {
        f.interior.SR = f.scattered.SR = true;
        f.rows.push_back("n>N2");
    }
    if (x > std::max(th.N1, th.N2)) {
        f.interior.QMR = f.scattered.QMR = true;
        f.rows.push_back("n>max(N1,N2)");
    }
    if (x > std::max(th.n2, th.n4)) {
        f.scattered.QMR = true;
        f.rows.push_back("n>max(n2,n4)");
    }
    if (x > std::max(th.n1, th.n3)) {
        f.interior.QMR = true;
        f.rows.push_back("n>max(n1,n3)");
    }
    if (x > th.n3 && M > th.M0) {
        f.interior.QMR = true;
        f.rows.push_back("n>n3,M>M0");
    }
    if (x > th.n4 && M > th.M1) {
        f.scattered.QMR = true;
        f.rows.push_back("n>n4,M>M1");
        // the stress-concentration theorem has the same hypotheses
        f.scattered.SC = f.exterior_total.SC = true;
        f.rows.push_back("M>M1,n>n4:SC");
    }
    return f;
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::ClosedForm: return "closed_form";
        case Provenance::Quadrature: return "quadrature";
        case Provenance::Both: return "both";
    }
    return "?";
}

DiagnosticsReport run_diagnostics(const ModalSolution3D& sol, const ShellRegion& region,
                                  const DiagnosticsOptions& opt) {
    region.validate();
    DiagnosticsReport rep;
    rep.n = sol.incident.n;
    rep.region = region;
    rep.eta = opt.eta;
    rep.M = opt.M;
    const auto& so = opt.shell;
    const auto modal = ShellMethod::ModalClosedForm;

    auto loc = localization_ratios(sol, region, modal, so);
    auto res = resonance_ratios(sol, region, modal, so);
    auto en = stress_energies(sol, region, modal, so);
    rep.eta_u = loc.eta_u;
    rep.eta_us = loc.eta_us;
    rep.grad_ratio_u = res.grad_ratio_u;
    rep.grad_ratio_us = res.grad_ratio_us;
    rep.bound_u = res.bound_u;
    rep.bound_us = res.bound_us;
    rep.E_u = en.E_u;
    rep.E_us = en.E_us;
    rep.E_ui = en.E_ui;
    rep.Rest = en.Rest;
    rep.identity_residual = en.identity_residual;
    rep.incident_norm_sq = shell_norm_sq(sol, FieldKind::Incident, NormKind::Value, 0.0, 1.0, modal, so);
    rep.printed = printed_energy_forms(sol, region.zeta2);
    rep.beta_bound = stress_lower_bound(rep.n, region.zeta2, sol.medium);
    rep.zeta2_tau_below_one = region.zeta2_tau_below_one(sol.medium);
    rep.thresholds = thresholds(opt.eta, opt.M, region, sol.medium);
    rep.regime_flags = classify_regime(rep.n, opt.M, rep.thresholds);

    for (const char* key : {"beta_bound", "bound_u", "bound_us", "thresholds", "E_us_printed", "E_ui_printed",
                            "Rest_printed"})
        rep.provenance[key] = {Provenance::ClosedForm, 0.0};
    const char* measured[] = {"eta_u", "eta_us", "grad_ratio_u", "grad_ratio_us", "E_u", "E_us", "E_ui", "Rest"};
    if (!opt.cross_check) {
        for (const char* key : measured) rep.provenance[key] = {Provenance::ClosedForm, 0.0};
        return rep;
    }
    const auto quad = ShellMethod::Quadrature;
    auto qloc = localization_ratios(sol, region, quad, so);
    auto qres = resonance_ratios(sol, region, quad, so);
    auto qen = stress_energies(sol, region, quad, so);
    auto rd = [](double a, double b) { return a == 0.0 && b == 0.0 ? 0.0 : std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
    rep.provenance["eta_u"] = {Provenance::Both, rd(loc.eta_u, qloc.eta_u)};
    rep.provenance["eta_us"] = {Provenance::Both, rd(loc.eta_us, qloc.eta_us)};
    rep.provenance["grad_ratio_u"] = {Provenance::Both, relative_difference(res.grad_ratio_u, qres.grad_ratio_u)};
    rep.provenance["grad_ratio_us"] = {Provenance::Both, relative_difference(res.grad_ratio_us, qres.grad_ratio_us)};
    rep.provenance["E_u"] = {Provenance::Both, relative_difference(en.E_u, qen.E_u)};
    rep.provenance["E_us"] = {Provenance::Both, relative_difference(en.E_us, qen.E_us)};
    rep.provenance["E_ui"] = {Provenance::Both, relative_difference(en.E_ui, qen.E_ui)};
    rep.provenance["Rest"] = {Provenance::Both, relative_difference(en.Rest, qen.Rest)};
    return rep;
}

}  // namespace bubblescat
