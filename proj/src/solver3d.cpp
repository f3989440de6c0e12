#include "bubblescat/solver3d.hpp"

#include <cmath>
#include <stdexcept>

#include "bubblescat/spectra.hpp"

namespace bubblescat {

namespace {

const cplx kI(0.0, 1.0);

int sign_m(int m) { return (m < 0 && (m % 2 != 0)) ? -1 : 1; }

// Coefficients over Y_{l-1}^{m'} of d/dx, d/dy, d/dz applied to sum_m c_m r^l Y_l^m.
std::array<std::vector<cplx>, 3> ladder(int l, const std::vector<cplx>& c) {
    std::array<std::vector<cplx>, 3> out;
    if (l == 0) return out;
    size_t sz = 2 * static_cast<size_t>(l) - 1;
    std::vector<cplx> dp(sz, 0.0), dm(sz, 0.0), dz(sz, 0.0);
    double f2 = (2.0 * l + 1.0) / (2.0 * l - 1.0);
    auto idx = [l](int m) { return static_cast<size_t>(m + l - 1); };
    for (int m = -l; m <= l; ++m) {
        cplx cm = c[static_cast<size_t>(m + l)];
        if (cm == cplx(0.0)) continue;
        if (std::abs(m) <= l - 1) dz[idx(m)] += std::sqrt(f2 * (l - m) * (l + m)) * cm;
        if (std::abs(m + 1) <= l - 1)
            dp[idx(m + 1)] += static_cast<double>(sign_m(m) * sign_m(m + 1)) *
                              std::sqrt(f2 * (l - m) * (l - m - 1)) * cm;
        if (std::abs(m - 1) <= l - 1)
            dm[idx(m - 1)] -= static_cast<double>(sign_m(m) * sign_m(m - 1)) *
                              std::sqrt(f2 * (l + m) * (l + m - 1)) * cm;
    }
    out[0].resize(sz);
    out[1].resize(sz);
    for (size_t i = 0; i < sz; ++i) {
        out[0][i] = 0.5 * (dp[i] + dm[i]);
        out[1][i] = -0.5 * kI * (dp[i] - dm[i]);
    }
    out[2] = std::move(dz);
    return out;
}

cplx dot(const std::vector<cplx>& c, const std::vector<cplx>& y) {
    cplx s = 0.0;
    for (size_t i = 0; i < c.size() && i < y.size(); ++i) s += c[i] * y[i];
    return s;
}

// Scale choice: F if nonzero, otherwise F'.  Returns (scale, F/s, F'/s, F''/s).
struct Ratios {
    LogComplex s;
    cplx a, b, c, t, h;
};
Ratios ratios(const RadialTriple& t) {
    Ratios q;
    q.s = !t.F.is_zero() ? t.F : t.dF;
    if (q.s.is_zero()) return q;
    q.a = LogComplex::ratio(t.F, q.s);
    q.b = LogComplex::ratio(t.dF, q.s);
    q.c = t.d2F.is_zero() ? cplx(0.0) : LogComplex::ratio(t.d2F, q.s);
    q.t = t.tan.is_zero() ? cplx(0.0) : LogComplex::ratio(t.tan, q.s);
    q.h = t.hess.is_zero() ? cplx(0.0) : LogComplex::ratio(t.hess, q.s);
    return q;
}

// F(r) Y r^
ScaledVectorField kernel_profile(int n, const Ratios& q, double r, const AngularData3D& ad) {
    ScaledVectorField f;
    f.scale = q.s;
    if (q.s.is_zero()) return f;
    const Vec3& e = ad.rhat;
    Vec3c gs;
    for (int i = 0; i < 3; ++i) gs[i] = ad.V[i] - static_cast<double>(n) * ad.Y * e[i];
    for (int i = 0; i < 3; ++i) {
        f.u[i] = q.a * ad.Y * e[i];
        for (int j = 0; j < 3; ++j) {
            double pt = (i == j ? 1.0 : 0.0) - e[i] * e[j];
            f.grad[i][j] = q.b * ad.Y * e[i] * e[j] + q.a / r * e[i] * gs[j] + q.a * ad.Y / r * pt;
        }
    }
    f.div = q.b * ad.Y + 2.0 * q.a * ad.Y / r;
    return f;
}

// F(r) V(x^), V = I_{n-1} combination
ScaledVectorField kernel_I(int n, const Ratios& q, double r, const AngularData3D& ad) {
    ScaledVectorField f;
    f.scale = q.s;
    if (q.s.is_zero()) return f;
    cplx g = q.b + (1.0 - n) * q.a / r;
    for (int i = 0; i < 3; ++i) {
        f.u[i] = q.a * ad.V[i];
        for (int j = 0; j < 3; ++j) f.grad[i][j] = q.a / r * ad.W[i][j] + ad.V[i] * ad.rhat[j] * g;
    }
    f.div = static_cast<double>(n) * ad.Y * g;
    return f;
}

// F(r) N(x^), N = -V + (2n+1) Y r^ (the N_{n+1} combination)
ScaledVectorField kernel_N(int n, const Ratios& q, double r, const AngularData3D& ad) {
    ScaledVectorField f;
    f.scale = q.s;
    if (q.s.is_zero()) return f;
    const Vec3& e = ad.rhat;
    const double t = 2.0 * n + 1.0;
    Vec3c N;
    for (int i = 0; i < 3; ++i) N[i] = -ad.V[i] + t * ad.Y * e[i];
    cplx g = q.b + (n + 2.0) * q.a / r;
    for (int i = 0; i < 3; ++i) {
        f.u[i] = q.a * N[i];
        for (int j = 0; j < 3; ++j) {
            double pt = (i == j ? 1.0 : 0.0) - e[i] * e[j];
            cplx M = t * (2.0 * n + 2.0) * ad.Y * e[i] * e[j] - t * ad.Y * pt - t * (e[i] * ad.V[j] + ad.V[i] * e[j]) +
                     ad.W[i][j];
            f.grad[i][j] = -q.a / r * M + N[i] * e[j] * g;
        }
    }
    f.div = (n + 1.0) * ad.Y * g;
    return f;
}

// grad(F(r) Y); rr and tt come from the cancellation-free radial forms
ScaledVectorField kernel_grad(int n, const Ratios& q, double r, const AngularData3D& ad) {
    ScaledVectorField f;
    f.scale = q.s;
    if (q.s.is_zero()) return f;
    const Vec3& e = ad.rhat;
    const double nn = n;
    cplx rr = q.h;
    cplx tt = q.t / r;
    for (int i = 0; i < 3; ++i) {
        f.u[i] = q.b * ad.Y * e[i] + q.a / r * (ad.V[i] - nn * ad.Y * e[i]);
        for (int j = 0; j < 3; ++j) {
            double pt = (i == j ? 1.0 : 0.0) - e[i] * e[j];
            f.grad[i][j] = rr * ad.Y * e[i] * e[j] + tt * ad.Y * pt + tt * (e[i] * ad.V[j] + ad.V[i] * e[j]) +
                           q.a / (r * r) * ad.W[i][j];
        }
    }
    f.div = (rr + (2.0 * nn + 2.0) * tt) * ad.Y;
    return f;
}

LogComplex sum_abs2(const std::vector<cplx>& f) {
    double s = 0.0;
    for (cplx v : f) s += std::norm(v);
    return LogComplex(s);
}

struct Spherical {
    double r, theta, phi;
};
Spherical to_spherical(const Vec3& x) {
    double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r == 0.0) return {0.0, 0.0, 0.0};
    double c = std::clamp(x[2] / r, -1.0, 1.0);
    return {r, std::acos(c), std::atan2(x[1], x[0])};
}

// j_n''(z) from j_n and j_n'.
LogComplex second_derivative(int n, double z, const ValueDeriv& v) {
    return LogComplex(-2.0 / z) * v.derivative - LogComplex(1.0 - n * (n + 1.0) / (z * z)) * v.value;
}

RadialTriple scaled(const RadialTriple& t, const LogComplex& c) {
    return {t.F * c, t.dF * c, t.d2F * c, t.tan * c, t.hess * c};
}

}  // namespace

Vec3c ScaledVectorField::value() const {
    Vec3c v{};
    if (scale.is_zero()) return v;
    for (int i = 0; i < 3; ++i) v[i] = (scale * LogComplex(u[i])).value();
    return v;
}

Mat3c ScaledVectorField::gradient() const {
    Mat3c g{};
    if (scale.is_zero()) return g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g[i][j] = (scale * LogComplex(grad[i][j])).value();
    return g;
}

ScaledVectorField& ScaledVectorField::operator+=(const ScaledVectorField& o) {
    if (o.scale.is_zero()) return *this;
    if (scale.is_zero()) return *this = o;
    cplx ra, rb;
    LogComplex s;
    if (o.scale.ln_magnitude() > scale.ln_magnitude()) {
        s = o.scale;
        ra = LogComplex::ratio(scale, s);
        rb = 1.0;
    } else {
        s = scale;
        ra = 1.0;
        rb = LogComplex::ratio(o.scale, s);
    }
    for (int i = 0; i < 3; ++i) {
        u[i] = ra * u[i] + rb * o.u[i];
        for (int j = 0; j < 3; ++j) grad[i][j] = ra * grad[i][j] + rb * o.grad[i][j];
    }
    div = ra * div + rb * o.div;
    scale = s;
    return *this;
}

void IncidentSpec3D::validate() const {
    if (n < 1) throw DomainError("IncidentSpec3D: n must be >= 1");
    if (f.size() != 2 * static_cast<size_t>(n) + 1)
        throw DomainError("IncidentSpec3D: coefficient vector must have 2n+1 entries");
    bool any = false;
    for (cplx v : f) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw DomainError("IncidentSpec3D: non-finite coefficient");
        any = any || v != cplx(0.0);
    }
    if (!any && normalized) throw DomainError("IncidentSpec3D: zero coefficient vector cannot be normalized");
}

IncidentSpec3D IncidentSpec3D::single(int n, int m, cplx amplitude, bool normalized, IncidentForm form) {
    if (n < 1 || std::abs(m) > n) throw DomainError("IncidentSpec3D::single: need n >= 1, |m| <= n");
    IncidentSpec3D s;
    s.n = n;
    s.f.assign(2 * static_cast<size_t>(n) + 1, 0.0);
    s.f[static_cast<size_t>(m + n)] = amplitude;
    s.normalized = normalized;
    s.form = form;
    return s;
}

LogComplex ModalSolution3D::output_factor() const {
    if (incident.normalized && !incident_norm.is_zero()) return LogComplex(1.0) / incident_norm;
    return LogComplex(1.0);
}

namespace {

// Radial incident profile per unit f (before the output factor).
RadialTriple incident_profile(const IncidentSpec3D& spec, const NondimensionalMedium& nm, double r) {
    const int n = spec.n;
    const double kp = nm.k_p, z = kp * r;
    auto j = spherical_bessel_j(n, z);
    RadialTriple t;
    if (spec.form == IncidentForm::LayerHarmonic) {
        t.F = j.value;
        t.dF = LogComplex(kp) * j.derivative;
        t.d2F = z > 0 ? LogComplex(kp * kp) * second_derivative(n, z, j) : LogComplex();
    } else {
        t.F = j.value / LogComplex(kp);
        t.dF = j.derivative;
        if (z > 0) {
            // j_n' - n j_n / z = -j_{n+1},  j_n'' = (n(n-1)/z^2 - 1) j_n + 2 j_{n+1} / z
            LogComplex j1 = spherical_bessel_j(n + 1, z).value;
            LogComplex kp_c(kp);
            t.d2F = kp_c * (LogComplex(n * (n - 1.0) / (z * z) - 1.0) * j.value + LogComplex(2.0 / z) * j1);
            t.tan = -j1;
            t.hess = kp_c * (LogComplex(2.0 * n + 2.0) / LogComplex(z) * j1 - j.value);
        }
    }
    return t;
}

LogComplex incident_norm_quadrature(const IncidentSpec3D& spec, const NondimensionalMedium& nm) {
    const int n = spec.n;
    RadialTriple ref = incident_profile(spec, nm, 1.0);
    LogComplex s = ref.F;
    auto integral = [&](int order) {
        auto g = gauss_legendre(order, 0.0, 1.0);
        double acc = 0.0;
        for (size_t i = 0; i < g.x.size(); ++i) {
            double r = g.x[i];
            auto t = incident_profile(spec, nm, r);
            double a = std::norm(LogComplex::ratio(t.F, s));
            if (spec.form == IncidentForm::LayerHarmonic) {
                acc += g.w[i] * a * r * r * n * (2.0 * n + 1.0);
            } else {
                double b = std::norm(LogComplex::ratio(t.dF, s));
                acc += g.w[i] * (b * r * r + n * (n + 1.0) * a);
            }
        }
        return acc;
    };
    int order = 64;
    double prev = integral(order);
    for (int it = 0; it < 6; ++it) {
        order *= 2;
        double cur = integral(order);
        bool done = std::abs(cur - prev) <= 1e-13 * std::abs(cur);
        prev = cur;
        if (done) break;
    }
    LogComplex norm_sq = sum_abs2(spec.f) * LogComplex(prev) * s * s.conj();
    return LogComplex::from_exp(0.5 * norm_sq.ln_magnitude());
}

}  // namespace

LogComplex incident_norm_sq_leading(const IncidentSpec3D& spec, const NondimensionalMedium& nm) {
    const int n = spec.n;
    double lg = 2.0 * n * std::log(nm.k * nm.tau) - std::log(2.0 * n + 3.0) - 2.0 * log_double_factorial(2L * n + 1) -
                n * std::log(nm.lame_sum());
    return sum_abs2(spec.f) * LogComplex(n * (2.0 * n + 1.0)) * LogComplex::from_exp(lg);
}

ModalSolution3D solve_modes(const IncidentSpec3D& spec, const NondimensionalMedium& nm) {
    spec.validate();
    const int n = spec.n;
    const double k = nm.k, kp = nm.k_p, L = nm.lame_sum(), lam = nm.lambda, mu = nm.mu;
    const double dt2 = nm.delta * nm.tau * nm.tau;
    ModalSolution3D sol;
    sol.incident = spec;
    sol.medium = nm;

    auto jp = spherical_bessel_j(n, kp);
    if (spec.form == IncidentForm::LayerHarmonic) {
        sol.incident_normal_trace = LogComplex(static_cast<double>(n)) * jp.value;
        sol.incident_traction_trace = LogComplex(L * n * kp) * jp.derivative +
                                      LogComplex(lam * n * (1.0 - n)) * jp.value;
    } else {
        sol.incident_normal_trace = jp.derivative;
        sol.incident_traction_trace = LogComplex(-lam * kp) * jp.value +
                                      LogComplex(2.0 * mu * kp) * second_derivative(n, kp, jp);
    }

    auto md = modal_determinant(n, nm);
    sol.determinant = md.D;
    sol.near_singular = md.near_singular;
    if (md.D.is_zero()) throw std::runtime_error("solve_modes: singular modal system (D_n = 0)");

    auto jk = spherical_bessel_j(n, k);
    auto hk = spherical_hankel_h1(n, k);
    LogComplex alpha(alpha_n(n, nm)), beta(beta_n(n, nm));
    LogComplex num = LogComplex(dt2 * k * k) * sol.incident_normal_trace * jk.value +
                     LogComplex(k) * sol.incident_traction_trace * jk.derivative;
    sol.phi_e_ratio = -(num / md.D);
    sol.phi_b_ratio = LogComplex(kI) * (sol.incident_normal_trace + alpha * sol.phi_e_ratio) /
                      (jk.derivative * hk.value);
    sol.phi_b_printed_ratio = beta * sol.phi_e_ratio / (LogComplex(kI * dt2 * k) * jk.value * hk.value) -
                              LogComplex(static_cast<double>(n)) * jp.value;

    for (cplx fm : spec.f) {
        sol.phi_e.push_back(sol.phi_e_ratio * LogComplex(fm));
        sol.phi_b.push_back(sol.phi_b_ratio * LogComplex(fm));
    }
    bool any = false;
    for (cplx fm : spec.f) any = any || fm != cplx(0.0);
    sol.incident_norm = any ? incident_norm_quadrature(spec, nm) : LogComplex();
    return sol;
}

LayerRadial exterior_layer_radial(int n, const NondimensionalMedium& nm, double r) {
    auto c = elastic_layer_coeffs_exterior(n, nm, r);
    LogComplex inv_t(1.0 / (2.0 * n + 1.0));
    LayerRadial lr;
    lr.cI = (c.value.c_1n + c.value.c_2n) * inv_t;
    lr.dcI = (c.dr.c_1n + c.dr.c_2n) * inv_t;
    lr.dN = (c.value.d_1n + c.value.d_2n) * inv_t;
    lr.ddN = (c.dr.d_1n + c.dr.d_2n) * inv_t;
    return lr;
}

AngularData3D angular_data(const ModalSolution3D& sol, double theta, double phi) {
    const int n = sol.incident.n;
    const auto& f = sol.incident.f;
    AngularData3D ad;
    auto fr = spherical_frame(theta, phi);
    ad.rhat = fr.r;
    auto yn = spherical_harmonics_all(n, theta, phi);
    ad.Y = dot(f, yn);
    auto d1 = ladder(n, f);
    auto ym = spherical_harmonics_all(n - 1, theta, phi);
    for (int i = 0; i < 3; ++i) ad.V[i] = dot(d1[i], ym);
    if (n >= 2) {
        auto ymm = spherical_harmonics_all(n - 2, theta, phi);
        for (int i = 0; i < 3; ++i) {
            auto d2 = ladder(n - 1, d1[i]);
            for (int j = 0; j < 3; ++j) ad.W[i][j] = dot(d2[j], ymm);
        }
    }
    return ad;
}

RadialData3D radial_data(const ModalSolution3D& sol, double r, bool exterior) {
    const int n = sol.incident.n;
    const auto& nm = sol.medium;
    LogComplex out = sol.output_factor();
    RadialData3D rd;
    rd.r = r;
    rd.incident = scaled(incident_profile(sol.incident, nm, r), out);
    if (!exterior || r <= 1.0) {
        const double k = nm.k;
        auto j = spherical_bessel_j(n, k * r);
        auto h = spherical_hankel_h1(n, k).value;
        LogComplex c = LogComplex(-kI * k) * h * sol.phi_b_ratio * out;
        rd.interior.F = c * j.value;
        rd.interior.dF = c * LogComplex(k) * j.derivative;
        rd.interior.d2F = k * r > 0 ? c * LogComplex(k * k) * second_derivative(n, k * r, j) : LogComplex();
    }
    if (exterior || r >= 1.0) {
        const double kp = nm.k_p, L = nm.lame_sum();
        auto h = spherical_hankel_h1(n, kp * r);
        LogComplex c = LogComplex(-kI * kp * kp / L) * spherical_bessel_j(n, kp).value * sol.phi_e_ratio * out;
        rd.profile.F = c * h.value;
        rd.profile.dF = c * LogComplex(kp) * h.derivative;
        auto lr = exterior_layer_radial(n, nm, r);
        LogComplex e = sol.phi_e_ratio * out;
        rd.layer_I = {lr.cI * e, lr.dcI * e, LogComplex(), LogComplex(), LogComplex()};
        rd.layer_N = {lr.dN * e, lr.ddN * e, LogComplex(), LogComplex(), LogComplex()};
    }
    return rd;
}

ScaledVectorField combine_incident(const ModalSolution3D& sol, const RadialData3D& rd, const AngularData3D& ad) {
    const int n = sol.incident.n;
    Ratios q = ratios(rd.incident);
    if (sol.incident.form == IncidentForm::LayerHarmonic) return kernel_I(n, q, rd.r, ad);
    return kernel_grad(n, q, rd.r, ad);
}

ScaledScalarField combine_interior(const ModalSolution3D& sol, const RadialData3D& rd, const AngularData3D& ad) {
    const int n = sol.incident.n;
    Ratios q = ratios(rd.interior);
    ScaledScalarField f;
    f.scale = q.s;
    if (q.s.is_zero()) return f;
    const double r = rd.r;
    f.u = q.a * ad.Y;
    for (int i = 0; i < 3; ++i) f.grad[i] = (q.b - static_cast<double>(n) * q.a / r) * ad.Y * ad.rhat[i] + q.a / r * ad.V[i];
    f.laplacian = (q.c + 2.0 * q.b / r - n * (n + 1.0) * q.a / (r * r)) * ad.Y;
    return f;
}

ScaledVectorField combine_scattered(const ModalSolution3D& sol, const RadialData3D& rd, const AngularData3D& ad,
                                    ExteriorModel model) {
    const int n = sol.incident.n;
    if (model == ExteriorModel::RadialProfile) return kernel_profile(n, ratios(rd.profile), rd.r, ad);
    ScaledVectorField f = kernel_I(n, ratios(rd.layer_I), rd.r, ad);
    f += kernel_N(n, ratios(rd.layer_N), rd.r, ad);
    return f;
}

namespace {
// Points closer to the origin than this are moved onto the +z axis at this radius.
constexpr double kOriginGuard = 1e-12;

Spherical guarded(const Vec3& x) {
    Spherical s = to_spherical(x);
    if (s.r < kOriginGuard) return {kOriginGuard, 0.0, 0.0};
    return s;
}
}  // namespace

ScaledVectorField eval_incident(const ModalSolution3D& sol, const Vec3& x) {
    Spherical s = guarded(x);
    auto ad = angular_data(sol, s.theta, s.phi);
    RadialData3D rd;
    rd.r = s.r;
    rd.incident = scaled(incident_profile(sol.incident, sol.medium, s.r), sol.output_factor());
    return combine_incident(sol, rd, ad);
}

ScaledScalarField eval_interior(const ModalSolution3D& sol, const Vec3& x) {
    Spherical s = guarded(x);
    if (s.r > 1.0) throw DomainError("eval_interior: point outside the unit ball");
    auto ad = angular_data(sol, s.theta, s.phi);
    auto rd = radial_data(sol, s.r, false);
    return combine_interior(sol, rd, ad);
}

ScaledVectorField eval_exterior_scattered(const ModalSolution3D& sol, const Vec3& x, ExteriorModel model) {
    Spherical s = to_spherical(x);
    if (s.r < 1.0 - 1e-12) throw DomainError("eval_exterior_scattered: point inside the unit ball");
    s.r = std::max(s.r, 1.0);
    auto ad = angular_data(sol, s.theta, s.phi);
    auto rd = radial_data(sol, s.r, true);
    return combine_scattered(sol, rd, ad, model);
}

ScaledVectorField eval_total_exterior(const ModalSolution3D& sol, const Vec3& x, ExteriorModel model) {
    Spherical s = to_spherical(x);
    if (s.r < 1.0 - 1e-12) throw DomainError("eval_total_exterior: point inside the unit ball");
    s.r = std::max(s.r, 1.0);
    auto ad = angular_data(sol, s.theta, s.phi);
    auto rd = radial_data(sol, s.r, true);
    ScaledVectorField f = combine_scattered(sol, rd, ad, model);
    f += combine_incident(sol, rd, ad);
    return f;
}

BoundaryTrace3D boundary_trace(const ModalSolution3D& sol, double theta, double phi) {
    const int n = sol.incident.n;
    const auto& nm = sol.medium;
    cplx Y = dot(sol.incident.f, spherical_harmonics_all(n, theta, phi));
    LogComplex out = sol.output_factor();
    auto jk = spherical_bessel_j(n, nm.k);
    auto hk = spherical_hankel_h1(n, nm.k).value;
    LogComplex c = LogComplex(-kI * nm.k) * hk * sol.phi_b_ratio * out * LogComplex(Y);
    BoundaryTrace3D bt;
    bt.interior_u = (c * jk.value).value();
    bt.interior_dr = (c * LogComplex(nm.k) * jk.derivative).value();
    LogComplex a(alpha_n(n, nm)), b(beta_n(n, nm));
    bt.normal_displacement = ((sol.incident_normal_trace + a * sol.phi_e_ratio) * out * LogComplex(Y)).value();
    bt.normal_traction = ((sol.incident_traction_trace + b * sol.phi_e_ratio) * out * LogComplex(Y)).value();
    return bt;
}

namespace {
cplx sigma_contract(const Mat3c& ga, const Mat3c& gb, const NondimensionalMedium& nm, bool conjugate) {
    cplx tra = ga[0][0] + ga[1][1] + ga[2][2];
    cplx trb = gb[0][0] + gb[1][1] + gb[2][2];
    auto cj = [conjugate](cplx z) { return conjugate ? std::conj(z) : z; };
    cplx s = nm.lambda * tra * cj(trb);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += nm.mu * (ga[i][j] + ga[j][i]) * cj(gb[i][j]);
    return s;
}
}  // namespace

LogComplex stress_density(const ScaledVectorField& f, const NondimensionalMedium& nm) {
    if (f.scale.is_zero()) return LogComplex();
    double v = sigma_contract(f.grad, f.grad, nm, true).real();
    return LogComplex(v) * f.scale * f.scale.conj();
}

LogComplex stress_density_complex(const ScaledVectorField& f, const NondimensionalMedium& nm) {
    if (f.scale.is_zero()) return LogComplex();
    return LogComplex(sigma_contract(f.grad, f.grad, nm, false)) * f.scale * f.scale;
}

LogComplex stress_density_cross(const ScaledVectorField& a, const ScaledVectorField& b,
                                const NondimensionalMedium& nm) {
    if (a.scale.is_zero() || b.scale.is_zero()) return LogComplex();
    LogComplex ab = a.scale * b.scale.conj();
    LogComplex v = LogComplex(sigma_contract(a.grad, b.grad, nm, true)) * ab +
                   LogComplex(sigma_contract(b.grad, a.grad, nm, true)) * ab.conj();
    if (v.is_zero()) return v;
    return LogComplex::from_exp(v.ln_magnitude()) * LogComplex(std::cos(v.phase()));
}

}  // namespace bubblescat
