#include "bubblescat/solver2d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace bubblescat {

namespace {

const cplx kI(0.0, 1.0);
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Radial data of F(r) = Z_n(kappa r) per unit Z_n(kappa r): f0 = 1, f1 = r F'/F,
// f10 = f1 - f0 and f2 = r^2 F''/F, all written through q = Z_{n+1}/Z_n so that
// nothing cancels at small argument.
struct Kernel {
    LogComplex A;  // Z_n(kappa r)
    double z = 0.0;
    cplx f1, f10, f2;
};

Kernel kernel(CylKind kind, int n, double kappa, double r) {
    Kernel kr;
    kr.z = kappa * r;
    auto zn = cylindrical_bessel(kind, n, kr.z);
    auto zn1 = cylindrical_bessel(kind, n + 1, kr.z);
    kr.A = zn.value;
    cplx zq = kr.z * LogComplex::ratio(zn1.value, zn.value);
    const double nn = n;
    kr.f1 = nn - zq;
    kr.f10 = (nn - 1.0) - zq;
    kr.f2 = nn * (nn - 1.0) - kr.z * kr.z + zq;
    return kr;
}

// Polar displacement and gradient of grad(F e^{in theta}) + curl(G e^{in theta} z^)
// per unit scale, without the e^{in theta} factor.  cf and cg multiply the F and G
// kernels (native, relative to the common scale).
struct Polar {
    cplx ur, ut;           // u . r^, u . theta^
    cplx prr, prt, ptr, ptt;  // r^.(grad u)r^, r^.(grad u)theta^, theta^.(grad u)r^, theta^.(grad u)theta^
    cplx div;
};

Polar polar_fields(int n, double r, const Kernel* F, cplx cf, const Kernel* G, cplx cg) {
    Polar p{};
    const cplx in = kI * static_cast<double>(n);
    const double n2 = static_cast<double>(n) * n;
    const double r2 = r * r;
    if (F) {
        p.ur += cf * F->f1 / r;
        p.ut += cf * in / r;
        p.prr += cf * F->f2 / r2;
        p.ptr += cf * in * F->f10 / r2;
        p.prt += cf * in * F->f10 / r2;
        p.ptt += cf * (static_cast<double>(n) * (1.0 - n) - (static_cast<double>(n) - F->f1)) / r2;
        p.div += cf * (-F->z * F->z) / r2;
    }
    if (G) {
        cplx g2 = G->f2, g1 = G->f1, g10 = G->f10;
        p.ur += cg * in / r;
        p.ut += -cg * g1 / r;
        p.prr += cg * in * g10 / r2;
        p.ptr += -cg * g2 / r2;
        p.prt += cg * (-n2 + g1) / r2;
        p.ptt += -cg * in * g10 / r2;
    }
    return p;
}

ScaledVectorField2D to_cartesian(const LogComplex& scale, const Polar& p, double theta, int n) {
    ScaledVectorField2D f;
    f.scale = scale;
    if (scale.is_zero()) return f;
    const cplx e = std::polar(1.0, n * theta);
    const double c = std::cos(theta), s = std::sin(theta);
    const double R[2][2] = {{c, -s}, {s, c}};  // columns r^, theta^
    const cplx P[2][2] = {{p.prr, p.prt}, {p.ptr, p.ptt}};
    const cplx pu[2] = {p.ur, p.ut};
    for (int i = 0; i < 2; ++i) {
        f.u[i] = e * (R[i][0] * pu[0] + R[i][1] * pu[1]);
        for (int j = 0; j < 2; ++j) {
            cplx g = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) g += R[i][a] * P[a][b] * R[j][b];
            f.grad[i][j] = e * g;
        }
    }
    f.div = e * p.div;
    return f;
}

// Common scale of two LogComplex amplitudes and the native ratios to it.
struct Pair {
    LogComplex s;
    cplx x, y;
};
Pair common_scale(const LogComplex& x, const LogComplex& y) {
    Pair p;
    if (x.is_zero() && y.is_zero()) return p;
    p.s = (y.is_zero() || (!x.is_zero() && x.log10_magnitude() >= y.log10_magnitude())) ? x : y;
    p.x = x.is_zero() ? cplx(0.0) : LogComplex::ratio(x, p.s);
    p.y = y.is_zero() ? cplx(0.0) : LogComplex::ratio(y, p.s);
    return p;
}

double polar_radius(const Vec2& x) { return std::hypot(x[0], x[1]); }

// Gauss elimination with scaled partial pivoting on a row- and column-balanced copy.
struct Solve3 {
    std::array<cplx, 3> x{};
    double cond = 0.0;
    double residual = 0.0;
};

Solve3 solve_balanced(std::array<std::array<cplx, 3>, 3> M, std::array<cplx, 3> rhs) {
    auto pow2 = [](double v) {
        int e = 0;
        std::frexp(v, &e);
        return std::ldexp(1.0, -e);
    };
    std::array<double, 3> rs{}, cs{};
    for (int i = 0; i < 3; ++i) {
        double m = 0.0;
        for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(M[i][j]));
        if (m == 0.0) throw NearResonanceError("solve_modes_2d: zero row", HUGE_VAL);
        rs[i] = pow2(m);
        for (int j = 0; j < 3; ++j) M[i][j] *= rs[i];
        rhs[i] *= rs[i];
    }
    for (int j = 0; j < 3; ++j) {
        double m = 0.0;
        for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(M[i][j]));
        if (m == 0.0) throw NearResonanceError("solve_modes_2d: zero column", HUGE_VAL);
        cs[j] = pow2(m);
        for (int i = 0; i < 3; ++i) M[i][j] *= cs[j];
    }
    const auto B = M;

    std::array<int, 3> perm{0, 1, 2};
    std::array<double, 3> scale{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale[i] = std::max(scale[i], std::abs(M[i][j]));
    auto LU = M;
    for (int k = 0; k < 3; ++k) {
        int best = k;
        double bv = -1.0;
        for (int i = k; i < 3; ++i) {
            double v = std::abs(LU[perm[i]][k]) / scale[perm[i]];
            if (v > bv) {
                bv = v;
                best = i;
            }
        }
        std::swap(perm[k], perm[best]);
        cplx piv = LU[perm[k]][k];
        if (piv == cplx(0.0)) throw NearResonanceError("solve_modes_2d: singular transmission system", HUGE_VAL);
        for (int i = k + 1; i < 3; ++i) {
            cplx l = LU[perm[i]][k] / piv;
            LU[perm[i]][k] = l;
            for (int j = k + 1; j < 3; ++j) LU[perm[i]][j] -= l * LU[perm[k]][j];
        }
    }
    auto lu_solve = [&](std::array<cplx, 3> b) {
        std::array<cplx, 3> y{}, x{};
        for (int i = 0; i < 3; ++i) {
            y[i] = b[perm[i]];
            for (int j = 0; j < i; ++j) y[i] -= LU[perm[i]][j] * y[j];
        }
        for (int i = 2; i >= 0; --i) {
            x[i] = y[i];
            for (int j = i + 1; j < 3; ++j) x[i] -= LU[perm[i]][j] * x[j];
            x[i] /= LU[perm[i]][i];
        }
        return x;
    };

    double norm_b = 0.0, norm_inv = 0.0;
    for (int j = 0; j < 3; ++j) {
        double cb = 0.0, ci = 0.0;
        std::array<cplx, 3> e{};
        e[j] = 1.0;
        auto col = lu_solve(e);
        for (int i = 0; i < 3; ++i) {
            cb += std::abs(B[i][j]);
            ci += std::abs(col[i]);
        }
        norm_b = std::max(norm_b, cb);
        norm_inv = std::max(norm_inv, ci);
    }
    Solve3 out;
    out.cond = norm_b * norm_inv;

    auto y = lu_solve(rhs);
    double res = 0.0, ref = 0.0;
    for (int i = 0; i < 3; ++i) {
        cplx r = -rhs[i];
        double row = std::abs(rhs[i]);
        for (int j = 0; j < 3; ++j) {
            r += B[i][j] * y[j];
            row += std::abs(B[i][j] * y[j]);
        }
        res = std::max(res, std::abs(r));
        ref = std::max(ref, row);
    }
    out.residual = ref > 0.0 ? res / ref : 0.0;
    for (int j = 0; j < 3; ++j) out.x[j] = y[j] * cs[j];
    if (!std::isfinite(out.cond) || out.cond > 1e13)
        throw NearResonanceError("solve_modes_2d: transmission system near resonance", out.cond);
    return out;
}

// Positive integrals kept in log scale.
LogComplex gauss_panels(double a, double b, int nodes, double max_ratio,
                        const std::function<LogComplex(double)>& g) {
    LogComplex sum;
    std::vector<double> edges{a};
    if (a > 0.0) {
        int panels = std::max(1, static_cast<int>(std::ceil(std::log(b / a) / std::log(max_ratio))));
        double q = std::pow(b / a, 1.0 / panels);
        for (int p = 1; p < panels; ++p) edges.push_back(a * std::pow(q, p));
    }
    edges.push_back(b);
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        auto rule = gauss_legendre(nodes, edges[p], edges[p + 1]);
        for (size_t i = 0; i < rule.x.size(); ++i) sum += LogComplex(rule.w[i]) * g(rule.x[i]);
    }
    return sum;
}

LogComplex abs2(const LogComplex& z) { return z * z.conj(); }

LogComplex incident_norm_quadrature(const IncidentSpec2D& spec, const NondimensionalMedium& nm) {
    const int n = spec.n;
    const double n2 = static_cast<double>(n) * n;
    auto g = [&](double r) {
        Kernel K = kernel(CylKind::J, n, nm.k_p, r);
        return abs2(K.A) * LogComplex((std::norm(K.f1) + n2) / r);
    };
    LogComplex q = gauss_panels(0.0, 1.0, std::max(32, n + 16), 2.0, g);
    return LogComplex::from_exp(0.5 * (abs2(LogComplex(spec.amplitude)) * LogComplex(kTwoPi) * q).ln_magnitude());
}

}  // namespace

void IncidentSpec2D::validate() const {
    if (n < 1) throw DomainError("IncidentSpec2D: n must be >= 1");
    if (amplitude == cplx(0.0)) throw DomainError("IncidentSpec2D: amplitude must be nonzero");
}

LogComplex ModalSolution2D::output_factor() const {
    if (!incident.normalized) return LogComplex(1.0);
    return LogComplex(1.0) / incident_norm;
}

ModalSolution2D solve_modes_2d(const IncidentSpec2D& spec, const NondimensionalMedium& nm) {
    spec.validate();
    const int n = spec.n;
    const double k = nm.k, kp = nm.k_p, ks = nm.k_s, lam = nm.lambda, mu = nm.mu;
    const double dt2 = nm.delta * nm.tau * nm.tau;
    const cplx in = kI * static_cast<double>(n);
    const double n2 = static_cast<double>(n) * n;

    Kernel Ji = kernel(CylKind::J, n, kp, 1.0);
    Kernel Jk = kernel(CylKind::J, n, k, 1.0);
    Kernel Hp = kernel(CylKind::H1, n, kp, 1.0);
    Kernel Hs = kernel(CylKind::H1, n, ks, 1.0);

    // Columns: a J_n(k), b H_n(k_p), c H_n(k_s); rows: normal displacement,
    // normal traction, tangential traction at r = 1.
    auto sigma_rr = [&](const Kernel& F) { return -lam * F.z * F.z + 2.0 * mu * F.f2; };
    auto sigma_rt_p = [&](const Kernel& F) { return 2.0 * mu * in * F.f10; };
    auto sigma_rt_s = [&](const Kernel& G) { return mu * (-n2 + G.f1 - G.f2); };

    std::array<std::array<cplx, 3>, 3> M{};
    M[0] = {-Jk.f1 / (k * k), Hp.f1, in};
    M[1] = {cplx(dt2), sigma_rr(Hp), 2.0 * mu * in * Hs.f10};
    M[2] = {cplx(0.0), sigma_rt_p(Hp), sigma_rt_s(Hs)};
    std::array<cplx, 3> rhs = {-Ji.f1, -sigma_rr(Ji), -sigma_rt_p(Ji)};

    Solve3 s = solve_balanced(M, rhs);

    ModalSolution2D sol;
    sol.incident = spec;
    sol.medium = nm;
    LogComplex S = LogComplex(spec.amplitude) * Ji.A;
    sol.a = S * LogComplex(s.x[0]) / Jk.A;
    sol.b = S * LogComplex(s.x[1]) / Hp.A;
    sol.c = S * LogComplex(s.x[2]) / Hs.A;
    sol.condition_number = s.cond;
    sol.system_residual = s.residual;
    sol.incident_norm = incident_norm_quadrature(spec, nm);
    return sol;
}

Vec2c ScaledVectorField2D::value() const {
    cplx s = scale.value();
    return {s * u[0], s * u[1]};
}

Mat2c ScaledVectorField2D::gradient() const {
    cplx s = scale.value();
    Mat2c g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g[i][j] = s * grad[i][j];
    return g;
}

ScaledVectorField2D& ScaledVectorField2D::operator+=(const ScaledVectorField2D& o) {
    if (o.scale.is_zero()) return *this;
    if (scale.is_zero()) return *this = o;
    Pair p = common_scale(scale, o.scale);
    for (int i = 0; i < 2; ++i) {
        u[i] = p.x * u[i] + p.y * o.u[i];
        for (int j = 0; j < 2; ++j) grad[i][j] = p.x * grad[i][j] + p.y * o.grad[i][j];
    }
    div = p.x * div + p.y * o.div;
    scale = p.s;
    return *this;
}

ScaledVectorField2D eval_incident_2d(const ModalSolution2D& sol, const Vec2& x) {
    const double r = polar_radius(x);
    if (r == 0.0) throw DomainError("eval_incident_2d: origin not supported");
    const int n = sol.incident.n;
    Kernel F = kernel(CylKind::J, n, sol.medium.k_p, r);
    Polar p = polar_fields(n, r, &F, 1.0, nullptr, 0.0);
    return to_cartesian(LogComplex(sol.incident.amplitude) * F.A * sol.output_factor(), p, std::atan2(x[1], x[0]), n);
}

ScaledScalarField2D eval_interior_2d(const ModalSolution2D& sol, const Vec2& x) {
    const double r = polar_radius(x);
    if (r > 1.0 + 1e-12) throw DomainError("eval_interior_2d: point outside the unit disk");
    if (r == 0.0) throw DomainError("eval_interior_2d: origin not supported");
    const int n = sol.incident.n;
    const double th = std::atan2(x[1], x[0]);
    Kernel K = kernel(CylKind::J, n, sol.medium.k, r);
    ScaledScalarField2D f;
    f.scale = sol.a * K.A * sol.output_factor();
    const cplx e = std::polar(1.0, n * th);
    const cplx dr = K.f1 / r, dt = kI * static_cast<double>(n) / r;
    const double c = std::cos(th), s = std::sin(th);
    f.u = e;
    f.grad = {e * (c * dr - s * dt), e * (s * dr + c * dt)};
    return f;
}

ScaledVectorField2D eval_scattered_2d(const ModalSolution2D& sol, const Vec2& x, ScatteredPart part) {
    const double r = std::max(polar_radius(x), 1.0);
    if (polar_radius(x) < 1.0 - 1e-12) throw DomainError("eval_scattered_2d: point inside the unit disk");
    const int n = sol.incident.n;
    Kernel F = kernel(CylKind::H1, n, sol.medium.k_p, r);
    Kernel G = kernel(CylKind::H1, n, sol.medium.k_s, r);
    LogComplex bF = part == ScatteredPart::Shear ? LogComplex() : sol.b * F.A;
    LogComplex cG = part == ScatteredPart::Compressional ? LogComplex() : sol.c * G.A;
    Pair p = common_scale(bF, cG);
    Polar pf = polar_fields(n, r, &F, p.x, &G, p.y);
    return to_cartesian(p.s * sol.output_factor(), pf, std::atan2(x[1], x[0]), n);
}

Fields2D eval_fields_2d(const ModalSolution2D& sol, const Vec2& x) {
    Fields2D f;
    const double r = polar_radius(x);
    f.incident = eval_incident_2d(sol, x);
    if (r < 1.0) {
        f.interior = eval_interior_2d(sol, x);
        return f;
    }
    f.exterior = true;
    f.scattered = eval_scattered_2d(sol, x);
    f.total = f.scattered;
    f.total += f.incident;
    f.stress_density = stress_density_2d(f.total, sol.medium);
    return f;
}

LogComplex stress_density_2d(const ScaledVectorField2D& f, const NondimensionalMedium& nm) {
    if (f.scale.is_zero()) return LogComplex();
    double v = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx sig = nm.mu * (f.grad[i][j] + f.grad[j][i]) + (i == j ? nm.lambda * f.div : cplx(0.0));
            v += (sig * std::conj(f.grad[i][j])).real();
        }
    return LogComplex(v) * abs2(f.scale);
}

LogComplex interior_norm_sq_2d(const ModalSolution2D& sol, double a, double b, int nodes_per_panel) {
    if (!(0.0 <= a && a < b && b <= 1.0)) throw DomainError("interior_norm_sq_2d: need 0 <= a < b <= 1");
    const int n = sol.incident.n;
    auto g = [&](double r) {
        Kernel K = kernel(CylKind::J, n, sol.medium.k, r);
        return abs2(K.A) * LogComplex(r);
    };
    LogComplex q = gauss_panels(a, b, std::max(nodes_per_panel, n + 16), 2.0, g);
    return q * abs2(sol.a * sol.output_factor()) * LogComplex(kTwoPi);
}

LogComplex scattered_norm_sq_2d(const ModalSolution2D& sol, double a, double b, int nodes_per_panel) {
    if (!(1.0 <= a && a < b)) throw DomainError("scattered_norm_sq_2d: need 1 <= a < b");
    const int n = sol.incident.n;
    auto g = [&](double r) {
        Kernel F = kernel(CylKind::H1, n, sol.medium.k_p, r);
        Kernel G = kernel(CylKind::H1, n, sol.medium.k_s, r);
        Pair p = common_scale(sol.b * F.A, sol.c * G.A);
        Polar pf = polar_fields(n, r, &F, p.x, &G, p.y);
        return abs2(p.s) * LogComplex((std::norm(pf.ur) + std::norm(pf.ut)) * r);
    };
    // (2n + 1) log(ratio) <= 2 keeps each panel's decay within e^2.
    double ratio = std::exp(2.0 / (2.0 * n + 1.0));
    LogComplex q = gauss_panels(a, b, nodes_per_panel, ratio, g);
    return q * abs2(sol.output_factor()) * LogComplex(kTwoPi);
}

LocalizationRatios2D localization_ratio_2d(const ModalSolution2D& sol, double zeta1, double zeta2, double R,
                                           int nodes_per_panel) {
    if (!(0.0 < zeta1 && zeta1 < 1.0 && 1.0 < zeta2 && zeta2 < R))
        throw DomainError("localization_ratio_2d: need 0 < zeta1 < 1 < zeta2 < R");
    LocalizationRatios2D out;
    LogComplex in_part = interior_norm_sq_2d(sol, 0.0, zeta1, nodes_per_panel);
    LogComplex in_all = in_part + interior_norm_sq_2d(sol, zeta1, 1.0, nodes_per_panel);
    LogComplex ex_part = scattered_norm_sq_2d(sol, zeta2, R, nodes_per_panel);
    LogComplex ex_all = ex_part + scattered_norm_sq_2d(sol, 1.0, zeta2, nodes_per_panel);
    out.eta_u = std::sqrt(std::abs(LogComplex::ratio(in_part, in_all)));
    out.eta_us = std::sqrt(std::abs(LogComplex::ratio(ex_part, ex_all)));
    return out;
}

}  // namespace bubblescat
