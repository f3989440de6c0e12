#include "bubblescat/kupradze.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bubblescat/spectra.hpp"

namespace bubblescat {

namespace {

const cplx kI(0.0, 1.0);
const double kFourPi = 4.0 * M_PI;

double norm(const Vec3& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

// Gamma = p1(r) I + p2(r) x x^T; assembles the tensor and its gradient from p1, p2
// and their r-derivatives.
KupradzeSample assemble(const Vec3& x, double r, cplx p1, cplx p2, cplx dp1, cplx dp2) {
    KupradzeSample s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.G[i][j] = (i == j ? p1 : 0.0) + p2 * x[i] * x[j];
    for (int k = 0; k < 3; ++k) {
        double ek = x[k] / r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx v = dp2 * ek * x[i] * x[j];
                if (i == j) v += dp1 * ek;
                if (i == k) v += p2 * x[j];
                if (j == k) v += p2 * x[i];
                s.dG[k][i][j] = v;
            }
    }
    return s;
}

}  // namespace

KupradzeSample kupradze_closed_form(const Vec3& x, const NondimensionalMedium& nm) {
    double r = norm(x);
    if (r == 0.0) throw DomainError("kupradze: singular at the origin");
    const double ks = nm.k_s, kp = nm.k_p, mu = nm.mu;
    const double w2 = nm.k * nm.tau * nm.k * nm.tau;
    // derivatives of g = e^{i k r}/r up to third order
    auto g = [r](double k, int order) {
        cplx e = std::exp(kI * k * r);
        switch (order) {
            case 0: return e / r;
            case 1: return e * (kI * k / r - 1.0 / (r * r));
            case 2: return e * (-k * k / r - 2.0 * kI * k / (r * r) + 2.0 / (r * r * r));
            default:
                return e * (-kI * k * k * k / r + 3.0 * k * k / (r * r) + 6.0 * kI * k / (r * r * r) -
                            6.0 / (r * r * r * r));
        }
    };
    cplx G1 = g(kp, 1) - g(ks, 1), G2 = g(kp, 2) - g(ks, 2), G3 = g(kp, 3) - g(ks, 3);
    // p1 = -g_s/(4 pi mu) + G'/(4 pi w2 r),  p2 = (G'' - G'/r)/(4 pi w2 r^2)
    cplx p1 = -g(ks, 0) / (kFourPi * mu) + G1 / (kFourPi * w2 * r);
    cplx p2 = (G2 - G1 / r) / (kFourPi * w2 * r * r);
    cplx dp1 = -g(ks, 1) / (kFourPi * mu) + (G2 / r - G1 / (r * r)) / (kFourPi * w2);
    cplx dp2 = ((G3 - G2 / r + G1 / (r * r)) / (r * r) - 2.0 * (G2 - G1 / r) / (r * r * r)) / (kFourPi * w2);
    return assemble(x, r, p1, p2, dp1, dp2);
}

KupradzeSample kupradze_series(const Vec3& x, const NondimensionalMedium& nm) {
    double r = norm(x);
    if (r == 0.0) throw DomainError("kupradze: singular at the origin");
    const double ks = nm.k_s, kp = nm.k_p, mu = nm.mu, L = nm.lame_sum();
    // p1 = -(1/4pi) sum_n i^n ((n+1) ks^n/mu + kp^n/L) r^{n-1} / ((n+2) n!)
    // p2 =  (1/4pi) sum_n i^n (n-1) (ks^n/mu - kp^n/L) r^{n-3} / ((n+2) n!)
    cplx p1 = 0.0, p2 = 0.0, dp1 = 0.0, dp2 = 0.0;
    cplx in(1.0);
    double ksn = 1.0, kpn = 1.0, rn = 1.0, fact = 1.0;  // rn = r^n
    for (int n = 0; n < 60; ++n) {
        if (n > 0) {
            in *= kI;
            ksn *= ks;
            kpn *= kp;
            rn *= r;
            fact *= n;
        }
        double c = 1.0 / ((n + 2.0) * fact);
        cplx a = in * c * ((n + 1.0) * ksn / mu + kpn / L);
        cplx b = in * c * (n - 1.0) * (ksn / mu - kpn / L);
        cplx t1 = -a * rn / r, t2 = b * rn / (r * r * r);
        p1 += t1;
        p2 += t2;
        dp1 += t1 * ((n - 1.0) / r);
        dp2 += t2 * ((n - 3.0) / r);
        if (n > 3 && std::abs(t1) <= 1e-18 * std::abs(p1) && std::abs(t2) <= 1e-18 * std::abs(p2)) break;
    }
    double s = 1.0 / kFourPi;
    return assemble(x, r, s * p1, s * p2, s * dp1, s * dp2);
}

KupradzeSample kupradze(const Vec3& x, const NondimensionalMedium& nm) {
    return nm.k_s * norm(x) <= 0.5 ? kupradze_series(x, nm) : kupradze_closed_form(x, nm);
}

Mat3c kelvin(const Vec3& x, double lambda, double mu) {
    double r = norm(x), L = lambda + 2.0 * mu;
    if (r == 0.0) throw DomainError("kelvin: singular at the origin");
    double a = -(1.0 / mu + 1.0 / L) / (8.0 * M_PI * r);
    double b = -(1.0 / mu - 1.0 / L) / (8.0 * M_PI * r * r * r);
    Mat3c G{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) G[i][j] = (i == j ? a : 0.0) + b * x[i] * x[j];
    return G;
}

const char* to_string(LayerDensity d) {
    switch (d) {
        case LayerDensity::YNu: return "Y_nu";
        case LayerDensity::I: return "I";
        case LayerDensity::N: return "N";
        case LayerDensity::T: return "T";
    }
    return "?";
}

Vec3c layer_density(LayerDensity d, int n, int m, double theta, double phi) {
    if (n < 1) throw DomainError("layer_density: need n >= 1");
    switch (d) {
        case LayerDensity::YNu: {
            cplx Y = spherical_harmonic({n, m}, theta, phi);
            auto fr = spherical_frame(theta, phi);
            return {Y * fr.r[0], Y * fr.r[1], Y * fr.r[2]};
        }
        case LayerDensity::I: return vector_spherical_harmonics(n - 1, m, theta, phi).I;
        case LayerDensity::N: return vector_spherical_harmonics(n + 1, m, theta, phi).N;
        case LayerDensity::T: return vector_spherical_harmonics(n, m, theta, phi).T;
    }
    return {};
}

namespace {

// Adds w * Gamma(x - y) phi and its x-gradient into out.
void accumulate(LayerSample& out, const Vec3& x, const Vec3& y, const Vec3c& phi, double w,
                const NondimensionalMedium& nm) {
    Vec3 d{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
    auto K = kupradze(d, nm);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            out.u[i] += w * K.G[i][j] * phi[j];
            for (int k = 0; k < 3; ++k) out.grad[i][k] += w * K.dG[k][i][j] * phi[j];
        }
}

Vec3 direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace

LayerSample oracle_single_layer(const Vec3& x, int n, int m, LayerDensity d, const NondimensionalMedium& nm,
                                int quad_order) {
    if (quad_order < 2 * (n + 2))
        throw DomainError("oracle_single_layer: quad_order < 2(n+2) aliases the density");
    if (std::abs(norm(x) - 1.0) < 1e-12) throw DomainError("oracle_single_layer: point on the surface");
    auto gt = gauss_legendre(quad_order);
    const int nphi = 2 * quad_order;
    LayerSample out;
    for (size_t a = 0; a < gt.x.size(); ++a) {
        double th = std::acos(gt.x[a]);
        for (int b = 0; b < nphi; ++b) {
            double ph = 2.0 * M_PI * b / nphi;
            accumulate(out, x, direction(th, ph), layer_density(d, n, m, th, ph), gt.w[a] * 2.0 * M_PI / nphi, nm);
        }
    }
    return out;
}

Vec3c spectral_single_layer(const Vec3& x, int n, int m, LayerDensity d, const NondimensionalMedium& nm) {
    double r = norm(x);
    if (r < 1.0) throw DomainError("spectral_single_layer: need |x| >= 1");
    double th = std::acos(std::clamp(x[2] / r, -1.0, 1.0)), ph = std::atan2(x[1], x[0]);
    auto c = elastic_layer_coeffs_exterior(n, nm, r).value;
    const double t = 2.0 * n + 1.0;
    cplx cI, cN;
    switch (d) {
        case LayerDensity::YNu:
            cI = ((c.c_1n + c.c_2n).value()) / t;
            cN = ((c.d_1n + c.d_2n).value()) / t;
            break;
        case LayerDensity::I:
            cI = c.c_1n.value();
            cN = c.d_1n.value();
            break;
        case LayerDensity::N:
            cI = c.c_2n.value();
            cN = c.d_2n.value();
            break;
        case LayerDensity::T: {
            auto T = vector_spherical_harmonics(n, m, th, ph).T;
            cplx b = c.b_n.value();
            return {b * T[0], b * T[1], b * T[2]};
        }
    }
    auto I = vector_spherical_harmonics(n - 1, m, th, ph).I;
    auto N = vector_spherical_harmonics(n + 1, m, th, ph).N;
    return {cI * I[0] + cN * N[0], cI * I[1] + cN * N[1], cI * I[2] + cN * N[2]};
}

Vec3c radial_profile_single_layer(const Vec3& x, int n, int m, const NondimensionalMedium& nm) {
    double r = norm(x);
    if (r < 1.0) throw DomainError("radial_profile_single_layer: need |x| >= 1");
    double th = std::acos(std::clamp(x[2] / r, -1.0, 1.0)), ph = std::atan2(x[1], x[0]);
    const double kp = nm.k_p;
    LogComplex f = LogComplex(-kI * kp * kp / nm.lame_sum()) * spherical_bessel_j(n, kp).value *
                   spherical_hankel_h1(n, kp * r).value;
    cplx v = f.value() * spherical_harmonic({n, m}, th, ph);
    return {v * x[0] / r, v * x[1] / r, v * x[2] / r};
}

LayerTrace spectral_single_layer_trace(double theta, double phi, int n, int m, LayerDensity d,
                                       const NondimensionalMedium& nm) {
    auto c = elastic_layer_coeffs(n, nm);
    auto f = traction_coeffs(n, nm);
    const double t = 2.0 * n + 1.0;
    cplx uI, uN, sI, sN;
    LayerTrace out;
    switch (d) {
        case LayerDensity::YNu:
            uI = (c.c_1n + c.c_2n) / t;
            uN = (c.d_1n + c.d_2n) / t;
            sI = (f.frak_c_1n + f.frak_c_2n) / t;
            sN = (f.frak_d_1n + f.frak_d_2n) / t;
            break;
        case LayerDensity::I:
            uI = c.c_1n;
            uN = c.d_1n;
            sI = f.frak_c_1n;
            sN = f.frak_d_1n;
            break;
        case LayerDensity::N:
            uI = c.c_2n;
            uN = c.d_2n;
            sI = f.frak_c_2n;
            sN = f.frak_d_2n;
            break;
        case LayerDensity::T: {
            auto T = vector_spherical_harmonics(n, m, theta, phi).T;
            for (int i = 0; i < 3; ++i) {
                out.displacement[i] = c.b_n * T[i];
                out.traction[i] = f.frak_b_n * T[i];
            }
            return out;
        }
    }
    auto I = vector_spherical_harmonics(n - 1, m, theta, phi).I;
    auto N = vector_spherical_harmonics(n + 1, m, theta, phi).N;
    for (int i = 0; i < 3; ++i) {
        out.displacement[i] = uI * I[i] + uN * N[i];
        out.traction[i] = sI * I[i] + sN * N[i];
    }
    return out;
}

namespace {

// Single layer at x = (1 + h) e3 in a frame whose third axis is the target direction,
// with theta' panels refined geometrically towards the nearest surface point.
LayerSample near_surface_layer(const std::array<Vec3, 3>& frame, double h, int n, int m, LayerDensity d,
                               const NondimensionalMedium& nm, int quad_order) {
    const Vec3& e1 = frame[0];
    const Vec3& e2 = frame[1];
    const Vec3& e3 = frame[2];
    Vec3 x{(1.0 + h) * e3[0], (1.0 + h) * e3[1], (1.0 + h) * e3[2]};
    std::vector<double> edges{0.0};
    for (double e = h / 4.0; e < M_PI; e *= 2.0) edges.push_back(e);
    edges.push_back(M_PI);
    const int nphi = std::max(2 * quad_order, 2 * (n + 4));
    auto g = gauss_legendre(quad_order);
    LayerSample out;
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
        double a = edges[p], b = edges[p + 1];
        for (size_t q = 0; q < g.x.size(); ++q) {
            double tp = 0.5 * (a + b) + 0.5 * (b - a) * g.x[q];
            double wt = 0.5 * (b - a) * g.w[q] * std::sin(tp);
            for (int k = 0; k < nphi; ++k) {
                double pp = 2.0 * M_PI * k / nphi;
                double st = std::sin(tp), ct = std::cos(tp), cp = std::cos(pp), sp = std::sin(pp);
                Vec3 y;
                for (int i = 0; i < 3; ++i) y[i] = st * cp * e1[i] + st * sp * e2[i] + ct * e3[i];
                double th = std::acos(std::clamp(y[2], -1.0, 1.0)), ph = std::atan2(y[1], y[0]);
                accumulate(out, x, y, layer_density(d, n, m, th, ph), wt * 2.0 * M_PI / nphi, nm);
            }
        }
    }
    return out;
}

// Neville extrapolation to h = 0 of samples v(h_i).
template <class V>
V extrapolate(const std::vector<double>& hs, std::vector<V> vs) {
    const size_t N = hs.size();
    for (size_t lvl = 1; lvl < N; ++lvl)
        for (size_t i = N - 1; i >= lvl; --i) {
            double a = hs[i - lvl], b = hs[i];
            for (size_t c = 0; c < vs[i].size(); ++c) vs[i][c] = (b * vs[i - 1][c] - a * vs[i][c]) / (b - a);
            if (i == lvl) break;
        }
    return vs[N - 1];
}

}  // namespace

LayerTraceOracle oracle_single_layer_trace(double theta, double phi, int n, int m, LayerDensity d,
                                           const NondimensionalMedium& nm, int quad_order) {
    if (quad_order < 2 * (n + 2))
        throw DomainError("oracle_single_layer_trace: quad_order < 2(n+2) aliases the density");
    auto fr = spherical_frame(theta, phi);
    std::array<Vec3, 3> frame{fr.theta, fr.phi, fr.r};
    const Vec3& nu = fr.r;
    std::vector<double> hs{0.064, 0.032, 0.016, 0.008, 0.004, 0.002};
    using Six = std::array<cplx, 6>;
    std::vector<Six> samples;
    for (double h : hs) {
        auto s = near_surface_layer(frame, h, n, m, d, nm, quad_order);
        cplx div = s.grad[0][0] + s.grad[1][1] + s.grad[2][2];
        Six v{};
        for (int i = 0; i < 3; ++i) {
            v[static_cast<size_t>(i)] = s.u[i];
            cplx t = nm.lambda * div * nu[i];
            for (int j = 0; j < 3; ++j) t += nm.mu * (s.grad[i][j] + s.grad[j][i]) * nu[j];
            v[static_cast<size_t>(3 + i)] = t;
        }
        samples.push_back(v);
    }
    Six full = extrapolate(hs, samples);
    std::vector<double> hs_short(hs.begin(), hs.end() - 1);
    std::vector<Six> samples_short(samples.begin(), samples.end() - 1);
    Six lower = extrapolate(hs_short, samples_short);
    LayerTraceOracle out;
    double tmag = 0.0, diff = 0.0;
    for (int i = 0; i < 3; ++i) {
        out.displacement[i] = full[static_cast<size_t>(i)];
        out.traction[i] = full[static_cast<size_t>(3 + i)];
        tmag += std::norm(full[static_cast<size_t>(3 + i)]);
        diff += std::norm(full[static_cast<size_t>(3 + i)] - lower[static_cast<size_t>(3 + i)]);
    }
    out.spread = tmag > 0 ? std::sqrt(diff / tmag) : 0.0;
    return out;
}

}  // namespace bubblescat
