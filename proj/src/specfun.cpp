#include "bubblescat/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bubblescat {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// Downward continued-fraction ratios rho_l = f_l / f_{l-1} for l = 1..n+1
// of a three-term recurrence f_{l-1} + f_{l+1} = (c(l)) f_l, started at
// a depth where the minimal solution dominates.
template <class Coef>
std::vector<cplx> downward_ratios(int n, cplx z, Coef c) {
    double az = std::abs(z);
    int top = std::max(n, static_cast<int>(std::ceil(az))) + 40 +
              static_cast<int>(std::ceil(4.0 * std::sqrt(std::max(n, 1) + az)));
    std::vector<cplx> rho(static_cast<size_t>(n) + 2, cplx(0.0));
    cplx r(0.0);
    for (int l = top; l >= 1; --l) {
        r = 1.0 / (c(l) - r);
        if (l <= n + 1) rho[static_cast<size_t>(l)] = r;
    }
    return rho;
}

}  // namespace

double log_double_factorial(long n) {
    if (n < -1) throw DomainError("log_double_factorial: n < -1");
    if (n <= 0) return 0.0;
    if (n <= 300) {
        double s = 0.0;
        for (long k = n; k > 1; k -= 2) s += std::log(static_cast<double>(k));
        return s;
    }
    // n!! via Gamma: odd n = 2k+1 -> 2^{k+1} Gamma(k+3/2)/sqrt(pi); even n = 2k -> 2^k k!
    if (n % 2 == 0) {
        double k = static_cast<double>(n / 2);
        return k * std::numbers::ln2 + std::lgamma(k + 1.0);
    }
    double k = static_cast<double>((n - 1) / 2);
    return (k + 1.0) * std::numbers::ln2 + std::lgamma(k + 1.5) - 0.5 * std::log(kPi);
}

ValueDeriv spherical_bessel_j(int n, cplx z) {
    if (n < 0) throw DomainError("spherical_bessel_j: negative order");
    if (z == cplx(0.0)) {
        ValueDeriv r;
        r.value = n == 0 ? LogComplex(1.0) : LogComplex::zero();
        r.derivative = n == 1 ? LogComplex(1.0 / 3.0) : LogComplex::zero();
        return r;
    }
    double az = std::abs(z);
    if (az < 1e-2 * std::sqrt(2.0 * n + 3.0)) {
        // z^n/(2n+1)!! * sum_t (-z^2/2)^t / (t! (2n+3)(2n+5)...(2n+2t+1))
        cplx w = -0.5 * z * z;
        cplx term(1.0), sum(1.0), dsum(static_cast<double>(n));
        for (int t = 1; t < 30; ++t) {
            term *= w / (static_cast<double>(t) * (2.0 * n + 2.0 * t + 1.0));
            sum += term;
            dsum += term * static_cast<double>(n + 2 * t);
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        LogComplex lead = LogComplex::from_exp(static_cast<double>(n) * std::log(z) -
                                               log_double_factorial(2L * n + 1));
        ValueDeriv r;
        r.value = lead * LogComplex(sum);
        r.derivative = lead * LogComplex(dsum / z);
        return r;
    }
    // rho_l = j_l/j_{l-1}; j_{l-1} + j_{l+1} = (2l+1)/z j_l
    auto rho = downward_ratios(n, z, [z](int l) { return (2.0 * l + 1.0) / z; });
    cplx j0 = std::sin(z) / z;
    cplx j1 = std::sin(z) / (z * z) - std::cos(z) / z;
    LogComplex val;
    if (n == 0) {
        val = LogComplex(j0);
    } else if (std::abs(j0) >= std::abs(j1)) {
        val = LogComplex(j0);
        for (int l = 1; l <= n; ++l) val *= LogComplex(rho[static_cast<size_t>(l)]);
    } else {
        val = LogComplex(j1);
        for (int l = 2; l <= n; ++l) val *= LogComplex(rho[static_cast<size_t>(l)]);
    }
    ValueDeriv r;
    r.value = val;
    // j_n' = (n/z) j_n - j_{n+1}
    r.derivative = val * LogComplex(static_cast<double>(n) / z - rho[static_cast<size_t>(n) + 1]);
    return r;
}

namespace {

LogComplex imaginary_part(const LogComplex& v) {
    if (v.is_zero() || v.mantissa().imag() == 0.0) return LogComplex();
    return LogComplex(cplx(0.0, v.mantissa().imag())) *
           LogComplex::from_exp(cplx(static_cast<double>(v.exponent2()) * std::log(2.0), 0.0));
}

}  // namespace

ValueDeriv spherical_hankel_h1(int n, cplx z) {
    if (n < 0) throw DomainError("spherical_hankel_h1: negative order");
    if (z == cplx(0.0)) throw DomainError("spherical_hankel_h1: singular at z = 0");
    // h0 = e^{iz}/(iz) and h1 = -e^{iz}(z + i)/z^2, so h1/h0 = (1 - iz)/z.
    LogComplex h0 = LogComplex::from_exp(kI * z) / LogComplex(kI * z);
    cplx sigma = (1.0 - kI * z) / z;
    LogComplex val = h0;
    cplx last = sigma;
    if (n >= 1) {
        val *= LogComplex(sigma);
        for (int l = 1; l < n; ++l) {
            // h_{l+1} = (2l+1)/z h_l - h_{l-1}
            cplx next = (2.0 * l + 1.0) / z - 1.0 / last;
            val *= LogComplex(next);
            last = next;
        }
    }
    ValueDeriv r;
    r.value = val;
    if (n == 0) {
        r.derivative = -(h0 * LogComplex(sigma));
    } else {
        // h_n' = h_{n-1} - (n+1)/z h_n
        r.derivative = val * LogComplex(1.0 / last - (n + 1.0) / z);
    }
    if (z.imag() == 0.0 && z.real() > 0.0) {
        // The recurrence carries only the dominant y_n to full relative precision;
        // for real z the real part j_n is restored from the regular solution.
        auto j = spherical_bessel_j(n, z);
        r.value = j.value + imaginary_part(r.value);
        r.derivative = j.derivative + imaginary_part(r.derivative);
    }
    return r;
}

namespace {

ValueDeriv cyl_j(int n, cplx z) {
    ValueDeriv r;
    if (z == cplx(0.0)) {
        r.value = n == 0 ? LogComplex(1.0) : LogComplex::zero();
        r.derivative = n == 1 ? LogComplex(0.5) : LogComplex::zero();
        return r;
    }
    double az = std::abs(z);
    if (az < 1e-2 * std::sqrt(n + 1.0)) {
        cplx w = -0.25 * z * z;
        cplx term(1.0), sum(1.0), dsum(static_cast<double>(n));
        for (int t = 1; t < 30; ++t) {
            term *= w / (static_cast<double>(t) * (n + t));
            sum += term;
            dsum += term * static_cast<double>(n + 2 * t);
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        LogComplex lead = LogComplex::from_exp(static_cast<double>(n) * std::log(0.5 * z) -
                                               std::lgamma(n + 1.0));
        r.value = lead * LogComplex(sum);
        r.derivative = lead * LogComplex(dsum / z);
        return r;
    }
    // r_l = J_l / J_{l-1}; J_{l-1} + J_{l+1} = (2l/z) J_l
    int nn = std::max(n, static_cast<int>(std::ceil(az)) + 20 + static_cast<int>(std::ceil(4.0 * std::sqrt(az))));
    auto rho = downward_ratios(nn, z, [z](int l) { return 2.0 * l / z; });
    // Normalization 1 = J0 + 2 sum_k J_{2k}
    cplx prod(1.0), s(1.0);
    for (int l = 1; l <= nn; ++l) {
        prod *= rho[static_cast<size_t>(l)];
        if (l % 2 == 0) s += 2.0 * prod;
        if (l > az + 10 && std::abs(prod) < 1e-18 * std::abs(s)) break;
    }
    LogComplex val(1.0 / s);
    for (int l = 1; l <= n; ++l) val *= LogComplex(rho[static_cast<size_t>(l)]);
    r.value = val;
    // J_n' = (n/z) J_n - J_{n+1}
    r.derivative = val * LogComplex(static_cast<double>(n) / z - rho[static_cast<size_t>(n) + 1]);
    return r;
}

ValueDeriv cyl_y(int n, cplx z) {
    if (z == cplx(0.0)) throw DomainError("cylindrical_bessel: Y/H1 singular at z = 0");
    if (z.imag() != 0.0 || z.real() <= 0.0)
        throw DomainError("cylindrical_bessel: Y/H1 implemented for real positive z only");
    double x = z.real();
    double y0 = std::cyl_neumann(0.0, x);
    double y1 = std::cyl_neumann(1.0, x);
    ValueDeriv r;
    if (n == 0) {
        r.value = LogComplex(y0);
        r.derivative = LogComplex(-y1);
        return r;
    }
    // Upward ratios s_l = Y_l / Y_{l-1}; Y_{l+1} = (2l/x) Y_l - Y_{l-1}
    LogComplex val(y1);
    double s = y1 / y0;
    if (!std::isfinite(s)) s = 1e300;
    double last_ratio = s;
    for (int l = 1; l < n; ++l) {
        double next = 2.0 * l / x - 1.0 / last_ratio;
        val *= LogComplex(next);
        last_ratio = next;
    }
    r.value = val;
    // Y_n' = Y_{n-1} - (n/x) Y_n
    if (n == 1)
        r.derivative = LogComplex(y0 - y1 / x);
    else
        r.derivative = val * LogComplex(1.0 / last_ratio - n / x);
    return r;
}

}  // namespace

ValueDeriv cylindrical_bessel(CylKind kind, int n, cplx z) {
    if (n < 0) throw DomainError("cylindrical_bessel: negative order");
    switch (kind) {
        case CylKind::J:
            return cyl_j(n, z);
        case CylKind::Y:
            return cyl_y(n, z);
        case CylKind::H1: {
            ValueDeriv j = cyl_j(n, z);
            ValueDeriv y = cyl_y(n, z);
            LogComplex i(kI);
            return {j.value + i * y.value, j.derivative + i * y.derivative};
        }
    }
    throw DomainError("cylindrical_bessel: unknown kind");
}

SphericalHarmonicIndex::SphericalHarmonicIndex(int n_, int m_) : n(n_), m(m_) {
    if (n < 0 || m > n || m < -n) throw DomainError("SphericalHarmonicIndex: |m| > n");
}

namespace {

// Fully normalized associated Legendre function with Condon-Shortley phase,
// sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!) P_n^m(cos theta), m >= 0.  Zero when m > n.
double legendre_bar(int n, int m, double x, double s) {
    if (m < 0 || n < 0 || m > n) return 0.0;
    double pmm = 1.0 / std::sqrt(4.0 * kPi);
    for (int k = 1; k <= m; ++k) pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
    if (n == m) return pmm;
    double pm1 = x * std::sqrt(2.0 * m + 3.0) * pmm;
    if (n == m + 1) return pm1;
    double p2 = pmm, p1 = pm1, p = 0.0;
    for (int l = m + 2; l <= n; ++l) {
        double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
        double b = std::sqrt((static_cast<double>(l - 1) * (l - 1) - static_cast<double>(m) * m) /
                             (4.0 * (l - 1) * (l - 1) - 1.0));
        p = a * (x * p1 - b * p2);
        p2 = p1;
        p1 = p;
    }
    return p;
}

}  // namespace

cplx spherical_harmonic(const SphericalHarmonicIndex& idx, double theta, double phi) {
    int am = std::abs(idx.m);
    double p = legendre_bar(idx.n, am, std::cos(theta), std::sin(theta));
    return p * std::polar(1.0, idx.m * phi);
}

std::vector<cplx> spherical_harmonics_all(int n, double theta, double phi) {
    if (n < 0) return {};
    std::vector<cplx> out(2 * static_cast<size_t>(n) + 1);
    double x = std::cos(theta), s = std::sin(theta);
    for (int m = 0; m <= n; ++m) {
        cplx y = legendre_bar(n, m, x, s) * std::polar(1.0, m * phi);
        out[static_cast<size_t>(n + m)] = y;
        out[static_cast<size_t>(n - m)] = std::conj(y);
    }
    return out;
}

HarmonicWithGradient spherical_harmonic_grad(int n, int m, double theta, double phi) {
    HarmonicWithGradient g{cplx(0.0), cplx(0.0), cplx(0.0)};
    if (n < 0 || std::abs(m) > n) return g;
    int am = std::abs(m);
    double x = std::cos(theta), s = std::sin(theta);
    double p = legendre_bar(n, am, x, s);
    double dp;
    if (am == 0) {
        dp = std::sqrt(static_cast<double>(n) * (n + 1)) * legendre_bar(n, 1, x, s);
    } else {
        dp = 0.5 * (std::sqrt(static_cast<double>(n + am + 1) * (n - am)) * legendre_bar(n, am + 1, x, s) -
                    std::sqrt(static_cast<double>(n + am) * (n - am + 1)) * legendre_bar(n, am - 1, x, s));
    }
    // m P/sin(theta) via a degree n-1 identity, finite at the poles
    double mp_over_s = 0.0;
    if (am >= 1) {
        mp_over_s = -0.5 * std::sqrt((2.0 * n + 1.0) / (2.0 * n - 1.0)) *
                    (std::sqrt(static_cast<double>(n - am) * (n - am - 1)) * legendre_bar(n - 1, am + 1, x, s) +
                     std::sqrt(static_cast<double>(n + am) * (n + am - 1)) * legendre_bar(n - 1, am - 1, x, s));
    }
    cplx e = std::polar(1.0, am * phi);
    g.Y = p * e;
    g.dtheta = dp * e;
    g.dphi_over_sin = kI * mp_over_s * e;
    if (m < 0) {
        g.Y = std::conj(g.Y);
        g.dtheta = std::conj(g.dtheta);
        g.dphi_over_sin = std::conj(g.dphi_over_sin);
    }
    return g;
}

SphericalFrame spherical_frame(double theta, double phi) {
    double ct = std::cos(theta), st = std::sin(theta), cp = std::cos(phi), sp = std::sin(phi);
    return {{st * cp, st * sp, ct}, {ct * cp, ct * sp, -st}, {-sp, cp, 0.0}};
}

Vec3c surface_gradient(int n, int m, double theta, double phi) {
    auto g = spherical_harmonic_grad(n, m, theta, phi);
    auto f = spherical_frame(theta, phi);
    Vec3c v;
    for (int i = 0; i < 3; ++i) v[i] = g.dtheta * f.theta[i] + g.dphi_over_sin * f.phi[i];
    return v;
}

VectorHarmonicTriple vector_spherical_harmonics(int n, int m, double theta, double phi) {
    auto f = spherical_frame(theta, phi);
    VectorHarmonicTriple t{};
    auto gp = spherical_harmonic_grad(n + 1, m, theta, phi);
    auto g0 = spherical_harmonic_grad(n, m, theta, phi);
    auto gm = spherical_harmonic_grad(n - 1, m, theta, phi);
    for (int i = 0; i < 3; ++i) {
        cplx gradp = gp.dtheta * f.theta[i] + gp.dphi_over_sin * f.phi[i];
        cplx gradm = gm.dtheta * f.theta[i] + gm.dphi_over_sin * f.phi[i];
        t.I[i] = gradp + (n + 1.0) * gp.Y * f.r[i];
        t.N[i] = -gradm + static_cast<double>(n) * gm.Y * f.r[i];
        // grad_S Y x nu with grad_S Y = a theta_hat + b phi_hat: theta x r = -phi, phi x r = theta
        t.T[i] = -g0.dtheta * f.phi[i] + g0.dphi_over_sin * f.theta[i];
    }
    return t;
}

double lambert_w0(double x) {
    const double em1 = -std::exp(-1.0);
    if (x < em1) {
        if (x > em1 - 1e-15) x = em1;
        else throw DomainError("lambert_w0: argument below -1/e");
    }
    if (x == 0.0) return 0.0;
    double w;
    if (x < -0.25) {
        double p = std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * x + 1.0)));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x < 3.0) {
        w = std::log1p(x);
        w = w * (1.0 - std::log1p(w) / (2.0 + w));
    } else {
        double l1 = std::log(x), l2 = std::log(l1);
        w = l1 - l2 + l2 / l1;
    }
    for (int it = 0; it < 100; ++it) {
        double ew = std::exp(w);
        double f = w * ew - x;
        if (w == -1.0) break;
        double dw = f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
        w -= dw;
        if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
    }
    return w;
}

GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule g;
    g.x.resize(static_cast<size_t>(n));
    g.w.resize(static_cast<size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
        }
        double w = 2.0 / ((1.0 - z * z) * dp * dp);
        size_t lo = static_cast<size_t>(i), hi = static_cast<size_t>(n - 1 - i);
        double half = 0.5 * (b - a), mid = 0.5 * (b + a);
        g.x[lo] = mid - half * z;
        g.x[hi] = mid + half * z;
        g.w[lo] = g.w[hi] = w * half;
    }
    return g;
}

}  // namespace bubblescat
