#include "bubblescat/spectra.hpp"

#include <cmath>
#include <vector>

#include "bubblescat/specfun.hpp"

namespace bubblescat {

namespace {

const cplx kI(0.0, 1.0);

// z^p j_a(z) h_b(z) as a native complex value.
cplx jh(int a, int b, double z, int p = 1) {
    LogComplex v = spherical_bessel_j(a, z).value * spherical_hankel_h1(b, z).value;
    return (v * LogComplex(z).pow(p)).value();
}

}  // namespace

cplx acoustic_layer_eigenvalue(int n, double k) { return -kI * jh(n, n, k); }

LogComplex acoustic_interior_profile(int n, double k, double r) {
    return LogComplex(-kI * k) * spherical_bessel_j(n, k * r).value * spherical_hankel_h1(n, k).value;
}

LogComplex acoustic_exterior_profile(int n, double k, double r) {
    return LogComplex(-kI * k) * spherical_bessel_j(n, k).value * spherical_hankel_h1(n, k * r).value;
}

ElasticLayerCoeffs elastic_layer_coeffs_termwise(int n, const NondimensionalMedium& nm) {
    const double ks = nm.k_s, kp = nm.k_p, mu = nm.mu, L = nm.lame_sum();
    const double t = 2.0 * n + 1.0;
    ElasticLayerCoeffs c;
    c.b_n = -kI * jh(n, n, ks) / mu;
    c.c_1n = -kI * ((n + 1.0) * jh(n - 1, n - 1, ks) / (mu * t) + double(n) * jh(n - 1, n - 1, kp) / (L * t));
    c.d_1n = -kI * (double(n) * jh(n - 1, n + 1, ks) / (mu * t) - double(n) * jh(n - 1, n + 1, kp) / (L * t));
    c.c_2n = -kI * ((n + 1.0) * jh(n + 1, n - 1, ks) / (mu * t) - (n + 1.0) * jh(n + 1, n - 1, kp) / (L * t));
    c.d_2n = -kI * (double(n) * jh(n + 1, n + 1, ks) / (mu * t) + (n + 1.0) * jh(n + 1, n + 1, kp) / (L * t));
    return c;
}

// z j_{n-1}(z) h_{n+1}(z) = z j_{n+1}(z) h_{n-1}(z) - i (2n+1)/z^2 (cross-product
// identity of spherical Bessel functions).  The -i(2n+1)/z^2 parts of the shear
// and compressional terms cancel exactly because mu k_s^2 = (lambda+2mu) k_p^2,
// so they are dropped analytically and only the small remainders are summed.
// Evaluating the cancelled parts in floating point would leave rounding noise of
// relative size eps / (k tau)^2.
ElasticLayerCoeffs elastic_layer_coeffs(int n, const NondimensionalMedium& nm) {
    ElasticLayerCoeffs c = elastic_layer_coeffs_termwise(n, nm);
    const double ks = nm.k_s, kp = nm.k_p, mu = nm.mu, L = nm.lame_sum();
    const double t = 2.0 * n + 1.0;
    c.d_1n = -kI * (double(n) * jh(n + 1, n - 1, ks) / (mu * t) - double(n) * jh(n + 1, n - 1, kp) / (L * t));
    return c;
}

TractionCoeffs traction_coeffs_termwise(int n, const NondimensionalMedium& nm) {
    const double ks = nm.k_s, kp = nm.k_p, mu = nm.mu, L = nm.lame_sum();
    const double t = 2.0 * n + 1.0;
    TractionCoeffs c;
    {
        auto j = spherical_bessel_j(n, ks);
        auto h = spherical_hankel_h1(n, ks);
        c.frak_b_n = -kI * ks * (j.value * (LogComplex(ks) * h.derivative - h.value)).value();
    }
    c.frak_c_1n = -2.0 * (n - 1.0) * kI *
                      (jh(n - 1, n - 1, ks) * (n + 1.0) / t + jh(n - 1, n - 1, kp) * mu * double(n) / (L * t)) +
                  kI * ((jh(n - 1, n, ks, 2) * (n + 1.0) + jh(n - 1, n, kp, 2) * static_cast<double>(n)) / t);
    c.frak_d_1n = 2.0 * n * (n + 2.0) * kI * (jh(n - 1, n + 1, ks) / t - jh(n - 1, n + 1, kp) * mu / (L * t)) +
                  static_cast<double>(n) * kI * ((-jh(n - 1, n, ks, 2) + jh(n - 1, n, kp, 2)) / t);
    c.frak_c_2n = -2.0 * (n * n - 1.0) * kI * (jh(n + 1, n - 1, ks) / t - jh(n + 1, n - 1, kp) * mu / (L * t)) -
                  (n + 1.0) * kI * ((-jh(n + 1, n, ks, 2) + jh(n + 1, n, kp, 2)) / t);
    c.frak_d_2n = 2.0 * (n + 2.0) * kI *
                      (jh(n + 1, n + 1, ks) * static_cast<double>(n) / t +
                       jh(n + 1, n + 1, kp) * mu * (n + 1.0) / (L * t)) -
                  kI * ((jh(n + 1, n, ks, 2) * static_cast<double>(n) + jh(n + 1, n, kp, 2) * (n + 1.0)) / t);
    return c;
}

TractionCoeffs traction_coeffs(int n, const NondimensionalMedium& nm) {
    TractionCoeffs c = traction_coeffs_termwise(n, nm);
    const double ks = nm.k_s, kp = nm.k_p, mu = nm.mu, L = nm.lame_sum();
    const double t = 2.0 * n + 1.0;
    c.frak_d_1n = 2.0 * n * (n + 2.0) * kI * ((jh(n + 1, n - 1, ks) - jh(n + 1, n - 1, kp) * mu / L) / t) +
                  static_cast<double>(n) * kI * ((-jh(n - 1, n, ks, 2) + jh(n - 1, n, kp, 2)) / t);
    return c;
}

namespace {

// [G(ks, r) - G(kp, r)] / omega^2 and its r-derivative, where
// G(x, r) = x^3 j_{b-2}(x) y_b(x r) and omega^2 = mu ks^2 = (lambda + 2 mu) kp^2.
// G is a power series in x^2 whose constant term cancels in the difference, so the
// difference is summed term by term for small x r.
struct SingularPair {
    LogComplex value, dr;
};
SingularPair singular_difference(int b, double ks, double kp, double omega2, double r) {
    const int a = b - 2;
    const double xr_max = ks * r;
    if (xr_max > 0.5) {
        auto g = [&](double x) {
            auto j = spherical_bessel_j(a, x);
            auto h = spherical_hankel_h1(b, x * r);
            auto jb = spherical_bessel_j(b, x * r);
            LogComplex mi(-kI), x3 = LogComplex(x * x * x);
            LogComplex y = mi * (h.value - jb.value), dy = mi * (h.derivative - jb.derivative);
            return SingularPair{x3 * j.value * y, x3 * LogComplex(x) * j.value * dy};
        };
        auto gs = g(ks), gp = g(kp);
        LogComplex w(1.0 / omega2);
        return {(gs.value - gp.value) * w, (gs.dr - gp.dr) * w};
    }
    // j_a(x) = x^a sum A_p x^{2p};  y_b(z) = z^{-b-1} sum B_q z^{2q}
    const int terms = 40;
    std::vector<double> A(terms), B(terms);
    A[0] = 1.0;  // scaled by (2a+1)!!
    B[0] = -1.0; // scaled by (2b-1)!!
    for (int p = 1; p < terms; ++p) {
        A[p] = A[p - 1] * (-0.5) / (p * (2.0 * a + 2.0 * p + 1.0));
        B[p] = B[p - 1] * 0.5 / (p * (2.0 * b + 1.0 - 2.0 * p));
    }
    const double lead = std::exp(log_double_factorial(2L * b - 1) - log_double_factorial(2L * a + 1));
    double val = 0.0, der = 0.0;
    double ks2 = ks * ks, kp2 = kp * kp, ks2m = 1.0, kp2m = 1.0;
    for (int m = 1; m < terms; ++m) {
        ks2m *= ks2;
        kp2m *= kp2;
        double cm = 0.0, dcm = 0.0;
        for (int q = 0; q <= m; ++q) {
            double e = 2.0 * q - b - 1.0;
            double t = A[static_cast<size_t>(m - q)] * B[static_cast<size_t>(q)];
            cm += t * std::pow(r, e);
            dcm += t * e * std::pow(r, e - 1.0);
        }
        double w = (ks2m - kp2m) / omega2;
        val += cm * w;
        der += dcm * w;
        if (std::abs(cm * w) <= 1e-18 * std::abs(val) && std::abs(dcm * w) <= 1e-18 * std::abs(der)) break;
    }
    return {LogComplex(lead * val), LogComplex(lead * der)};
}

// k j_a(k) h_b(k r) and its r-derivative k^2 j_a(k) h_b'(k r).
struct RadialProduct {
    LogComplex value, dr;
};
RadialProduct jh_r(int a, int b, double k, double r) {
    auto j = spherical_bessel_j(a, k);
    auto h = spherical_hankel_h1(b, k * r);
    return {LogComplex(k) * j.value * h.value, LogComplex(k * k) * j.value * h.derivative};
}

}  // namespace

ElasticLayerRadial elastic_layer_coeffs_exterior(int n, const NondimensionalMedium& nm, double r) {
    if (n < 1) throw DomainError("elastic_layer_coeffs_exterior: need n >= 1");
    if (!(r >= 1.0)) throw DomainError("elastic_layer_coeffs_exterior: need r >= 1");
    const double ks = nm.k_s, kp = nm.k_p, mu = nm.mu, L = nm.lame_sum();
    const double t = 2.0 * n + 1.0, omega2 = mu * ks * ks;
    const LogComplex mi(-kI);
    ElasticLayerRadial out;
    auto set = [&](LogComplex ElasticLayerRadialLog::*field, const LogComplex& v, const LogComplex& d) {
        out.value.*field = v;
        out.dr.*field = d;
    };
    auto combine = [&](int a, int b, double ws, double wp) {
        auto s = jh_r(a, b, ks, r), p = jh_r(a, b, kp, r);
        return RadialProduct{mi * (LogComplex(ws) * s.value + LogComplex(wp) * p.value),
                             mi * (LogComplex(ws) * s.dr + LogComplex(wp) * p.dr)};
    };
    auto b = combine(n, n, 1.0 / mu, 0.0);
    set(&ElasticLayerRadialLog::b_n, b.value, b.dr);
    auto c1 = combine(n - 1, n - 1, (n + 1.0) / (mu * t), n / (L * t));
    set(&ElasticLayerRadialLog::c_1n, c1.value, c1.dr);
    auto c2 = combine(n + 1, n - 1, (n + 1.0) / (mu * t), -(n + 1.0) / (L * t));
    set(&ElasticLayerRadialLog::c_2n, c2.value, c2.dr);
    auto d2 = combine(n + 1, n + 1, n / (mu * t), (n + 1.0) / (L * t));
    set(&ElasticLayerRadialLog::d_2n, d2.value, d2.dr);
    // d_1n = -i n/t [k_s j_{n-1}(k_s) h_{n+1}(k_s r)/mu - k_p j_{n-1}(k_p) h_{n+1}(k_p r)/L]
    //      = -i n/t [G(k_s) - G(k_p)]/omega^2 with G(x) = x^3 j_{n-1}(x) h_{n+1}(x r).
    // The 1/omega^2 constant term of G cancels; j-part and y-part are summed separately.
    auto gj = [&](double x) {
        auto ja = spherical_bessel_j(n - 1, x);
        auto jb = spherical_bessel_j(n + 1, x * r);
        LogComplex x3(x * x * x / omega2);
        return SingularPair{x3 * ja.value * jb.value, x3 * LogComplex(x) * ja.value * jb.derivative};
    };
    auto js = gj(ks), jp = gj(kp);
    auto jy = singular_difference(n + 1, ks, kp, omega2, r);
    LogComplex cn = mi * LogComplex(n / t);
    set(&ElasticLayerRadialLog::d_1n, cn * ((js.value - jp.value) + LogComplex(kI) * jy.value),
        cn * ((js.dr - jp.dr) + LogComplex(kI) * jy.dr));
    return out;
}

cplx alpha_n(int n, const NondimensionalMedium& nm) {
    auto c = elastic_layer_coeffs(n, nm);
    return (static_cast<double>(n) * (c.c_1n + c.c_2n) + (n + 1.0) * (c.d_1n + c.d_2n)) / (2.0 * n + 1.0);
}

double alpha_n_leading(int n, double lambda, double mu) {
    double nn = n;
    return -(2.0 * (lambda + mu) * nn * (nn + 1) + mu * (4 * nn * nn * nn * nn + 4 * nn - 1)) /
           (mu * (lambda + 2 * mu) * (2 * nn + 3) * (2 * nn + 1) * (2 * nn - 1));
}

double alpha_n_static(int n, double lambda, double mu) {
    double nn = n, L = lambda + 2 * mu;
    return -(2 * nn * (nn + 1) * (2 * nn + 1) / mu + (4 * nn * nn * nn + 6 * nn * nn - 1) / L) /
           ((2 * nn + 1) * (2 * nn + 1) * (2 * nn - 1) * (2 * nn + 3));
}

cplx beta_n(int n, const NondimensionalMedium& nm) {
    auto c = traction_coeffs(n, nm);
    return (static_cast<double>(n) * (c.frak_c_1n + c.frak_c_2n) + (n + 1.0) * (c.frak_d_1n + c.frak_d_2n)) /
           (2.0 * n + 1.0);
}

double beta_n0(int n, double lambda, double mu) {
    double nn = n, L = lambda + 2 * mu;
    double num = L * (2 * nn + 3) * (2 * nn * nn * nn + 2 * nn * nn * mu - 2 * nn * nn * nn * mu + nn) +
                 2 * (nn * lambda + mu * (3 * nn + 1)) * (nn + 2) * (nn + 1) * (2 * nn - 1);
    return num / (L * (2 * nn + 3) * (2 * nn + 1) * (2 * nn + 1) * (2 * nn - 1));
}

double beta_n2s(int n) {
    double nn = n;
    return (12 * nn * nn * nn + 18 * nn * nn + 6 * nn) /
           ((2 * nn + 5) * (2 * nn + 3) * (2 * nn + 1) * (2 * nn + 1) * (2 * nn - 1) * (-2 * nn + 3));
}

double beta_n2p(int n, double lambda, double mu) {
    double nn = n, L = lambda + 2 * mu;
    double n2 = nn * nn, n3 = n2 * nn, n4 = n3 * nn;
    double b1 = mu * (-4 * n4 + 2 * n3 + 22 * n2 - 8 * nn - 24);
    return (L * mu * (4 * n4 + 18 * n3 + 8 * n2 - 30 * nn) + L * (-8 * n3 - 12 * n2 + 26 * nn + 15) + b1) /
           (L * (2 * nn + 5) * (2 * nn + 3) * (2 * nn + 1) * (2 * nn + 1) * (2 * nn - 1) * (-2 * nn + 3));
}

cplx beta_n_asymptotic(int n, const NondimensionalMedium& nm) {
    return beta_n0(n, nm.lambda, nm.mu) + beta_n2s(n) * nm.k_s * nm.k_s +
           beta_n2p(n, nm.lambda, nm.mu) * nm.k_p * nm.k_p;
}

double a_n_leading(int n, double lambda, double mu) {
    double nn = n, L = lambda + 2 * mu;
    double n2 = nn * nn, n3 = n2 * nn, n4 = n3 * nn, n5 = n4 * nn;
    double a1 = 2 * n5 + 7 * n4 + 6 * n3 - n2 - 2 * nn;
    double num = L * mu * (-4 * n5 - 2 * n4 + 6 * n3) + L * (8 * n5 + 16 * n4 + 12 * n3 - 5 * n2) + 2 * mu * a1;
    double den = L * (2 * nn + 1) * (2 * nn + 1) * (2 * nn - 1);
    return num / den * std::exp(-log_double_factorial(2L * n + 3));
}

ModalDeterminant modal_determinant(int n, const NondimensionalMedium& nm) {
    const double k = nm.k;
    auto j = spherical_bessel_j(n, k);
    LogComplex b(beta_n(n, nm));
    LogComplex a(alpha_n(n, nm));
    double dt2 = nm.delta * nm.tau * nm.tau;
    ModalDeterminant md;
    md.D = LogComplex(k) * j.derivative * b + LogComplex(dt2 * k * k) * a * j.value;
    double nn = n, L = nm.lame_sum(), mu = nm.mu;
    double n2 = nn * nn, n3 = n2 * nn, n4 = n3 * nn, n5 = n4 * nn;
    double a1 = 2 * n5 + 7 * n4 + 6 * n3 - n2 - 2 * nn;
    double num = L * mu * (-4 * n5 - 2 * n4 + 6 * n3) + L * (8 * n5 + 16 * n4 + 12 * n3 - 5 * n2) + 2 * mu * a1;
    double den = L * (2 * nn + 1) * (2 * nn + 1) * (2 * nn - 1);
    LogComplex kn = LogComplex(k).pow(n);
    LogComplex inv_dfact = LogComplex::from_exp(-log_double_factorial(2L * n + 3));
    md.leading = LogComplex(num / den) * inv_dfact * kn;
    md.leading_beta0 = LogComplex(nn * beta_n0(n, nm.lambda, nm.mu)) *
                       LogComplex::from_exp(-log_double_factorial(2L * n + 1)) * kn;
    md.near_singular = md.D.is_zero() || (md.D.ln_magnitude() < std::log(1e-3) + md.leading.ln_magnitude());
    return md;
}

}  // namespace bubblescat
