#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "bubblescat/logcomplex.hpp"

namespace bubblescat {

using Vec3c = std::array<cplx, 3>;
using Vec3 = std::array<double, 3>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ValueDeriv {
    LogComplex value;
    LogComplex derivative;
};

double log_double_factorial(long n);

ValueDeriv spherical_bessel_j(int n, cplx z);
ValueDeriv spherical_hankel_h1(int n, cplx z);

enum class CylKind { J, Y, H1 };
ValueDeriv cylindrical_bessel(CylKind kind, int n, cplx z);

struct SphericalHarmonicIndex {
    int n;
    int m;
    SphericalHarmonicIndex(int n_, int m_);
};

cplx spherical_harmonic(const SphericalHarmonicIndex& idx, double theta, double phi);

// Y_n^m for m = -n..n, indexed by m + n.
std::vector<cplx> spherical_harmonics_all(int n, double theta, double phi);

// Y_n^m together with dY/dtheta and (1/sin theta) dY/dphi, the two spherical
// components of the surface gradient.  Finite at the poles.
struct HarmonicWithGradient {
    cplx Y;
    cplx dtheta;
    cplx dphi_over_sin;
};
HarmonicWithGradient spherical_harmonic_grad(int n, int m, double theta, double phi);

// Cartesian surface gradient of Y_n^m on the unit sphere.
Vec3c surface_gradient(int n, int m, double theta, double phi);

struct VectorHarmonicTriple {
    Vec3c I;
    Vec3c T;
    Vec3c N;
};
// I_n^m = grad_S Y_{n+1}^m + (n+1) Y_{n+1}^m nu,  T_n^m = grad_S Y_n^m x nu,
// N_n^m = -grad_S Y_{n-1}^m + n Y_{n-1}^m nu.  Harmonics with |m| > degree are zero.
VectorHarmonicTriple vector_spherical_harmonics(int n, int m, double theta, double phi);

double lambert_w0(double x);

// Unit vectors of the spherical frame.
struct SphericalFrame {
    Vec3 r, theta, phi;
};
SphericalFrame spherical_frame(double theta, double phi);

// Gauss-Legendre nodes and weights on [a, b].
struct GaussRule {
    std::vector<double> x, w;
};
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

}  // namespace bubblescat
