#pragma once

#include <array>

#include "bubblescat/medium.hpp"
#include "bubblescat/specfun.hpp"
#include "bubblescat/solver3d.hpp"

namespace bubblescat {

// Fundamental solution of mu Lap u + (lambda+mu) grad div u + omega^2 u, omega = k tau:
// Gamma(x) = -e^{i k_s |x|}/(4 pi mu |x|) I + grad grad^T (e^{i k_p |x|} - e^{i k_s |x|})/(4 pi omega^2 |x|).
struct KupradzeSample {
    Mat3c G{};
    std::array<Mat3c, 3> dG{};  // dG[k][i][j] = d Gamma_ij / d x_k
};

// Picks the power series for k_s |x| <= 0.5 and the closed form otherwise.
KupradzeSample kupradze(const Vec3& x, const NondimensionalMedium& nm);
KupradzeSample kupradze_closed_form(const Vec3& x, const NondimensionalMedium& nm);
KupradzeSample kupradze_series(const Vec3& x, const NondimensionalMedium& nm);
// omega = 0 limit -(1/8 pi)(1/mu + 1/L) I/|x| - (1/8 pi)(1/mu - 1/L) x x^T/|x|^3.
Mat3c kelvin(const Vec3& x, double lambda, double mu);

enum class LayerDensity { YNu, I, N, T };
const char* to_string(LayerDensity d);

// Density of degree n on the unit sphere: Y_n^m nu, I_{n-1}^m, N_{n+1}^m or T_n^m.
Vec3c layer_density(LayerDensity d, int n, int m, double theta, double phi);

struct LayerSample {
    Vec3c u{};
    Mat3c grad{};  // grad[i][j] = d u_i / d x_j
};

// Product quadrature of int_{|y|=1} Gamma(x - y) phi(y) ds(y): quad_order Gauss nodes in
// cos(theta), 2 quad_order trapezoid nodes in phi.  Off-surface points only.
LayerSample oracle_single_layer(const Vec3& x, int n, int m, LayerDensity d, const NondimensionalMedium& nm,
                                int quad_order);

// Spectral prediction of the same single layer for |x| >= 1 from the exterior layer
// coefficients.
Vec3c spectral_single_layer(const Vec3& x, int n, int m, LayerDensity d, const NondimensionalMedium& nm);

// Radial profile (-i k_p^2 / L) j_n(k_p) h_n(k_p r) Y_n^m x^ predicted for the density Y nu
// by the leading-order exterior representation.
Vec3c radial_profile_single_layer(const Vec3& x, int n, int m, const NondimensionalMedium& nm);

// Exterior-side traces of the single layer at the boundary point (theta, phi):
// displacement and traction sigma(u) nu.  Evaluated at r = 1 + h for a geometric
// sequence of h with quadrature graded towards the nearest surface point, then
// extrapolated polynomially to h = 0.  `spread` is the change between the last two
// extrapolation orders, relative to the traction magnitude.
struct LayerTraceOracle {
    Vec3c displacement{}, traction{};
    double spread = 0.0;
};
LayerTraceOracle oracle_single_layer_trace(double theta, double phi, int n, int m, LayerDensity d,
                                           const NondimensionalMedium& nm, int quad_order);

// Spectral traces on the unit sphere from the layer and traction coefficients.
struct LayerTrace {
    Vec3c displacement{}, traction{};
};
LayerTrace spectral_single_layer_trace(double theta, double phi, int n, int m, LayerDensity d,
                                       const NondimensionalMedium& nm);

}  // namespace bubblescat
