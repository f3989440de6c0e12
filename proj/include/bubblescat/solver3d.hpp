#pragma once

#include <array>
#include <vector>

#include "bubblescat/logcomplex.hpp"
#include "bubblescat/medium.hpp"
#include "bubblescat/specfun.hpp"

namespace bubblescat {

using Mat3c = std::array<std::array<cplx, 3>, 3>;

// A vector field sample stored as scale * (u, grad, div).  grad[i][j] = d u_i / d x_j.
struct ScaledVectorField {
    LogComplex scale;  // zero scale means the field vanishes
    Vec3c u{};
    Mat3c grad{};
    cplx div{};

    Vec3c value() const;
    Mat3c gradient() const;
    ScaledVectorField& operator+=(const ScaledVectorField& o);
};

struct ScaledScalarField {
    LogComplex scale;
    cplx u{};
    Vec3c grad{};
    cplx laplacian{};

    cplx value() const { return (scale * LogComplex(u)).value(); }
};

// u^i = sum_m f_m j_n(k_p r) I_{n-1}^m (layer-harmonic form), or
// u^i = sum_m f_m grad(j_n(k_p r) Y_n^m) / k_p (gradient form, a compressional wave).
enum class IncidentForm { LayerHarmonic, Gradient };

// Exterior scattered field model.  RadialProfile is the purely radial leading-order
// profile; ExactLayer is the full single-layer potential of phi_e Y_n^m nu.
enum class ExteriorModel { RadialProfile, ExactLayer };

struct IncidentSpec3D {
    int n = 1;
    std::vector<cplx> f;  // indexed by m + n, size 2n + 1
    bool normalized = false;
    IncidentForm form = IncidentForm::LayerHarmonic;

    void validate() const;
    static IncidentSpec3D single(int n, int m, cplx amplitude = 1.0, bool normalized = false,
                                 IncidentForm form = IncidentForm::LayerHarmonic);
};

struct ModalSolution3D {
    IncidentSpec3D incident;
    NondimensionalMedium medium;
    // Per-unit-f ratios shared by every m (the solve is diagonal in m).
    LogComplex phi_e_ratio;
    LogComplex phi_b_ratio;          // consistent with both transmission conditions
    LogComplex phi_b_printed_ratio;  // beta phi_e / (i delta tau^2 k j h) - n j_n(k_p)
    std::vector<LogComplex> phi_e, phi_b;
    LogComplex determinant;
    bool near_singular = false;
    // ||u~^i||_{L^2(D)} of the unnormalized incident field (quadrature).
    LogComplex incident_norm;
    // Incident traces on the unit sphere per unit f: nu.u^i and nu.sigma(u^i)nu.
    LogComplex incident_normal_trace, incident_traction_trace;

    // Factor applied to every field evaluation (1 / incident_norm when normalized).
    LogComplex output_factor() const;
};

ModalSolution3D solve_modes(const IncidentSpec3D& spec, const NondimensionalMedium& nm);

// ||u~^i||^2 leading closed form sum |f|^2 n (2n+1) (k tau)^{2n} / ((2n+3) ((2n+1)!!)^2 (lambda+2mu)^n)
// for the layer-harmonic form.
LogComplex incident_norm_sq_leading(const IncidentSpec3D& spec, const NondimensionalMedium& nm);

ScaledVectorField eval_incident(const ModalSolution3D& sol, const Vec3& x);
ScaledScalarField eval_interior(const ModalSolution3D& sol, const Vec3& x);
ScaledVectorField eval_exterior_scattered(const ModalSolution3D& sol, const Vec3& x,
                                          ExteriorModel model = ExteriorModel::RadialProfile);
ScaledVectorField eval_total_exterior(const ModalSolution3D& sol, const Vec3& x,
                                      ExteriorModel model = ExteriorModel::RadialProfile);

// Exterior-side traces on the unit sphere of the single layer of phi_e Y nu:
// normal displacement alpha_n phi_e Y and normal traction beta_n phi_e Y.
struct BoundaryTrace3D {
    cplx interior_u, interior_dr;  // acoustic field and its radial derivative
    cplx normal_displacement;      // nu . (u^i + u^s)
    cplx normal_traction;          // nu . sigma(u^i + u^s) nu
};
BoundaryTrace3D boundary_trace(const ModalSolution3D& sol, double theta, double phi);

// Re[sigma(u) : conj(grad u)] with sigma = lambda div u I + mu (grad u + grad u^T).
LogComplex stress_density(const ScaledVectorField& f, const NondimensionalMedium& nm);
// sigma(u) : grad u without conjugation.
LogComplex stress_density_complex(const ScaledVectorField& f, const NondimensionalMedium& nm);
// Cross term Re[sigma(a) : conj(grad b) + sigma(b) : conj(grad a)].
LogComplex stress_density_cross(const ScaledVectorField& a, const ScaledVectorField& b,
                                const NondimensionalMedium& nm);

// Separable evaluation used by the quadrature drivers: angular data for the
// combination sum_m f_m Y_n^m, radial data per radius, combined on demand.
struct AngularData3D {
    Vec3 rhat{};
    cplx Y{};
    Vec3c V{};  // grad(r^n Y) at |x| = 1
    Mat3c W{};  // Hessian of r^n Y at |x| = 1
};
AngularData3D angular_data(const ModalSolution3D& sol, double theta, double phi);

// Radial profiles F, F', F'' at one radius, each already multiplied by the
// modal amplitude per unit f.
struct RadialTriple {
    LogComplex F, dF, d2F;
    // Gradient-form incident only: F' - n F / r and F'' - 2n F' / r + n(n+1) F / r^2,
    // formed from j_{n+1} since both vanish at leading order in k_p r.
    LogComplex tan, hess;
};
struct RadialData3D {
    double r = 0.0;
    RadialTriple incident;
    RadialTriple interior;        // filled for r <= 1
    RadialTriple profile;         // radial profile, filled for r >= 1
    RadialTriple layer_I, layer_N;  // exact layer, filled for r >= 1
};
RadialData3D radial_data(const ModalSolution3D& sol, double r, bool exterior);

ScaledVectorField combine_incident(const ModalSolution3D& sol, const RadialData3D& rd, const AngularData3D& ad);
ScaledScalarField combine_interior(const ModalSolution3D& sol, const RadialData3D& rd, const AngularData3D& ad);
ScaledVectorField combine_scattered(const ModalSolution3D& sol, const RadialData3D& rd, const AngularData3D& ad,
                                    ExteriorModel model);

// Radial coefficient functions of the exact exterior single layer of Y nu:
// S[Y_n^m nu](x) = cI(r) I_{n-1}^m(x^) + dN(r) N_{n+1}^m(x^), |x| = r >= 1.
struct LayerRadial {
    LogComplex cI, dcI, dN, ddN;  // ddN is d/dr of dN
};
LayerRadial exterior_layer_radial(int n, const NondimensionalMedium& nm, double r);

}  // namespace bubblescat
