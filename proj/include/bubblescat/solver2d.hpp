#pragma once

#include <array>
#include <stdexcept>

#include "bubblescat/logcomplex.hpp"
#include "bubblescat/medium.hpp"
#include "bubblescat/specfun.hpp"

namespace bubblescat {

using Vec2 = std::array<double, 2>;
using Vec2c = std::array<cplx, 2>;
using Mat2c = std::array<std::array<cplx, 2>, 2>;

// u~^i = amplitude * grad(J_n(k_p r) e^{i n theta}).
struct IncidentSpec2D {
    int n = 1;
    cplx amplitude = 1.0;
    bool normalized = false;

    void validate() const;
};

struct NearResonanceError : std::runtime_error {
    double condition_number;
    NearResonanceError(const std::string& what, double cond) : std::runtime_error(what), condition_number(cond) {}
};

// Interior u = a J_n(k r) e^{in theta}; exterior u^s = grad phi + curl(psi z^) with
// phi = b H_n(k_p r) e^{in theta}, psi = c H_n(k_s r) e^{in theta}.
struct ModalSolution2D {
    IncidentSpec2D incident;
    NondimensionalMedium medium;
    LogComplex a, b, c;
    double condition_number = 0.0;
    // max |A x - r| over the balanced 3x3 system divided by the largest row scale.
    double system_residual = 0.0;
    // ||u~^i||_{L^2(D)} of the unnormalized incident field.
    LogComplex incident_norm;

    LogComplex output_factor() const;
};

ModalSolution2D solve_modes_2d(const IncidentSpec2D& spec, const NondimensionalMedium& nm);

// Field sample stored as scale * (u, grad); grad[i][j] = d u_i / d x_j.
struct ScaledVectorField2D {
    LogComplex scale;
    Vec2c u{};
    Mat2c grad{};
    cplx div{};  // kept separately; the trace of grad cancels for compressional modes

    Vec2c value() const;
    Mat2c gradient() const;
    ScaledVectorField2D& operator+=(const ScaledVectorField2D& o);
};

struct ScaledScalarField2D {
    LogComplex scale;
    cplx u{};
    Vec2c grad{};

    cplx value() const { return (scale * LogComplex(u)).value(); }
};

ScaledVectorField2D eval_incident_2d(const ModalSolution2D& sol, const Vec2& x);
// |x| <= 1 (boundary points allowed).
ScaledScalarField2D eval_interior_2d(const ModalSolution2D& sol, const Vec2& x);
// |x| >= 1 (boundary points allowed).  The compressional part is grad phi and the
// shear part curl(psi z^); at leading order in k they cancel, so the sum decays
// slower than either.
enum class ScatteredPart { Total, Compressional, Shear };
ScaledVectorField2D eval_scattered_2d(const ModalSolution2D& sol, const Vec2& x,
                                      ScatteredPart part = ScatteredPart::Total);

struct Fields2D {
    bool exterior = false;
    ScaledScalarField2D interior;             // filled when |x| < 1
    ScaledVectorField2D incident;             // always filled
    ScaledVectorField2D scattered, total;     // filled when |x| > 1
    LogComplex stress_density;                // of the exterior total field
};
Fields2D eval_fields_2d(const ModalSolution2D& sol, const Vec2& x);

// Re[sigma(u) : conj(grad u)], sigma = lambda div u I + mu (grad u + grad u^T).
LogComplex stress_density_2d(const ScaledVectorField2D& f, const NondimensionalMedium& nm);

// Radial Gauss quadrature per mode; the angular integral is exact (2 pi).
struct LocalizationRatios2D {
    double eta_u = 0.0, eta_us = 0.0;
};
LocalizationRatios2D localization_ratio_2d(const ModalSolution2D& sol, double zeta1, double zeta2, double R,
                                           int nodes_per_panel = 32);

// ||u||^2 over a < r < b of the interior field (a >= 0, b <= 1) and of the
// scattered field (1 <= a < b), including the output factor.
LogComplex interior_norm_sq_2d(const ModalSolution2D& sol, double a, double b, int nodes_per_panel = 32);
LogComplex scattered_norm_sq_2d(const ModalSolution2D& sol, double a, double b, int nodes_per_panel = 32);

}  // namespace bubblescat
