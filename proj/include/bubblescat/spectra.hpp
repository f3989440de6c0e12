#pragma once

#include "bubblescat/logcomplex.hpp"
#include "bubblescat/medium.hpp"

namespace bubblescat {

struct ElasticLayerCoeffs {
    cplx b_n, c_1n, d_1n, c_2n, d_2n;
};

struct TractionCoeffs {
    cplx frak_b_n, frak_c_1n, frak_d_1n, frak_c_2n, frak_d_2n;
};

// -i k j_n(k) h_n(k): eigenvalue of the acoustic single layer on the unit sphere.
cplx acoustic_layer_eigenvalue(int n, double k);
// Interior profile -i k j_n(k r) h_n(k) and exterior profile -i k j_n(k) h_n(k r).
LogComplex acoustic_interior_profile(int n, double k, double r);
LogComplex acoustic_exterior_profile(int n, double k, double r);

// Single-layer coefficients on T, I, N for the Lame system with wavenumbers
// nm.k_p and nm.k_s.
ElasticLayerCoeffs elastic_layer_coeffs(int n, const NondimensionalMedium& nm);
TractionCoeffs traction_coeffs(int n, const NondimensionalMedium& nm);

// Same formulas with every product evaluated term by term as printed.  Loses
// about |log10(k tau)|*2 digits in d_1n and frak_d_1n; kept for cross-checks.
ElasticLayerCoeffs elastic_layer_coeffs_termwise(int n, const NondimensionalMedium& nm);
TractionCoeffs traction_coeffs_termwise(int n, const NondimensionalMedium& nm);

struct ElasticLayerRadialLog {
    LogComplex b_n, c_1n, d_1n, c_2n, d_2n;
};
struct ElasticLayerRadial {
    ElasticLayerRadialLog value, dr;  // coefficients and their r-derivatives
};
// Exterior continuation of the layer coefficients: every h_b(k) replaced by
// h_b(k r), r >= 1.  S[T_n] = b_n(r) T_n, S[I_{n-1}] = c_1n(r) I_{n-1} + d_1n(r) N_{n+1},
// S[N_{n+1}] = c_2n(r) I_{n-1} + d_2n(r) N_{n+1} at |x| = r.  At r = 1 these equal
// elastic_layer_coeffs.
ElasticLayerRadial elastic_layer_coeffs_exterior(int n, const NondimensionalMedium& nm, double r);

cplx alpha_n(int n, const NondimensionalMedium& nm);
// Printed leading term of alpha_n.
double alpha_n_leading(int n, double lambda, double mu);
// k -> 0 limit of alpha_n obtained from the small-argument laws of the
// layer coefficients.  Agrees with alpha_n_leading only at n = 1.
double alpha_n_static(int n, double lambda, double mu);

cplx beta_n(int n, const NondimensionalMedium& nm);
double beta_n0(int n, double lambda, double mu);
double beta_n2s(int n);
double beta_n2p(int n, double lambda, double mu);
cplx beta_n_asymptotic(int n, const NondimensionalMedium& nm);

struct ModalDeterminant {
    LogComplex D;          // k j_n'(k) beta_n + delta tau^2 k^2 alpha_n j_n(k)
    LogComplex leading;    // printed a_{n,lambda,mu} k^n
    LogComplex leading_beta0;  // n beta_{n0} k^n / (2n+1)!!
    bool near_singular = false;
};
ModalDeterminant modal_determinant(int n, const NondimensionalMedium& nm);
double a_n_leading(int n, double lambda, double mu);

}  // namespace bubblescat
