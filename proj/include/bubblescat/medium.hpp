#pragma once

#include <string>
#include <vector>

namespace bubblescat {

struct PhysicalMedium {
    double rho_b;     // bubble density, kg/m^3
    double kappa;     // bubble bulk modulus, Pa
    double rho_e;     // elastic density, kg/m^3
    double lambda_t;  // Lame lambda, Pa
    double mu_t;      // Lame mu, Pa
    double omega;     // angular frequency, rad/s
    double l_D;       // characteristic diameter, m

    void validate() const;
};

// PDMS layer with an air bubble, omega = 0.1, l_D = 1.
PhysicalMedium pdms_medium();

struct NondimensionalMedium {
    double k = 0.0;
    double tau = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    double mu = 0.0;
    double k_p = 0.0;
    // Shear wavenumber of mu*Lap + (lambda+mu) grad div + k^2 tau^2: k tau / sqrt(mu).
    double k_s = 0.0;
    // k tau / sqrt(2 mu), kept for reporting against the printed definition.
    double k_s_half_mu = 0.0;
    double c_b = 0.0;  // bubble sound speed (m/s); 0 when built from dimensionless values

    double lame_sum() const { return lambda + 2.0 * mu; }
};

NondimensionalMedium nondimensionalize(const PhysicalMedium& pm);

// Build directly from dimensionless values; lambda is taken as 1 - 2 mu.
NondimensionalMedium make_nondimensional(double k, double tau, double delta, double mu);

// PDMS values rounded to five digits (k = 2.9152e-4, tau = 0.33627, delta = 1.1516e-3),
// with mu from the exact moduli.  Used to reproduce tabulated bounds digit for digit.
NondimensionalMedium pdms_rounded_nondimensional();

enum class RegimeWarning { K_NOT_SMALL, DELTA_NOT_SMALL, TAU_NOT_SUBUNIT };

struct RegimeThresholds {
    double k_max = 0.1;
    double delta_max = 0.1;
    double tau_max = 1.0;
};

std::vector<RegimeWarning> check_regime(const NondimensionalMedium& nm,
                                        const RegimeThresholds& th = {});
std::string to_string(RegimeWarning w);

}  // namespace bubblescat
