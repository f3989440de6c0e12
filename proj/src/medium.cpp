#include "bubblescat/medium.hpp"

#include <cmath>

#include "bubblescat/specfun.hpp"

namespace bubblescat {

void PhysicalMedium::validate() const {
    if (!(rho_b > 0 && kappa > 0 && rho_e > 0 && mu_t > 0 && omega > 0 && l_D > 0))
        throw DomainError("PhysicalMedium: densities, moduli, omega and l_D must be positive");
    if (!(lambda_t > 0))
        throw DomainError("PhysicalMedium: lambda_t must be positive");
    if (!(3.0 * lambda_t + 2.0 * mu_t > 0))
        throw DomainError("PhysicalMedium: strong convexity 3 lambda + 2 mu > 0 violated");
}

PhysicalMedium pdms_medium() {
    return {1.2, 1.412e5, 1042.0, 1.083e9, 6.5e5, 0.1, 1.0};
}

NondimensionalMedium nondimensionalize(const PhysicalMedium& pm) {
    pm.validate();
    NondimensionalMedium nm;
    double lame = pm.lambda_t + 2.0 * pm.mu_t;
    nm.c_b = std::sqrt(pm.kappa / pm.rho_b);
    nm.k = pm.omega * pm.l_D / nm.c_b;
    nm.tau = nm.c_b / std::sqrt(lame / pm.rho_e);
    nm.delta = pm.rho_b / pm.rho_e;
    nm.mu = pm.mu_t / lame;
    nm.lambda = pm.lambda_t / lame;
    double kt = nm.k * nm.tau;
    nm.k_p = kt / std::sqrt(nm.lame_sum());
    nm.k_s = kt / std::sqrt(nm.mu);
    nm.k_s_half_mu = kt / std::sqrt(2.0 * nm.mu);
    return nm;
}

NondimensionalMedium make_nondimensional(double k, double tau, double delta, double mu) {
    if (!(k > 0 && tau > 0 && delta >= 0 && mu > 0 && mu <= 0.5))
        throw DomainError("make_nondimensional: need k, tau, mu > 0, delta >= 0, mu <= 1/2");
    NondimensionalMedium nm;
    nm.k = k;
    nm.tau = tau;
    nm.delta = delta;
    nm.mu = mu;
    nm.lambda = 1.0 - 2.0 * mu;
    double kt = k * tau;
    nm.k_p = kt / std::sqrt(nm.lame_sum());
    nm.k_s = kt / std::sqrt(mu);
    nm.k_s_half_mu = kt / std::sqrt(2.0 * mu);
    return nm;
}

NondimensionalMedium pdms_rounded_nondimensional() {
    NondimensionalMedium exact = nondimensionalize(pdms_medium());
    NondimensionalMedium nm = make_nondimensional(2.9152e-4, 0.33627, 1.1516e-3, exact.mu);
    nm.c_b = exact.c_b;
    return nm;
}

std::vector<RegimeWarning> check_regime(const NondimensionalMedium& nm, const RegimeThresholds& th) {
    std::vector<RegimeWarning> w;
    if (!(nm.k < th.k_max)) w.push_back(RegimeWarning::K_NOT_SMALL);
    if (!(nm.delta < th.delta_max)) w.push_back(RegimeWarning::DELTA_NOT_SMALL);
    if (!(nm.tau < th.tau_max)) w.push_back(RegimeWarning::TAU_NOT_SUBUNIT);
    return w;
}

std::string to_string(RegimeWarning w) {
    switch (w) {
        case RegimeWarning::K_NOT_SMALL: return "K_NOT_SMALL";
        case RegimeWarning::DELTA_NOT_SMALL: return "DELTA_NOT_SMALL";
        case RegimeWarning::TAU_NOT_SUBUNIT: return "TAU_NOT_SUBUNIT";
    }
    return "UNKNOWN";
}

}  // namespace bubblescat
