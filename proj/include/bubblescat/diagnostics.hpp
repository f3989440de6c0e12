#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bubblescat/kupradze.hpp"  // traction-coefficient oracle
#include "bubblescat/logcomplex.hpp"
#include "bubblescat/medium.hpp"
#include "bubblescat/solver2d.hpp"
#include "bubblescat/solver3d.hpp"

namespace bubblescat {

// Interior layer zeta1 < r < 1, exterior layer 1 < r < zeta2, truncation ball r < R.
struct ShellRegion {
    double zeta1 = 0.9;
    double zeta2 = 1.1;
    double R = 2.0;

    void validate() const;
    // Standing assumption of the stress-concentration estimates.
    bool zeta2_tau_below_one(const NondimensionalMedium& nm) const { return zeta2 * nm.tau < 1.0; }
};

enum class ShellMethod { ModalClosedForm, Quadrature };
enum class FieldKind { Incident, Interior, Scattered, ExteriorTotal };
enum class NormKind { Value, Gradient };

struct ShellOptions {
    ExteriorModel model = ExteriorModel::RadialProfile;
    int radial_nodes = 64;        // initial Gauss-Legendre count, doubled until converged
    int max_radial_nodes = 1024;
    double radial_tol = 1e-10;
    int angular_nodes = 0;        // 0 selects 2n + 8 in both angles
};

// Squared L^2 norm of the field (or of its gradient) over a < |x| < b.  The
// interior field is defined for b <= 1, the scattered and exterior total fields
// for a >= 1, the incident field everywhere.
LogComplex shell_norm_sq(const ModalSolution3D& sol, FieldKind field, NormKind kind, double a, double b,
                         ShellMethod method, const ShellOptions& opt = {});
LogComplex shell_norm(const ModalSolution3D& sol, FieldKind field, NormKind kind, double a, double b,
                      ShellMethod method, const ShellOptions& opt = {});

// 2D: only the modal path exists (exact angular integration); Quadrature throws.
LogComplex shell_norm_sq_2d(const ModalSolution2D& sol, FieldKind field, double a, double b, ShellMethod method);

struct LocalizationRatios {
    double eta_u = 0.0, eta_us = 0.0;
};
LocalizationRatios localization_ratios(const ModalSolution3D& sol, const ShellRegion& region,
                                       ShellMethod method = ShellMethod::ModalClosedForm,
                                       const ShellOptions& opt = {});
LocalizationRatios localization_ratios(const ModalSolution2D& sol, const ShellRegion& region);

// Leading-order forms: zeta1^{2n+3} and (zeta2^{1-2n} - R^{1-2n}) / (1 - R^{1-2n}),
// both for the squared ratios.
double interior_localization_closed_form(int n, double zeta1);
double exterior_localization_closed_form(int n, double zeta2, double R);

struct ResonanceRatios {
    LogComplex grad_ratio_u, grad_ratio_us;      // ||grad u||_{S-} / ||u^i||_D, ||grad u^s||_{S+} / ||u^i||_D
    LogComplex bound_u, bound_us;
};
ResonanceRatios resonance_ratios(const ModalSolution3D& sol, const ShellRegion& region,
                                 ShellMethod method = ShellMethod::ModalClosedForm, const ShellOptions& opt = {});
// n^2 sqrt(1 - zeta1) / (3 tau^{n+2} delta)
LogComplex interior_gradient_bound(int n, double zeta1, const NondimensionalMedium& nm);
// n k sqrt(10 (zeta2 - 1)) / (3 sqrt(3 zeta2) (lambda + 2 mu)^{3/2} tau^{n-1})
LogComplex exterior_gradient_bound(int n, double zeta2, const NondimensionalMedium& nm);

// Energies over 1 < r < zeta2 of the exterior total field u = u^i + u^s.
struct StressEnergies {
    LogComplex E_u, E_us, E_ui, Rest;
    // |E_u - (E_us + E_ui + Rest)| / E_u
    double identity_residual = 0.0;
};
StressEnergies stress_energies(const ModalSolution3D& sol, const ShellRegion& region,
                               ShellMethod method = ShellMethod::ModalClosedForm, const ShellOptions& opt = {});

// Closed forms printed for the shell energies, evaluated with the solution's
// coefficients (including the output factor).  They carry leading-order factors.
struct PrintedEnergies {
    LogComplex E_us, E_ui, Rest;
    LogComplex ratio_law;  // n (tau zeta2)^{2n} zeta2 / (k^2 tau^2)
};
PrintedEnergies printed_energy_forms(const ModalSolution3D& sol, double zeta2);

// n^2 (zeta2 - 1) k^2 / (27 zeta2 (lambda + 2 mu)^2 tau^{2n-2})
LogComplex stress_lower_bound(int n, double zeta2, const NondimensionalMedium& nm);

struct Thresholds {
    double n1 = 0, n2 = 0, n3 = 0, n4 = 0;
    double N1 = 0, N2 = 0;
    double M0 = 0, M1 = 0;
};
Thresholds thresholds(double eta, double M, const ShellRegion& region, const NondimensionalMedium& nm);

struct Phenomena {
    bool BL = false, SR = false, QMR = false, SC = false;
    std::string to_string() const;  // "BL+SR", "-" when empty
};
struct RegimeFlags {
    Phenomena interior, scattered, exterior_total;
    std::vector<std::string> rows;  // names of the satisfied condition rows
};
RegimeFlags classify_regime(int n, double M, const Thresholds& th);

enum class Provenance { ClosedForm, Quadrature, Both };
struct ProvenanceEntry {
    Provenance kind = Provenance::ClosedForm;
    double delta = 0.0;  // relative difference when both paths were evaluated
};

struct DiagnosticsReport {
    int n = 0;
    ShellRegion region;
    double eta = 0.0, M = 0.0;
    double eta_u = 0.0, eta_us = 0.0;
    LogComplex grad_ratio_u, grad_ratio_us, bound_u, bound_us;
    LogComplex E_u, E_us, E_ui, Rest;
    double identity_residual = 0.0;
    PrintedEnergies printed;
    LogComplex beta_bound;
    LogComplex incident_norm_sq;  // ||u^i||^2_{L^2(D)} as used in the ratios
    bool zeta2_tau_below_one = false;
    Thresholds thresholds;
    RegimeFlags regime_flags;
    std::map<std::string, ProvenanceEntry> provenance;
};

struct DiagnosticsOptions {
    double eta = 0.01;
    double M = 1e3;
    bool cross_check = true;  // also run the full quadrature path and record the differences
    ShellOptions shell;
};
DiagnosticsReport run_diagnostics(const ModalSolution3D& sol, const ShellRegion& region,
                                  const DiagnosticsOptions& opt = {});

std::string to_string(Provenance p);

}  // namespace bubblescat
