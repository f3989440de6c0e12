#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bubblescat/diagnostics.hpp"
#include "bubblescat/medium.hpp"
#include "bubblescat/solver3d.hpp"

namespace bubblescat {

// Raised for unreadable files, unknown sections or keys, and invalid values.
// `line` is 0 when the problem is not tied to one line (e.g. a missing key).
struct ConfigError : std::runtime_error {
    int line = 0;
    std::string line_text;
    ConfigError(const std::string& what, int line_ = 0, std::string text = {})
        : std::runtime_error(what), line(line_), line_text(std::move(text)) {}
};

struct IncidentSection {
    int dimension = 3;
    std::vector<int> n{5};
    // 3D single-mode order; nullopt selects m = n.
    std::optional<int> m = 0;
    cplx amplitude = 1.0;
    // 3D full coefficient list f_{-n..n}; overrides m/amplitude when set (single n only).
    std::vector<cplx> coefficients;
    bool normalized = true;
    IncidentForm form = IncidentForm::LayerHarmonic;
    ExteriorModel exterior = ExteriorModel::RadialProfile;
};

enum class GridPlane { XY, XZ, YZ, Volume };

struct GridSection {
    double extent = 2.0;  // samples cover [-extent, extent] per axis
    int resolution = 41;  // samples per axis
    GridPlane plane = GridPlane::XZ;  // 3D only
};

struct RunSection {
    // any of: incident, interior, scattered, total, gradient, energy
    std::vector<std::string> outputs{"incident", "interior", "scattered", "total", "gradient", "energy"};
};

struct DiagnosticsSection {
    double eta = 0.01;
    double M = 1e3;
    bool cross_check = true;
};

struct ToleranceSection {
    RegimeThresholds regime;
    double radial_tol = 1e-10;
};

struct ExperimentConfig {
    std::string name = "custom";
    PhysicalMedium medium = pdms_medium();
    // Dimensionless values that replace the ones derived from `medium` when set.
    std::optional<NondimensionalMedium> nondimensional;
    IncidentSection incident;
    ShellRegion shell;
    GridSection grid;
    RunSection run;
    DiagnosticsSection diagnostics;
    ToleranceSection tolerances;

    NondimensionalMedium resolved_medium() const;
    // Referential completeness and dimension consistency; throws ConfigError.
    void validate() const;
};

// Sections: [medium], [nondimensional], [incident], [shell], [grid], [run],
// [diagnostics], [tolerances].  Keys not listed in the README are rejected.
// Values override those already in `base`.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

// "pdms" (defaults), "table1" (2D, n = 20, 40, 60), "table2" (3D, n = 5, 15, 25).
ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Text form accepted by parse_config that reproduces `cfg`.
std::string to_config_text(const ExperimentConfig& cfg);

std::string to_string(IncidentForm f);
std::string to_string(ExteriorModel m);
std::string to_string(GridPlane p);

}  // namespace bubblescat
