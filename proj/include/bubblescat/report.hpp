#pragma once

#include <string>
#include <vector>

#include "bubblescat/config.hpp"
#include "bubblescat/diagnostics.hpp"
#include "bubblescat/solver2d.hpp"
#include "bubblescat/solver3d.hpp"
#include "json.hpp"

namespace bubblescat {

using json = nlohmann::ordered_json;

// {log10_mag, phase, value}; value is null when it does not fit a double.
json to_json(const LogComplex& z);
json to_json(const NondimensionalMedium& nm);
json to_json(const PhysicalMedium& pm);
json to_json(const Thresholds& th);
json to_json(const RegimeFlags& rf);
json to_json(const DiagnosticsReport& rep);

// Short scientific rendering of a log-scaled magnitude, e.g. "1.1523e+06"; works
// beyond the double range.
std::string format_magnitude(const LogComplex& z, int digits = 5);
std::string format_double(double v, int digits = 6);

// Aligned plain-text table; the first row is the header.
std::string format_table(const std::vector<std::vector<std::string>>& rows);

std::string diagnostics_table(const std::vector<DiagnosticsReport>& reports);

// Sample points of the configured grid, in a fixed order (last axis fastest).
std::vector<Vec3> grid_points(const GridSection& grid, int dimension);

struct GridSummary {
    std::vector<std::string> columns;
    size_t points = 0;
    LogComplex max_energy_density;       // over exterior grid points
    LogComplex max_energy_density_ball;  // over exterior points with |x| <= extent
};

// Writes a CSV of field samples for one solved mode.  `solution == nullptr`
// writes the all-zero grid of a vanishing incident wave.  Rows are produced by
// `threads` workers and written in index order.
GridSummary write_grid_3d(const ModalSolution3D* solution, const ExperimentConfig& cfg, const std::string& csv_path,
                          int threads);
GridSummary write_grid_2d(const ModalSolution2D* solution, const ExperimentConfig& cfg, const std::string& csv_path,
                          int threads);

}  // namespace bubblescat
