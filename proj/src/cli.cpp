#include "bubblescat/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "bubblescat/config.hpp"
#include "bubblescat/diagnostics.hpp"
#include "bubblescat/report.hpp"
#include "bubblescat/verify.hpp"

namespace bubblescat {

namespace {

namespace fs = std::filesystem;

// k_s as printed with the dimensionless parameter list.
constexpr double kPrintedKs = 1.2159e-7;

struct Common {
    std::string config_path;
    std::string preset = "pdms";
    std::string out_dir = ".";
    int threads = 1;
};

ExperimentConfig load(const Common& c) {
    ExperimentConfig cfg = preset_config(c.preset);
    if (!c.config_path.empty()) cfg = load_config(c.config_path, cfg);
    return cfg;
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

IncidentSpec3D spec3(const ExperimentConfig& cfg, int n) {
    const auto& inc = cfg.incident;
    IncidentSpec3D s;
    s.n = n;
    s.normalized = inc.normalized;
    s.form = inc.form;
    if (!inc.coefficients.empty()) {
        s.f = inc.coefficients;
    } else {
        s.f.assign(2 * static_cast<size_t>(n) + 1, 0.0);
        int m = inc.m ? *inc.m : n;
        s.f[static_cast<size_t>(m + n)] = inc.amplitude;
    }
    return s;
}

bool vanishing(const IncidentSpec3D& s) {
    for (cplx f : s.f)
        if (f != cplx(0.0, 0.0)) return false;
    return true;
}

json incident_json(const ExperimentConfig& cfg, int n) {
    const auto& inc = cfg.incident;
    json j = {{"dimension", inc.dimension}, {"n", n}, {"normalized", inc.normalized}};
    if (inc.dimension == 3) {
        j["form"] = to_string(inc.form);
        j["exterior"] = to_string(inc.exterior);
        if (inc.coefficients.empty()) j["m"] = inc.m ? *inc.m : n;
    }
    if (inc.coefficients.empty()) j["amplitude"] = json::array({inc.amplitude.real(), inc.amplitude.imag()});
    else {
        json f = json::array();
        for (cplx c : inc.coefficients) f.push_back(json::array({c.real(), c.imag()}));
        j["coefficients"] = f;
    }
    return j;
}

json medium_json(const ExperimentConfig& cfg, const NondimensionalMedium& nm) {
    json j = {{"physical", to_json(cfg.medium)}, {"nondimensional", to_json(nm)}};
    j["source"] = cfg.nondimensional ? "nondimensional section" : "physical medium";
    return j;
}

int cmd_params(const Common& c, std::ostream& out) {
    ExperimentConfig cfg = load(c);
    NondimensionalMedium nm = cfg.resolved_medium();
    auto warnings = check_regime(nm, cfg.tolerances.regime);
    const auto& pm = cfg.medium;
    out << "physical medium\n";
    out << format_table({{"rho_b", "kappa", "rho_e", "lambda_t", "mu_t", "omega", "l_D"},
                         {format_double(pm.rho_b), format_double(pm.kappa), format_double(pm.rho_e),
                          format_double(pm.lambda_t), format_double(pm.mu_t), format_double(pm.omega),
                          format_double(pm.l_D)}});
    if (cfg.nondimensional) out << "(overridden by the [nondimensional] section)\n";
    out << "\ndimensionless parameters\n";
    out << format_table({{"name", "value"},
                         {"k", format_double(nm.k, 5)},
                         {"tau", format_double(nm.tau, 5)},
                         {"delta", format_double(nm.delta, 5)},
                         {"k_p", format_double(nm.k_p, 4)},
                         {"lambda", format_double(nm.lambda, 8)},
                         {"mu", format_double(nm.mu, 8)},
                         {"k_s = k tau / sqrt(mu)", format_double(nm.k_s, 4)},
                         {"k tau / sqrt(2 mu)", format_double(nm.k_s_half_mu, 4)}});
    out << "\nnote: k_s is listed as " << format_double(kPrintedKs, 5)
        << " alongside these parameters; k tau / sqrt(2 mu) evaluates to " << format_double(nm.k_s_half_mu, 4)
        << " and the shear wavenumber of the Lame operator used by the solvers is k tau / sqrt(mu) = "
        << format_double(nm.k_s, 4) << ".\n";
    out << "\nregime warnings: ";
    if (warnings.empty()) out << "none";
    for (size_t i = 0; i < warnings.size(); ++i) out << (i ? ", " : "") << to_string(warnings[i]);
    out << "\n";
    if (c.out_dir != ".") {
        json j = {{"schema", 1}, {"command", "params"}, {"name", cfg.name}, {"medium", medium_json(cfg, nm)}};
        json w = json::array();
        for (auto x : warnings) w.push_back(to_string(x));
        j["regime_warnings"] = w;
        j["k_s_printed"] = kPrintedKs;
        write_json(ensure_dir(c.out_dir) / "params.json", j);
    }
    return EXIT_OK;
}

int cmd_fields(const Common& c, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg = load(c);
    NondimensionalMedium nm = cfg.resolved_medium();
    fs::path dir = ensure_dir(c.out_dir);
    bool flagged = false;
    for (int n : cfg.incident.n) {
        std::string stem = "fields_" + std::to_string(cfg.incident.dimension) + "d_n" + std::to_string(n);
        json side = {{"schema", 1}, {"command", "fields"}, {"name", cfg.name}, {"csv", stem + ".csv"},
                     {"medium", medium_json(cfg, nm)}, {"incident", incident_json(cfg, n)},
                     {"grid", {{"extent", cfg.grid.extent}, {"resolution", cfg.grid.resolution}}}};
        GridSummary sum;
        if (cfg.incident.dimension == 3) {
            side["grid"]["plane"] = to_string(cfg.grid.plane);
            IncidentSpec3D spec = spec3(cfg, n);
            if (vanishing(spec)) {
                sum = write_grid_3d(nullptr, cfg, (dir / (stem + ".csv")).string(), c.threads);
                side["normalization"] = nullptr;
                side["near_singular"] = false;
            } else {
                ModalSolution3D sol = solve_modes(spec, nm);
                sum = write_grid_3d(&sol, cfg, (dir / (stem + ".csv")).string(), c.threads);
                side["normalization"] = {{"incident_norm", to_json(sol.incident_norm)},
                                         {"log10_incident_norm", sol.incident_norm.log10_magnitude()},
                                         {"output_factor", to_json(sol.output_factor())}};
                side["determinant"] = to_json(sol.determinant);
                side["near_singular"] = sol.near_singular;
                if (sol.near_singular) {
                    flagged = true;
                    err << "NEAR_SINGULAR: modal determinant of n = " << n << " is near zero relative to its leading scale\n";
                }
            }
        } else {
            if (cfg.incident.amplitude == cplx(0.0, 0.0)) {
                sum = write_grid_2d(nullptr, cfg, (dir / (stem + ".csv")).string(), c.threads);
                side["normalization"] = nullptr;
                side["near_singular"] = false;
            } else {
                IncidentSpec2D spec;
                spec.n = n;
                spec.amplitude = cfg.incident.amplitude;
                spec.normalized = cfg.incident.normalized;
                try {
                    ModalSolution2D sol = solve_modes_2d(spec, nm);
                    sum = write_grid_2d(&sol, cfg, (dir / (stem + ".csv")).string(), c.threads);
                    side["normalization"] = {{"incident_norm", to_json(sol.incident_norm)},
                                             {"log10_incident_norm", sol.incident_norm.log10_magnitude()},
                                             {"output_factor", to_json(sol.output_factor())}};
                    side["condition_number"] = sol.condition_number;
                    side["near_singular"] = false;
                } catch (const NearResonanceError& e) {
                    err << "NEAR_SINGULAR: " << e.what() << " (condition number " << e.condition_number << ")\n";
                    flagged = true;
                    continue;
                }
            }
        }
        side["columns"] = sum.columns;
        side["points"] = sum.points;
        side["max_E_density"] = to_json(sum.max_energy_density);
        side["max_E_density_in_ball"] = to_json(sum.max_energy_density_ball);
        write_json(dir / (stem + ".json"), side);
        out << stem << ".csv: " << sum.points << " points, max E density " << format_magnitude(sum.max_energy_density)
            << " (|x| <= " << format_double(cfg.grid.extent) << ": " << format_magnitude(sum.max_energy_density_ball)
            << ")\n";
    }
    return flagged ? EXIT_NUMERICAL_FLAG : EXIT_OK;
}

int diagnostics_3d(const ExperimentConfig& cfg, const NondimensionalMedium& nm, const fs::path& dir, std::ostream& out,
                   std::ostream& err) {
    DiagnosticsOptions opt;
    opt.eta = cfg.diagnostics.eta;
    opt.M = cfg.diagnostics.M;
    opt.cross_check = cfg.diagnostics.cross_check;
    opt.shell.model = cfg.incident.exterior;
    opt.shell.radial_tol = cfg.tolerances.radial_tol;
    std::vector<DiagnosticsReport> reports;
    json arr = json::array();
    bool flagged = false;
    for (int n : cfg.incident.n) {
        IncidentSpec3D spec = spec3(cfg, n);
        if (vanishing(spec)) throw ConfigError("[incident] diagnostics need a nonzero incident wave");
        ModalSolution3D sol = solve_modes(spec, nm);
        if (sol.near_singular) {
            flagged = true;
            err << "NEAR_SINGULAR: modal determinant of n = " << n << " is near zero relative to its leading scale\n";
        }
        reports.push_back(run_diagnostics(sol, cfg.shell, opt));
        json j = to_json(reports.back());
        j["incident"] = incident_json(cfg, n);
        j["near_singular"] = sol.near_singular;
        j["beta_bound_x10"] = to_json(reports.back().beta_bound * LogComplex(10.0));
        arr.push_back(j);
    }
    if (cfg.name == "table2") {
        out << "stress energies over 1 < r < " << format_double(cfg.shell.zeta2) << " (normalized incident wave)\n";
        std::vector<std::vector<std::string>> rows{{"n", "E(u)", "E(us)", "beta", "10 beta"}};
        for (const auto& r : reports)
            rows.push_back({std::to_string(r.n), format_magnitude(r.E_u), format_magnitude(r.E_us),
                            format_magnitude(r.beta_bound), format_magnitude(r.beta_bound * LogComplex(10.0))});
        out << format_table(rows) << "\n";
    }
    out << diagnostics_table(reports);
    json doc = {{"schema", 1}, {"command", "diagnostics"}, {"name", cfg.name}, {"dimension", 3},
                {"medium", medium_json(cfg, nm)}, {"reports", arr}};
    write_json(dir / "diagnostics.json", doc);
    return flagged ? EXIT_NUMERICAL_FLAG : EXIT_OK;
}

int diagnostics_2d(const ExperimentConfig& cfg, const NondimensionalMedium& nm, const fs::path& dir, std::ostream& out,
                   std::ostream& err) {
    std::vector<std::vector<std::string>> rows{{"n", "eta_u", "eta_us", "|u|^2 S-", "|u|^2 D", "|us|^2 S+",
                                                "|us|^2 B_R\\D", "cond"}};
    json arr = json::array();
    for (int n : cfg.incident.n) {
        if (cfg.incident.amplitude == cplx(0.0, 0.0))
            throw ConfigError("[incident] diagnostics need a nonzero incident wave");
        IncidentSpec2D spec;
        spec.n = n;
        spec.amplitude = cfg.incident.amplitude;
        spec.normalized = cfg.incident.normalized;
        ModalSolution2D sol;
        try {
            sol = solve_modes_2d(spec, nm);
        } catch (const NearResonanceError& e) {
            err << "NEAR_SINGULAR: " << e.what() << " (condition number " << e.condition_number << ")\n";
            return EXIT_NUMERICAL_FLAG;
        }
        const auto& s = cfg.shell;
        auto loc = localization_ratios(sol, s);
        LogComplex in_shell = interior_norm_sq_2d(sol, s.zeta1, 1.0), in_all = interior_norm_sq_2d(sol, 0.0, 1.0);
        LogComplex sc_shell = scattered_norm_sq_2d(sol, 1.0, s.zeta2), sc_all = scattered_norm_sq_2d(sol, 1.0, s.R);
        rows.push_back({std::to_string(n), format_double(loc.eta_u, 4), format_double(loc.eta_us, 4),
                        format_magnitude(in_shell), format_magnitude(in_all), format_magnitude(sc_shell),
                        format_magnitude(sc_all), format_double(sol.condition_number, 3)});
        arr.push_back({{"n", n},
                       {"region", {{"zeta1", s.zeta1}, {"zeta2", s.zeta2}, {"R", s.R}}},
                       {"incident", incident_json(cfg, n)},
                       {"eta_u", loc.eta_u},
                       {"eta_us", loc.eta_us},
                       {"interior_shell_norm_sq", to_json(in_shell)},
                       {"interior_norm_sq", to_json(in_all)},
                       {"scattered_shell_norm_sq", to_json(sc_shell)},
                       {"scattered_norm_sq", to_json(sc_all)},
                       {"a", to_json(sol.a)},
                       {"b", to_json(sol.b)},
                       {"c", to_json(sol.c)},
                       {"condition_number", sol.condition_number},
                       {"system_residual", sol.system_residual},
                       {"provenance", {{"eta_u", {{"source", "quadrature"}}}, {"eta_us", {{"source", "quadrature"}}}}}});
    }
    out << "boundary localization ratios, disk, zeta1 = " << format_double(cfg.shell.zeta1)
        << ", zeta2 = " << format_double(cfg.shell.zeta2) << ", R = " << format_double(cfg.shell.R) << "\n";
    out << format_table(rows);
    json doc = {{"schema", 1}, {"command", "diagnostics"}, {"name", cfg.name}, {"dimension", 2},
                {"medium", medium_json(cfg, nm)}, {"reports", arr}};
    write_json(dir / "diagnostics.json", doc);
    return EXIT_OK;
}

int cmd_diagnostics(const Common& c, std::ostream& out, std::ostream& err) {
    ExperimentConfig cfg = load(c);
    NondimensionalMedium nm = cfg.resolved_medium();
    fs::path dir = ensure_dir(c.out_dir);
    return cfg.incident.dimension == 3 ? diagnostics_3d(cfg, nm, dir, out, err) : diagnostics_2d(cfg, nm, dir, out, err);
}

int cmd_verify(const std::string& filter, const Common& c, std::ostream& out) {
    auto suites = property_suites();
    std::vector<CheckResult> results(suites.size());
    std::vector<char> selected(suites.size(), 0);
    for (size_t i = 0; i < suites.size(); ++i)
        selected[i] = filter.empty() || suites[i].name.find(filter) != std::string::npos;
    // suites are independent; results are collected by index
    std::vector<std::thread> pool;
    int workers = std::max(1, c.threads);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (size_t i = static_cast<size_t>(w); i < suites.size(); i += static_cast<size_t>(workers))
                if (selected[i]) results[i] = run_suite(suites[i]);
        });
    for (auto& t : pool) t.join();

    std::vector<std::vector<std::string>> rows{{"suite", "worst", "threshold", "result", "seconds"}};
    json arr = json::array();
    bool ok = true;
    for (size_t i = 0; i < suites.size(); ++i) {
        if (!selected[i]) continue;
        const auto& r = results[i];
        ok = ok && r.pass;
        rows.push_back({r.name, format_double(r.measured, 3), format_double(r.threshold, 3), r.pass ? "PASS" : "FAIL",
                        format_double(r.seconds, 3)});
        arr.push_back({{"name", r.name}, {"description", r.description}, {"worst", r.measured},
                       {"threshold", r.threshold}, {"pass", r.pass}});
    }
    out << format_table(rows);
    if (c.out_dir != ".")
        write_json(ensure_dir(c.out_dir) / "verify.json", {{"schema", 1}, {"command", "verify"}, {"suites", arr}});
    return ok ? EXIT_OK : EXIT_NUMERICAL_FLAG;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bubble-elastic scattering: modal solves, field grids and diagnostics", "bubblescat"};
    app.require_subcommand(1);
    Common c;
    std::string filter;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", c.config_path, "INI experiment configuration")->check(CLI::ExistingFile);
        sub->add_option("--preset", c.preset, "Named configuration applied before --config")
            ->check(CLI::IsMember(preset_names()));
        sub->add_option("--out", c.out_dir, "Output directory");
        sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1, 256));
    };
    auto* params = app.add_subcommand("params", "Print the dimensionless medium and regime warnings");
    auto* fields = app.add_subcommand("fields", "Write CSV field grids with JSON sidecars");
    auto* diag = app.add_subcommand("diagnostics", "Localization, resonance and stress-energy report");
    auto* verify = app.add_subcommand("verify", "Run the invariant suites");
    for (auto* s : {params, fields, diag, verify}) add_common(s);
    verify->add_option("--filter", filter, "Run only suites whose name contains this text");

    std::vector<std::string> argv_store{"bubblescat"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? EXIT_OK : EXIT_CONFIG_ERROR;
    }

    try {
        if (*params) return cmd_params(c, out);
        if (*fields) return cmd_fields(c, out, err);
        if (*diag) return cmd_diagnostics(c, out, err);
        if (*verify) return cmd_verify(filter, c, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        if (e.line > 0) err << "  " << e.line << " | " << e.line_text << "\n";
        return EXIT_CONFIG_ERROR;
    } catch (const NearResonanceError& e) {
        err << "NEAR_SINGULAR: " << e.what() << "\n";
        return EXIT_NUMERICAL_FLAG;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return EXIT_NUMERICAL_FLAG;
    }
    return EXIT_CONFIG_ERROR;
}

}  // namespace bubblescat
