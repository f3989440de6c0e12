#include "bubblescat/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <thread>

namespace bubblescat {

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// |scale| * sqrt(sum |g_ij|^2) as a log-scaled magnitude
template <class Field>
LogComplex gradient_norm(const Field& f) {
    double s = 0.0;
    for (const auto& row : f.grad)
        for (const auto& g : row) s += std::norm(g);
    if (f.scale.is_zero() || s == 0.0) return LogComplex();
    return LogComplex::from_exp(f.scale.ln_magnitude()) * LogComplex(std::sqrt(s));
}

LogComplex scalar_gradient_norm(const ScaledScalarField& f) {
    double s = 0.0;
    for (const auto& g : f.grad) s += std::norm(g);
    if (f.scale.is_zero() || s == 0.0) return LogComplex();
    return LogComplex::from_exp(f.scale.ln_magnitude()) * LogComplex(std::sqrt(s));
}

LogComplex scalar_gradient_norm(const ScaledScalarField2D& f) {
    double s = std::norm(f.grad[0]) + std::norm(f.grad[1]);
    if (f.scale.is_zero() || s == 0.0) return LogComplex();
    return LogComplex::from_exp(f.scale.ln_magnitude()) * LogComplex(std::sqrt(s));
}

std::string log10_cell(const LogComplex& z) { return fmt(z.log10_magnitude()); }

void push_complex(std::string& row, cplx z) {
    row += ',';
    row += fmt(z.real());
    row += ',';
    row += fmt(z.imag());
}

void push_blank(std::string& row, int cells) {
    for (int i = 0; i < cells; ++i) row += ',';
}

// Rows are filled by index so the output does not depend on scheduling.
template <class RowFn>
void fill_rows(std::vector<std::string>& rows, int threads, const RowFn& row_fn) {
    const size_t count = rows.size();
    int workers = std::max(1, std::min<int>(threads, static_cast<int>(std::max<size_t>(count, 1))));
    if (workers == 1) {
        for (size_t i = 0; i < count; ++i) rows[i] = row_fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (size_t i = static_cast<size_t>(w); i < count; i += static_cast<size_t>(workers)) rows[i] = row_fn(i);
        });
    for (auto& t : pool) t.join();
}

bool wants(const ExperimentConfig& cfg, const std::string& what) {
    const auto& o = cfg.run.outputs;
    return std::find(o.begin(), o.end(), what) != o.end();
}

void write_csv(const std::string& path, const std::vector<std::string>& columns, const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    for (size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& r : rows) out << r << '\n';
}

void keep_max(LogComplex& best, const LogComplex& e) {
    if (!e.is_zero() && (best.is_zero() || e.log10_magnitude() > best.log10_magnitude())) best = e;
}

void summarize_energy(GridSummary& sum, const std::vector<LogComplex>& energy, const std::vector<Vec3>& pts,
                      double extent) {
    for (size_t i = 0; i < energy.size(); ++i) {
        keep_max(sum.max_energy_density, energy[i]);
        const Vec3& x = pts[i];
        if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] <= extent * extent) keep_max(sum.max_energy_density_ball, energy[i]);
    }
}

}  // namespace

json to_json(const LogComplex& z) {
    json j;
    j["log10_mag"] = z.is_zero() ? json(nullptr) : json(z.log10_magnitude());
    j["phase"] = z.phase();
    cplx v = z.value();
    if (std::isfinite(v.real()) && std::isfinite(v.imag()) && (z.is_zero() || z.log10_magnitude() > -300)) {
        j["value"] = v.imag() == 0.0 ? json(v.real()) : json::array({v.real(), v.imag()});
    } else {
        j["value"] = nullptr;
    }
    return j;
}

json to_json(const NondimensionalMedium& nm) {
    return {{"k", nm.k},         {"tau", nm.tau},     {"delta", nm.delta},
            {"lambda", nm.lambda}, {"mu", nm.mu},     {"k_p", nm.k_p},
            {"k_s", nm.k_s},     {"k_s_over_sqrt_2mu", nm.k_s_half_mu}, {"c_b", nm.c_b}};
}

json to_json(const PhysicalMedium& pm) {
    return {{"rho_b", pm.rho_b}, {"kappa", pm.kappa}, {"rho_e", pm.rho_e}, {"lambda_t", pm.lambda_t},
            {"mu_t", pm.mu_t},   {"omega", pm.omega}, {"l_D", pm.l_D}};
}

json to_json(const Thresholds& th) {
    return {{"n1", finite_or_null(th.n1)}, {"n2", finite_or_null(th.n2)}, {"n3", finite_or_null(th.n3)},
            {"n4", finite_or_null(th.n4)}, {"N1", finite_or_null(th.N1)}, {"N2", finite_or_null(th.N2)},
            {"M0", finite_or_null(th.M0)}, {"M1", finite_or_null(th.M1)}};
}

json to_json(const RegimeFlags& rf) {
    return {{"interior", rf.interior.to_string()},
            {"scattered", rf.scattered.to_string()},
            {"exterior_total", rf.exterior_total.to_string()},
            {"rows", rf.rows}};
}

json to_json(const DiagnosticsReport& rep) {
    json j;
    j["n"] = rep.n;
    j["region"] = {{"zeta1", rep.region.zeta1}, {"zeta2", rep.region.zeta2}, {"R", rep.region.R}};
    j["eta"] = rep.eta;
    j["M"] = rep.M;
    j["eta_u"] = rep.eta_u;
    j["eta_us"] = rep.eta_us;
    j["grad_ratio_u"] = to_json(rep.grad_ratio_u);
    j["grad_ratio_us"] = to_json(rep.grad_ratio_us);
    j["bound_u"] = to_json(rep.bound_u);
    j["bound_us"] = to_json(rep.bound_us);
    j["E_u"] = to_json(rep.E_u);
    j["E_us"] = to_json(rep.E_us);
    j["E_ui"] = to_json(rep.E_ui);
    j["Rest"] = to_json(rep.Rest);
    j["identity_residual"] = rep.identity_residual;
    j["printed"] = {{"E_us", to_json(rep.printed.E_us)},
                    {"E_ui", to_json(rep.printed.E_ui)},
                    {"Rest", to_json(rep.printed.Rest)},
                    {"ratio_law", to_json(rep.printed.ratio_law)}};
    j["beta_bound"] = to_json(rep.beta_bound);
    j["incident_norm_sq"] = to_json(rep.incident_norm_sq);
    j["zeta2_tau_below_one"] = rep.zeta2_tau_below_one;
    j["thresholds"] = to_json(rep.thresholds);
    j["regime_flags"] = to_json(rep.regime_flags);
    json prov = json::object();
    for (const auto& [key, e] : rep.provenance) {
        json p = {{"source", to_string(e.kind)}};
        if (e.kind == Provenance::Both) p["delta"] = e.delta;
        prov[key] = p;
    }
    j["provenance"] = prov;
    return j;
}

std::string format_magnitude(const LogComplex& z, int digits) {
    if (z.is_zero()) return "0";
    double l = z.log10_magnitude();
    if (!std::isfinite(l)) return fmt(l);
    double e = std::floor(l);
    double m = std::pow(10.0, l - e);
    if (m >= 10.0 - 0.5 * std::pow(10.0, 1 - digits)) {
        m /= 10.0;
        e += 1;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*fe%+03d", digits - 1, m, static_cast<int>(e));
    std::string s = buf;
    cplx v = z.mantissa();
    if (v.real() < 0 && std::abs(v.imag()) < 1e-12 * std::abs(v.real())) s = "-" + s;
    return s;
}

std::string format_double(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string format_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width;
    for (const auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], r[i].size());
        }
    std::string out;
    for (size_t k = 0; k < rows.size(); ++k) {
        std::string line;
        for (size_t i = 0; i < rows[k].size(); ++i) {
            if (i) line += "  ";
            std::string pad(width[i] - rows[k][i].size(), ' ');
            line += i == 0 ? rows[k][i] + pad : pad + rows[k][i];
        }
        out += line + '\n';
        if (k == 0) {
            size_t total = 0;
            for (size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
            out += std::string(total, '-') + '\n';
        }
    }
    return out;
}

std::string diagnostics_table(const std::vector<DiagnosticsReport>& reports) {
    std::vector<std::vector<std::string>> rows{{"n", "eta_u", "eta_us", "|grad u|/|ui|", "bound", "|grad us|/|ui|",
                                                "bound", "E(u)", "E(us)", "E(ui)", "beta", "u / us / u_ext"}};
    for (const auto& r : reports) {
        rows.push_back({std::to_string(r.n), format_double(r.eta_u), format_double(r.eta_us),
                        format_magnitude(r.grad_ratio_u), format_magnitude(r.bound_u),
                        format_magnitude(r.grad_ratio_us), format_magnitude(r.bound_us), format_magnitude(r.E_u),
                        format_magnitude(r.E_us), format_magnitude(r.E_ui), format_magnitude(r.beta_bound),
                        r.regime_flags.interior.to_string() + " / " + r.regime_flags.scattered.to_string() + " / " +
                            r.regime_flags.exterior_total.to_string()});
    }
    return format_table(rows);
}

std::vector<Vec3> grid_points(const GridSection& grid, int dimension) {
    const int N = grid.resolution;
    auto coord = [&](int i) { return -grid.extent + 2.0 * grid.extent * i / (N - 1); };
    std::vector<Vec3> pts;
    if (dimension == 2 || grid.plane != GridPlane::Volume) {
        pts.reserve(static_cast<size_t>(N) * N);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                double u = coord(a), v = coord(b);
                if (dimension == 2 || grid.plane == GridPlane::XY) pts.push_back({u, v, 0.0});
                else if (grid.plane == GridPlane::XZ) pts.push_back({u, 0.0, v});
                else pts.push_back({0.0, u, v});
            }
        return pts;
    }
    pts.reserve(static_cast<size_t>(N) * N * N);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int c = 0; c < N; ++c) pts.push_back({coord(a), coord(b), coord(c)});
    return pts;
}

GridSummary write_grid_3d(const ModalSolution3D* sol, const ExperimentConfig& cfg, const std::string& csv_path,
                          int threads) {
    const bool w_inc = wants(cfg, "incident"), w_int = wants(cfg, "interior"), w_sc = wants(cfg, "scattered"),
               w_tot = wants(cfg, "total"), w_grad = wants(cfg, "gradient"), w_en = wants(cfg, "energy");
    GridSummary sum;
    sum.columns = {"x1", "x2", "x3", "r", "theta", "phi"};
    auto vec_cols = [&](const std::string& p) {
        for (int i = 1; i <= 3; ++i) {
            sum.columns.push_back(p + std::to_string(i) + "_re");
            sum.columns.push_back(p + std::to_string(i) + "_im");
        }
    };
    if (w_inc) vec_cols("ui");
    if (w_int) {
        sum.columns.push_back("u_re");
        sum.columns.push_back("u_im");
    }
    if (w_sc) vec_cols("us");
    if (w_tot) vec_cols("ut");
    if (w_grad)
        for (const char* c : {"log10_grad_ui", "log10_grad_u", "log10_grad_us", "log10_grad_ut"}) sum.columns.push_back(c);
    if (w_en) {
        sum.columns.push_back("E_density");
        sum.columns.push_back("log10_E_density");
    }

    auto pts = grid_points(cfg.grid, 3);
    sum.points = pts.size();
    std::vector<std::string> rows(pts.size());
    std::vector<LogComplex> energy(pts.size());
    const ExteriorModel model = cfg.incident.exterior;

    fill_rows(rows, threads, [&](size_t idx) {
        const Vec3& x = pts[idx];
        double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        double theta = r > 0 ? std::acos(std::clamp(x[2] / r, -1.0, 1.0)) : 0.0;
        double phi = std::atan2(x[1], x[0]);
        std::string row = fmt(x[0]) + "," + fmt(x[1]) + "," + fmt(x[2]) + "," + fmt(r) + "," + fmt(theta) + "," + fmt(phi);
        const bool inside = r <= 1.0;
        // the modal fields vanish at the origin for n >= 1; evaluate just off it
        Vec3 xe = r > 0 ? x : Vec3{0.0, 0.0, 1e-300};
        if (!sol) {
            auto zeros = [&](int k) {
                for (int i = 0; i < k; ++i) row += ",0";
            };
            if (w_inc) zeros(6);
            if (w_int) inside ? zeros(2) : push_blank(row, 2);
            if (w_sc) inside ? push_blank(row, 6) : zeros(6);
            if (w_tot) inside ? push_blank(row, 6) : zeros(6);
            if (w_grad) {
                row += ",-inf";
                row += inside ? ",-inf," : ",,-inf";
                row += inside ? "," : ",-inf";
            }
            if (w_en) row += inside ? ",," : ",0,-inf";
            return row;
        }
        ScaledVectorField inc = eval_incident(*sol, xe);
        ScaledScalarField in;
        ScaledVectorField sc, tot;
        if (inside) in = eval_interior(*sol, xe);
        else {
            sc = eval_exterior_scattered(*sol, xe, model);
            tot = eval_total_exterior(*sol, xe, model);
        }
        if (w_inc)
            for (cplx c : inc.value()) push_complex(row, c);
        if (w_int) inside ? push_complex(row, in.value()) : push_blank(row, 2);
        if (w_sc) {
            if (inside) push_blank(row, 6);
            else
                for (cplx c : sc.value()) push_complex(row, c);
        }
        if (w_tot) {
            if (inside) push_blank(row, 6);
            else
                for (cplx c : tot.value()) push_complex(row, c);
        }
        if (w_grad) {
            row += "," + log10_cell(gradient_norm(inc));
            row += "," + (inside ? log10_cell(scalar_gradient_norm(in)) : std::string());
            row += "," + (inside ? std::string() : log10_cell(gradient_norm(sc)));
            row += "," + (inside ? std::string() : log10_cell(gradient_norm(tot)));
        }
        if (w_en) {
            if (inside) {
                push_blank(row, 2);
            } else {
                LogComplex e = stress_density(tot, sol->medium);
                energy[idx] = e;
                row += "," + fmt(e.value().real()) + "," + log10_cell(e);
            }
        }
        return row;
    });
    summarize_energy(sum, energy, pts, cfg.grid.extent);
    write_csv(csv_path, sum.columns, rows);
    return sum;
}

GridSummary write_grid_2d(const ModalSolution2D* sol, const ExperimentConfig& cfg, const std::string& csv_path,
                          int threads) {
    const bool w_inc = wants(cfg, "incident"), w_int = wants(cfg, "interior"), w_sc = wants(cfg, "scattered"),
               w_tot = wants(cfg, "total"), w_grad = wants(cfg, "gradient"), w_en = wants(cfg, "energy");
    GridSummary sum;
    sum.columns = {"x1", "x2", "r", "theta"};
    auto vec_cols = [&](const std::string& p) {
        for (int i = 1; i <= 2; ++i) {
            sum.columns.push_back(p + std::to_string(i) + "_re");
            sum.columns.push_back(p + std::to_string(i) + "_im");
        }
    };
    if (w_inc) vec_cols("ui");
    if (w_int) {
        sum.columns.push_back("u_re");
        sum.columns.push_back("u_im");
    }
    if (w_sc) vec_cols("us");
    if (w_tot) vec_cols("ut");
    if (w_grad)
        for (const char* c : {"log10_grad_ui", "log10_grad_u", "log10_grad_us", "log10_grad_ut"}) sum.columns.push_back(c);
    if (w_en) {
        sum.columns.push_back("E_density");
        sum.columns.push_back("log10_E_density");
    }

    auto pts = grid_points(cfg.grid, 2);
    sum.points = pts.size();
    std::vector<std::string> rows(pts.size());
    std::vector<LogComplex> energy(pts.size());

    fill_rows(rows, threads, [&](size_t idx) {
        const Vec2 x{pts[idx][0], pts[idx][1]};
        double r = std::hypot(x[0], x[1]);
        double theta = std::atan2(x[1], x[0]);
        std::string row = fmt(x[0]) + "," + fmt(x[1]) + "," + fmt(r) + "," + fmt(theta);
        const bool inside = r <= 1.0;
        if (!sol) {
            auto zeros = [&](int k) {
                for (int i = 0; i < k; ++i) row += ",0";
            };
            if (w_inc) zeros(4);
            if (w_int) inside ? zeros(2) : push_blank(row, 2);
            if (w_sc) inside ? push_blank(row, 4) : zeros(4);
            if (w_tot) inside ? push_blank(row, 4) : zeros(4);
            if (w_grad) {
                row += ",-inf";
                row += inside ? ",-inf," : ",,-inf";
                row += inside ? "," : ",-inf";
            }
            if (w_en) row += inside ? ",," : ",0,-inf";
            return row;
        }
        Vec2 xe = r > 0 ? x : Vec2{1e-300, 0.0};
        Fields2D f = eval_fields_2d(*sol, xe);
        if (w_inc)
            for (cplx c : f.incident.value()) push_complex(row, c);
        if (w_int) inside ? push_complex(row, f.interior.value()) : push_blank(row, 2);
        if (w_sc) {
            if (inside) push_blank(row, 4);
            else
                for (cplx c : f.scattered.value()) push_complex(row, c);
        }
        if (w_tot) {
            if (inside) push_blank(row, 4);
            else
                for (cplx c : f.total.value()) push_complex(row, c);
        }
        if (w_grad) {
            row += "," + log10_cell(gradient_norm(f.incident));
            row += "," + (inside ? log10_cell(scalar_gradient_norm(f.interior)) : std::string());
            row += "," + (inside ? std::string() : log10_cell(gradient_norm(f.scattered)));
            row += "," + (inside ? std::string() : log10_cell(gradient_norm(f.total)));
        }
        if (w_en) {
            if (inside) {
                push_blank(row, 2);
            } else {
                energy[idx] = f.stress_density;
                row += "," + fmt(f.stress_density.value().real()) + "," + log10_cell(f.stress_density);
            }
        }
        return row;
    });
    summarize_energy(sum, energy, pts, cfg.grid.extent);
    write_csv(csv_path, sum.columns, rows);
    return sum;
}

}  // namespace bubblescat
