// Acceptance checks.  Usage: acceptance [c1 ... c7]; no arguments runs all.
// Prints detail lines followed by one PASS/FAIL line per criterion and exits
// nonzero when any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "bubblescat/diagnostics.hpp"
#include "bubblescat/report.hpp"
#include "bubblescat/solver2d.hpp"
#include "bubblescat/solver3d.hpp"
#include "bubblescat/verify.hpp"

using namespace bubblescat;

namespace {

struct Outcome {
    bool pass = true;
    std::string summary;
};

using Detail = std::ostringstream;

double mantissa(const LogComplex& z) {
    double l = z.log10_magnitude();
    return std::pow(10.0, l - std::floor(l));
}
int decade(const LogComplex& z) { return static_cast<int>(std::floor(z.log10_magnitude())); }

std::string sci(double v, int digits = 6) { return format_double(v, digits); }

NondimensionalMedium pdms() { return nondimensionalize(pdms_medium()); }

// Sectoral gradient-form incident wave of the 3D numerical example, normalized.
ModalSolution3D solve_sectoral(int n, const NondimensionalMedium& nm, IncidentForm form = IncidentForm::Gradient) {
    return solve_modes(IncidentSpec3D::single(n, n, 1.0, true, form), nm);
}

Outcome c1(Detail& d) {
    // Tabulated mantissas and decades
    struct Row {
        int n;
        double mant;
        int table_decade;
    };
    const Row rows[] = {{5, 4.37537, -4}, {15, 1.152114, 7}, {25, 9.36331, 16}};
    const auto rounded = pdms_rounded_nondimensional();
    const auto exact = pdms();
    Outcome o;
    for (const auto& r : rows) {
        LogComplex b = stress_lower_bound(r.n, 1.1, rounded);
        LogComplex be = stress_lower_bound(r.n, 1.1, exact);
        double m = mantissa(b);
        bool ok = std::abs(m - r.mant) <= 5e-4 * r.mant;
        o.pass = o.pass && ok;
        d << "    n = " << r.n << ": beta = " << format_magnitude(b, 7) << " (mantissa " << sci(m, 7) << ", table "
          << sci(r.mant, 7) << "e" << r.table_decade << ", decade offset " << r.table_decade - decade(b)
          << "); exact-parameter beta = " << format_magnitude(be, 7) << (ok ? "" : "  MISMATCH") << "\n";
    }
    o.summary = "beta mantissas at n = 5, 15, 25 (five-digit parameters), decade offset reported";
    return o;
}

Outcome c2(Detail& d) {
    Outcome o;
    const auto nm = pdms();
    ShellRegion region{0.9, 1.1, 2.0};
    int failures = 0;
    for (int n : {5, 15, 25}) {
        auto sol = solve_sectoral(n, nm);
        for (auto model : {ExteriorModel::RadialProfile, ExteriorModel::ExactLayer}) {
            ShellOptions opt;
            opt.model = model;
            auto e = stress_energies(sol, region, ShellMethod::ModalClosedForm, opt);
            LogComplex inc = shell_norm_sq(sol, FieldKind::Incident, NormKind::Value, 0.0, 1.0,
                                           ShellMethod::ModalClosedForm, opt);
            LogComplex lhs = e.E_u / inc;
            LogComplex beta = stress_lower_bound(n, region.zeta2, nm);
            bool ok = lhs.log10_magnitude() >= beta.log10_magnitude();
            if (model == ExteriorModel::RadialProfile) {
                o.pass = o.pass && ok;
                failures += ok ? 0 : 1;
            }
            d << "    n = " << n << (model == ExteriorModel::RadialProfile ? " [radial profile]" : " [exact layer]  ")
              << ": E(u)/|ui|^2 = " << format_magnitude(lhs) << ", beta = " << format_magnitude(beta)
              << ", E(us) = " << format_magnitude(e.E_us / inc) << (ok ? "  holds" : "  VIOLATED") << "\n";
        }
    }
    o.summary = "E(u)/|ui|^2 >= beta at n = 5, 15, 25, zeta2 = 1.1 (" + std::to_string(failures) +
                " of 3 violated with the default exterior model)";
    return o;
}

Outcome c3(Detail& d) {
    Outcome o;
    const auto nm = pdms();
    const double z1 = 0.9, z2 = 1.1, R = 2.0;
    ShellRegion region{z1, z2, R};
    double worst = 0.0;
    for (int n : {5, 10}) {
        // closed forms written out independently of the library
        double interior = std::pow(z1, 2 * n + 3);
        double exterior = (1.0 - std::pow(z2 / R, 2 * n - 1)) / (std::pow(z2, 2 * n - 1) * (1.0 - std::pow(R, 1 - 2 * n)));
        for (auto form : {IncidentForm::LayerHarmonic, IncidentForm::Gradient}) {
            auto sol = solve_modes(IncidentSpec3D::single(n, n == 5 ? 2 : -3, 1.0, true, form), nm);
            auto l = localization_ratios(sol, region);
            double eu = std::abs(l.eta_u * l.eta_u - interior) / interior;
            double es = std::abs(l.eta_us * l.eta_us - exterior) / exterior;
            worst = std::max({worst, eu, es});
            d << "    n = " << n << (form == IncidentForm::Gradient ? " [gradient]" : " [layer]   ")
              << ": eta_u^2 = " << sci(l.eta_u * l.eta_u, 8) << " vs " << sci(interior, 8)
              << ", eta_us^2 = " << sci(l.eta_us * l.eta_us, 8) << " vs " << sci(exterior, 8) << "\n";
        }
        if (n == 5) {
            bool lit = std::abs(interior - 0.2541866) <= 1e-4 * 0.2541866 && std::abs(exterior - 0.422972) <= 1e-4 * 0.422972;
            o.pass = o.pass && lit;
            d << "    n = 5 closed forms against the quoted values 0.2541866, 0.422972: " << (lit ? "agree" : "DIFFER")
              << "\n";
        }
    }
    o.pass = o.pass && worst <= 1e-4;
    o.summary = "3D localization ratios against the closed forms at n = 5, 10 (worst relative " + sci(worst, 3) + ")";
    return o;
}

Outcome c4(Detail& d) {
    Outcome o;
    const auto nm = pdms();
    std::vector<double> eu, es;
    for (int n : {20, 40, 60}) {
        IncidentSpec2D s;
        s.n = n;
        s.normalized = true;
        auto l = localization_ratio_2d(solve_modes_2d(s, nm), 0.9, 1.1, 2.0);
        eu.push_back(l.eta_u);
        es.push_back(l.eta_us);
        d << "    n = " << n << ": eta_u = " << sci(l.eta_u, 5) << ", eta_us = " << sci(l.eta_us, 5) << "\n";
    }
    bool bounds = eu[2] < 0.1 && es[2] < 0.3;
    bool mono = eu[0] > eu[1] && eu[1] > eu[2] && es[0] > es[1] && es[1] > es[2];
    o.pass = bounds && mono;
    o.summary = std::string("2D disk: n = 60 eta_u < 0.1 and eta_us < 0.3 ") + (bounds ? "(yes)" : "(no)") +
                ", monotone over 20, 40, 60 " + (mono ? "(yes)" : "(no)");
    return o;
}

Outcome c5(Detail& d) {
    Outcome o;
    const auto nm = pdms();
    ShellRegion region{0.9, 1.1, 2.0};
    int failures = 0;
    for (int n : {15, 25}) {
        for (auto form : {IncidentForm::Gradient, IncidentForm::LayerHarmonic}) {
            auto sol = solve_sectoral(n, nm, form);
            auto rr = resonance_ratios(sol, region);
            bool ok_u = rr.grad_ratio_u.log10_magnitude() > rr.bound_u.log10_magnitude();
            bool ok_s = rr.grad_ratio_us.log10_magnitude() > rr.bound_us.log10_magnitude();
            if (form == IncidentForm::Gradient) {
                o.pass = o.pass && ok_u && ok_s;
                failures += (ok_u ? 0 : 1) + (ok_s ? 0 : 1);
            }
            d << "    n = " << n << (form == IncidentForm::Gradient ? " [gradient]" : " [layer]   ")
              << ": |grad u|_S-/|ui|_D = " << format_magnitude(rr.grad_ratio_u) << " vs " << format_magnitude(rr.bound_u)
              << (ok_u ? " exceeds" : " BELOW") << "; |grad us|_S+/|ui|_D = " << format_magnitude(rr.grad_ratio_us)
              << " vs " << format_magnitude(rr.bound_us) << (ok_s ? " exceeds" : " BELOW") << "\n";
        }
    }
    o.summary = "gradient ratios exceed the surface-resonance bounds at n = 15, 25 (" + std::to_string(failures) +
                " of 4 below)";
    return o;
}

Outcome c6(Detail& d) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto results = run_property_suites();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    int failed = 0;
    for (const auto& r : results) {
        failed += r.pass ? 0 : 1;
        char buf[200];
        std::snprintf(buf, sizeof buf, "    %-32s worst %-10.3g threshold %-8.3g %s\n", r.name.c_str(), r.measured,
                      r.threshold, r.pass ? "PASS" : "FAIL");
        d << buf;
    }
    o.pass = failed == 0 && secs < 300.0;
    o.summary = std::to_string(results.size() - failed) + " of " + std::to_string(results.size()) +
                " property suites within thresholds";
    return o;
}

bool finite(const LogComplex& z) { return z.is_zero() || std::isfinite(z.log10_magnitude()); }

Outcome c7(Detail& d) {
    Outcome o;
    const auto nm = pdms();
    const int n = 60;
    int checked = 0, bad = 0;
    auto check = [&](const std::string& what, const LogComplex& z) {
        ++checked;
        if (!finite(z) || std::isnan(z.phase())) {
            ++bad;
            d << "    non-finite: " << what << "\n";
        }
    };
    for (auto form : {IncidentForm::LayerHarmonic, IncidentForm::Gradient}) {
        auto sol = solve_sectoral(n, nm, form);
        check("determinant", sol.determinant);
        check("incident norm", sol.incident_norm);
        for (const auto& p : sol.phi_e) check("phi_e", p);
        for (const auto& p : sol.phi_b) check("phi_b", p);
        for (auto model : {ExteriorModel::RadialProfile, ExteriorModel::ExactLayer}) {
            DiagnosticsOptions opt;
            opt.shell.model = model;
            opt.cross_check = false;
            auto rep = run_diagnostics(sol, ShellRegion{}, opt);
            for (const auto& [name, z] : std::map<std::string, LogComplex>{{"grad_ratio_u", rep.grad_ratio_u},
                                                                          {"grad_ratio_us", rep.grad_ratio_us},
                                                                          {"bound_u", rep.bound_u},
                                                                          {"bound_us", rep.bound_us},
                                                                          {"E_u", rep.E_u},
                                                                          {"E_us", rep.E_us},
                                                                          {"E_ui", rep.E_ui},
                                                                          {"Rest", rep.Rest},
                                                                          {"beta", rep.beta_bound}})
                check(name, z);
            ++checked;
            if (!(std::isfinite(rep.eta_u) && std::isfinite(rep.eta_us) && std::isfinite(rep.identity_residual))) ++bad;
            if (form == IncidentForm::Gradient && model == ExteriorModel::RadialProfile)
                d << "    3D n = 60: eta_u = " << sci(rep.eta_u, 4) << ", E(u) = " << format_magnitude(rep.E_u)
                  << ", beta = " << format_magnitude(rep.beta_bound) << ", |phi_b| = 10^"
                  << sci(sol.phi_b[2 * n].log10_magnitude(), 5) << "\n";
        }
        for (Vec3 x : {Vec3{0.3, 0.2, 0.5}, Vec3{0.6, -0.5, 0.55}, Vec3{1.2, 0.4, -0.3}, Vec3{0.0, 1.9, 0.1}}) {
            double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
            if (r < 1) {
                check("interior field", eval_interior(sol, x).scale);
                check("incident field", eval_incident(sol, x).scale);
            } else {
                auto t = eval_total_exterior(sol, x, ExteriorModel::ExactLayer);
                check("exterior field", t.scale);
                check("stress density", stress_density(t, nm));
            }
        }
    }
    IncidentSpec2D s;
    s.n = n;
    s.normalized = true;
    auto sol2 = solve_modes_2d(s, nm);
    check("2D a", sol2.a);
    check("2D b", sol2.b);
    check("2D c", sol2.c);
    auto l2 = localization_ratio_2d(sol2, 0.9, 1.1, 2.0);
    ++checked;
    if (!(std::isfinite(l2.eta_u) && std::isfinite(l2.eta_us))) ++bad;
    check("2D stress density", eval_fields_2d(sol2, {1.3, 0.4}).stress_density);
    d << "    2D n = 60: |a| = 10^" << sci(sol2.a.log10_magnitude(), 5) << ", |b| = 10^"
      << sci(sol2.b.log10_magnitude(), 5) << ", condition " << sci(sol2.condition_number, 3) << "\n";
    o.pass = bad == 0;
    o.summary = "n = 60 PDMS solves and diagnostics finite (" + std::to_string(checked - bad) + " of " +
                std::to_string(checked) + " outputs)";
    return o;
}

struct Criterion {
    std::string id;
    double budget_s;
    std::function<Outcome(Detail&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all = {{"c1", 1.0, c1},  {"c2", 30.0, c2}, {"c3", 10.0, c3}, {"c4", 60.0, c4},
                                        {"c5", 30.0, c5}, {"c6", 300.0, c6}, {"c7", 300.0, c7}};
    std::vector<std::string> wanted(argv + 1, argv + argc);
    bool all_pass = true;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        Detail d;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(d);
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = std::string("error: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = secs < c.budget_s;
        bool pass = o.pass && in_time;
        all_pass = all_pass && pass;
        std::string id = c.id;
        id[0] = 'C';
        std::cout << d.str();
        std::printf("%s %s  %s [%.2f s of %.0f s]%s\n", id.c_str(), pass ? "PASS" : "FAIL", o.summary.c_str(), secs,
                    c.budget_s, in_time ? "" : " over budget");
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
