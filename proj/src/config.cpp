#include "bubblescat/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bubblescat {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

struct Located {
    int line = 0;
    std::string text;
};

// Line lookup for "section.key" so that value errors can quote the offending line.
std::map<std::string, Located> index_lines(const std::string& text) {
    std::map<std::string, Located> out;
    std::istringstream is(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = trim(raw);
        if (s.empty() || s[0] == ';' || s[0] == '#') continue;
        if (s.front() == '[') {
            section = trim(s.substr(1, s.find(']') - 1));
            out[section] = {line, raw};
            continue;
        }
        auto eq = s.find('=');
        if (eq != std::string::npos) out[section + "." + trim(s.substr(0, eq))] = {line, raw};
    }
    return out;
}

class Reader {
public:
    Reader(const pt::ptree& tree, std::map<std::string, Located> lines) : tree_(tree), lines_(std::move(lines)) {}

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        auto it = lines_.find(key);
        if (it == lines_.end()) throw ConfigError(key + ": " + msg);
        throw ConfigError("line " + std::to_string(it->second.line) + ": " + key + ": " + msg, it->second.line,
                          it->second.text);
    }

    void check_keys(const std::map<std::string, std::set<std::string>>& allowed) const {
        for (const auto& [section, body] : tree_) {
            auto sit = allowed.find(section);
            if (sit == allowed.end()) {
                if (body.empty() && !body.data().empty()) fail("." + section, "key outside any section");
                fail(section, "unknown section [" + section + "]");
            }
            for (const auto& [key, value] : body) {
                if (!sit->second.count(key)) fail(section + "." + key, "unknown key '" + key + "'");
            }
        }
    }

    std::optional<std::string> raw(const std::string& section, const std::string& key) const {
        auto s = tree_.get_child_optional(pt::ptree::path_type(section, '\x01'));
        if (!s) return std::nullopt;
        auto v = s->get_child_optional(pt::ptree::path_type(key, '\x01'));
        if (!v) return std::nullopt;
        return trim(v->data());
    }

    double number(const std::string& full, const std::string& text) const {
        try {
            size_t pos = 0;
            double v = std::stod(text, &pos);
            if (trim(text.substr(pos)).empty() && std::isfinite(v)) return v;
        } catch (const std::exception&) {
        }
        fail(full, "expected a number, got '" + text + "'");
    }

    void real(const std::string& section, const std::string& key, double& out) const {
        if (auto v = raw(section, key)) out = number(section + "." + key, *v);
    }

    void integer(const std::string& section, const std::string& key, int& out) const {
        if (auto v = raw(section, key)) out = to_int(section + "." + key, *v);
    }

    int to_int(const std::string& full, const std::string& text) const {
        double d = number(full, text);
        if (d != std::floor(d) || std::abs(d) > 1e9) fail(full, "expected an integer, got '" + text + "'");
        return static_cast<int>(d);
    }

    void boolean(const std::string& section, const std::string& key, bool& out) const {
        auto v = raw(section, key);
        if (!v) return;
        std::string s = lower(*v);
        if (s == "true" || s == "yes" || s == "on" || s == "1") out = true;
        else if (s == "false" || s == "no" || s == "off" || s == "0") out = false;
        else fail(section + "." + key, "expected true/false, got '" + *v + "'");
    }

    std::vector<std::string> list(const std::string& text) const {
        std::vector<std::string> out;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (!item.empty()) out.push_back(item);
        }
        return out;
    }

    cplx complex_value(const std::string& full, const std::string& text) const {
        auto colon = text.find(':');
        if (colon == std::string::npos) return number(full, text);
        return {number(full, trim(text.substr(0, colon))), number(full, trim(text.substr(colon + 1)))};
    }

private:
    const pt::ptree& tree_;
    std::map<std::string, Located> lines_;
};

const std::map<std::string, std::set<std::string>> kAllowed = {
    {"experiment", {"name"}},
    {"medium", {"rho_b", "kappa", "rho_e", "lambda_t", "mu_t", "omega", "l_D"}},
    {"nondimensional", {"k", "tau", "delta", "mu"}},
    {"incident", {"dimension", "n", "m", "amplitude", "amplitude_im", "coefficients", "normalized", "form", "exterior"}},
    {"shell", {"zeta1", "zeta2", "R"}},
    {"grid", {"extent", "resolution", "plane"}},
    {"run", {"outputs"}},
    {"diagnostics", {"eta", "M", "cross_check"}},
    {"tolerances", {"k_max", "delta_max", "tau_max", "radial_tol"}},
};

const std::set<std::string> kOutputs = {"incident", "interior", "scattered", "total", "gradient", "energy"};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string to_string(IncidentForm f) { return f == IncidentForm::Gradient ? "gradient" : "layer"; }
std::string to_string(ExteriorModel m) { return m == ExteriorModel::ExactLayer ? "exact" : "profile"; }
std::string to_string(GridPlane p) {
    switch (p) {
        case GridPlane::XY: return "xy";
        case GridPlane::XZ: return "xz";
        case GridPlane::YZ: return "yz";
        case GridPlane::Volume: return "volume";
    }
    return "xz";
}

NondimensionalMedium ExperimentConfig::resolved_medium() const {
    if (nondimensional) return *nondimensional;
    return nondimensionalize(medium);
}

void ExperimentConfig::validate() const {
    try {
        medium.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("[medium] ") + e.what());
    }
    if (incident.dimension != 2 && incident.dimension != 3) throw ConfigError("[incident] dimension must be 2 or 3");
    if (incident.n.empty()) throw ConfigError("[incident] n is empty");
    for (int n : incident.n)
        if (n < 1) throw ConfigError("[incident] n must be >= 1, got " + std::to_string(n));
    if (incident.dimension == 3) {
        if (!incident.coefficients.empty()) {
            if (incident.n.size() != 1) throw ConfigError("[incident] coefficients require a single n");
            if (incident.coefficients.size() != 2 * static_cast<size_t>(incident.n[0]) + 1)
                throw ConfigError("[incident] coefficients must list 2n+1 values");
        } else if (incident.m) {
            for (int n : incident.n)
                if (std::abs(*incident.m) > n)
                    throw ConfigError("[incident] |m| = " + std::to_string(std::abs(*incident.m)) + " exceeds n = " +
                                      std::to_string(n));
        }
    } else if (!incident.coefficients.empty()) {
        throw ConfigError("[incident] coefficients are 3D only");
    }
    try {
        shell.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("[shell] ") + e.what());
    }
    if (!(grid.extent > 0)) throw ConfigError("[grid] extent must be positive");
    if (grid.resolution < 2 || grid.resolution > 2001) throw ConfigError("[grid] resolution must be in [2, 2001]");
    if (incident.dimension == 2 && grid.plane != GridPlane::XY && grid.plane != GridPlane::XZ)
        throw ConfigError("[grid] plane applies to 3D only");
    for (const auto& o : run.outputs)
        if (!kOutputs.count(o)) throw ConfigError("[run] unknown output '" + o + "'");
    if (!(diagnostics.eta > 0 && diagnostics.eta < 1)) throw ConfigError("[diagnostics] eta must lie in (0, 1)");
    if (!(diagnostics.M > 1)) throw ConfigError("[diagnostics] M must exceed 1");
    if (!(tolerances.radial_tol > 0)) throw ConfigError("[tolerances] radial_tol must be positive");
}

ExperimentConfig parse_config(const std::string& text, ExperimentConfig cfg) {
    pt::ptree tree;
    {
        std::istringstream is(text);
        try {
            pt::ini_parser::read_ini(is, tree);
        } catch (const pt::ini_parser_error& e) {
            int line = static_cast<int>(e.line());
            std::string line_text;
            std::istringstream again(text);
            for (int i = 0; i < line && std::getline(again, line_text); ++i) {
            }
            throw ConfigError("line " + std::to_string(line) + ": " + e.message(), line, line_text);
        }
    }
    Reader rd(tree, index_lines(text));
    rd.check_keys(kAllowed);

    if (auto v = rd.raw("experiment", "name")) cfg.name = *v;

    auto& md = cfg.medium;
    bool medium_given = false;
    for (auto [key, ptr] : std::initializer_list<std::pair<const char*, double*>>{
             {"rho_b", &md.rho_b}, {"kappa", &md.kappa}, {"rho_e", &md.rho_e}, {"lambda_t", &md.lambda_t},
             {"mu_t", &md.mu_t}, {"omega", &md.omega}, {"l_D", &md.l_D}}) {
        if (rd.raw("medium", key)) medium_given = true;
        rd.real("medium", key, *ptr);
    }
    if (medium_given) cfg.nondimensional.reset();

    if (tree.get_child_optional("nondimensional")) {
        NondimensionalMedium base = cfg.resolved_medium();
        double k = base.k, tau = base.tau, delta = base.delta, mu = base.mu;
        rd.real("nondimensional", "k", k);
        rd.real("nondimensional", "tau", tau);
        rd.real("nondimensional", "delta", delta);
        rd.real("nondimensional", "mu", mu);
        try {
            NondimensionalMedium nm = make_nondimensional(k, tau, delta, mu);
            nm.c_b = base.c_b;
            cfg.nondimensional = nm;
        } catch (const std::exception& e) {
            rd.fail("nondimensional", e.what());
        }
    }

    auto& inc = cfg.incident;
    rd.integer("incident", "dimension", inc.dimension);
    if (auto v = rd.raw("incident", "n")) {
        inc.n.clear();
        for (const auto& item : rd.list(*v)) inc.n.push_back(rd.to_int("incident.n", item));
    }
    if (auto v = rd.raw("incident", "m")) {
        if (lower(*v) == "n") inc.m.reset();
        else inc.m = rd.to_int("incident.m", *v);
    }
    {
        double re = inc.amplitude.real(), im = inc.amplitude.imag();
        rd.real("incident", "amplitude", re);
        rd.real("incident", "amplitude_im", im);
        inc.amplitude = {re, im};
    }
    if (auto v = rd.raw("incident", "coefficients")) {
        inc.coefficients.clear();
        for (const auto& item : rd.list(*v)) inc.coefficients.push_back(rd.complex_value("incident.coefficients", item));
    }
    rd.boolean("incident", "normalized", inc.normalized);
    if (auto v = rd.raw("incident", "form")) {
        std::string s = lower(*v);
        if (s == "layer") inc.form = IncidentForm::LayerHarmonic;
        else if (s == "gradient") inc.form = IncidentForm::Gradient;
        else rd.fail("incident.form", "expected 'layer' or 'gradient', got '" + *v + "'");
    }
    if (auto v = rd.raw("incident", "exterior")) {
        std::string s = lower(*v);
        if (s == "profile") inc.exterior = ExteriorModel::RadialProfile;
        else if (s == "exact") inc.exterior = ExteriorModel::ExactLayer;
        else rd.fail("incident.exterior", "expected 'profile' or 'exact', got '" + *v + "'");
    }

    rd.real("shell", "zeta1", cfg.shell.zeta1);
    rd.real("shell", "zeta2", cfg.shell.zeta2);
    rd.real("shell", "R", cfg.shell.R);

    rd.real("grid", "extent", cfg.grid.extent);
    rd.integer("grid", "resolution", cfg.grid.resolution);
    if (auto v = rd.raw("grid", "plane")) {
        std::string s = lower(*v);
        if (s == "xy") cfg.grid.plane = GridPlane::XY;
        else if (s == "xz") cfg.grid.plane = GridPlane::XZ;
        else if (s == "yz") cfg.grid.plane = GridPlane::YZ;
        else if (s == "volume") cfg.grid.plane = GridPlane::Volume;
        else rd.fail("grid.plane", "expected xy, xz, yz or volume, got '" + *v + "'");
    }

    if (auto v = rd.raw("run", "outputs")) {
        cfg.run.outputs = rd.list(*v);
        for (const auto& o : cfg.run.outputs)
            if (!kOutputs.count(o)) rd.fail("run.outputs", "unknown output '" + o + "'");
    }

    rd.real("diagnostics", "eta", cfg.diagnostics.eta);
    rd.real("diagnostics", "M", cfg.diagnostics.M);
    rd.boolean("diagnostics", "cross_check", cfg.diagnostics.cross_check);

    rd.real("tolerances", "k_max", cfg.tolerances.regime.k_max);
    rd.real("tolerances", "delta_max", cfg.tolerances.regime.delta_max);
    rd.real("tolerances", "tau_max", cfg.tolerances.regime.tau_max);
    rd.real("tolerances", "radial_tol", cfg.tolerances.radial_tol);

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

std::vector<std::string> preset_names() { return {"pdms", "table1", "table2"}; }

ExperimentConfig preset_config(const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    if (name == "pdms") return cfg;
    if (name == "table1") {
        cfg.incident.dimension = 2;
        cfg.incident.n = {20, 40, 60};
        cfg.shell = {0.9, 1.1, 2.0};
        cfg.grid.plane = GridPlane::XY;
        return cfg;
    }
    if (name == "table2") {
        // Five-digit dimensionless values as listed with the table; the sectoral
        // gradient-form incident wave of the 3D numerical example.
        cfg.nondimensional = pdms_rounded_nondimensional();
        cfg.incident.dimension = 3;
        cfg.incident.n = {5, 15, 25};
        cfg.incident.m.reset();
        cfg.incident.form = IncidentForm::Gradient;
        cfg.shell = {0.9, 1.1, 2.0};
        return cfg;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

std::string to_config_text(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "[experiment]\nname = " << cfg.name << "\n\n";
    const auto& md = cfg.medium;
    os << "[medium]\nrho_b = " << fmt_double(md.rho_b) << "\nkappa = " << fmt_double(md.kappa)
       << "\nrho_e = " << fmt_double(md.rho_e) << "\nlambda_t = " << fmt_double(md.lambda_t)
       << "\nmu_t = " << fmt_double(md.mu_t) << "\nomega = " << fmt_double(md.omega)
       << "\nl_D = " << fmt_double(md.l_D) << "\n\n";
    if (cfg.nondimensional) {
        const auto& nm = *cfg.nondimensional;
        os << "[nondimensional]\nk = " << fmt_double(nm.k) << "\ntau = " << fmt_double(nm.tau)
           << "\ndelta = " << fmt_double(nm.delta) << "\nmu = " << fmt_double(nm.mu) << "\n\n";
    }
    const auto& inc = cfg.incident;
    os << "[incident]\ndimension = " << inc.dimension << "\nn = ";
    for (size_t i = 0; i < inc.n.size(); ++i) os << (i ? ", " : "") << inc.n[i];
    os << "\nm = " << (inc.m ? std::to_string(*inc.m) : std::string("n"));
    os << "\namplitude = " << fmt_double(inc.amplitude.real())
       << "\namplitude_im = " << fmt_double(inc.amplitude.imag());
    if (!inc.coefficients.empty()) {
        os << "\ncoefficients = ";
        for (size_t i = 0; i < inc.coefficients.size(); ++i)
            os << (i ? ", " : "") << fmt_double(inc.coefficients[i].real()) << ":"
               << fmt_double(inc.coefficients[i].imag());
    }
    os << "\nnormalized = " << (inc.normalized ? "true" : "false") << "\nform = " << to_string(inc.form)
       << "\nexterior = " << to_string(inc.exterior) << "\n\n";
    os << "[shell]\nzeta1 = " << fmt_double(cfg.shell.zeta1) << "\nzeta2 = " << fmt_double(cfg.shell.zeta2)
       << "\nR = " << fmt_double(cfg.shell.R) << "\n\n";
    os << "[grid]\nextent = " << fmt_double(cfg.grid.extent) << "\nresolution = " << cfg.grid.resolution
       << "\nplane = " << to_string(cfg.grid.plane) << "\n\n";
    os << "[run]\noutputs = ";
    for (size_t i = 0; i < cfg.run.outputs.size(); ++i) os << (i ? ", " : "") << cfg.run.outputs[i];
    os << "\n\n[diagnostics]\neta = " << fmt_double(cfg.diagnostics.eta) << "\nM = " << fmt_double(cfg.diagnostics.M)
       << "\ncross_check = " << (cfg.diagnostics.cross_check ? "true" : "false") << "\n\n";
    os << "[tolerances]\nk_max = " << fmt_double(cfg.tolerances.regime.k_max)
       << "\ndelta_max = " << fmt_double(cfg.tolerances.regime.delta_max)
       << "\ntau_max = " << fmt_double(cfg.tolerances.regime.tau_max)
       << "\nradial_tol = " << fmt_double(cfg.tolerances.radial_tol) << "\n";
    return os.str();
}

}  // namespace bubblescat
