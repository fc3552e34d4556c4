#include "ekd/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ekd/errors.hpp"

namespace ekd {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad(const std::string& msg) { throw ParseError("config: " + msg); }

}  // namespace

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) bad("cannot read " + path.string());
    RunConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            bad(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (!section.empty()) key = section + "." + key;
        cfg.kv_[key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

void RunConfig::set(const std::string& key, const std::string& value) { kv_[key] = value; }

bool RunConfig::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string RunConfig::str(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    return it == kv_.end() ? fallback : it->second;
}

double RunConfig::num(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        bad("key '" + key + "' is not a number: " + it->second);
    }
}

double RunConfig::num_required(const std::string& key) const {
    if (!has(key)) bad("missing required key '" + key + "'");
    return num(key, 0.0);
}

long RunConfig::integer(const std::string& key, long fallback) const {
    return static_cast<long>(num(key, static_cast<double>(fallback)));
}

bool RunConfig::flag(const std::string& key, bool fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    const std::string& v = it->second;
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    bad("key '" + key + "' is not a boolean: " + v);
}

std::vector<double> RunConfig::list(const std::string& key) const {
    std::vector<double> out;
    const auto it = kv_.find(key);
    if (it == kv_.end()) return out;
    std::string item;
    std::istringstream is(it->second);
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            bad("key '" + key + "' has a non-numeric entry: " + item);
        }
    }
    return out;
}

GpModel RunConfig::make_model() const {
    GpModel m;
    const std::string trend = str("model.trend", "constant");
    if (trend == "constant")
        m.trend = TrendBasis::Constant;
    else if (trend == "linear")
        m.trend = TrendBasis::Linear;
    else
        bad("model.trend must be constant or linear, got " + trend);

    const std::string kernel = str("model.kernel", "matern32");
    if (kernel == "exponential")
        m.family.variant = KernelVariant::Exponential;
    else if (kernel == "matern32")
        m.family.variant = KernelVariant::Matern32;
    else if (kernel == "matern52")
        m.family.variant = KernelVariant::Matern52;
    else if (kernel == "matern")
        m.family.variant = KernelVariant::MaternGeneral;
    else
        bad("model.kernel must be exponential|matern32|matern52|matern, got " + kernel);

    const std::string scaling = str("model.scaling", "plain");
    if (scaling == "plain")
        m.family.scaling = ArgScaling::Plain;
    else if (scaling == "appendix")
        m.family.scaling = ArgScaling::AppendixSqrtGamma;
    else
        bad("model.scaling must be plain or appendix, got " + scaling);

    m.sigma2 = num("model.sigma2", 1.0);
    m.params.rho = num_required("model.rho");
    m.params.gamma = num("model.gamma", 1.5);

    const std::string free = str("model.free", "rho");
    m.params.free_rho = free.find("rho") != std::string::npos;
    m.params.free_gamma = free.find("gamma") != std::string::npos;
    if (!m.params.free_rho && !m.params.free_gamma)
        bad("model.free must name rho, gamma or both");

    if (has("model.beta")) {
        const auto b = list("model.beta");
        Eigen::VectorXd beta(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) beta(i) = b[i];
        m.beta = beta;
    }
    validate_kernel(m.family, m.params);
    return m;
}

VnuMode RunConfig::vnu_mode() const {
    const std::string v = str("model.vnu", "profiled");
    if (v == "profiled") return VnuMode::Profiled;
    if (v == "known") return VnuMode::KnownSigma2;
    bad("model.vnu must be profiled or known, got " + v);
}

GridSpace RunConfig::make_grid() const {
    const int dim = static_cast<int>(integer("grid.dim", 2));
    auto lo = list("grid.min");
    auto hi = list("grid.max");
    auto res_d = list("grid.res");
    if (lo.empty()) lo.assign(dim, 0.0);
    if (hi.empty()) hi.assign(dim, 1.0);
    if (res_d.empty()) bad("missing grid.res");
    if (lo.size() == 1 && dim > 1) lo.assign(dim, lo[0]);
    if (hi.size() == 1 && dim > 1) hi.assign(dim, hi[0]);
    if (res_d.size() == 1 && dim > 1) res_d.assign(dim, res_d[0]);
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim ||
        static_cast<int>(res_d.size()) != dim)
        bad("grid.min/max/res must each have grid.dim entries");
    std::vector<int> res(res_d.begin(), res_d.end());
    GridSpace g = GridSpace::regular(lo, hi, res);

    if (has("grid.eval_res")) {
        auto eres_d = list("grid.eval_res");
        if (eres_d.size() == 1 && dim > 1) eres_d.assign(dim, eres_d[0]);
        std::vector<int> eres(eres_d.begin(), eres_d.end());
        g.eval_points = GridSpace::regular(lo, hi, eres).candidates;
    }
    return g;
}

}  // namespace ekd
