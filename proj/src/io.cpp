#include "ekd/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ekd/errors.hpp"

namespace ekd {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("parse error: bad ") + what + " '" + s + "'");
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream f(path);
    if (!f) throw ParseError("cannot write " + path.string());
    f.precision(17);
    return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot read " + path.string());
    return f;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const GridSpace& grid,
                     const std::vector<double>& values,
                     const std::vector<std::uint8_t>* mask) {
    if (values.size() != static_cast<std::size_t>(grid.size()))
        throw std::invalid_argument("write_field_csv: value count does not match the grid");
    auto f = open_out(path);
    for (int k = 0; k < grid.dim; ++k) f << 'x' << (k + 1) << ',';
    f << "value";
    if (mask) f << ",mask";
    f << '\n';
    for (int i = 0; i < grid.size(); ++i) {
        for (int k = 0; k < grid.dim; ++k) f << grid.candidates[i][k] << ',';
        f << values[i];
        if (mask) f << ',' << int((*mask)[i]);
        f << '\n';
    }
}

FieldData read_field_csv(const std::filesystem::path& path) {
    auto f = open_in(path);
    std::string line;
    if (!std::getline(f, line)) throw ParseError("parse error: empty CSV " + path.string());
    const auto header = split(line, ',');
    int dim = 0;
    while (dim < static_cast<int>(header.size()) &&
           header[dim] == "x" + std::to_string(dim + 1))
        ++dim;
    if (dim == 0 || dim >= static_cast<int>(header.size()) || header[dim] != "value")
        throw ParseError("parse error: field CSV header must be x1,..,xd,value[,mask]");
    const bool has_mask = header.size() == static_cast<std::size_t>(dim) + 2 &&
                          header[dim + 1] == "mask";
    if (header.size() > static_cast<std::size_t>(dim) + (has_mask ? 2 : 1))
        throw ParseError("parse error: unexpected trailing CSV columns");

    std::vector<Point> pts;
    std::vector<double> values;
    std::vector<std::uint8_t> mask;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != header.size())
            throw ParseError("parse error: ragged CSV row '" + line + "'");
        Point p(dim);
        for (int k = 0; k < dim; ++k) p[k] = parse_double(cols[k], "coordinate");
        pts.push_back(std::move(p));
        const bool observed = !has_mask || parse_double(cols[dim + 1], "mask") != 0.0;
        if (has_mask) mask.push_back(observed ? 1 : 0);
        values.push_back(observed ? parse_double(cols[dim], "value") : 0.0);
    }
    if (pts.empty()) throw ParseError("parse error: CSV has no data rows");

    FieldData out;
    out.grid = GridSpace::from_points(std::move(pts));
    out.values = std::move(values);
    out.mask = std::move(mask);
    return out;
}

void write_design_doc(const std::filesystem::path& path, const GridSpace& grid,
                      const Design& design) {
    design.validate(grid);
    auto f = open_out(path);
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016" PRIx64, grid.hash());
    f << "ekd-design v1\n";
    f << "grid " << hex << '\n';
    f << "dim " << grid.dim << '\n';
    f << "n " << design.size() << '\n';
    for (int idx : design.indices) {
        f << idx;
        for (double v : grid.candidates[idx]) f << ' ' << v;
        f << '\n';
    }
}

Design read_design_doc(const std::filesystem::path& path, const GridSpace& grid) {
    auto f = open_in(path);
    std::string tag, version;
    f >> tag >> version;
    if (tag != "ekd-design" || version != "v1")
        throw ParseError("parse error: not a design document: " + path.string());
    std::string key, hex;
    int dim = 0, n = 0;
    f >> key >> hex;
    if (key != "grid") throw ParseError("parse error: design document missing grid hash");
    f >> key >> dim;
    f >> key >> n;
    char expected[32];
    std::snprintf(expected, sizeof expected, "%016" PRIx64, grid.hash());
    if (hex != expected || dim != grid.dim)
        throw DesignGridMismatch("design/grid mismatch: document was written for another grid");
    Design d;
    for (int i = 0; i < n; ++i) {
        int idx;
        if (!(f >> idx)) throw ParseError("parse error: truncated design document");
        double v;
        for (int k = 0; k < dim; ++k) f >> v;
        d.indices.push_back(idx);
    }
    d.validate(grid);
    return d;
}

void write_trace(const std::filesystem::path& path, const CriterionTrace& trace) {
    auto f = open_out(path);
    f << "iteration\tvalue\ttemperature\taccepted\n";
    for (const auto& s : trace.steps)
        f << s.iteration << '\t' << s.value << '\t' << s.temperature << '\t'
          << (s.accepted ? 1 : 0) << '\n';
}

void write_front(const std::filesystem::path& path, const ParetoFront& front) {
    auto f = open_out(path);
    f << front.to_table();
}

void write_fit_doc(const std::filesystem::path& path, const FitResult& fit) {
    auto f = open_out(path);
    f << "ekd-fit v1\n";
    f << "p " << fit.beta_hat.size() << '\n';
    f << "beta";
    for (int i = 0; i < fit.beta_hat.size(); ++i) f << ' ' << fit.beta_hat(i);
    f << '\n';
    f << "sigma2 " << fit.sigma2_hat << '\n';
    f << "rho " << fit.rho_hat << '\n';
    f << "gamma " << fit.gamma_fixed << '\n';
    f << "neg_log_lik " << fit.neg_log_lik << '\n';
}

FitResult read_fit_doc(const std::filesystem::path& path) {
    auto f = open_in(path);
    std::string tag, version, key;
    f >> tag >> version;
    if (tag != "ekd-fit" || version != "v1")
        throw ParseError("parse error: not a fit document: " + path.string());
    FitResult out;
    int p = 0;
    f >> key >> p;
    out.beta_hat.resize(p);
    f >> key;
    for (int i = 0; i < p; ++i) f >> out.beta_hat(i);
    f >> key >> out.sigma2_hat;
    f >> key >> out.rho_hat;
    f >> key >> out.gamma_fixed;
    f >> key >> out.neg_log_lik;
    if (!f) throw ParseError("parse error: truncated fit document: " + path.string());
    return out;
}

}  // namespace ekd
