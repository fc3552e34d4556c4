// ekd — prediction-design CLI: fit, design, eval, predict, render.
//
// Exit codes: 0 ok, 1 unexpected error, 2 parse error, 3 fit failure,
// 4 non-estimable design, 5 design/grid mismatch, 6 missing observations,
// 7 non-rectangular render input.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ekd/config.hpp"
#include "ekd/designs.hpp"
#include "ekd/errors.hpp"
#include "ekd/fitting.hpp"
#include "ekd/information.hpp"
#include "ekd/io.hpp"
#include "ekd/kriging.hpp"
#include "ekd/optimizers.hpp"
#include "ekd/render.hpp"

namespace fs = std::filesystem;
using namespace ekd;

namespace {

const char* kConfigKeys[] = {
    "model.trend",   "model.kernel",      "model.scaling",  "model.sigma2",
    "model.rho",     "model.gamma",       "model.free",     "model.beta",
    "model.vnu",     "model.from_fit",    "grid.dim",       "grid.min",
    "grid.max",      "grid.res",          "grid.eval_res",  "optimizer.algorithm",
    "optimizer.n",   "optimizer.t0",      "optimizer.cooling", "optimizer.n_max",
    "optimizer.alphas", "optimizer.hull_only", "optimizer.start", "optimizer.steps",
    "io.input",      "io.out",            "io.seed"};

struct CommonArgs {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "run configuration file");
    for (const char* key : kConfigKeys)
        sub->add_option_function<std::string>(
            std::string("--") + key,
            [&args, key](const std::string& v) { args.overrides[key] = v; });
    // Spec-named shorthands mapping onto dotted keys.
    auto alias = [&args, sub](const char* flag, const char* key, const char* help) {
        sub->add_option_function<std::string>(
            flag, [&args, key](const std::string& v) { args.overrides[key] = v; }, help);
    };
    alias("--seed", "io.seed", "global RNG seed");
    alias("--out", "io.out", "output directory");
    alias("--algorithm", "optimizer.algorithm",
          "pareto-sa | exchange | greedy-s1 | greedy-s2 | direct-sa");
    alias("--n", "optimizer.n", "design size");
    alias("--hull-only", "optimizer.hull_only", "restrict MEK evaluation to the hull");
    alias("--alphas", "optimizer.alphas", "comma-separated alpha list");
}

RunConfig load_config(const CommonArgs& args) {
    RunConfig cfg = args.config_path.empty() ? RunConfig::empty()
                                             : RunConfig::from_file(args.config_path);
    for (const auto& [k, v] : args.overrides) cfg.set(k, v);
    return cfg;
}

fs::path out_dir(const RunConfig& cfg) {
    fs::path dir = cfg.str("io.out", "out");
    fs::create_directories(dir);
    return dir;
}

std::vector<double> default_alphas() {
    std::vector<double> a;
    for (int i = 0; i < 11; ++i) a.push_back(0.5 + 0.05 * i);
    return a;
}

Design resolve_start(const RunConfig& cfg, const GridSpace& grid, int n) {
    const std::string start = cfg.str("optimizer.start", "coffeehouse");
    if (start == "lh7") {
        if (n != 7 || grid.dim != 2)
            throw ParseError("optimizer.start=lh7 requires n=7 on a 2-D grid");
        return snap_to_grid(lh_star_7(), grid);
    }
    if (start == "coffeehouse") return coffeehouse(grid, n);
    if (start == "random") {
        LhSpec spec;
        spec.n = n;
        spec.dim = grid.dim;
        spec.seed = static_cast<std::uint64_t>(cfg.integer("io.seed", 0));
        return snap_to_grid(random_lh(spec), grid);
    }
    if (start.rfind("file:", 0) == 0) return read_design_doc(start.substr(5), grid);
    throw ParseError("optimizer.start must be lh7|coffeehouse|random|file:PATH");
}

GpModel resolve_model(const RunConfig& cfg, const GridSpace& grid) {
    RunConfig patched = cfg;
    if (cfg.has("model.from_fit")) {
        const FitResult fit = read_fit_doc(cfg.str("model.from_fit"));
        patched.set("model.rho", std::to_string(fit.rho_hat));
        patched.set("model.sigma2", std::to_string(fit.sigma2_hat));
        patched.set("model.gamma", std::to_string(fit.gamma_fixed));
        std::string beta;
        for (int i = 0; i < fit.beta_hat.size(); ++i)
            beta += (i ? "," : "") + std::to_string(fit.beta_hat(i));
        patched.set("model.beta", beta);
    }
    GpModel m = patched.make_model();
    if (m.beta && m.beta->size() != trend_size(m.trend, grid.dim))
        throw ParseError("model.beta length does not match the trend basis");
    return m;
}

int run_fit(const RunConfig& cfg) {
    const std::string input = cfg.str("io.input");
    if (input.empty()) throw ParseError("fit: io.input CSV is required");
    const FieldData data = read_field_csv(input);
    const GpModel proto = [&] {
        RunConfig c = cfg;
        if (!c.has("model.rho")) c.set("model.rho", "1");  // placeholder, fit estimates it
        return c.make_model();
    }();
    RhoSearch search;
    search.lo = cfg.num("fit.rho_lo", 0.0);
    search.hi = cfg.num("fit.rho_hi", 0.0);
    const FitResult fit =
        profile_ml(data, proto.trend, proto.family, proto.params.gamma, search);
    const fs::path doc = out_dir(cfg) / "fit.txt";
    write_fit_doc(doc, fit);
    std::cout << "neg_log_lik " << fit.neg_log_lik << "\n";
    std::cout << "rho_hat " << fit.rho_hat << "\n";
    std::cout << "sigma2_hat " << fit.sigma2_hat << "\n";
    std::cout << "beta_hat";
    for (int i = 0; i < fit.beta_hat.size(); ++i) std::cout << ' ' << fit.beta_hat(i);
    std::cout << "\nfit_doc " << doc.string() << "\n";
    return 0;
}

int run_design(const RunConfig& cfg) {
    const GridSpace grid = cfg.make_grid();
    const GpModel model = resolve_model(cfg, grid);
    const VnuMode mode = cfg.vnu_mode();
    const int n = static_cast<int>(cfg.integer("optimizer.n", 7));
    const std::string algo = cfg.str("optimizer.algorithm", "pareto-sa");
    const auto seed = static_cast<std::uint64_t>(cfg.integer("io.seed", 0));
    const fs::path dir = out_dir(cfg);

    SaConfig sa;
    sa.t0 = cfg.num("optimizer.t0", 0.6);
    sa.r = cfg.num("optimizer.cooling", 0.93);
    sa.seed = seed;

    Design chosen;
    double mek_value = 0.0;
    long evals = 0;

    if (algo == "pareto-sa") {
        sa.n_max = static_cast<int>(cfg.integer("optimizer.n_max", 5000));
        std::vector<double> alphas = cfg.list("optimizer.alphas");
        if (alphas.empty()) alphas = default_alphas();
        std::optional<Design> start;
        if (cfg.has("optimizer.start")) start = resolve_start(cfg, grid, n);
        const ParetoSaResult res = pareto_sa(model, grid, n, alphas, sa, mode, start);
        chosen = res.best;
        mek_value = res.trace.best_value;
        evals = res.trace.mek_evaluations;
        write_front(dir / "front.txt", res.front);
        write_trace(dir / "trace.txt", res.trace);
        std::cout << "front_size " << res.front.size() << "\n";
    } else if (algo == "exchange") {
        const Design start = resolve_start(cfg, grid, n);
        const bool hull_only = cfg.flag("optimizer.hull_only", false);
        const CriterionTrace t = exchange_algorithm(model, grid, start, hull_only, mode);
        chosen = t.best_design;
        mek_value = t.best_value;
        evals = t.mek_evaluations;
        write_trace(dir / "trace.txt", t);
        if (t.first_front) write_front(dir / "front.txt", *t.first_front);
        if (!t.note.empty()) std::cerr << t.note << "\n";
        std::cout << "iterations " << t.steps.size() << "\n";
    } else if (algo == "greedy-s1" || algo == "greedy-s2") {
        const Design base = resolve_start(cfg, grid, n);
        const int steps = static_cast<int>(cfg.integer("optimizer.steps", 15));
        const auto strategy = algo == "greedy-s1" ? GreedyStrategy::S1 : GreedyStrategy::S2;
        const auto series = greedy_augment(model, grid, base, strategy, steps, mode);
        std::ofstream tab(dir / "greedy.txt");
        tab.precision(12);
        tab << "step\tn\tmax_variance\tmek\n";
        for (std::size_t s = 0; s < series.size(); ++s)
            tab << s << '\t' << series[s].design.size() << '\t' << series[s].max_variance
                << '\t' << series[s].mek_value << '\n';
        chosen = series.back().design;
        mek_value = series.back().mek_value;
        evals = static_cast<long>(series.size());
    } else if (algo == "direct-sa") {
        sa.n_max = static_cast<int>(cfg.integer("optimizer.n_max", 2000));
        std::optional<Design> start;
        if (cfg.has("optimizer.start")) start = resolve_start(cfg, grid, n);
        const CriterionTrace t = direct_sa_mek(model, grid, n, sa, mode, start);
        chosen = t.best_design;
        mek_value = t.best_value;
        evals = t.mek_evaluations;
        write_trace(dir / "trace.txt", t);
        if (!t.note.empty()) std::cerr << t.note << "\n";
    } else {
        throw ParseError("unknown optimizer.algorithm: " + algo);
    }

    write_design_doc(dir / "design.txt", grid, chosen);
    std::cout << "mek " << mek_value << "\n";
    std::cout << "mek_evaluations " << evals << "\n";
    std::cout << "design";
    for (int idx : chosen.indices) std::cout << ' ' << idx;
    std::cout << "\ndesign_doc " << (dir / "design.txt").string() << "\n";
    return 0;
}

int run_eval(const RunConfig& cfg, const std::string& design_path) {
    const GridSpace grid = cfg.make_grid();
    const GpModel model = resolve_model(cfg, grid);
    const Design design = read_design_doc(design_path, grid);
    const VnuMode mode = cfg.vnu_mode();

    const MekResult m = mek(model, grid, design, mode);
    const KrigingSystem sys = KrigingSystem::build(model, grid, design);
    const auto [cb, cn] = criteria_pair(sys);
    std::cout << "mek " << m.value << "\n";
    std::cout << "argmax";
    for (double v : grid.eval_points[m.argmax_eval_index]) std::cout << ' ' << v;
    std::cout << "\nlog_det_m_beta " << cb << "\n";
    std::cout << "log_det_m_nu " << cn << "\n";
    std::vector<double> alphas = cfg.list("optimizer.alphas");
    if (alphas.empty()) alphas = {0.75};
    for (double a : alphas) std::cout << "j_alpha " << a << ' ' << j_alpha(sys, a) << "\n";
    return 0;
}

int run_predict(const RunConfig& cfg, const std::string& design_path,
                const std::string& obs_path) {
    const GridSpace grid = cfg.make_grid();
    const GpModel model = resolve_model(cfg, grid);
    const Design design = read_design_doc(design_path, grid);
    const FieldData obs = read_field_csv(obs_path);

    // Match an observation to every design point.
    Eigen::VectorXd y(design.size());
    const auto pts = design.points(grid);
    for (int i = 0; i < design.size(); ++i) {
        bool found = false;
        for (int j = 0; j < obs.grid.size() && !found; ++j) {
            if (!obs.mask.empty() && !obs.mask[j]) continue;
            if (euclid(obs.grid.candidates[j], pts[i]) < 1e-9) {
                y(i) = obs.values[j];
                found = true;
            }
        }
        if (!found) {
            std::cerr << "predict: no observation for design point " << i << "\n";
            return 6;
        }
    }

    const KrigingSystem sys = KrigingSystem::build(model, grid, design);
    const Eigen::MatrixXd v = v_nu(m_theta(sys), cfg.vnu_mode());
    const fs::path dir = out_dir(cfg);
    GridSpace eval = GridSpace::from_points(grid.eval_points);
    std::vector<double> pred(eval.size()), cvar(eval.size());
    for (int i = 0; i < eval.size(); ++i) {
        pred[i] = sys.predict(eval.candidates[i], y);
        cvar[i] = sys.corrected(eval.candidates[i], v).corrected_variance;
    }
    write_field_csv(dir / "predicted.csv", eval, pred);
    write_field_csv(dir / "variance.csv", eval, cvar);

    // Residuals where the truth is available.
    if (cfg.has("io.input")) {
        const FieldData truth = read_field_csv(cfg.str("io.input"));
        std::vector<double> resid;
        std::vector<Point> where;
        for (int i = 0; i < eval.size(); ++i)
            for (int j = 0; j < truth.grid.size(); ++j) {
                if (!truth.mask.empty() && !truth.mask[j]) continue;
                if (euclid(truth.grid.candidates[j], eval.candidates[i]) < 1e-9) {
                    resid.push_back(truth.values[j] - pred[i]);
                    where.push_back(eval.candidates[i]);
                    break;
                }
            }
        if (!resid.empty())
            write_field_csv(dir / "residuals.csv", GridSpace::from_points(where), resid);
    }
    std::cout << "predicted " << (dir / "predicted.csv").string() << "\n";
    std::cout << "variance " << (dir / "variance.csv").string() << "\n";
    return 0;
}

int run_render(const RunConfig& cfg, const std::string& csv_path,
               const std::string& design_path) {
    const FieldData field = read_field_csv(csv_path);
    std::vector<Point> markers;
    if (!design_path.empty()) {
        const GridSpace grid = cfg.make_grid();
        markers = read_design_doc(design_path, grid).points(grid);
    }
    std::string svg;
    try {
        svg = render_heatmap_svg(field.grid.candidates, field.values,
                                 markers.empty() ? nullptr : &markers);
    } catch (const std::invalid_argument& e) {
        std::cerr << "render: " << e.what() << "\n";
        return 7;
    }
    const fs::path out = out_dir(cfg) / "heatmap.svg";
    std::ofstream f(out, std::ios::binary);
    f << svg;
    std::cout << "svg " << out.string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Prediction designs minimizing the corrected kriging variance"};
    app.require_subcommand(1);

    CommonArgs fit_args, design_args, eval_args, predict_args, render_args;
    std::string eval_design, predict_design, predict_obs, render_csv, render_design;

    CLI::App* fit = app.add_subcommand("fit", "fit trend/variance/range by profile ML");
    add_common(fit, fit_args);

    CLI::App* design = app.add_subcommand("design", "construct an n-point design");
    add_common(design, design_args);

    CLI::App* eval = app.add_subcommand("eval", "evaluate criteria for a stored design");
    add_common(eval, eval_args);
    eval->add_option("design_file", eval_design)->required();

    CLI::App* predict = app.add_subcommand("predict", "krige a field from observations");
    add_common(predict, predict_args);
    predict->add_option("design_file", predict_design)->required();
    predict->add_option("observations_csv", predict_obs)->required();

    CLI::App* render = app.add_subcommand("render", "render a field CSV as an SVG heatmap");
    add_common(render, render_args);
    render->add_option("csv_file", render_csv)->required();
    render->add_option("--design", render_design, "overlay design markers");

    CLI11_PARSE(app, argc, argv);

    try {
        if (fit->parsed()) return run_fit(load_config(fit_args));
        if (design->parsed()) return run_design(load_config(design_args));
        if (eval->parsed()) return run_eval(load_config(eval_args), eval_design);
        if (predict->parsed())
            return run_predict(load_config(predict_args), predict_design, predict_obs);
        if (render->parsed())
            return run_render(load_config(render_args), render_csv, render_design);
    } catch (const DesignGridMismatch& e) {
        std::cerr << e.what() << "\n";
        return 5;
    } catch (const NonEstimableError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const FitError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
