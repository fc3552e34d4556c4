// Design-construction algorithms: annealed surrogate search over the
// compound criterion, the exchange descent on MEK with Pareto-front
// screening, greedy sequential strategies, and direct SA on MEK.

#include "ekd/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ekd/designs.hpp"
#include "ekd/information.hpp"
#include "ekd/kriging.hpp"
#include "ekd/rng.hpp"

namespace ekd {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_estimable(const GpModel& model, const GridSpace& grid, int n, const char* who) {
    const int need = min_design_size(model, grid.dim);
    if (n < need)
        throw NonEstimableError(std::string(who) + ": design size " + std::to_string(n) +
                                " is below the estimability bound p+q+1 = " +
                                std::to_string(need));
}

Design random_start(const GridSpace& grid, int n, std::uint64_t seed) {
    if (n >= 2) {
        LhSpec spec;
        spec.n = n;
        spec.dim = grid.dim;
        spec.seed = seed;
        return snap_to_grid(random_lh(spec), grid);
    }
    Rng rng(seed);
    return Design{{rng.uniform_int(grid.size())}};
}

// Criterion pair with the -inf sentinel for designs whose factorization
// fails outright; search must be able to visit and discard those.
std::pair<double, double> safe_criteria(const GpModel& model, const GridSpace& grid,
                                        const Design& d) {
    try {
        return criteria_pair(KrigingSystem::build(model, grid, d));
    } catch (const std::runtime_error&) {
        return {kNegInf, kNegInf};
    }
}

double sweep_local(const Objective& objective, Design& d, const GridSpace& grid, double cur) {
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t i = 0; i < d.indices.size(); ++i) {
            const auto& clique = grid.cliques[d.indices[i]];
            for (int cand : clique) {
                if (d.contains(cand)) continue;
                const int old = d.indices[i];
                d.indices[i] = cand;
                const double val = objective(d);
                if (val > cur) {
                    cur = val;
                    improved = true;
                } else {
                    d.indices[i] = old;
                }
            }
        }
    }
    return cur;
}

}  // namespace

Design local_optimization(const Objective& objective, Design start, const GridSpace& grid) {
    if (!grid.has_cliques()) return start;
    sweep_local(objective, start, grid, objective(start));
    return start;
}

CriterionTrace simulated_annealing(const Objective& objective, int n, const GridSpace& grid,
                                   const SaConfig& cfg, std::optional<Design> start,
                                   LocalSearch local) {
    if (!(cfg.t0 > 0.0) || !(cfg.r > 0.0 && cfg.r < 1.0) || cfg.n_max < 1)
        throw std::invalid_argument("simulated_annealing: bad SaConfig");
    if (n < 1 || n > grid.size())
        throw std::invalid_argument("simulated_annealing: design size outside [1, M]");

    Rng rng(cfg.seed);
    Design cur = start ? std::move(*start) : random_start(grid, n, cfg.seed);
    cur.validate(grid);
    if (cur.size() != n)
        throw std::invalid_argument("simulated_annealing: start design size mismatch");

    double e_cur = objective(cur);
    CriterionTrace trace;
    trace.best_design = cur;
    trace.best_value = e_cur;

    const int n_swap = std::min({2, n, grid.size() - n});
    if (n_swap == 0) {
        trace.note = "degenerate: n = M leaves no replacement candidates";
        return trace;
    }

    const bool use_local = local == LocalSearch::On && grid.has_cliques();
    double temp = cfg.t0;
    trace.steps.reserve(cfg.n_max);
    for (int k = 0; k < cfg.n_max; ++k) {
        Design cand = cur;
        int pos1 = rng.uniform_int(n);
        cand.indices[pos1] = [&] {  // fresh point outside the current design
            for (;;) {
                const int g = rng.uniform_int(grid.size());
                if (!cur.contains(g)) return g;
            }
        }();
        if (n_swap == 2) {
            int pos2 = pos1;
            while (pos2 == pos1) pos2 = rng.uniform_int(n);
            for (;;) {
                const int g = rng.uniform_int(grid.size());
                if (!cur.contains(g) && g != cand.indices[pos1]) {
                    cand.indices[pos2] = g;
                    break;
                }
            }
        }

        double e_next = objective(cand);
        if (use_local) e_next = sweep_local(objective, cand, grid, e_next);

        if (e_next > trace.best_value) {
            trace.best_value = e_next;
            trace.best_design = cand;
        }

        bool accepted;
        if (e_next > e_cur) {
            accepted = true;
        } else {
            const double delta = e_next - e_cur;
            const double p = std::isnan(delta) ? 1.0 : std::exp(delta / temp);
            accepted = rng.uniform() < p;
        }
        trace.steps.push_back({k, e_next, accepted, temp});
        if (accepted) {
            cur = std::move(cand);
            e_cur = e_next;
        } else {
            temp *= cfg.r;
        }
    }
    return trace;
}

ParetoSaResult pareto_sa(const GpModel& model, const GridSpace& grid, int n,
                         const std::vector<double>& alphas, const SaConfig& cfg, VnuMode mode,
                         std::optional<Design> start) {
    if (alphas.empty()) throw std::invalid_argument("pareto_sa: empty alpha list");
    for (double a : alphas)
        if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("pareto_sa: alpha outside [0,1]");
    require_estimable(model, grid, n, "pareto_sa");

    ParetoSaResult res;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        const double alpha = alphas[a];
        const Objective objective = [&](const Design& d) {
            try {
                return j_alpha(KrigingSystem::build(model, grid, d), alpha);
            } catch (const std::runtime_error&) {
                return kNegInf;
            }
        };
        SaConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed + a;  // independent stream per alpha
        CriterionTrace t = simulated_annealing(objective, n, grid, run_cfg, start);
        const auto [cb, cn] = safe_criteria(model, grid, t.best_design);
        res.front.insert({cb, cn, t.best_design, false});
        res.trace.steps.push_back({static_cast<int>(a), t.best_value, true, 0.0});
    }
    if (res.front.empty())
        throw NonEstimableError("pareto_sa: no run produced an estimable design");
    res.front.mark_hull();

    double best_mek = std::numeric_limits<double>::infinity();
    for (const auto& pt : res.front.points()) {
        ++res.trace.mek_evaluations;
        double value;
        try {
            value = mek(model, grid, pt.design, mode).value;
        } catch (const std::runtime_error&) {
            continue;
        }
        if (value < best_mek) {
            best_mek = value;
            res.best = pt.design;
        }
    }
    if (res.best.indices.empty())
        throw NonEstimableError("pareto_sa: MEK undefined on every front design");
    res.trace.best_design = res.best;
    res.trace.best_value = best_mek;
    return res;
}

CriterionTrace exchange_algorithm(const GpModel& model, const GridSpace& grid,
                                  const Design& start, bool hull_only, VnuMode mode) {
    start.validate(grid);
    const int n = start.size();
    const int M = grid.size();
    require_estimable(model, grid, n, "exchange_algorithm");

    CriterionTrace trace;
    Design cur = start;
    ++trace.mek_evaluations;
    double cur_mek = mek(model, grid, cur, mode).value;
    trace.best_design = cur;
    trace.best_value = cur_mek;
    if (n == M) {
        trace.note = "degenerate: n = M leaves no exchanges";
        return trace;
    }

    int last_inserted = -1;
    for (int k = 0;; ++k) {
        ParetoFront front;
        for (int i = 0; i < n; ++i) {
            if (cur.indices[i] == last_inserted) continue;  // no immediate re-exchange
            Design cand = cur;
            for (int g = 0; g < M; ++g) {
                if (cur.contains(g)) continue;
                cand.indices[i] = g;
                const auto [cb, cn] = safe_criteria(model, grid, cand);
                front.insert({cb, cn, cand, false});
            }
        }
        front.mark_hull();
        if (k == 0) trace.first_front = front;

        double best = std::numeric_limits<double>::infinity();
        const Design* best_design = nullptr;
        for (const auto& pt : front.points()) {
            if (hull_only && !pt.on_hull) continue;
            ++trace.mek_evaluations;
            double value;
            try {
                value = mek(model, grid, pt.design, mode).value;
            } catch (const std::runtime_error&) {
                continue;
            }
            if (value < best) {
                best = value;
                best_design = &pt.design;
            }
        }

        const bool improved = best_design && best < cur_mek;
        trace.steps.push_back({k, best_design ? best : cur_mek, improved, 0.0});
        if (!improved) break;

        for (int i = 0; i < n; ++i)
            if (best_design->indices[i] != cur.indices[i]) {
                last_inserted = best_design->indices[i];
                break;
            }
        cur = *best_design;
        cur_mek = best;
        trace.best_design = cur;
        trace.best_value = cur_mek;
    }
    return trace;
}

std::vector<GreedyStep> greedy_augment(const GpModel& model, const GridSpace& grid,
                                       const Design& base, GreedyStrategy strategy, int steps,
                                       VnuMode mode) {
    base.validate(grid);
    if (steps < 0) throw std::invalid_argument("greedy_augment: negative step count");
    if (strategy == GreedyStrategy::S2) require_estimable(model, grid, base.size(),
                                                          "greedy_augment[S2]");

    auto record = [&](const KrigingSystem& sys) {
        GreedyStep st;
        double mx = -1.0;
        for (const auto& x : grid.eval_points) mx = std::max(mx, sys.variance(x));
        st.max_variance = mx;
        try {
            st.mek_value = mek_with_dispersion(sys, grid, v_nu(m_theta(sys), mode)).value;
        } catch (const NonEstimableError&) {
            if (strategy == GreedyStrategy::S2) throw;
            st.mek_value = std::numeric_limits<double>::quiet_NaN();
        }
        return st;
    };

    std::vector<GreedyStep> out;
    Design cur = base;
    for (int s = 0; s <= steps; ++s) {
        KrigingSystem sys = KrigingSystem::build(model, grid, cur);
        GreedyStep st = record(sys);
        st.design = cur;
        out.push_back(std::move(st));
        if (s == steps) break;
        if (cur.size() >= grid.size())
            throw std::invalid_argument("greedy_augment: grid exhausted");

        int arg = -1;
        double best = -std::numeric_limits<double>::infinity();
        if (strategy == GreedyStrategy::S1) {
            for (int i = 0; i < grid.size(); ++i) {
                if (cur.contains(i)) continue;
                const double val = sys.variance(grid.candidates[i]);
                if (val > best) {
                    best = val;
                    arg = i;
                }
            }
        } else {
            const Eigen::MatrixXd v = v_nu(m_theta(sys), mode);
            for (int i = 0; i < grid.size(); ++i) {
                if (cur.contains(i)) continue;
                const double val = sys.corrected(grid.candidates[i], v).corrected_variance;
                if (val > best) {
                    best = val;
                    arg = i;
                }
            }
        }
        cur.indices.push_back(arg);
    }
    return out;
}

CriterionTrace direct_sa_mek(const GpModel& model, const GridSpace& grid, int n,
                             const SaConfig& cfg, VnuMode mode, std::optional<Design> start) {
    require_estimable(model, grid, n, "direct_sa_mek");
    long evals = 0;
    const Objective objective = [&](const Design& d) {
        ++evals;
        try {
            return -mek(model, grid, d, mode).value;
        } catch (const std::runtime_error&) {
            return kNegInf;
        }
    };
    CriterionTrace t = simulated_annealing(objective, n, grid, cfg, std::move(start),
                                           LocalSearch::Off);
    for (auto& s : t.steps) s.value = -s.value;  // report on the MEK scale
    t.best_value = -t.best_value;
    t.mek_evaluations = evals;
    return t;
}

}  // namespace ekd
