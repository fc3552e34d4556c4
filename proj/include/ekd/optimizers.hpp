#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ekd/model.hpp"
#include "ekd/pareto.hpp"

namespace ekd {

struct SaConfig {
    double t0 = 0.6;     // initial temperature
    double r = 0.93;     // geometric cooling factor, in (0,1)
    int n_max = 5000;    // iteration budget
    std::uint64_t seed = 0;
};

struct TraceStep {
    int iteration = 0;
    double value = 0.0;  // candidate criterion value at this iteration
    bool accepted = false;
    double temperature = 0.0;
};

/// Per-run record shared by all optimizers. best_value is the extremal
/// criterion value seen; mek_evaluations counts every call that computed
/// the corrected-variance maximum.
struct CriterionTrace {
    std::vector<TraceStep> steps;
    Design best_design;
    double best_value = 0.0;
    long mek_evaluations = 0;
    std::string note;
    std::optional<ParetoFront> first_front;  // exchange: iteration-0 front, hull flagged
};

using Objective = std::function<double(const Design&)>;

enum class LocalSearch { On, Off };

/// Clique-sweep coordinate ascent: repeatedly scans the design, replacing a
/// point by any NSWE neighbor that improves the objective, until a full
/// sweep makes no change. Neighbors already in the design are skipped.
Design local_optimization(const Objective& objective, Design start, const GridSpace& grid);

/// Maximizing simulated annealing: perturb two design points by draws from
/// the complement, locally optimize, track the best, Metropolis-accept and
/// cool only on rejection. Deterministic per cfg.seed.
CriterionTrace simulated_annealing(const Objective& objective, int n, const GridSpace& grid,
                                   const SaConfig& cfg, std::optional<Design> start = {},
                                   LocalSearch local = LocalSearch::On);

struct ParetoSaResult {
    ParetoFront front;
    Design best;          // the front design minimizing MEK
    CriterionTrace trace; // one step per alpha; mek_evaluations <= |alphas|
};

/// One SA run per alpha (seeds derived as cfg.seed + alpha index), inserting
/// every run's best design into a Pareto front; MEK is evaluated only for
/// front designs and the minimizer returned.
ParetoSaResult pareto_sa(const GpModel&, const GridSpace&, int n,
                         const std::vector<double>& alphas, const SaConfig& cfg,
                         VnuMode mode = VnuMode::Profiled, std::optional<Design> start = {});

/// Deterministic single-point exchange descent on MEK, with candidate MEK
/// evaluations restricted to the Pareto front of (log|M_beta|, log|M_nu|)
/// over all exchanges (or only its convex hull when hull_only).
CriterionTrace exchange_algorithm(const GpModel&, const GridSpace&, const Design& start,
                                  bool hull_only, VnuMode mode = VnuMode::Profiled);

enum class GreedyStrategy { S1, S2 };

struct GreedyStep {
    Design design;
    double max_variance = 0.0;  // max over eval grid of the classic variance
    double mek_value = 0.0;     // NaN when the S1 design cannot estimate nu
};

/// Sequential augmentation: S1 adds the argmax of the classic kriging
/// variance, S2 of the corrected variance; existing design points are never
/// reselected. Entry 0 records the base design.
std::vector<GreedyStep> greedy_augment(const GpModel&, const GridSpace&, const Design& base,
                                       GreedyStrategy strategy, int steps,
                                       VnuMode mode = VnuMode::Profiled);

/// SA applied directly to -MEK (no local search, preserving the cost
/// asymmetry against the surrogate route). best_value is the best MEK.
CriterionTrace direct_sa_mek(const GpModel&, const GridSpace&, int n, const SaConfig& cfg,
                             VnuMode mode = VnuMode::Profiled, std::optional<Design> start = {});

}  // namespace ekd
