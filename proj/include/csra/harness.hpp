#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "csra/core_model.hpp"
#include "csra/density_evolution.hpp"
#include "csra/rng.hpp"

namespace csra {

// Simulation experiment: one system plus termination and replication policy.
// M_max == 0 means the default cap of 10 * N / K slots.
struct ExperimentConfig {
    SystemConfig cfg;
    double H = 0.7;
    int M_max = 0;
    int runs = 500;
    std::uint64_t seed = 1;
    int m_min = 10;
    std::vector<int> beta_grid;
    SweepObjective objective = SweepObjective::resolution;

    int effective_M_max() const { return M_max > 0 ? M_max : 10 * cfg.N / cfg.K; }
    void validate() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
};

// Per-beta summary over a batch of runs. beta_star is the grid winner by
// mean throughput and is copied onto every row of a sweep.
struct AggregateMetrics {
    int beta = 0;
    int runs_used = 0;
    int truncation_count = 0;
    double mean_f_RE = 0.0, se_f_RE = 0.0;
    double mean_f_RA = 0.0, se_f_RA = 0.0;
    double mean_T = 0.0, se_T = 0.0;
    double mean_delta_nE = 0.0, se_delta_nE = 0.0;
    double mean_abs_delta_nE = 0.0, se_abs_delta_nE = 0.0;
    int beta_star = 0;
};

struct MonteCarloResult {
    std::vector<AggregateMetrics> per_beta;
    std::vector<std::vector<RunRecord>> records;  // parallel to per_beta
    int beta_star = 0;
};

// One contention period at constant slot degree beta: schedule slots one at
// a time, peel, re-estimate, stop on the f_RE >= H rule (or the zero rule,
// or the slot cap). The rng seeds the run's private substreams; its first
// draw is recorded as the run tag.
RunRecord run_contention_period(const ExperimentConfig& exp, int beta, rng_t& rng);

AggregateMetrics aggregate(const std::vector<RunRecord>& records, int beta);

// Replicated runs over exp.beta_grid with per-(beta, run) substreams; the
// reduction order is fixed by run index, so results are thread-agnostic.
MonteCarloResult monte_carlo(const ExperimentConfig& exp);

// Asymptotic operating curve: per (K, M/N) the resolution-optimal beta and
// its fixed point, plus the singleton upper bound.
struct CurvePoint {
    int K = 0;
    double M_over_N = 0.0;
    int beta_star = 0;
    double p_R_star = 0.0;
    double T_star = 0.0;
    double p_U = 0.0;
};

std::vector<CurvePoint> figure_sweep(double p_A, const std::vector<int>& K_list,
                                     const std::vector<double>& grid, int beta_max);

// Benchmark setup at N=1000, p_A=0.2: beta grid spanning +-50% around the
// asymptotic optimum for the given K, with coarser stride at larger K.
ExperimentConfig table1_experiment(int K, int runs, std::uint64_t seed);

}  // namespace csra
