#pragma once

#include <utility>
#include <vector>

#include "csra/core_model.hpp"

namespace csra {

// Fixed-point iteration inputs. psi is indexed by edge-perspective active
// degree (psi[0] unused and zero); leave it empty to use the constant-beta
// closed form. epsilon is the slot overhead, M/N = 1 + epsilon.
struct EvolutionParams {
    double p_A = 0.0;
    int K = 1;
    double beta = 1.0;
    double epsilon = 0.0;
    std::vector<double> psi;
    double tol = 1e-10;
    int max_iter = 10000;
    bool record_trajectory = false;

    void validate() const;
};

struct EvolutionResult {
    double p_R = 0.0;
    double T = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::pair<double, double>> trajectory;  // (r_l, y_l)
};

// Edge-perspective active degree distribution for constant slot degree beta.
std::vector<double> edge_active_distribution(int beta, double p_A);

// Finite-N edge-perspective distribution for a general schedule profile.
std::vector<double> edge_active_distribution(const SystemConfig& cfg);

// Probability an edge stays unresolved after the slot half-step.
double slot_update(double y, const std::vector<double>& psi, int K);

// Probability a user survives all its other slots; Poisson replica profile.
double user_update(double r, double beta, double epsilon);

// Same quantity summed term by term, for cross-checking the closed form.
double user_update_series(double r, double mean, double tail_tol = 1e-12);

EvolutionResult evolve(const EvolutionParams& params);

double asymptotic_throughput(double p_R, double p_A, double epsilon, int K);

// Singleton bound: fraction of users appearing in at least one slot.
double resolution_upper_bound(double M, double N, double beta);

enum class SweepObjective { resolution, throughput };

struct BetaSweepResult {
    int beta_star = 0;
    double p_R_star = 0.0;
    double T_star = 0.0;
};

// Scan integer beta values and keep the objective maximizer; exact ties go
// to the smaller beta regardless of scan order.
BetaSweepResult sweep_beta(double p_A, int K, double epsilon, const std::vector<int>& beta_range,
                           SweepObjective objective = SweepObjective::resolution);

}  // namespace csra
