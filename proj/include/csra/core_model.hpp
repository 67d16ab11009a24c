#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace csra {

// Slot degree distribution: (degree, mass) pairs, degrees strictly increasing.
struct DegreeDistribution {
    std::vector<std::pair<int, double>> support;

    void validate(int N) const;  // throws std::invalid_argument
    int max_degree() const;
    double mass_at(int d_S) const;

    static DegreeDistribution constant(int beta) { return {{{beta, 1.0}}}; }
};

struct SystemConfig {
    int N = 0;            // user population
    double p_A = 0.0;     // per-user activation probability
    int K = 1;            // multiuser-detection bound
    int K_max = 1;        // multiplicity-counter saturation
    DegreeDistribution omega;

    double alpha() const { return p_A * static_cast<double>(N); }

    void validate() const;  // throws std::invalid_argument
    static SystemConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

// One observed slot. active_hidden is channel-side truth: resolution and
// estimation logic must only consume it through the decoder's oracle queries.
struct SlotObservation {
    int slot_index = 0;
    std::vector<int> scheduled;      // sorted, distinct, 1..N
    std::vector<int> active_hidden;  // subset of scheduled
    int reported_multiplicity = 0;   // min(|active_hidden|, K_max)
    bool clipped = false;            // |active_hidden| >= K_max
};

// One contention period's outcome.
struct RunRecord {
    std::uint64_t seed = 0;
    int K = 0;
    int beta = 0;
    int M = 0;    // slots used
    int N_A = 0;  // true active count
    int N_R = 0;  // resolved active count
    int N_E = 0;  // final estimate
    double f_RE = 0.0;
    double f_RA = 0.0;
    double T = 0.0;
    double delta_nE = 0.0;
    double abs_delta_nE = 0.0;
    bool truncated = false;  // hit the slot cap
};

// Activation-count prior: exact binomial, or its Poisson(alpha) limit.
double activation_prior_pmf(int n, const SystemConfig& cfg, bool poisson_approx = false);

// P[d_A actives among d_S scheduled | n active total]: hypergeometric, with
// both out-of-range branches (n < d_A, N-n < d_S-d_A) returning 0.
double conditional_active_pmf(int d_A, int d_S, int n, int N);

// Active-degree distribution of a slot, prior-averaged over n (n=0 included)
// and over omega.
double slot_active_degree_pmf(int d_A, const SystemConfig& cfg);

// User replica-count distribution: Poisson with mean M*beta/N.
double user_degree_pmf(int d_U, int M, double beta, int N);

}  // namespace csra
