#pragma once

#include <map>
#include <utility>
#include <vector>

#include "csra/core_model.hpp"

namespace csra {

// Exactly-known slot multiplicities, histogrammed so the likelihood costs
// O(distinct values) per candidate n instead of O(slots).
struct MultiplicityEvidence {
    std::vector<std::pair<int, int>> pairs;  // (d_S, a) in admission order
    std::map<int, int> a_hist;               // active count -> slots
    std::map<int, int> dma_hist;             // d_S - a -> slots
    std::map<int, int> ds_hist;              // d_S -> slots
    long long sum_a = 0;
    long long sum_dma = 0;
    int max_a = 0;
    int max_dma = 0;

    void add(int d_S, int a);
    int count() const { return static_cast<int>(pairs.size()); }
};

struct EstimateResult {
    int n_hat = 0;
    double score = 0.0;
    int n_lo = 0;
    int n_hi = 0;
};

// Log-posterior of the active-user count given the admitted evidence,
// up to terms constant in n only if every call shares the same evidence.
double score(int n, const MultiplicityEvidence& ev, const SystemConfig& cfg,
             bool poisson_prior = false);

// Posterior mode over [n_lo, N]. Ternary search plus a local window check;
// falls back to a full scan when the window finds a better point. Ties
// resolve to the smaller n.
EstimateResult map_estimate(const MultiplicityEvidence& ev, const SystemConfig& cfg,
                            int n_resolved_lower_bound = 0, bool poisson_prior = false);

// Continuous-relaxation derivative proxy of the log-posterior at n.
double stationarity_residual(int n, const MultiplicityEvidence& ev, const SystemConfig& cfg);

}  // namespace csra
