#include "csra/density_evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace csra {

void EvolutionParams::validate() const {
    if (!(p_A > 0.0 && p_A < 1.0))
        throw std::invalid_argument("EvolutionParams: p_A must lie in (0, 1)");
    if (K < 1) throw std::invalid_argument("EvolutionParams: K must be positive");
    if (!(beta >= 1.0)) throw std::invalid_argument("EvolutionParams: beta must be >= 1");
    if (!(1.0 + epsilon > 0.0))
        throw std::invalid_argument("EvolutionParams: need 1 + epsilon > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("EvolutionParams: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("EvolutionParams: max_iter must be positive");
    if (psi.empty()) {
        if (std::floor(beta) != beta)
            throw std::invalid_argument("EvolutionParams: closed form needs integer beta");
    } else {
        if (psi.size() < 2 || psi[0] != 0.0)
            throw std::invalid_argument("EvolutionParams: psi must start with a zero entry");
        double mass = 0.0;
        for (double v : psi) {
            if (v < 0.0) throw std::invalid_argument("EvolutionParams: psi entries must be >= 0");
            mass += v;
        }
        if (std::fabs(mass - 1.0) > 1e-10)
            throw std::invalid_argument("EvolutionParams: psi must sum to 1");
    }
}

std::vector<double> edge_active_distribution(int beta, double p_A) {
    if (beta < 1) throw std::domain_error("edge_active_distribution: beta must be >= 1");
    if (!(p_A > 0.0 && p_A < 1.0))
        throw std::domain_error("edge_active_distribution: p_A must lie in (0, 1)");
    std::vector<double> psi(beta + 1, 0.0);
    // psi[d] = C(beta-1, d-1) p^(d-1) (1-p)^(beta-d), built by ratio updates
    double v = std::pow(1.0 - p_A, beta - 1);
    for (int d = 1; d <= beta; ++d) {
        psi[d] = v;
        v *= (static_cast<double>(beta - d) / d) * (p_A / (1.0 - p_A));
    }
    return psi;
}

std::vector<double> edge_active_distribution(const SystemConfig& cfg) {
    cfg.validate();
    int D = cfg.omega.max_degree();
    std::vector<double> big(D + 1, 0.0);
    double mean = 0.0;
    for (int d = 0; d <= D; ++d) {
        big[d] = slot_active_degree_pmf(d, cfg);
        mean += d * big[d];
    }
    if (!(mean > 0.0))
        throw std::domain_error("edge_active_distribution: degenerate active degree profile");
    std::vector<double> psi(D + 1, 0.0);
    for (int d = 1; d <= D; ++d) psi[d] = d * big[d] / mean;
    return psi;
}

double slot_update(double y, const std::vector<double>& psi, int K) {
    if (K < 1) throw std::domain_error("slot_update: K must be positive");
    if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("slot_update: y outside [0, 1]");
    int D = static_cast<int>(psi.size()) - 1;
    if (D <= K || y == 0.0) return 0.0;
    // Walk the binomial tail P[Bin(m, y) >= K] upward in m with the pmf at
    // K-1 carried along: tail(m+1) = tail(m) + y * pmf_{K-1}(m).
    double tail = std::pow(y, K);
    double pmf = K * std::pow(y, K - 1) * (1.0 - y);
    double r = 0.0;
    for (int m = K; m < D; ++m) {
        r += psi[m + 1] * tail;
        tail += y * pmf;
        pmf *= (1.0 - y) * (m + 1) / (m + 2 - K);
    }
    // accumulated tail rounding can overshoot the unit mass by a few ulp
    return r > 1.0 ? 1.0 : r;
}

double user_update(double r, double beta, double epsilon) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("user_update: r outside [0, 1]");
    return std::exp(-(1.0 + epsilon) * beta * (1.0 - r));
}

double user_update_series(double r, double mean, double tail_tol) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("user_update_series: r outside [0, 1]");
    if (!(mean >= 0.0)) throw std::domain_error("user_update_series: mean must be >= 0");
    double term = std::exp(-mean);
    double acc = term;
    double x = mean * r;
    for (int j = 1; j <= 100000; ++j) {
        term *= x / j;
        acc += term;
        if (j > x && term < tail_tol) break;
    }
    return acc;
}

EvolutionResult evolve(const EvolutionParams& params) {
    params.validate();
    std::vector<double> psi = params.psi.empty()
        ? edge_active_distribution(static_cast<int>(params.beta), params.p_A)
        : params.psi;
    EvolutionResult out;
    double y = 1.0;
    for (int l = 1; l <= params.max_iter; ++l) {
        double r = slot_update(y, psi, params.K);
        double y_next = user_update(r, params.beta, params.epsilon);
        if (params.record_trajectory) out.trajectory.emplace_back(r, y_next);
        double delta = std::fabs(y_next - y);
        y = y_next;
        out.iterations = l;
        if (delta < params.tol) {
            out.converged = true;
            break;
        }
    }
    out.p_R = 1.0 - y;
    out.T = asymptotic_throughput(out.p_R, params.p_A, params.epsilon, params.K);
    return out;
}

double asymptotic_throughput(double p_R, double p_A, double epsilon, int K) {
    if (K < 1) throw std::domain_error("asymptotic_throughput: K must be positive");
    if (!(1.0 + epsilon > 0.0))
        throw std::domain_error("asymptotic_throughput: need 1 + epsilon > 0");
    return p_R * p_A / ((1.0 + epsilon) * K);
}

double resolution_upper_bound(double M, double N, double beta) {
    if (!(N > 0.0)) throw std::domain_error("resolution_upper_bound: N must be positive");
    if (!(beta > 0.0)) throw std::domain_error("resolution_upper_bound: beta must be positive");
    if (M < 0.0) throw std::domain_error("resolution_upper_bound: M must be >= 0");
    return 1.0 - std::exp(-M * beta / N);
}

BetaSweepResult sweep_beta(double p_A, int K, double epsilon, const std::vector<int>& beta_range,
                           SweepObjective objective) {
    if (beta_range.empty()) throw std::invalid_argument("sweep_beta: beta_range is empty");
    BetaSweepResult best;
    bool first = true;
    for (int beta : beta_range) {
        if (beta < 1) throw std::invalid_argument("sweep_beta: beta values must be >= 1");
        EvolutionParams p;
        p.p_A = p_A;
        p.K = K;
        p.beta = beta;
        p.epsilon = epsilon;
        EvolutionResult res = evolve(p);
        double v = objective == SweepObjective::resolution ? res.p_R : res.T;
        double bv = objective == SweepObjective::resolution ? best.p_R_star : best.T_star;
        if (first || v > bv || (v == bv && beta < best.beta_star)) {
            best.beta_star = beta;
            best.p_R_star = res.p_R;
            best.T_star = res.T;
            first = false;
        }
    }
    return best;
}

}  // namespace csra
