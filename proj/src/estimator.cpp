#include "csra/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csra/math_util.hpp"

namespace csra {

namespace {
constexpr double kEulerGamma = 0.5772156649015329;
}

void MultiplicityEvidence::add(int d_S, int a) {
    if (d_S < 1) throw std::invalid_argument("MultiplicityEvidence: d_S must be positive");
    if (a < 0 || a > d_S) throw std::invalid_argument("MultiplicityEvidence: need 0 <= a <= d_S");
    pairs.emplace_back(d_S, a);
    ++a_hist[a];
    ++dma_hist[d_S - a];
    ++ds_hist[d_S];
    sum_a += a;
    sum_dma += d_S - a;
    max_a = std::max(max_a, a);
    max_dma = std::max(max_dma, d_S - a);
}

double score(int n, const MultiplicityEvidence& ev, const SystemConfig& cfg,
             bool poisson_prior) {
    const int N = cfg.N;
    if (n < 0 || n > N) throw std::domain_error("score: n outside [0, N]");
    if (ev.max_a > n || ev.max_dma > N - n) return kNegInf;

    double f = 0.0;
    if (poisson_prior) {
        double alpha = cfg.alpha();
        f = (n > 0 ? n * std::log(alpha) : 0.0) - alpha - log_factorial(n);
    } else {
        f = log_binom(N, n);
        if (n > 0) f += n * std::log(cfg.p_A);
        if (n < N) f += (N - n) * std::log1p(-cfg.p_A);
    }
    for (const auto& [a, cnt] : ev.a_hist) f += cnt * log_binom(n, a);
    for (const auto& [d, cnt] : ev.dma_hist) f += cnt * log_binom(N - n, d);
    for (const auto& [d, cnt] : ev.ds_hist) f -= cnt * log_binom(N, d);
    return f;
}

namespace {

int scan_argmax(int lo, int hi, const MultiplicityEvidence& ev, const SystemConfig& cfg,
                bool poisson_prior, double& best_score) {
    int best = lo;
    best_score = score(lo, ev, cfg, poisson_prior);
    for (int n = lo + 1; n <= hi; ++n) {
        double f = score(n, ev, cfg, poisson_prior);
        if (f > best_score) {
            best_score = f;
            best = n;
        }
    }
    return best;
}

}  // namespace

EstimateResult map_estimate(const MultiplicityEvidence& ev, const SystemConfig& cfg,
                            int n_resolved_lower_bound, bool poisson_prior) {
    const int N = cfg.N;
    if (n_resolved_lower_bound < 0 || n_resolved_lower_bound > N)
        throw std::invalid_argument("map_estimate: lower bound outside [0, N]");
    int lo = std::max(ev.max_a, n_resolved_lower_bound);
    int hi = N - ev.max_dma;
    if (hi < lo) hi = lo;  // inconsistent evidence, degenerate range

    auto F = [&](int n) { return score(n, ev, cfg, poisson_prior); };

    int L = lo, R = hi;
    while (R - L > 2) {
        int m1 = L + (R - L) / 3;
        int m2 = R - (R - L) / 3;
        if (F(m1) < F(m2))
            L = m1 + 1;
        else
            R = m2;
    }
    double best_score;
    int best = scan_argmax(L, R, ev, cfg, poisson_prior, best_score);

    int wlo = std::max(lo, best - 2);
    int whi = std::min(hi, best + 2);
    double window_score;
    int window_best = scan_argmax(wlo, whi, ev, cfg, poisson_prior, window_score);
    if (window_best != best || window_score > best_score)
        best = scan_argmax(lo, hi, ev, cfg, poisson_prior, best_score);

    EstimateResult out;
    out.n_hat = best;
    out.score = score(best, ev, cfg, poisson_prior);
    out.n_lo = lo;
    out.n_hi = N;
    return out;
}

double stationarity_residual(int n, const MultiplicityEvidence& ev, const SystemConfig& cfg) {
    const int N = cfg.N;
    if (n < 1 || n > N - 1) throw std::domain_error("stationarity_residual: n outside (0, N)");
    double v = 0.0;
    v += static_cast<double>(ev.sum_a) / n;
    v -= static_cast<double>(ev.sum_dma) / (N - n);
    v += std::log(cfg.alpha());
    v -= harmonic(n);
    v += kEulerGamma;
    return v;
}

}  // namespace csra
