// Acceptance gate: one pass/fail line per criterion, exit code = failures.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "csra/contention.hpp"
#include "csra/core_model.hpp"
#include "csra/density_evolution.hpp"
#include "csra/estimator.hpp"
#include "csra/harness.hpp"
#include "csra/math_util.hpp"
#include "csra/rng.hpp"
#include "csra/schedule.hpp"
#include "csra/sic_decoder.hpp"

using namespace csra;

namespace {

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

int verdict(int num, bool ok, const char* label) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", num, label);
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------- criterion 1

int criterion1() {
    const double p_A = 0.2;
    const std::vector<int> K_list{1, 2, 4, 8};
    std::vector<double> grid;
    for (int i = 1; i <= 200; ++i) grid.push_back(0.005 * i);
    auto pts = figure_sweep(p_A, K_list, grid, 100);

    bool ok_jump = true, ok_argmax = true, ok_mono_T = true, ok_spread = true;
    bool ok_beta = true, ok_bound = true;
    double prev_maxT = -1.0;
    int prev_beta = 0;
    std::vector<double> maxTs;

    for (std::size_t k = 0; k < K_list.size(); ++k) {
        const int K = K_list[k];
        const double target = p_A / K;
        const CurvePoint* base = &pts[k * grid.size()];

        double lo = 2.0, hi = -1.0;
        double bestT = -1.0, bestG = 0.0;
        int bestBeta = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const CurvePoint& pt = base[i];
            if (pt.p_R_star > pt.p_U + 1e-12) ok_bound = false;
            if (pt.M_over_N >= target - 0.02 - 1e-9 && pt.M_over_N <= target + 0.04 + 1e-9) {
                lo = std::min(lo, pt.p_R_star);
                hi = std::max(hi, pt.p_R_star);
            }
            if (pt.T_star > bestT) {
                bestT = pt.T_star;
                bestG = pt.M_over_N;
                bestBeta = pt.beta_star;
            }
        }
        double rise = hi - lo;
        if (rise < 0.2) ok_jump = false;
        if (std::fabs(bestG - target) > 0.01 + 1e-9) ok_argmax = false;
        if (bestT < prev_maxT - 1e-3) ok_mono_T = false;
        if (bestBeta < prev_beta) ok_beta = false;
        prev_maxT = std::max(prev_maxT, bestT);
        prev_beta = bestBeta;
        maxTs.push_back(bestT);
        std::printf("  K=%d: window rise=%.4f, T* argmax at M/N=%.3f (target %.3f), "
                    "max T*=%.6f, beta* there=%d\n",
                    K, rise, bestG, target, bestT, bestBeta);
    }
    double spread = *std::max_element(maxTs.begin(), maxTs.end()) -
                    *std::min_element(maxTs.begin(), maxTs.end());
    if (spread > 0.15) ok_spread = false;
    std::printf("  max T* spread across K: %.4f (limit 0.15)\n", spread);
    std::printf("  clauses: jump=%d argmax=%d T-mono=%d spread=%d beta-mono=%d bound=%d\n",
                ok_jump, ok_argmax, ok_mono_T, ok_spread, ok_beta, ok_bound);

    bool ok = ok_jump && ok_argmax && ok_mono_T && ok_spread && ok_beta && ok_bound;
    return verdict(1, ok, "operating curves over (K, M/N)");
}

// ---------------------------------------------------------------- criterion 2

int criterion2() {
    const int K_list[] = {1, 2, 4, 8};
    const double exp_f_RE[] = {0.92, 0.82, 0.78, 0.73};
    const double exp_f_RA[] = {0.92, 0.82, 0.77, 0.73};
    const double exp_T[] = {0.82, 0.83, 0.78, 0.78};
    const int exp_beta[] = {15, 21, 33, 54};
    const int runs = 800;

    bool ok = true;
    for (int k = 0; k < 4; ++k) {
        ExperimentConfig exp = table1_experiment(K_list[k], runs, 1);
        MonteCarloResult mc = monte_carlo(exp);
        const AggregateMetrics* star = nullptr;
        for (const AggregateMetrics& a : mc.per_beta)
            if (a.beta == mc.beta_star) star = &a;
        if (!star) {
            std::printf("  K=%d: no winning row\n", K_list[k]);
            ok = false;
            continue;
        }
        bool row_ok = true;
        if (std::fabs(star->mean_f_RE - exp_f_RE[k]) > 0.05) row_ok = false;
        if (std::fabs(star->mean_f_RA - exp_f_RA[k]) > 0.05) row_ok = false;
        if (std::fabs(star->mean_T - exp_T[k]) > 0.05) row_ok = false;
        if (star->mean_abs_delta_nE < 0.02 || star->mean_abs_delta_nE > 0.08) row_ok = false;
        if (std::fabs(star->mean_delta_nE) > 0.03) row_ok = false;
        if (mc.beta_star < 0.75 * exp_beta[k] || mc.beta_star > 1.25 * exp_beta[k])
            row_ok = false;
        std::printf("  K=%d: beta*=%d (expect %d +-25%%), f_RE=%.4f (%.2f), f_RA=%.4f (%.2f), "
                    "T=%.4f (%.2f), |dn|=%.4f, dn=%+.4f, trunc=%d/%d -> %s\n",
                    K_list[k], mc.beta_star, exp_beta[k], star->mean_f_RE, exp_f_RE[k],
                    star->mean_f_RA, exp_f_RA[k], star->mean_T, exp_T[k],
                    star->mean_abs_delta_nE, star->mean_delta_nE, star->truncation_count,
                    star->runs_used, row_ok ? "ok" : "out of band");
        ok = ok && row_ok;
    }
    return verdict(2, ok, "benchmark table at N=1000");
}

// ---------------------------------------------------------------- criterion 3

struct DecoderInstance {
    int N = 0;
    int K = 0;
    std::vector<SlotObservation> obs;
};

DecoderInstance random_decoder_instance(std::mt19937_64& rng) {
    DecoderInstance inst;
    inst.N = 5 + static_cast<int>(rng() % 26);
    inst.K = 1 + static_cast<int>(rng() % 3);
    int K_max = inst.K + static_cast<int>(rng() % 3);
    if (K_max > inst.N) K_max = inst.N;
    int M = 1 + static_cast<int>(rng() % 30);
    double p = 0.1 + 0.4 * uniform01(rng);
    std::vector<char> mask(inst.N + 1, 0);
    for (int u = 1; u <= inst.N; ++u)
        if (uniform01(rng) < p) mask[u] = 1;
    int d_cap = std::min(8, inst.N);
    for (int j = 0; j < M; ++j) {
        SlotObservation o;
        o.slot_index = j;
        o.scheduled = sample_user_subset(inst.N, 1 + static_cast<int>(rng() % d_cap), rng);
        for (int u : o.scheduled)
            if (mask[u]) o.active_hidden.push_back(u);
        int count = static_cast<int>(o.active_hidden.size());
        o.clipped = count >= K_max;
        o.reported_multiplicity = std::min(count, K_max);
        inst.obs.push_back(std::move(o));
    }
    return inst;
}

std::set<int> brute_force_resolved(const DecoderInstance& inst) {
    std::vector<std::set<int>> residual;
    for (const auto& o : inst.obs)
        residual.emplace_back(o.active_hidden.begin(), o.active_hidden.end());
    std::set<int> resolved;
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& r : residual) {
            for (int u : resolved) r.erase(u);
            if (!r.empty() && static_cast<int>(r.size()) <= inst.K) {
                resolved.insert(r.begin(), r.end());
                r.clear();
                changed = true;
            }
        }
    }
    return resolved;
}

std::set<int> peel_in_order(const DecoderInstance& inst, const std::vector<int>& order) {
    ResolutionState state(inst.N, inst.K);
    for (int idx : order) {
        state.ingest(inst.obs[idx]);
        state.peel();
    }
    return {state.resolved_ids().begin(), state.resolved_ids().end()};
}

int criterion3() {
    std::mt19937_64 rng(30303);
    int bad_oracle = 0, bad_order = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        DecoderInstance inst = random_decoder_instance(rng);
        std::set<int> expect = brute_force_resolved(inst);
        std::vector<int> order(inst.obs.size());
        std::iota(order.begin(), order.end(), 0);
        std::set<int> base = peel_in_order(inst, order);
        if (base != expect) ++bad_oracle;
        for (int s = 0; s < 20; ++s) {
            std::shuffle(order.begin(), order.end(), rng);
            if (peel_in_order(inst, order) != base) {
                ++bad_order;
                break;
            }
        }
    }
    std::printf("  1000 instances: %d oracle mismatches, %d order-dependent results\n",
                bad_oracle, bad_order);
    return verdict(3, bad_oracle == 0 && bad_order == 0, "peeling equals the exhaustive fixed point");
}

// ---------------------------------------------------------------- criterion 4

int criterion4() {
    SystemConfig cfg;
    cfg.N = 10000;
    cfg.p_A = 0.2;
    cfg.K = 2;
    cfg.K_max = 10;
    cfg.omega = DegreeDistribution::constant(21);
    cfg.validate();

    bool ok = true;
    for (double g : {0.06, 0.14}) {
        EvolutionParams p;
        p.p_A = cfg.p_A;
        p.K = cfg.K;
        p.beta = 21;
        p.epsilon = g - 1.0;
        double target = evolve(p).p_R;

        const int M = static_cast<int>(std::lround(g * cfg.N));
        double acc = 0.0;
        for (int run = 0; run < 50; ++run) {
            std::uint64_t tag = derive_stream(0xC4, static_cast<std::uint64_t>(
                                                        run + (g > 0.1 ? 1000 : 0)));
            rng_t act_rng = make_rng(derive_stream(tag, 1));
            ActivationOutcome outcome = activate(cfg, act_rng);
            Schedule sched;
            sched.seed = derive_stream(tag, 2);
            ResolutionState state(cfg.N, cfg.K);
            for (int j = 0; j < M; ++j) {
                extend_schedule(sched, cfg);
                state.ingest(observe_slot(j, sched.slots[j], outcome, cfg));
            }
            state.peel();
            acc += static_cast<double>(state.resolved_count()) / std::max(outcome.N_A, 1);
        }
        double mean = acc / 50.0;
        double diff = std::fabs(mean - target);
        std::printf("  M/N=%.2f: simulated %.5f vs evolve %.5f (|diff|=%.5f, limit 0.03)\n",
                    g, mean, target, diff);
        if (diff > 0.03) ok = false;
    }
    return verdict(4, ok, "simulation tracks the fixed point at N=10000");
}

// ---------------------------------------------------------------- criterion 5

struct EvidenceCase {
    SystemConfig cfg;
    MultiplicityEvidence ev;
};

EvidenceCase random_evidence_case(std::mt19937_64& rng, int N_max, int slots_max) {
    EvidenceCase c;
    c.cfg.N = 3 + static_cast<int>(rng() % (N_max - 2));
    c.cfg.p_A = 0.05 + 0.55 * uniform01(rng);
    c.cfg.K = 1;
    c.cfg.K_max = 1;
    c.cfg.omega = DegreeDistribution::constant(1);
    std::binomial_distribution<int> act(c.cfg.N, c.cfg.p_A);
    int n_true = act(rng);
    std::vector<char> mask(c.cfg.N + 1, 0);
    for (int u : sample_user_subset(c.cfg.N, n_true, rng)) mask[u] = 1;
    int m = static_cast<int>(rng() % (slots_max + 1));
    for (int j = 0; j < m; ++j) {
        int d = 1 + static_cast<int>(rng() % std::min(10, c.cfg.N));
        int a = 0;
        for (int u : sample_user_subset(c.cfg.N, d, rng)) a += mask[u];
        c.ev.add(d, a);
    }
    return c;
}

int criterion5() {
    std::mt19937_64 rng(55001);

    // (i) search equals the exhaustive argmax
    int bad_map = 0;
    for (int rep = 0; rep < 500; ++rep) {
        EvidenceCase c = random_evidence_case(rng, 50, 40);
        int lo = c.ev.max_a;
        int best = lo;
        double best_f = score(lo, c.ev, c.cfg);
        for (int n = lo + 1; n <= c.cfg.N; ++n) {
            double f = score(n, c.ev, c.cfg);
            if (f > best_f) {
                best_f = f;
                best = n;
            }
        }
        if (map_estimate(c.ev, c.cfg).n_hat != best) ++bad_map;
    }
    std::printf("  (i) exhaustive-argmax mismatches: %d/500\n", bad_map);

    // (ii) residual sign change around the mode on well-posed evidence
    int bracketed = 0, local_max = 0, valid = 0, attempts = 0;
    double resid_sum = 0.0;
    std::mt19937_64 rng2(55002);
    while (valid < 100 && attempts < 2000) {
        ++attempts;
        SystemConfig cfg;
        cfg.N = 1000;
        cfg.p_A = 0.2;
        cfg.K = 1;
        cfg.K_max = 1;
        cfg.omega = DegreeDistribution::constant(1);
        int n_true = 50 + static_cast<int>(rng2() % 351);
        std::vector<char> mask(cfg.N + 1, 0);
        for (int u : sample_user_subset(cfg.N, n_true, rng2)) mask[u] = 1;
        int m = 20 + static_cast<int>(rng2() % 181);
        MultiplicityEvidence ev;
        bool some_pos = false, some_gap = false;
        for (int j = 0; j < m; ++j) {
            int d = 1 + static_cast<int>(rng2() % 40);
            int a = 0;
            for (int u : sample_user_subset(cfg.N, d, rng2)) a += mask[u];
            ev.add(d, a);
            if (a > 0) some_pos = true;
            if (a < d) some_gap = true;
        }
        if (!some_pos || !some_gap) continue;
        EstimateResult res = map_estimate(ev, cfg);
        if (res.n_hat <= std::max(res.n_lo, 1) || res.n_hat >= cfg.N - 1) continue;
        ++valid;
        double left = stationarity_residual(res.n_hat - 1, ev, cfg);
        double right = stationarity_residual(res.n_hat + 1, ev, cfg);
        if (left >= 0.0 && right <= 0.0) ++bracketed;
        resid_sum += stationarity_residual(res.n_hat, ev, cfg);
        if (score(res.n_hat, ev, cfg) >= score(res.n_hat - 1, ev, cfg) &&
            score(res.n_hat, ev, cfg) >= score(res.n_hat + 1, ev, cfg))
            ++local_max;
    }
    std::printf("  (ii) residual brackets n_hat on %d/%d sets (need >= 95); "
                "posterior local-max rate %d/%d; mean residual at n_hat %+.4f\n",
                bracketed, valid, local_max, valid, resid_sum / std::max(valid, 1));

    // (iii) no evidence: posterior mode equals the binomial prior mode
    int bad_prior = 0;
    std::mt19937_64 rng3(55003);
    for (int rep = 0; rep < 50; ++rep) {
        SystemConfig cfg;
        cfg.N = 2 + static_cast<int>(rng3() % 1999);
        cfg.K = 1;
        cfg.K_max = 1;
        cfg.omega = DegreeDistribution::constant(1);
        double mode_arg;
        do {
            cfg.p_A = 0.01 + 0.89 * uniform01(rng3);
            mode_arg = (cfg.N + 1) * cfg.p_A;
        } while (std::fabs(mode_arg - std::lround(mode_arg)) < 1e-6);
        int expect = static_cast<int>(std::floor(mode_arg));
        MultiplicityEvidence empty;
        if (map_estimate(empty, cfg).n_hat != expect) ++bad_prior;
    }
    std::printf("  (iii) prior-mode mismatches: %d/50\n", bad_prior);

    bool ok = bad_map == 0 && valid == 100 && bracketed >= 95 && bad_prior == 0;
    return verdict(5, ok, "estimator suite");
}

// ---------------------------------------------------------------- criterion 6

int criterion6() {
    std::mt19937_64 rng(60606);
    double worst = 0.0;

    // activation prior, binomial and truncated-poisson regimes
    for (int rep = 0; rep < 100; ++rep) {
        SystemConfig cfg;
        cfg.N = 1 + static_cast<int>(rng() % 400);
        cfg.p_A = 0.01 + 0.94 * uniform01(rng);
        cfg.K = 1;
        cfg.K_max = 1;
        cfg.omega = DegreeDistribution::constant(1);
        double s = 0.0;
        for (int n = 0; n <= cfg.N; ++n) s += activation_prior_pmf(n, cfg);
        worst = std::max(worst, std::fabs(s - 1.0));

        cfg.N = 200 + static_cast<int>(rng() % 401);
        cfg.p_A = 0.01 + uniform01(rng) * (1.0 / 3.0 - 0.01);
        s = 0.0;
        for (int n = 0; n <= cfg.N; ++n) s += activation_prior_pmf(n, cfg, true);
        worst = std::max(worst, std::fabs(s - 1.0));
    }

    // hypergeometric slice
    for (int rep = 0; rep < 200; ++rep) {
        int N = 1 + static_cast<int>(rng() % 500);
        int d_S = static_cast<int>(rng() % (N + 1));
        int n = static_cast<int>(rng() % (N + 1));
        double s = 0.0;
        for (int d_A = 0; d_A <= d_S; ++d_A) s += conditional_active_pmf(d_A, d_S, n, N);
        worst = std::max(worst, std::fabs(s - 1.0));
    }

    // slot-degree mixture and its edge reweighting
    for (int rep = 0; rep < 30; ++rep) {
        SystemConfig cfg;
        cfg.N = 10 + static_cast<int>(rng() % 111);
        cfg.p_A = 0.05 + 0.6 * uniform01(rng);
        cfg.K = 1;
        cfg.K_max = 1;
        int d1 = 1 + static_cast<int>(rng() % (cfg.N / 2));
        int d2 = d1 + 1 + static_cast<int>(rng() % 5);
        double w = 0.1 + 0.8 * uniform01(rng);
        if (d2 <= cfg.N)
            cfg.omega.support = {{d1, w}, {d2, 1.0 - w}};
        else
            cfg.omega.support = {{d1, 1.0}};
        double s = 0.0;
        for (int d_A = 0; d_A <= cfg.omega.max_degree(); ++d_A)
            s += slot_active_degree_pmf(d_A, cfg);
        worst = std::max(worst, std::fabs(s - 1.0));

        auto psi = edge_active_distribution(cfg);
        s = 0.0;
        for (double v : psi) s += v;
        worst = std::max(worst, std::fabs(s - 1.0));
    }

    // constant-degree closed form
    for (int rep = 0; rep < 100; ++rep) {
        int beta = 1 + static_cast<int>(rng() % 80);
        double p = 0.02 + 0.9 * uniform01(rng);
        auto psi = edge_active_distribution(beta, p);
        double s = 0.0;
        for (double v : psi) s += v;
        worst = std::max(worst, std::fabs(s - 1.0));
    }

    // replica-count distribution
    for (int rep = 0; rep < 50; ++rep) {
        int N = 100 + static_cast<int>(rng() % 2000);
        int M = static_cast<int>(rng() % 3000);
        double beta = 1.0 + 30.0 * uniform01(rng);
        double lam = static_cast<double>(M) * beta / N;
        if (lam > 50.0) continue;
        int cap = static_cast<int>(lam + 20.0 * std::sqrt(lam + 1.0) + 60.0);
        double s = 0.0;
        for (int d = 0; d <= cap; ++d) s += user_degree_pmf(d, M, beta, N);
        worst = std::max(worst, std::fabs(s - 1.0));
    }
    bool ok_norm = worst <= 1e-10;
    std::printf("  pmf normalization worst |sum-1| = %.3e (limit 1e-10)\n", worst);

    // monotone trajectories
    int violations = 0;
    std::mt19937_64 rng2(60607);
    for (int rep = 0; rep < 1000; ++rep) {
        EvolutionParams p;
        p.p_A = 0.02 + 0.58 * uniform01(rng2);
        p.K = 1 + static_cast<int>(rng2() % 10);
        p.beta = 1 + static_cast<int>(rng2() % 60);
        p.epsilon = 0.01 + 2.99 * uniform01(rng2) - 1.0;
        p.record_trajectory = true;
        EvolutionResult res = evolve(p);
        double prev_y = 1.0;
        for (auto [r, y] : res.trajectory) {
            if (r < 0.0 || r > 1.0 || y < 0.0 || y > prev_y + 1e-15) {
                ++violations;
                break;
            }
            prev_y = y;
        }
    }
    bool ok_mono = violations == 0;
    std::printf("  y-trajectory monotonicity violations: %d/1000\n", violations);

    // binomial-theorem collapse
    int bad_collapse = 0;
    std::mt19937_64 rng3(60608);
    for (int rep = 0; rep < 200; ++rep) {
        int D = 1 + static_cast<int>(rng3() % 30);
        std::vector<double> psi(D + 1, 0.0);
        double total = 0.0;
        for (int d = 1; d <= D; ++d) {
            psi[d] = uniform01(rng3) + 1e-3;
            total += psi[d];
        }
        for (int d = 1; d <= D; ++d) psi[d] /= total;
        int K = D + static_cast<int>(rng3() % 5);
        double y = uniform01(rng3);
        if (slot_update(y, psi, K) != 0.0) ++bad_collapse;

        // trailing zeros past the true support behave the same way
        std::vector<double> padded = psi;
        padded.resize(D + 1 + static_cast<int>(rng3() % 4), 0.0);
        if (slot_update(y, padded, K) != 0.0) ++bad_collapse;
    }
    bool ok_collapse = bad_collapse == 0;
    std::printf("  slot_update collapse nonzeros: %d/400\n", bad_collapse);

    bool ok = ok_norm && ok_mono && ok_collapse;
    return verdict(6, ok, "numerical invariants");
}

}  // namespace

int main() {
    int failures = 0;
    failures += criterion1();
    failures += criterion2();
    failures += criterion3();
    failures += criterion4();
    failures += criterion5();
    failures += criterion6();
    std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
