#include "csra/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csra/contention.hpp"
#include "csra/estimator.hpp"
#include "csra/parallel.hpp"
#include "csra/rng.hpp"
#include "csra/schedule.hpp"
#include "csra/sic_decoder.hpp"

namespace csra {

void ExperimentConfig::validate() const {
    cfg.validate();
    if (!(H > 0.0 && H <= 1.0)) throw std::invalid_argument("experiment: H must be in (0, 1]");
    if (M_max < 0) throw std::invalid_argument("experiment: M_max must be >= 0");
    if (runs < 1) throw std::invalid_argument("experiment: runs must be positive");
    if (m_min < 1) throw std::invalid_argument("experiment: m_min must be positive");
    for (int b : beta_grid)
        if (b < 1 || b > cfg.N)
            throw std::invalid_argument("experiment: beta_grid values must be in [1, N]");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig exp;
    exp.cfg = SystemConfig::from_json(j);
    try {
        exp.H = j.value("H", exp.H);
        if (j.contains("M_max")) {
            exp.M_max = j.at("M_max").get<int>();
            if (exp.M_max < 1) throw std::invalid_argument("experiment: M_max must be >= 1");
        }
        exp.runs = j.value("runs", exp.runs);
        exp.seed = j.value("seed", exp.seed);
        exp.m_min = j.value("m_min", exp.m_min);
        if (j.contains("beta_grid"))
            exp.beta_grid = j.at("beta_grid").get<std::vector<int>>();
        if (j.contains("objective")) {
            std::string obj = j.at("objective").get<std::string>();
            if (obj == "resolution")
                exp.objective = SweepObjective::resolution;
            else if (obj == "throughput")
                exp.objective = SweepObjective::throughput;
            else
                throw std::invalid_argument("experiment: unknown objective " + obj);
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("experiment: ") + e.what());
    }
    exp.validate();
    return exp;
}

RunRecord run_contention_period(const ExperimentConfig& exp, int beta, rng_t& rng) {
    SystemConfig cfg = exp.cfg;
    cfg.omega = DegreeDistribution::constant(beta);
    cfg.validate();

    std::uint64_t run_tag = rng();
    rng_t act_rng = make_rng(derive_stream(run_tag, 1));
    ActivationOutcome outcome = activate(cfg, act_rng);
    Schedule sched;
    sched.seed = derive_stream(run_tag, 2);

    ResolutionState state(cfg.N, cfg.K);
    MultiplicityEvidence ev;
    const int M_max = exp.effective_M_max();

    int M = 0;
    int N_R = 0;
    int N_E = 0;
    double f_RE = 0.0;
    bool truncated = false;

    for (;;) {
        int j = extend_schedule(sched, cfg);
        SlotObservation obs = observe_slot(j, sched.slots[j], outcome, cfg);
        state.ingest(obs);
        state.peel();
        for (const auto& [slot, d_S, a] : state.drain_new_exact()) {
            (void)slot;
            ev.add(d_S, a);
        }
        N_R = state.resolved_count();
        N_E = map_estimate(ev, cfg, N_R).n_hat;
        M = j + 1;
        f_RE = static_cast<double>(N_R) / std::max(N_E, 1);
        if (f_RE >= exp.H) break;
        if (N_E == 0 && N_R == 0 && M >= exp.m_min) {
            f_RE = 1.0;
            break;
        }
        if (M >= M_max) {
            truncated = true;
            break;
        }
    }

    RunRecord rec;
    rec.seed = run_tag;
    rec.K = cfg.K;
    rec.beta = beta;
    rec.M = M;
    rec.N_A = outcome.N_A;
    rec.N_R = N_R;
    rec.N_E = N_E;
    rec.f_RE = f_RE;
    rec.f_RA = outcome.N_A > 0 ? static_cast<double>(N_R) / outcome.N_A : 1.0;
    rec.T = static_cast<double>(N_R) / (static_cast<double>(M) * cfg.K);
    rec.delta_nE = static_cast<double>(N_E - outcome.N_A) / std::max(outcome.N_A, 1);
    rec.abs_delta_nE = std::fabs(rec.delta_nE);
    rec.truncated = truncated;
    return rec;
}

namespace {

void mean_se(const std::vector<double>& xs, double& mean, double& se) {
    double n = static_cast<double>(xs.size());
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    se = 0.0;
    if (xs.size() < 2) return;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

}  // namespace

AggregateMetrics aggregate(const std::vector<RunRecord>& records, int beta) {
    if (records.empty()) throw std::invalid_argument("aggregate: no records");
    AggregateMetrics agg;
    agg.beta = beta;
    agg.runs_used = static_cast<int>(records.size());
    std::vector<double> f_RE, f_RA, T, d, ad;
    for (const RunRecord& r : records) {
        f_RE.push_back(r.f_RE);
        f_RA.push_back(r.f_RA);
        T.push_back(r.T);
        d.push_back(r.delta_nE);
        ad.push_back(r.abs_delta_nE);
        if (r.truncated) ++agg.truncation_count;
    }
    mean_se(f_RE, agg.mean_f_RE, agg.se_f_RE);
    mean_se(f_RA, agg.mean_f_RA, agg.se_f_RA);
    mean_se(T, agg.mean_T, agg.se_T);
    mean_se(d, agg.mean_delta_nE, agg.se_delta_nE);
    mean_se(ad, agg.mean_abs_delta_nE, agg.se_abs_delta_nE);
    return agg;
}

MonteCarloResult monte_carlo(const ExperimentConfig& exp) {
    exp.validate();
    if (exp.beta_grid.empty()) throw std::invalid_argument("monte_carlo: beta_grid is empty");
    MonteCarloResult out;
    for (int beta : exp.beta_grid) {
        std::vector<RunRecord> recs(exp.runs);
        std::uint64_t beta_master = derive_stream(exp.seed, static_cast<std::uint64_t>(beta));
        parallel_for(static_cast<std::size_t>(exp.runs), [&](std::size_t r) {
            rng_t run_rng = make_rng(derive_stream(beta_master, r));
            recs[r] = run_contention_period(exp, beta, run_rng);
        });
        out.per_beta.push_back(aggregate(recs, beta));
        out.records.push_back(std::move(recs));
    }
    const AggregateMetrics* best = &out.per_beta.front();
    for (const AggregateMetrics& a : out.per_beta) {
        if (a.mean_T > best->mean_T || (a.mean_T == best->mean_T && a.beta < best->beta))
            best = &a;
    }
    out.beta_star = best->beta;
    for (AggregateMetrics& a : out.per_beta) a.beta_star = out.beta_star;
    return out;
}

std::vector<CurvePoint> figure_sweep(double p_A, const std::vector<int>& K_list,
                                     const std::vector<double>& grid, int beta_max) {
    if (K_list.empty()) throw std::invalid_argument("figure_sweep: K_list is empty");
    if (grid.empty()) throw std::invalid_argument("figure_sweep: grid is empty");
    if (beta_max < 1) throw std::invalid_argument("figure_sweep: beta_max must be >= 1");
    std::vector<int> betas(beta_max);
    for (int b = 1; b <= beta_max; ++b) betas[b - 1] = b;
    std::vector<CurvePoint> out;
    out.reserve(K_list.size() * grid.size());
    for (int K : K_list) {
        if (K < 1) throw std::invalid_argument("figure_sweep: K must be positive");
        for (double g : grid) {
            if (!(g > 0.0)) throw std::invalid_argument("figure_sweep: M/N values must be > 0");
            BetaSweepResult s = sweep_beta(p_A, K, g - 1.0, betas, SweepObjective::resolution);
            CurvePoint pt;
            pt.K = K;
            pt.M_over_N = g;
            pt.beta_star = s.beta_star;
            pt.p_R_star = s.p_R_star;
            pt.T_star = s.T_star;
            pt.p_U = 1.0 - std::exp(-g * s.beta_star);
            out.push_back(pt);
        }
    }
    return out;
}

ExperimentConfig table1_experiment(int K, int runs, std::uint64_t seed) {
    if (K < 1) throw std::invalid_argument("table1_experiment: K must be positive");
    const double p_A = 0.2;
    const int N = 1000;

    // Anchor the grid at the throughput-optimal (M/N, beta) near M/N = p_A/K.
    std::vector<int> betas(100);
    for (int b = 1; b <= 100; ++b) betas[b - 1] = b;
    double g_mid = p_A / K;
    int anchor = 0;
    double best_T = -1.0;
    for (int i = -6; i <= 10; ++i) {
        double g = g_mid + 0.005 * i;
        if (g < 0.005) continue;
        BetaSweepResult s = sweep_beta(p_A, K, g - 1.0, betas, SweepObjective::throughput);
        if (s.T_star > best_T) {
            best_T = s.T_star;
            anchor = s.beta_star;
        }
    }

    ExperimentConfig exp;
    exp.cfg.N = N;
    exp.cfg.p_A = p_A;
    exp.cfg.K = K;
    exp.cfg.K_max = 10;
    exp.cfg.omega = DegreeDistribution::constant(anchor);
    exp.runs = runs;
    exp.seed = seed;
    int stride = std::max(1, anchor / 8);
    for (int b = (anchor + 1) / 2; b <= anchor * 3 / 2; b += stride) exp.beta_grid.push_back(b);
    exp.validate();
    return exp;
}

}  // namespace csra
