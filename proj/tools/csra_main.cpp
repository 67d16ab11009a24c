#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csra/density_evolution.hpp"
#include "csra/estimator.hpp"
#include "csra/export.hpp"
#include "csra/harness.hpp"

namespace {

csra::ExportFormat format_for(const std::string& path) {
    auto ends_with = [&](const char* suf) {
        std::string s(suf);
        return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
    };
    return (ends_with(".json") || ends_with(".jsonl")) ? csra::ExportFormat::json
                                                       : csra::ExportFormat::csv;
}

std::vector<double> parse_grid(const std::string& text) {
    std::istringstream ss(text);
    std::string tok;
    std::vector<double> parts;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
    if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:step");
    double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(lo > 0.0) || !(step > 0.0) || hi < lo)
        throw std::invalid_argument("grid must satisfy 0 < lo <= hi, step > 0");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        double g = lo + step * i;
        if (g > hi + step * 0.5) break;
        grid.push_back(g);
    }
    return grid;
}

int run_de_sweep(double p_A, const std::vector<int>& K_list, const std::string& grid_text,
                 int beta_max, const std::string& out, const std::string& full_out) {
    std::vector<double> grid = parse_grid(grid_text);
    std::vector<csra::CurvePoint> pts = csra::figure_sweep(p_A, K_list, grid, beta_max);
    std::ostringstream prov;
    prov << "csra de-sweep pA=" << p_A << " beta_max=" << beta_max << " grid=" << grid_text;
    csra::write_curves(out, pts, format_for(out), prov.str());
    std::cout << "wrote " << pts.size() << " curve points to " << out << '\n';
    if (!full_out.empty()) {
        std::vector<csra::DeSweepRow> rows;
        rows.reserve(K_list.size() * grid.size() * beta_max);
        for (int K : K_list) {
            for (double g : grid) {
                for (int beta = 1; beta <= beta_max; ++beta) {
                    csra::EvolutionParams p;
                    p.p_A = p_A;
                    p.K = K;
                    p.beta = beta;
                    p.epsilon = g - 1.0;
                    csra::EvolutionResult res = csra::evolve(p);
                    csra::DeSweepRow row;
                    row.K = K;
                    row.M_over_N = g;
                    row.beta = beta;
                    row.p_R = res.p_R;
                    row.T = res.T;
                    row.p_U = 1.0 - std::exp(-g * beta);
                    row.converged = res.converged;
                    row.iterations = res.iterations;
                    rows.push_back(row);
                }
            }
        }
        csra::write_de_sweep(full_out, rows, format_for(full_out), prov.str());
        std::cout << "wrote " << rows.size() << " sweep rows to " << full_out << '\n';
    }
    return 0;
}

int run_simulate(const std::string& config_path, int beta, int runs, long long seed, double H,
                 const std::string& out) {
    std::ifstream in(config_path);
    if (!in) throw csra::io_error("cannot open config: " + config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config parse: ") + e.what());
    }
    csra::ExperimentConfig exp = csra::ExperimentConfig::from_json(j);
    if (beta > 0) exp.beta_grid = {beta};
    if (runs > 0) exp.runs = runs;
    if (seed >= 0) exp.seed = static_cast<std::uint64_t>(seed);
    if (H > 0.0) exp.H = H;
    exp.validate();

    csra::MonteCarloResult res = csra::monte_carlo(exp);
    std::printf("%6s %8s %8s %8s %8s %8s %6s\n", "beta", "f_RE", "f_RA", "T", "dnE", "|dnE|",
                "trunc");
    for (const csra::AggregateMetrics& a : res.per_beta) {
        std::printf("%6d %8.4f %8.4f %8.4f %+8.4f %8.4f %6d\n", a.beta, a.mean_f_RE, a.mean_f_RA,
                    a.mean_T, a.mean_delta_nE, a.mean_abs_delta_nE, a.truncation_count);
    }
    std::printf("beta* = %d (mean-T argmax over %zu grid points)\n", res.beta_star,
                res.per_beta.size());

    if (!out.empty()) {
        std::vector<csra::RunRecord> all;
        for (const auto& batch : res.records) all.insert(all.end(), batch.begin(), batch.end());
        std::ostringstream prov;
        prov << "csra simulate config=" << config_path << " runs=" << exp.runs
             << " seed=" << exp.seed << " H=" << exp.H;
        csra::write_runs(out, all, format_for(out), prov.str());
        std::cout << "wrote " << all.size() << " run records to " << out << '\n';
    }
    return 0;
}

int run_table1(int runs, long long seed, const std::string& out) {
    std::vector<std::pair<int, csra::AggregateMetrics>> rows;
    std::printf("%3s %6s %8s %8s %8s %8s %8s\n", "K", "beta*", "f_RE", "f_RA", "T", "dnE",
                "|dnE|");
    for (int K : {1, 2, 4, 8}) {
        csra::ExperimentConfig exp =
            csra::table1_experiment(K, runs, static_cast<std::uint64_t>(seed));
        csra::MonteCarloResult res = csra::monte_carlo(exp);
        for (const csra::AggregateMetrics& a : res.per_beta) rows.emplace_back(K, a);
        const csra::AggregateMetrics* star = &res.per_beta.front();
        for (const csra::AggregateMetrics& a : res.per_beta)
            if (a.beta == res.beta_star) star = &a;
        std::printf("%3d %6d %8.4f %8.4f %8.4f %+8.4f %8.4f\n", K, res.beta_star,
                    star->mean_f_RE, star->mean_f_RA, star->mean_T, star->mean_delta_nE,
                    star->mean_abs_delta_nE);
    }
    if (!out.empty()) {
        std::ostringstream prov;
        prov << "csra table1 runs=" << runs << " seed=" << seed;
        csra::write_aggregates(out, rows, format_for(out), prov.str());
        std::cout << "wrote " << rows.size() << " aggregate rows to " << out << '\n';
    }
    return 0;
}

int run_estimate_demo(const std::string& trace_path) {
    std::ifstream in(trace_path);
    if (!in) throw csra::io_error("cannot open trace: " + trace_path);
    std::string line;
    csra::SystemConfig cfg;
    csra::MultiplicityEvidence ev;
    bool have_cfg = false;
    int m = 0;
    csra::EstimateResult est;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("trace parse: ") + e.what());
        }
        if (!have_cfg) {
            cfg = csra::SystemConfig::from_json(j);
            have_cfg = true;
            est = csra::map_estimate(ev, cfg);
            std::printf("prior only: n_hat=%d score=%.6f\n", est.n_hat, est.score);
            continue;
        }
        int d_S, a;
        try {
            d_S = j.at("d_S").get<int>();
            a = j.at("a").get<int>();
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("trace parse: ") + e.what());
        }
        ev.add(d_S, a);
        ++m;
        est = csra::map_estimate(ev, cfg);
        std::printf("m=%d d_S=%d a=%d -> n_hat=%d score=%.6f range=[%d,%d]\n", m, d_S, a,
                    est.n_hat, est.score, est.n_lo, est.n_hi);
    }
    if (!have_cfg) throw std::invalid_argument("trace is empty: first line must be a config");
    if (est.n_hat >= 1 && est.n_hat <= cfg.N - 1) {
        double resid = csra::stationarity_residual(est.n_hat, ev, cfg);
        std::printf("final: n_hat=%d stationarity_residual=%.6f\n", est.n_hat, resid);
    } else {
        std::printf("final: n_hat=%d (boundary, residual undefined)\n", est.n_hat);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coded slotted ALOHA with K-user detection: simulator and asymptotics"};
    app.require_subcommand(1);

    auto* de = app.add_subcommand("de-sweep", "density-evolution operating curves");
    double pA = 0.2;
    std::vector<int> K_list{1, 2, 4, 8};
    std::string grid_text = "0.005:1.0:0.005";
    int beta_max = 100;
    std::string de_out, de_full;
    de->add_option("--pA", pA, "activation probability");
    de->add_option("--K", K_list, "detector bounds (repeat or comma-separate)")->delimiter(',');
    de->add_option("--grid", grid_text, "M/N grid as lo:hi:step");
    de->add_option("--beta-max", beta_max, "largest slot degree scanned");
    de->add_option("--out", de_out, "curves output path (.csv or .json)")->required();
    de->add_option("--full", de_full, "optional per-beta sweep output path");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo over one config");
    std::string sim_config, sim_out;
    int sim_beta = 0, sim_runs = 0;
    long long sim_seed = -1;
    double sim_H = 0.0;
    sim->add_option("--config", sim_config, "experiment JSON path")->required();
    sim->add_option("--beta", sim_beta, "override: single slot degree");
    sim->add_option("--runs", sim_runs, "override: Monte Carlo run count");
    sim->add_option("--seed", sim_seed, "override: master seed");
    sim->add_option("--H", sim_H, "override: termination threshold");
    sim->add_option("--out", sim_out, "run records output path");

    auto* t1 = app.add_subcommand("table1", "benchmark sweep at N=1000, p_A=0.2");
    int t1_runs = 500;
    long long t1_seed = 1;
    std::string t1_out;
    t1->add_option("--runs", t1_runs, "runs per (K, beta)");
    t1->add_option("--seed", t1_seed, "master seed");
    t1->add_option("--out", t1_out, "aggregate output path");

    auto* demo = app.add_subcommand("estimate-demo", "replay a recorded evidence trace");
    std::string trace_path;
    demo->add_option("--trace", trace_path, "JSONL trace: config line, then {d_S, a} lines")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(de)) return run_de_sweep(pA, K_list, grid_text, beta_max, de_out, de_full);
        if (app.got_subcommand(sim))
            return run_simulate(sim_config, sim_beta, sim_runs, sim_seed, sim_H, sim_out);
        if (app.got_subcommand(t1)) return run_table1(t1_runs, t1_seed, t1_out);
        if (app.got_subcommand(demo)) return run_estimate_demo(trace_path);
    } catch (const csra::io_error& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
