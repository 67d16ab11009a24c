#include "csra/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csra/math_util.hpp"

namespace csra {

void DegreeDistribution::validate(int N) const {
    if (support.empty()) throw std::invalid_argument("omega: empty support");
    double total = 0.0;
    int prev = 0;
    for (const auto& [d, w] : support) {
        if (d < 1 || d > N) throw std::invalid_argument("omega: degree out of [1,N]");
        if (d <= prev) throw std::invalid_argument("omega: degrees must be strictly increasing");
        if (w < 0.0) throw std::invalid_argument("omega: negative mass");
        prev = d;
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("omega: masses must sum to 1");
}

int DegreeDistribution::max_degree() const {
    return support.empty() ? 0 : support.back().first;
}

double DegreeDistribution::mass_at(int d_S) const {
    for (const auto& [d, w] : support)
        if (d == d_S) return w;
    return 0.0;
}

void SystemConfig::validate() const {
    if (N < 1) throw std::invalid_argument("config: N must be positive");
    if (!(p_A > 0.0 && p_A < 1.0)) throw std::invalid_argument("config: p_A must be in (0,1)");
    if (K < 1 || K > K_max || K_max > N)
        throw std::invalid_argument("config: need 1 <= K <= K_max <= N");
    omega.validate(N);
}

SystemConfig SystemConfig::from_json(const nlohmann::json& j) {
    SystemConfig cfg;
    try {
        cfg.N = j.at("N").get<int>();
        cfg.p_A = j.at("p_A").get<double>();
        cfg.K = j.at("K").get<int>();
        cfg.K_max = j.at("K_max").get<int>();
        for (const auto& pair : j.at("omega")) {
            if (!pair.is_array() || pair.size() != 2)
                throw std::invalid_argument("config: omega entries must be [degree, mass]");
            cfg.omega.support.emplace_back(pair[0].get<int>(), pair[1].get<double>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

nlohmann::json SystemConfig::to_json() const {
    nlohmann::json om = nlohmann::json::array();
    for (const auto& [d, w] : omega.support) om.push_back({d, w});
    return {{"N", N}, {"p_A", p_A}, {"K", K}, {"K_max", K_max}, {"omega", om}};
}

double activation_prior_pmf(int n, const SystemConfig& cfg, bool poisson_approx) {
    if (n < 0 || n > cfg.N) throw std::domain_error("activation_prior_pmf: n outside [0,N]");
    if (poisson_approx) {
        double a = cfg.alpha();
        return std::exp(n * std::log(a) - a - log_factorial(n));
    }
    double lp = log_binom(cfg.N, n) + n * std::log(cfg.p_A) + (cfg.N - n) * std::log1p(-cfg.p_A);
    return std::exp(lp);
}

double conditional_active_pmf(int d_A, int d_S, int n, int N) {
    if (d_A < 0 || d_S < 0 || d_A > d_S || d_S > N)
        throw std::domain_error("conditional_active_pmf: need 0 <= d_A <= d_S <= N");
    if (n < 0 || n > N) throw std::domain_error("conditional_active_pmf: n outside [0,N]");
    if (d_A > n || d_S - d_A > N - n) return 0.0;
    return std::exp(log_binom(n, d_A) + log_binom(N - n, d_S - d_A) - log_binom(N, d_S));
}

double slot_active_degree_pmf(int d_A, const SystemConfig& cfg) {
    if (d_A < 0 || d_A > cfg.N) throw std::domain_error("slot_active_degree_pmf: d_A outside [0,N]");
    double total = 0.0;
    for (const auto& [d_S, w] : cfg.omega.support) {
        if (w == 0.0 || d_A > d_S) continue;
        double inner = 0.0;
        for (int n = 0; n <= cfg.N; ++n)
            inner += conditional_active_pmf(d_A, d_S, n, cfg.N) * activation_prior_pmf(n, cfg);
        total += w * inner;
    }
    return total;
}

double user_degree_pmf(int d_U, int M, double beta, int N) {
    if (d_U < 0) return 0.0;
    double lam = static_cast<double>(M) * beta / static_cast<double>(N);
    if (lam == 0.0) return d_U == 0 ? 1.0 : 0.0;
    return std::exp(d_U * std::log(lam) - lam - log_factorial(d_U));
}

}  // namespace csra
