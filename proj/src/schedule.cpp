#include "csra/schedule.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace csra {

int draw_slot_degree(const DegreeDistribution& omega, rng_t& rng) {
    if (omega.support.size() == 1) return omega.support.front().first;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double u = uni(rng);
    double acc = 0.0;
    for (const auto& [d, w] : omega.support) {
        acc += w;
        if (u < acc) return d;
    }
    return omega.support.back().first;  // guard against fp undershoot
}

std::vector<int> sample_user_subset(int N, int d, rng_t& rng) {
    if (d < 0 || d > N) throw std::domain_error("sample_user_subset: d outside [0,N]");
    std::unordered_set<int> picked;
    picked.reserve(static_cast<std::size_t>(d) * 2);
    for (int j = N - d + 1; j <= N; ++j) {
        std::uniform_int_distribution<int> uni(1, j);
        int t = uni(rng);
        if (!picked.insert(t).second) picked.insert(j);
    }
    std::vector<int> out(picked.begin(), picked.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> slot_users(std::uint64_t seed, const SystemConfig& cfg, int slot_index) {
    rng_t sub = make_rng(derive_stream(seed, static_cast<std::uint64_t>(slot_index)));
    int d = draw_slot_degree(cfg.omega, sub);
    return sample_user_subset(cfg.N, d, sub);
}

int extend_schedule(Schedule& sched, const SystemConfig& cfg) {
    int j = static_cast<int>(sched.slots.size());
    sched.slots.push_back(slot_users(sched.seed, cfg, j));
    return j;
}

std::vector<int> user_degrees(const Schedule& sched, int N) {
    std::vector<int> deg(static_cast<std::size_t>(N) + 1, 0);
    for (const auto& slot : sched.slots)
        for (int u : slot) ++deg[u];
    return deg;
}

}  // namespace csra
