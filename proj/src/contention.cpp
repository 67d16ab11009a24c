#include "csra/contention.hpp"

#include <stdexcept>

namespace csra {

ActivationOutcome activate(const SystemConfig& cfg, rng_t& rng) {
    ActivationOutcome out;
    out.active_mask.assign(static_cast<std::size_t>(cfg.N) + 1, 0);
    std::bernoulli_distribution coin(cfg.p_A);
    for (int u = 1; u <= cfg.N; ++u) {
        if (coin(rng)) {
            out.active_mask[u] = 1;
            ++out.N_A;
        }
    }
    return out;
}

SlotObservation observe_slot(int slot_index, const std::vector<int>& scheduled,
                             const ActivationOutcome& outcome, const SystemConfig& cfg) {
    if (scheduled.empty()) throw std::domain_error("observe_slot: empty scheduled set");
    SlotObservation obs;
    obs.slot_index = slot_index;
    obs.scheduled = scheduled;
    for (int u : scheduled)
        if (outcome.is_active(u)) obs.active_hidden.push_back(u);
    int count = static_cast<int>(obs.active_hidden.size());
    obs.clipped = count >= cfg.K_max;
    obs.reported_multiplicity = obs.clipped ? cfg.K_max : count;
    return obs;
}

}  // namespace csra
