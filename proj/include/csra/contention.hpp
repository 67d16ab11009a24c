#pragma once

#include <vector>

#include "csra/core_model.hpp"
#include "csra/rng.hpp"

namespace csra {

// Batch activation outcome for one contention period.
struct ActivationOutcome {
    std::vector<char> active_mask;  // index by user id, size N+1
    int N_A = 0;

    bool is_active(int user) const { return active_mask[user] != 0; }
};

// Each user activates independently with probability p_A.
ActivationOutcome activate(const SystemConfig& cfg, rng_t& rng);

// Integer-adder channel with a saturating multiplicity counter.
SlotObservation observe_slot(int slot_index, const std::vector<int>& scheduled,
                             const ActivationOutcome& outcome, const SystemConfig& cfg);

}  // namespace csra
