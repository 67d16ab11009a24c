#pragma once

#include <cstdint>
#include <vector>

#include "csra/core_model.hpp"
#include "csra/rng.hpp"

namespace csra {

// Append-only transmission schedule. Slot j is a pure function of
// (seed, cfg, j): its degree and user subset come from a derived substream,
// so any slot can be regenerated without replaying the ones before it.
struct Schedule {
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> slots;  // slot index -> sorted user ids
};

// Sample one slot degree from omega.
int draw_slot_degree(const DegreeDistribution& omega, rng_t& rng);

// Uniform random d-subset of {1..N}, sorted (Floyd's algorithm).
std::vector<int> sample_user_subset(int N, int d, rng_t& rng);

// Regenerate slot j's user set from the seed without touching a Schedule.
std::vector<int> slot_users(std::uint64_t seed, const SystemConfig& cfg, int slot_index);

// Append the next slot; returns its index.
int extend_schedule(Schedule& sched, const SystemConfig& cfg);

// Replica count per user id (index 0 unused; ids are 1..N).
std::vector<int> user_degrees(const Schedule& sched, int N);

}  // namespace csra
