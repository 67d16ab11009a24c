#pragma once

#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "csra/core_model.hpp"

namespace csra {

// One decoded slot: the users it revealed, tagged with the peeling wave.
struct ResolutionEvent {
    int slot_index = 0;
    std::vector<int> resolved;
    int iteration = 0;
};

// Iterative resolution over the slot/user bipartite graph. A slot decodes
// once its residual active multiplicity is at or below K (oracle query, the
// decoder never inspects identities before that point); decoding reveals the
// residual users, whose replicas are then cancelled everywhere.
class ResolutionState {
  public:
    ResolutionState(int N, int K);

    // Add one observed slot; pre-cancels already-resolved users and queues
    // the slot if it is immediately decodable. Throws on duplicate index.
    void ingest(const SlotObservation& obs);

    // Run cancellation waves until no slot changes; returns the event log.
    std::vector<ResolutionEvent> peel();

    // (slot_index, |A_j|) for every slot whose exact multiplicity is known:
    // unclipped slots always, clipped slots once their residual is empty.
    std::vector<std::pair<int, int>> exact_multiplicities() const;

    // Incremental form of the above: entries (slot_index, d_S, |A_j|) that
    // became known since the last drain.
    std::vector<std::tuple<int, int, int>> drain_new_exact();

    int resolved_count() const { return static_cast<int>(resolved_ids_.size()); }
    const std::vector<int>& resolved_ids() const { return resolved_ids_; }
    bool is_resolved(int user) const { return resolved_mask_[user] != 0; }
    bool is_known_inactive(int user) const { return inactive_mask_[user] != 0; }
    int known_inactive_count() const { return inactive_count_; }

    int slot_count() const { return static_cast<int>(slots_.size()); }
    int residual_size(int slot_index) const { return at(slot_index).residual.size(); }
    int cancelled_count(int slot_index) const { return at(slot_index).cancelled; }
    bool is_decoded(int slot_index) const { return at(slot_index).decoded; }

  private:
    struct Slot {
        int slot_index = 0;
        std::vector<int> scheduled;
        std::vector<int> residual;  // active users not yet cancelled
        int cancelled = 0;
        int reported = 0;
        bool clipped = false;
        bool decoded = false;
        bool pending = false;
        bool exact_pushed = false;
    };

    const Slot& at(int slot_index) const;
    void enqueue_if_decodable(int pos);
    void decode(int pos, std::vector<ResolutionEvent>& events);
    void mark_exact(int pos);

    int N_;
    int K_;
    std::vector<Slot> slots_;
    std::unordered_map<int, int> pos_of_;        // slot_index -> position
    std::vector<std::vector<int>> user_slots_;   // user id -> positions with live replicas
    std::vector<char> resolved_mask_;
    std::vector<char> inactive_mask_;
    std::vector<int> resolved_ids_;
    std::vector<int> pending_;
    std::vector<std::tuple<int, int, int>> new_exact_;
    int inactive_count_ = 0;
    int iteration_ = 0;
};

}  // namespace csra
