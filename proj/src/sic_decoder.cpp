#include "csra/sic_decoder.hpp"

#include <algorithm>
#include <stdexcept>

namespace csra {

ResolutionState::ResolutionState(int N, int K) : N_(N), K_(K) {
    if (N < 1) throw std::invalid_argument("ResolutionState: N must be positive");
    if (K < 1) throw std::invalid_argument("ResolutionState: K must be positive");
    user_slots_.resize(N + 1);
    resolved_mask_.assign(N + 1, 0);
    inactive_mask_.assign(N + 1, 0);
}

const ResolutionState::Slot& ResolutionState::at(int slot_index) const {
    auto it = pos_of_.find(slot_index);
    if (it == pos_of_.end()) throw std::invalid_argument("ResolutionState: unknown slot index");
    return slots_[it->second];
}

void ResolutionState::mark_exact(int pos) {
    Slot& s = slots_[pos];
    if (s.exact_pushed) return;
    s.exact_pushed = true;
    int d_S = static_cast<int>(s.scheduled.size());
    int a = s.clipped ? s.cancelled : s.reported;
    new_exact_.emplace_back(s.slot_index, d_S, a);
}

void ResolutionState::enqueue_if_decodable(int pos) {
    Slot& s = slots_[pos];
    if (s.decoded || s.pending) return;
    if (static_cast<int>(s.residual.size()) <= K_) {
        s.pending = true;
        pending_.push_back(pos);
    }
}

void ResolutionState::ingest(const SlotObservation& obs) {
    if (pos_of_.count(obs.slot_index))
        throw std::invalid_argument("ResolutionState: slot ingested twice");
    int pos = static_cast<int>(slots_.size());
    pos_of_.emplace(obs.slot_index, pos);
    slots_.push_back({});
    Slot& s = slots_.back();
    s.slot_index = obs.slot_index;
    s.scheduled = obs.scheduled;
    s.reported = obs.reported_multiplicity;
    s.clipped = obs.clipped;
    for (int u : obs.active_hidden) {
        if (u < 1 || u > N_) throw std::invalid_argument("ResolutionState: user id out of range");
        if (resolved_mask_[u]) {
            ++s.cancelled;
        } else {
            s.residual.push_back(u);
            user_slots_[u].push_back(pos);
        }
    }
    if (!s.clipped) mark_exact(pos);
    if (s.clipped && s.residual.empty()) mark_exact(pos);
    enqueue_if_decodable(pos);
}

void ResolutionState::decode(int pos, std::vector<ResolutionEvent>& events) {
    Slot& s = slots_[pos];
    std::vector<int> newly = std::move(s.residual);
    s.residual.clear();
    s.decoded = true;
    s.cancelled += static_cast<int>(newly.size());
    std::sort(newly.begin(), newly.end());
    for (int u : newly) {
        resolved_mask_[u] = 1;
        resolved_ids_.push_back(u);
    }
    for (int u : newly) {
        for (int other : user_slots_[u]) {
            if (other == pos) continue;
            Slot& t = slots_[other];
            if (t.decoded) continue;
            auto it = std::find(t.residual.begin(), t.residual.end(), u);
            if (it == t.residual.end()) continue;
            *it = t.residual.back();
            t.residual.pop_back();
            ++t.cancelled;
            if (t.clipped && t.residual.empty()) mark_exact(other);
            enqueue_if_decodable(other);
        }
        user_slots_[u].clear();
    }
    for (int u : s.scheduled) {
        if (!resolved_mask_[u] && !inactive_mask_[u]) {
            inactive_mask_[u] = 1;
            ++inactive_count_;
        }
    }
    if (s.clipped) mark_exact(pos);
    events.push_back({s.slot_index, std::move(newly), iteration_});
}

std::vector<ResolutionEvent> ResolutionState::peel() {
    std::vector<ResolutionEvent> events;
    while (!pending_.empty()) {
        ++iteration_;
        std::vector<int> wave;
        wave.swap(pending_);
        for (int pos : wave) slots_[pos].pending = false;
        for (int pos : wave) {
            Slot& s = slots_[pos];
            if (s.decoded) continue;
            if (static_cast<int>(s.residual.size()) > K_) continue;
            decode(pos, events);
        }
    }
    return events;
}

std::vector<std::pair<int, int>> ResolutionState::exact_multiplicities() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(slots_.size());
    for (const Slot& s : slots_) {
        if (!s.clipped) {
            out.emplace_back(s.slot_index, s.reported);
        } else if (s.residual.empty()) {
            out.emplace_back(s.slot_index, s.cancelled);
        }
    }
    return out;
}

std::vector<std::tuple<int, int, int>> ResolutionState::drain_new_exact() {
    std::vector<std::tuple<int, int, int>> out;
    out.swap(new_exact_);
    return out;
}

}  // namespace csra
