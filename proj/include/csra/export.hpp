#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "csra/core_model.hpp"
#include "csra/harness.hpp"
#include "csra/schedule.hpp"
#include "csra/sic_decoder.hpp"

namespace csra {

struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

enum class ExportFormat { csv, json };

// One density-evolution operating point, as emitted by the de-sweep command.
struct DeSweepRow {
    int K = 0;
    double M_over_N = 0.0;
    int beta = 0;
    double p_R = 0.0;
    double T = 0.0;
    double p_U = 0.0;
    bool converged = false;
    int iterations = 0;
};

// All writers emit a "# <provenance>" first line (CSV) or a provenance field
// (JSON); identical inputs give identical bytes.
void write_runs(const std::string& path, const std::vector<RunRecord>& rows, ExportFormat format,
                const std::string& provenance);
std::vector<RunRecord> read_runs_csv(const std::string& path);

void write_curves(const std::string& path, const std::vector<CurvePoint>& rows,
                  ExportFormat format, const std::string& provenance);

void write_de_sweep(const std::string& path, const std::vector<DeSweepRow>& rows,
                    ExportFormat format, const std::string& provenance);

// Aggregate rows tagged with the K they were run under.
void write_aggregates(const std::string& path,
                      const std::vector<std::pair<int, AggregateMetrics>>& rows,
                      ExportFormat format, const std::string& provenance);

// One JSON object per line: {"j": slot, "users": [...]}.
void write_schedule_jsonl(const std::string& path, const Schedule& sched);

// One JSON object per line: {"slot": j, "resolved": [...], "iteration": l}.
void write_events_jsonl(const std::string& path, const std::vector<ResolutionEvent>& events);

}  // namespace csra
