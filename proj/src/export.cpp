#include "csra/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace csra {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot open for writing: " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out.good()) throw io_error("write failed: " + path);
}

// One object per row, JSON Lines; the first line carries the provenance.
void write_json_rows(const std::string& path, const nlohmann::json& rows,
                     const std::string& provenance) {
    std::ofstream out = open_out(path);
    out << nlohmann::json{{"provenance", provenance}}.dump() << '\n';
    for (const auto& row : rows) out << row.dump() << '\n';
    finish(out, path);
}

}  // namespace

void write_runs(const std::string& path, const std::vector<RunRecord>& rows, ExportFormat format,
                const std::string& provenance) {
    if (format == ExportFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const RunRecord& r : rows)
            arr.push_back({{"seed", r.seed},
                           {"K", r.K},
                           {"beta", r.beta},
                           {"M", r.M},
                           {"N_A", r.N_A},
                           {"N_R", r.N_R},
                           {"N_E", r.N_E},
                           {"f_RE", r.f_RE},
                           {"f_RA", r.f_RA},
                           {"T", r.T},
                           {"delta_nE", r.delta_nE}});
        write_json_rows(path, arr, provenance);
        return;
    }
    std::ofstream out = open_out(path);
    out << "# " << provenance << '\n';
    out << "seed,K,beta,M,N_A,N_R,N_E,f_RE,f_RA,T,delta_nE\n";
    for (const RunRecord& r : rows) {
        out << r.seed << ',' << r.K << ',' << r.beta << ',' << r.M << ',' << r.N_A << ','
            << r.N_R << ',' << r.N_E << ',' << fmt(r.f_RE) << ',' << fmt(r.f_RA) << ','
            << fmt(r.T) << ',' << fmt(r.delta_nE) << '\n';
    }
    finish(out, path);
}

std::vector<RunRecord> read_runs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open for reading: " + path);
    std::string line;
    bool header_seen = false;
    std::vector<RunRecord> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "seed,K,beta,M,N_A,N_R,N_E,f_RE,f_RA,T,delta_nE")
                throw io_error("unexpected runs header in " + path);
            header_seen = true;
            continue;
        }
        std::istringstream ss(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(ss, tok, ',')) toks.push_back(tok);
        if (toks.size() != 11) throw io_error("malformed runs row in " + path);
        try {
            RunRecord r;
            r.seed = std::stoull(toks[0]);
            r.K = std::stoi(toks[1]);
            r.beta = std::stoi(toks[2]);
            r.M = std::stoi(toks[3]);
            r.N_A = std::stoi(toks[4]);
            r.N_R = std::stoi(toks[5]);
            r.N_E = std::stoi(toks[6]);
            r.f_RE = std::stod(toks[7]);
            r.f_RA = std::stod(toks[8]);
            r.T = std::stod(toks[9]);
            r.delta_nE = std::stod(toks[10]);
            r.abs_delta_nE = std::fabs(r.delta_nE);
            rows.push_back(r);
        } catch (const std::exception&) {
            throw io_error("malformed runs row in " + path);
        }
    }
    if (!header_seen) throw io_error("missing runs header in " + path);
    return rows;
}

void write_curves(const std::string& path, const std::vector<CurvePoint>& rows,
                  ExportFormat format, const std::string& provenance) {
    if (format == ExportFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const CurvePoint& r : rows)
            arr.push_back({{"K", r.K},
                           {"M_over_N", r.M_over_N},
                           {"beta_star", r.beta_star},
                           {"p_R_star", r.p_R_star},
                           {"T_star", r.T_star},
                           {"p_U", r.p_U}});
        write_json_rows(path, arr, provenance);
        return;
    }
    std::ofstream out = open_out(path);
    out << "# " << provenance << '\n';
    out << "K,M_over_N,beta_star,p_R_star,T_star,p_U\n";
    for (const CurvePoint& r : rows) {
        out << r.K << ',' << fmt(r.M_over_N) << ',' << r.beta_star << ',' << fmt(r.p_R_star)
            << ',' << fmt(r.T_star) << ',' << fmt(r.p_U) << '\n';
    }
    finish(out, path);
}

void write_de_sweep(const std::string& path, const std::vector<DeSweepRow>& rows,
                    ExportFormat format, const std::string& provenance) {
    if (format == ExportFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const DeSweepRow& r : rows)
            arr.push_back({{"K", r.K},
                           {"M_over_N", r.M_over_N},
                           {"beta", r.beta},
                           {"p_R", r.p_R},
                           {"T", r.T},
                           {"p_U", r.p_U},
                           {"converged", r.converged},
                           {"iterations", r.iterations}});
        write_json_rows(path, arr, provenance);
        return;
    }
    std::ofstream out = open_out(path);
    out << "# " << provenance << '\n';
    out << "K,M_over_N,beta,p_R,T,p_U,converged,iterations\n";
    for (const DeSweepRow& r : rows) {
        out << r.K << ',' << fmt(r.M_over_N) << ',' << r.beta << ',' << fmt(r.p_R) << ','
            << fmt(r.T) << ',' << fmt(r.p_U) << ',' << (r.converged ? 1 : 0) << ','
            << r.iterations << '\n';
    }
    finish(out, path);
}

void write_aggregates(const std::string& path,
                      const std::vector<std::pair<int, AggregateMetrics>>& rows,
                      ExportFormat format, const std::string& provenance) {
    if (format == ExportFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [K, r] : rows)
            arr.push_back({{"K", K},
                           {"beta", r.beta},
                           {"runs_used", r.runs_used},
                           {"truncation_count", r.truncation_count},
                           {"mean_f_RE", r.mean_f_RE},
                           {"se_f_RE", r.se_f_RE},
                           {"mean_f_RA", r.mean_f_RA},
                           {"se_f_RA", r.se_f_RA},
                           {"mean_T", r.mean_T},
                           {"se_T", r.se_T},
                           {"mean_delta_nE", r.mean_delta_nE},
                           {"se_delta_nE", r.se_delta_nE},
                           {"mean_abs_delta_nE", r.mean_abs_delta_nE},
                           {"se_abs_delta_nE", r.se_abs_delta_nE},
                           {"beta_star", r.beta_star}});
        write_json_rows(path, arr, provenance);
        return;
    }
    std::ofstream out = open_out(path);
    out << "# " << provenance << '\n';
    out << "K,beta,runs_used,truncation_count,mean_f_RE,se_f_RE,mean_f_RA,se_f_RA,mean_T,se_T,"
           "mean_delta_nE,se_delta_nE,mean_abs_delta_nE,se_abs_delta_nE,beta_star\n";
    for (const auto& [K, r] : rows) {
        out << K << ',' << r.beta << ',' << r.runs_used << ',' << r.truncation_count << ','
            << fmt(r.mean_f_RE) << ',' << fmt(r.se_f_RE) << ',' << fmt(r.mean_f_RA) << ','
            << fmt(r.se_f_RA) << ',' << fmt(r.mean_T) << ',' << fmt(r.se_T) << ','
            << fmt(r.mean_delta_nE) << ',' << fmt(r.se_delta_nE) << ','
            << fmt(r.mean_abs_delta_nE) << ',' << fmt(r.se_abs_delta_nE) << ',' << r.beta_star
            << '\n';
    }
    finish(out, path);
}

void write_schedule_jsonl(const std::string& path, const Schedule& sched) {
    std::ofstream out = open_out(path);
    for (std::size_t j = 0; j < sched.slots.size(); ++j) {
        nlohmann::json row{{"j", j}, {"users", sched.slots[j]}};
        out << row.dump() << '\n';
    }
    finish(out, path);
}

void write_events_jsonl(const std::string& path, const std::vector<ResolutionEvent>& events) {
    std::ofstream out = open_out(path);
    for (const ResolutionEvent& e : events) {
        nlohmann::json row{{"slot", e.slot_index}, {"resolved", e.resolved},
                           {"iteration", e.iteration}};
        out << row.dump() << '\n';
    }
    finish(out, path);
}

}  // namespace csra
