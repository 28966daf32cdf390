#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "chronosense/allocation.hpp"
#include "chronosense/coding.hpp"
#include "chronosense/stochastic.hpp"
#include "chronosense/traffic.hpp"
#include "chronosense/varmatrix.hpp"

namespace chronosense::planner {

enum class Strategy { Ap, Gp, Agp, Huffman, Greedy, Enumerate };
enum class Policy { MinMin, Pareto, FixedPoint };
enum class ReportFormat { Json, Table };

struct PlanConfig {
    long long budget = 0;
    int bands = 0;  // 0 = take from the input, otherwise validated against it
    Strategy strategy = Strategy::Ap;
    Policy policy = Policy::MinMin;
    int ar_order = 2;
    double smoothing = 1.0;
    allocation::Constraints constraints;
    stochastic::SelectionHeuristics heuristics;
    bool with_matrix = false;
    // Seed for synthetic-data helpers only; planning math never reads it.
    unsigned long long seed = 0;
};

struct CandidateReport {
    allocation::AllocationScheme scheme;
    std::vector<long long> times;  // ascending
    double mean = 0.0;             // moments of the anti-monotone band assignment
    double variance = 0.0;
};

struct PlanReport {
    long long budget = 0;
    traffic::OccupancyProfile profile;
    std::vector<CandidateReport> candidates;
    std::optional<allocation::SensingAllocation> chosen;
    std::vector<stochastic::ParetoPoint> front;  // indices into `candidates`
    double entropy_bits = 0.0;
    std::optional<double> kraft;  // of the chosen times, base 2
    std::optional<varmatrix::MatrixAnalysis> matrix;
    std::string error_reason;  // non-empty when no candidate survived
};

// CSV with header `band_id,t,count`; rows grouped by band and sorted by t.
// Ragged series, duplicate (band, t) pairs, and negative counts are rejected
// with the offending line number.
traffic::TrafficHistory load_traces(const std::string& path);
traffic::TrafficHistory parse_traces(std::istream& in);

// Per-band AR fit and prediction, then the occupancy profile.
traffic::OccupancyProfile history_profile(const traffic::TrafficHistory& history, int ar_order,
                                          double smoothing);

// Profile -> candidate generation -> assignment scoring -> policy selection.
// An empty candidate set is reported through `error_reason` rather than
// thrown, so the report can still be rendered.
PlanReport plan(const PlanConfig& config, const traffic::TrafficHistory& history);

std::string emit_report(const PlanReport& report, ReportFormat format);

// Render surfaces for the other CLI subcommands.
std::string render_matrix_analysis(const std::vector<double>& probs, ReportFormat format);
std::string render_prediction(const traffic::TrafficHistory& history, int ar_order,
                              double smoothing, ReportFormat format);
std::string render_partitions(int bands, long long budget, long long floor_exclusive,
                              long long max_results, ReportFormat format);

}  // namespace chronosense::planner
