#include "chronosense/planner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "chronosense/errors.hpp"

namespace chronosense::planner {

namespace {

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // collapse negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt(long long v) { return std::to_string(v); }

std::string jstr(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"':
                out += "\\\"";
                break;
            case '\\':
                out += "\\\\";
                break;
            case '\n':
                out += "\\n";
                break;
            case '\t':
                out += "\\t";
                break;
            case '\r':
                out += "\\r";
                break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
    return out;
}

template <typename T>
std::string num_array(const std::vector<T>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        if constexpr (std::is_same_v<T, double>)
            out += fmt(values[i]);
        else
            out += std::to_string(values[i]);
    }
    out += "]";
    return out;
}

std::string str_array(const std::vector<std::string>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += jstr(values[i]);
    }
    out += "]";
    return out;
}

long long parse_ll(const std::string& field, std::size_t line_no, const char* what) {
    long long value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw InputError("line " + std::to_string(line_no) + ": malformed " + what + " '" +
                         field + "'");
    return value;
}

void matrix_json(std::string& out, const varmatrix::MatrixAnalysis& a,
                 const std::vector<double>* probs, const std::string& pad) {
    out += "{\n";
    if (probs) out += pad + "  \"probs\": " + num_array(*probs) + ",\n";
    out += pad + "  \"trace\": " + fmt(a.trace) + ",\n";
    out += pad + "  \"determinant\": " + fmt(a.det.determinant) + ",\n";
    out += pad + "  \"rank_one_identity\": " + fmt(a.det.rank_one_identity) + ",\n";
    out += pad + "  \"charpoly\": " + num_array(a.charpoly) + ",\n";
    out += pad + "  \"eigenvalues\": " + num_array(a.eigenvalues) + ",\n";
    out += pad + "  \"spectral_radius\": " + fmt(a.spectral_radius) + ",\n";
    out += pad + "  \"bound_lower\": " + fmt(a.bounds.first) + ",\n";
    out += pad + "  \"bound_upper\": " + fmt(a.bounds.second) + ",\n";
    out += pad + std::string("  \"lower_bound_holds\": ") +
           (a.lower_bound_holds ? "true" : "false") + ",\n";
    out += pad + "  \"theta\": " + fmt(a.theta) + ",\n";
    out += pad + "  \"second_smallest_eigenvalue\": " + fmt(a.second_smallest) + "\n";
    out += pad + "}";
}

}  // namespace

traffic::TrafficHistory parse_traces(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("empty input: missing CSV header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "band_id,t,count")
        throw InputError("line 1: expected header 'band_id,t,count', got '" + line + "'");

    struct Series {
        std::map<long long, long long> by_time;
        std::size_t order;
    };
    std::map<std::string, Series> series;
    std::vector<std::string> order;

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const std::size_t c1 = line.find(',');
        const std::size_t c2 = (c1 == std::string::npos) ? std::string::npos
                                                         : line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos ||
            line.find(',', c2 + 1) != std::string::npos)
            throw InputError("line " + std::to_string(line_no) +
                             ": expected 3 comma-separated fields");

        const std::string band = line.substr(0, c1);
        if (band.empty())
            throw InputError("line " + std::to_string(line_no) + ": empty band_id");
        const long long t = parse_ll(line.substr(c1 + 1, c2 - c1 - 1), line_no, "t");
        const long long count = parse_ll(line.substr(c2 + 1), line_no, "count");
        if (count < 0)
            throw InputError("line " + std::to_string(line_no) + ": negative count " +
                             std::to_string(count));

        auto [it, inserted] = series.try_emplace(band, Series{{}, order.size()});
        if (inserted) order.push_back(band);
        if (!it->second.by_time.emplace(t, count).second)
            throw InputError("line " + std::to_string(line_no) + ": duplicate sample for band '" +
                             band + "' at t=" + std::to_string(t));
    }
    if (order.empty()) throw InputError("no data rows in input");

    traffic::TrafficHistory history;
    std::size_t expected = series.at(order.front()).by_time.size();
    for (const std::string& band : order) {
        const Series& s = series.at(band);
        if (s.by_time.size() != expected)
            throw InputError("ragged input: band '" + band + "' has " +
                             std::to_string(s.by_time.size()) + " samples, expected " +
                             std::to_string(expected));
        traffic::Band b;
        b.id = band;
        for (const auto& [t, count] : s.by_time) b.counts.push_back(count);
        history.bands.push_back(std::move(b));
    }
    if (expected < 2) throw InputError("each band needs at least 2 samples");
    return history;
}

traffic::TrafficHistory load_traces(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    return parse_traces(in);
}

traffic::OccupancyProfile history_profile(const traffic::TrafficHistory& history, int ar_order,
                                          double smoothing) {
    std::vector<std::string> ids;
    std::vector<double> predictions;
    for (const traffic::Band& band : history.bands) {
        const traffic::ARModel model = traffic::fit_ar(band.counts, ar_order);
        ids.push_back(band.id);
        predictions.push_back(traffic::predict_next(model, band.counts));
    }
    return traffic::occupancy_profile(ids, predictions, smoothing);
}

namespace {

bool same_scheme(const allocation::AllocationScheme& a, const allocation::AllocationScheme& b) {
    return a.kind == b.kind && a.t1 == b.t1 && a.d == b.d && a.r == b.r && a.times == b.times;
}

std::string infeasibility_reason(const PlanConfig& config, int bands) {
    const long long m = bands;
    const long long budget = config.budget;
    switch (config.strategy) {
        case Strategy::Ap: {
            const auto dio =
                allocation::solve_linear_diophantine(2 * m, m * (m - 1), 2 * budget);
            if (!dio) {
                long long g = std::gcd(2 * m, m * (m - 1));
                return "no arithmetic-progression solution: gcd(2M, M(M-1)) = " +
                       std::to_string(g) + " does not divide 2L = " + std::to_string(2 * budget);
            }
            return "arithmetic-progression family has no member with t1 >= " +
                   std::to_string(config.constraints.min_t1) + " and d >= " +
                   std::to_string(config.constraints.min_d_for(allocation::SchemeKind::Ap));
        }
        case Strategy::Gp:
            return "no geometric-progression solution: no ratio d >= " +
                   std::to_string(config.constraints.min_d_for(allocation::SchemeKind::Gp)) +
                   " yields a geometric sum dividing L = " + std::to_string(budget);
        case Strategy::Agp:
            return "no arithmetico-geometric solution for L = " + std::to_string(budget);
        case Strategy::Enumerate:
            return "no strictly increasing " + std::to_string(m) +
                   "-tuple of times above " + std::to_string(config.constraints.min_t1 - 1) +
                   " sums to L = " + std::to_string(budget);
        default:
            return "no feasible allocation";
    }
}

}  // namespace

PlanReport plan(const PlanConfig& config, const traffic::TrafficHistory& history) {
    const int m = static_cast<int>(history.bands.size());
    if (m < 2) throw InputError("planning needs at least 2 bands");
    if (config.bands > 0 && config.bands != m)
        throw InputError("configured band count " + std::to_string(config.bands) +
                         " does not match the input (" + std::to_string(m) + " bands)");
    if (config.budget < m)
        throw InputError("budget must be at least the number of bands");
    if (config.ar_order < 1) throw InputError("AR order must be >= 1");
    const bool parametric = config.strategy == Strategy::Ap || config.strategy == Strategy::Gp ||
                            config.strategy == Strategy::Agp;
    if (config.policy == Policy::FixedPoint && !parametric)
        throw InputError("fixed-point policy requires the ap, gp, or agp strategy");

    PlanReport report;
    report.budget = config.budget;
    report.profile = history_profile(history, config.ar_order, config.smoothing);
    report.entropy_bits = coding::entropy(report.profile.q);
    if (config.with_matrix) report.matrix = varmatrix::analyze(varmatrix::build_g(report.profile.q));

    std::vector<allocation::AllocationScheme> schemes;
    std::string greedy_reason;
    switch (config.strategy) {
        case Strategy::Ap:
            schemes = allocation::ap_solutions(m, config.budget, config.constraints);
            break;
        case Strategy::Gp:
            schemes = allocation::gp_solutions(m, config.budget, config.constraints);
            break;
        case Strategy::Agp:
            schemes = allocation::agp_solutions(m, config.budget, config.constraints);
            break;
        case Strategy::Huffman: {
            const coding::CodeLengths lengths = coding::huffman_lengths(report.profile.q);
            std::vector<long long> times = coding::scale_to_budget(lengths, config.budget);
            std::sort(times.begin(), times.end());
            schemes.push_back(allocation::AllocationScheme::explicit_times(std::move(times)));
            break;
        }
        case Strategy::Greedy:
            try {
                schemes.push_back(allocation::AllocationScheme::explicit_times(
                    allocation::greedy_allocation(
                        m, config.budget, config.constraints.min_t1,
                        config.constraints.min_d_for(allocation::SchemeKind::Ap))));
            } catch (const InfeasibleError& e) {
                greedy_reason = e.what();
            }
            break;
        case Strategy::Enumerate: {
            const auto partitions = allocation::enumerate_partitions(
                m, config.budget, config.constraints.min_t1 - 1, config.constraints.max_enum);
            for (const auto& part : partitions)
                schemes.push_back(allocation::AllocationScheme::explicit_times(part));
            break;
        }
    }

    if (schemes.empty()) {
        report.error_reason =
            greedy_reason.empty() ? infeasibility_reason(config, m) : greedy_reason;
        return report;
    }

    for (const auto& scheme : schemes) {
        const std::vector<long long> times = allocation::expand_scheme(scheme, m);
        const allocation::SensingAllocation assigned =
            allocation::assign_times(report.profile, times, scheme);
        report.candidates.push_back({scheme, times, assigned.mean, assigned.variance});
    }

    std::vector<stochastic::ParetoPoint> points;
    for (std::size_t i = 0; i < report.candidates.size(); ++i)
        points.push_back({i, report.candidates[i].mean, report.candidates[i].variance});
    report.front = stochastic::pareto_front(points);

    std::size_t chosen_index = 0;
    if (config.policy == Policy::Pareto) {
        chosen_index = report.front.front().index;
    } else {
        const stochastic::SelectionPolicy policy = (config.policy == Policy::MinMin)
                                                       ? stochastic::SelectionPolicy::MinMin
                                                       : stochastic::SelectionPolicy::FixedPointRound;
        const allocation::AllocationScheme picked = stochastic::select_solution(
            schemes, report.profile.p_sorted, policy, config.heuristics);
        for (std::size_t i = 0; i < schemes.size(); ++i)
            if (same_scheme(schemes[i], picked)) {
                chosen_index = i;
                break;
            }
    }

    const CandidateReport& winner = report.candidates[chosen_index];
    report.chosen = allocation::assign_times(report.profile, winner.times, winner.scheme);
    if (report.chosen->budget != config.budget)
        throw NumericError("chosen allocation does not sum to the budget");
    report.kraft = coding::kraft_sum(winner.times, 2);
    return report;
}

namespace {

std::string emit_json(const PlanReport& r) {
    std::string out = "{\n";
    out += "  \"profile\": {\n";
    out += "    \"bands\": " + str_array(r.profile.band_ids) + ",\n";
    out += "    \"q\": " + num_array(r.profile.q) + ",\n";
    out += "    \"p_sorted\": " + num_array(r.profile.p_sorted) + ",\n";
    out += "    \"permutation\": " + num_array(r.profile.permutation) + ",\n";
    out += "    \"predicted\": " + num_array(r.profile.n_raw) + "\n";
    out += "  },\n";

    out += "  \"candidates\": [";
    for (std::size_t i = 0; i < r.candidates.size(); ++i) {
        const CandidateReport& c = r.candidates[i];
        out += (i ? ",\n    " : "\n    ");
        out += "{\"scheme\": " + jstr(c.scheme.label()) + ", \"times\": " + num_array(c.times) +
               ", \"mean\": " + fmt(c.mean) + ", \"variance\": " + fmt(c.variance) + "}";
    }
    out += r.candidates.empty() ? "],\n" : "\n  ],\n";

    out += "  \"chosen\": ";
    if (!r.chosen) {
        out += "null,\n";
    } else {
        const allocation::SensingAllocation& a = *r.chosen;
        out += "{\n";
        out += "    \"scheme\": " + jstr(a.scheme.label()) + ",\n";
        out += "    \"budget\": " + fmt(a.budget) + ",\n";
        out += "    \"mean\": " + fmt(a.mean) + ",\n";
        out += "    \"variance\": " + fmt(a.variance) + ",\n";
        out += "    \"times\": {";
        for (std::size_t i = 0; i < a.band_ids.size(); ++i) {
            if (i) out += ", ";
            out += jstr(a.band_ids[i]) + ": " + fmt(a.times_by_band[i]);
        }
        out += "}\n";
        out += "  },\n";
    }

    out += "  \"pareto_front\": [";
    for (std::size_t i = 0; i < r.front.size(); ++i) {
        const stochastic::ParetoPoint& p = r.front[i];
        out += (i ? ",\n    " : "\n    ");
        out += "{\"candidate\": " + std::to_string(p.index) + ", \"mean\": " + fmt(p.mean) +
               ", \"variance\": " + fmt(p.variance) + "}";
    }
    out += r.front.empty() ? "],\n" : "\n  ],\n";

    out += "  \"diagnostics\": {\n";
    out += "    \"entropy_bits\": " + fmt(r.entropy_bits);
    if (r.kraft) out += ",\n    \"kraft_sum\": " + fmt(*r.kraft);
    if (r.matrix) {
        out += ",\n    \"matrix\": ";
        matrix_json(out, *r.matrix, nullptr, "    ");
    }
    out += "\n  }";

    if (!r.error_reason.empty()) out += ",\n  \"error_reason\": " + jstr(r.error_reason);
    out += "\n}\n";
    return out;
}

std::string emit_table(const PlanReport& r) {
    std::size_t width = 5;  // "total"
    for (const std::string& id : r.profile.band_ids) width = std::max(width, id.size());

    std::ostringstream out;
    auto pad = [&](const std::string& s) {
        out << s << std::string(width - s.size() + 2, ' ');
    };
    pad("band");
    out << "q               time\n";

    double qsum = 0.0;
    for (std::size_t i = 0; i < r.profile.band_ids.size(); ++i) {
        pad(r.profile.band_ids[i]);
        std::string q = fmt(r.profile.q[i]);
        out << q << std::string(q.size() < 16 ? 16 - q.size() : 1, ' ');
        out << (r.chosen ? fmt(r.chosen->times_by_band[i]) : "-") << "\n";
        qsum += r.profile.q[i];
    }
    pad("total");
    std::string q = fmt(qsum);
    out << q << std::string(q.size() < 16 ? 16 - q.size() : 1, ' ');
    if (r.chosen) {
        out << fmt(r.chosen->budget) << "  scheme=" << r.chosen->scheme.label()
            << " mean=" << fmt(r.chosen->mean) << " variance=" << fmt(r.chosen->variance)
            << " entropy_bits=" << fmt(r.entropy_bits);
        if (r.kraft) out << " kraft_sum=" << fmt(*r.kraft);
        out << "\n";
    } else {
        out << "-  error: " << r.error_reason << "\n";
    }
    return out.str();
}

}  // namespace

std::string emit_report(const PlanReport& report, ReportFormat format) {
    return format == ReportFormat::Json ? emit_json(report) : emit_table(report);
}

std::string render_matrix_analysis(const std::vector<double>& probs, ReportFormat format) {
    const varmatrix::VarianceMatrix vm = varmatrix::build_g(probs);
    const varmatrix::MatrixAnalysis a = varmatrix::analyze(vm);
    if (format == ReportFormat::Json) {
        std::string out;
        matrix_json(out, a, &probs, "");
        out += "\n";
        return out;
    }
    std::ostringstream out;
    out << "probs                    " << num_array(probs) << "\n";
    out << "trace                    " << fmt(a.trace) << "\n";
    out << "determinant              " << fmt(a.det.determinant) << "\n";
    out << "rank_one_identity        " << fmt(a.det.rank_one_identity) << "\n";
    out << "charpoly                 " << num_array(a.charpoly) << "\n";
    out << "eigenvalues              " << num_array(a.eigenvalues) << "\n";
    out << "spectral_radius          " << fmt(a.spectral_radius) << "\n";
    out << "bounds                   [" << fmt(a.bounds.first) << ", " << fmt(a.bounds.second)
        << "]\n";
    out << "lower_bound_holds        " << (a.lower_bound_holds ? "true" : "false") << "\n";
    out << "theta                    " << fmt(a.theta) << "\n";
    out << "second_smallest          " << fmt(a.second_smallest) << "\n";
    return out.str();
}

std::string render_prediction(const traffic::TrafficHistory& history, int ar_order,
                              double smoothing, ReportFormat format) {
    struct Row {
        std::string id;
        traffic::ARModel model;
        double prediction;
    };
    std::vector<Row> rows;
    for (const traffic::Band& band : history.bands) {
        Row row;
        row.id = band.id;
        row.model = traffic::fit_ar(band.counts, ar_order);
        row.prediction = traffic::predict_next(row.model, band.counts);
        rows.push_back(std::move(row));
    }
    std::vector<std::string> ids;
    std::vector<double> predictions;
    for (const Row& row : rows) {
        ids.push_back(row.id);
        predictions.push_back(row.prediction);
    }
    const traffic::OccupancyProfile profile =
        traffic::occupancy_profile(ids, predictions, smoothing);

    if (format == ReportFormat::Json) {
        std::string out = "{\n  \"bands\": [";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& row = rows[i];
            out += (i ? ",\n    " : "\n    ");
            out += "{\"band\": " + jstr(row.id) + ", \"prediction\": " + fmt(row.prediction) +
                   ", \"q\": " + fmt(profile.q[i]) + ", \"mean\": " + fmt(row.model.mean) +
                   ", \"innovation_variance\": " + fmt(row.model.innovation_variance) +
                   ", \"degenerate\": " + (row.model.degenerate ? "true" : "false") +
                   ", \"ar_coefficients\": " + num_array(row.model.coefficients) + "}";
        }
        out += "\n  ],\n";
        out += "  \"profile\": {\n";
        out += "    \"q\": " + num_array(profile.q) + ",\n";
        out += "    \"p_sorted\": " + num_array(profile.p_sorted) + ",\n";
        out += "    \"permutation\": " + num_array(profile.permutation) + "\n";
        out += "  }\n}\n";
        return out;
    }

    std::size_t width = 4;
    for (const Row& row : rows) width = std::max(width, row.id.size());
    std::ostringstream out;
    out << "band" << std::string(width - 4 + 2, ' ') << "prediction      q\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << rows[i].id << std::string(width - rows[i].id.size() + 2, ' ');
        const std::string p = fmt(rows[i].prediction);
        out << p << std::string(p.size() < 16 ? 16 - p.size() : 1, ' ') << fmt(profile.q[i])
            << "\n";
    }
    return out.str();
}

std::string render_partitions(int bands, long long budget, long long floor_exclusive,
                              long long max_results, ReportFormat format) {
    const auto parts =
        allocation::enumerate_partitions(bands, budget, floor_exclusive, max_results);
    if (format == ReportFormat::Json) {
        std::string out = "{\n";
        out += "  \"bands\": " + std::to_string(bands) + ",\n";
        out += "  \"budget\": " + std::to_string(budget) + ",\n";
        out += "  \"min_time_exclusive\": " + std::to_string(floor_exclusive) + ",\n";
        out += "  \"count\": " + std::to_string(parts.size()) + ",\n";
        out += "  \"partitions\": [";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            out += (i ? ",\n    " : "\n    ");
            out += num_array(parts[i]);
        }
        out += parts.empty() ? "]\n" : "\n  ]\n";
        out += "}\n";
        return out;
    }
    std::ostringstream out;
    for (const auto& part : parts) {
        for (std::size_t i = 0; i < part.size(); ++i) out << (i ? " " : "") << part[i];
        out << "\n";
    }
    out << "count " << parts.size() << "\n";
    return out.str();
}

}  // namespace chronosense::planner
