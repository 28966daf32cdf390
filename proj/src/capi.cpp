#include "chronosense.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "chronosense/errors.hpp"
#include "chronosense/planner.hpp"

namespace {

thread_local std::string g_last_error;

cs_status fail(cs_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

cs_status translate(const chronosense::Error& e) {
    switch (e.category()) {
        case chronosense::Error::Category::Input:
            return fail(CS_ERROR_INPUT, e.what());
        case chronosense::Error::Category::Infeasible:
            return fail(CS_ERROR_INFEASIBLE, e.what());
        case chronosense::Error::Category::Numeric:
            return fail(CS_ERROR_NUMERIC, e.what());
    }
    return fail(CS_ERROR_NUMERIC, e.what());
}

template <typename Fn>
cs_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const chronosense::Error& e) {
        return translate(e);
    } catch (const std::exception& e) {
        return fail(CS_ERROR_NUMERIC, e.what());
    }
}

char* copy_string(const std::string& text) {
    char* out = static_cast<char*>(std::malloc(text.size() + 1));
    if (out) std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

chronosense::planner::ReportFormat to_format(cs_format format) {
    return format == CS_FORMAT_TABLE ? chronosense::planner::ReportFormat::Table
                                     : chronosense::planner::ReportFormat::Json;
}

}  // namespace

struct cs_history {
    chronosense::traffic::TrafficHistory history;
};

struct cs_report {
    chronosense::planner::PlanReport report;
};

extern "C" {

void cs_plan_config_init(cs_plan_config* config) {
    if (!config) return;
    config->budget = 0;
    config->bands = 0;
    config->strategy = CS_STRATEGY_AP;
    config->policy = CS_POLICY_MIN_MIN;
    config->ar_order = 2;
    config->smoothing = 1.0;
    config->min_t1 = 1;
    config->min_d = -1;
    config->max_enum = 1'000'000;
    config->gp_powers_of_two = 0;
    config->with_matrix = 0;
    config->trim_low = 0.0;
    config->trim_high = 1.0;
    config->seed = 0;
}

cs_status cs_history_load_csv(const char* path, cs_history** out) {
    if (!path || !out) return fail(CS_ERROR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        auto handle = new cs_history{chronosense::planner::load_traces(path)};
        *out = handle;
        return CS_OK;
    });
}

cs_status cs_history_parse_csv(const char* text, cs_history** out) {
    if (!text || !out) return fail(CS_ERROR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        std::istringstream in{std::string(text)};
        auto handle = new cs_history{chronosense::planner::parse_traces(in)};
        *out = handle;
        return CS_OK;
    });
}

void cs_history_free(cs_history* history) { delete history; }

int cs_history_band_count(const cs_history* history) {
    return history ? static_cast<int>(history->history.bands.size()) : 0;
}

cs_status cs_plan(const cs_history* history, const cs_plan_config* config, cs_report** out) {
    if (!history || !config || !out) return fail(CS_ERROR_INPUT, "null argument");
    *out = nullptr;
    return guarded([&]() {
        chronosense::planner::PlanConfig cfg;
        cfg.budget = config->budget;
        cfg.bands = config->bands;
        switch (config->strategy) {
            case CS_STRATEGY_AP:
                cfg.strategy = chronosense::planner::Strategy::Ap;
                break;
            case CS_STRATEGY_GP:
                cfg.strategy = chronosense::planner::Strategy::Gp;
                break;
            case CS_STRATEGY_AGP:
                cfg.strategy = chronosense::planner::Strategy::Agp;
                break;
            case CS_STRATEGY_HUFFMAN:
                cfg.strategy = chronosense::planner::Strategy::Huffman;
                break;
            case CS_STRATEGY_GREEDY:
                cfg.strategy = chronosense::planner::Strategy::Greedy;
                break;
            case CS_STRATEGY_ENUMERATE:
                cfg.strategy = chronosense::planner::Strategy::Enumerate;
                break;
            default:
                return fail(CS_ERROR_INPUT, "unknown strategy");
        }
        switch (config->policy) {
            case CS_POLICY_MIN_MIN:
                cfg.policy = chronosense::planner::Policy::MinMin;
                break;
            case CS_POLICY_PARETO:
                cfg.policy = chronosense::planner::Policy::Pareto;
                break;
            case CS_POLICY_FIXED_POINT:
                cfg.policy = chronosense::planner::Policy::FixedPoint;
                break;
            default:
                return fail(CS_ERROR_INPUT, "unknown policy");
        }
        cfg.ar_order = config->ar_order;
        cfg.smoothing = config->smoothing;
        cfg.constraints.min_t1 = config->min_t1;
        if (config->min_d >= 0) cfg.constraints.min_d = config->min_d;
        cfg.constraints.max_enum = config->max_enum;
        cfg.constraints.gp_powers_of_two = config->gp_powers_of_two != 0;
        cfg.with_matrix = config->with_matrix != 0;
        cfg.heuristics.trim_low = config->trim_low;
        cfg.heuristics.trim_high = config->trim_high;
        cfg.seed = config->seed;

        auto handle = new cs_report{chronosense::planner::plan(cfg, history->history)};
        *out = handle;
        if (!handle->report.error_reason.empty())
            return fail(CS_ERROR_INFEASIBLE, handle->report.error_reason);
        return CS_OK;
    });
}

void cs_report_free(cs_report* report) { delete report; }

cs_status cs_report_render(const cs_report* report, cs_format format, char** out_text) {
    if (!report || !out_text) return fail(CS_ERROR_INPUT, "null argument");
    *out_text = nullptr;
    return guarded([&]() {
        *out_text = copy_string(chronosense::planner::emit_report(report->report,
                                                                  to_format(format)));
        return *out_text ? CS_OK : fail(CS_ERROR_NUMERIC, "out of memory");
    });
}

cs_status cs_history_occupancy(const cs_history* history, int ar_order, double smoothing,
                               double* out_probs, size_t capacity, size_t* out_count) {
    if (!history || !out_probs || !out_count) return fail(CS_ERROR_INPUT, "null argument");
    return guarded([&]() {
        const auto profile =
            chronosense::planner::history_profile(history->history, ar_order, smoothing);
        *out_count = profile.q.size();
        if (profile.q.size() > capacity)
            return fail(CS_ERROR_INPUT, "output buffer too small for " +
                                            std::to_string(profile.q.size()) + " bands");
        for (size_t i = 0; i < profile.q.size(); ++i) out_probs[i] = profile.q[i];
        return CS_OK;
    });
}

cs_status cs_render_prediction(const cs_history* history, int ar_order, double smoothing,
                               cs_format format, char** out_text) {
    if (!history || !out_text) return fail(CS_ERROR_INPUT, "null argument");
    *out_text = nullptr;
    return guarded([&]() {
        *out_text = copy_string(chronosense::planner::render_prediction(
            history->history, ar_order, smoothing, to_format(format)));
        return *out_text ? CS_OK : fail(CS_ERROR_NUMERIC, "out of memory");
    });
}

cs_status cs_analyze_matrix(const double* probs, size_t count, cs_format format,
                            char** out_text) {
    if (!probs || !out_text) return fail(CS_ERROR_INPUT, "null argument");
    *out_text = nullptr;
    return guarded([&]() {
        std::vector<double> p(probs, probs + count);
        *out_text = copy_string(
            chronosense::planner::render_matrix_analysis(p, to_format(format)));
        return *out_text ? CS_OK : fail(CS_ERROR_NUMERIC, "out of memory");
    });
}

cs_status cs_enumerate_partitions(int bands, long long budget, long long min_time_exclusive,
                                  long long max_results, cs_format format, char** out_text) {
    if (!out_text) return fail(CS_ERROR_INPUT, "null argument");
    *out_text = nullptr;
    return guarded([&]() {
        *out_text = copy_string(chronosense::planner::render_partitions(
            bands, budget, min_time_exclusive, max_results, to_format(format)));
        return *out_text ? CS_OK : fail(CS_ERROR_NUMERIC, "out of memory");
    });
}

void cs_string_free(char* text) { std::free(text); }

const char* cs_last_error(void) { return g_last_error.c_str(); }

const char* cs_version(void) { return "0.1.0"; }

}  // extern "C"
