// Command-line front end for the chronosense shared library. Talks to the
// planner exclusively through the C API in chronosense.h.

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chronosense.h"

namespace {

struct HistoryDeleter {
    void operator()(cs_history* h) const { cs_history_free(h); }
};
struct ReportDeleter {
    void operator()(cs_report* r) const { cs_report_free(r); }
};

using HistoryPtr = std::unique_ptr<cs_history, HistoryDeleter>;
using ReportPtr = std::unique_ptr<cs_report, ReportDeleter>;

int report_failure(cs_status status) {
    std::fprintf(stderr, "error: %s\n", cs_last_error());
    return static_cast<int>(status);
}

bool print_text(char* text) {
    if (!text) return false;
    std::fputs(text, stdout);
    cs_string_free(text);
    return true;
}

cs_format parse_format(const std::string& name) {
    return name == "table" ? CS_FORMAT_TABLE : CS_FORMAT_JSON;
}

// CHRONOSENSE_MAX_ENUM, when set, overrides the enumeration cap.
bool apply_max_enum_env(long long& max_enum, std::string& error) {
    const char* raw = std::getenv("CHRONOSENSE_MAX_ENUM");
    if (!raw) return true;
    char* end = nullptr;
    const long long value = std::strtoll(raw, &end, 10);
    if (end == raw || *end != '\0' || value < 0) {
        error = std::string("invalid CHRONOSENSE_MAX_ENUM value '") + raw + "'";
        return false;
    }
    max_enum = value;
    return true;
}

std::vector<double> parse_prob_list(const std::string& csv, std::string& error) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        const std::size_t next = csv.find(',', pos);
        const std::string field =
            csv.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            error = "invalid probability '" + field + "'";
            return {};
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensing-time budget planner for spectrum sub-bands"};
    app.require_subcommand(1);

    std::string input, format = "json", policy = "min-min", strategy = "ap", probs_csv;
    long long budget = 0, min_t1 = 1, min_d = -1, max_enum = 1'000'000, min_time = 0;
    int bands = 0, ar_order = 2;
    double smoothing = 1.0, trim_low = 0.0, trim_high = 1.0;
    bool gp_pow2 = false, with_matrix = false;
    unsigned long long seed = 0;

    CLI::App* plan = app.add_subcommand("plan", "Allocate the sensing-time budget across bands");
    plan->add_option("--input", input, "traffic CSV (band_id,t,count)")->required();
    plan->add_option("--budget", budget, "total sensing-time budget L")->required();
    plan->add_option("--strategy", strategy, "ap|gp|agp|huffman|greedy|enumerate")
        ->check(CLI::IsMember({"ap", "gp", "agp", "huffman", "greedy", "enumerate"}));
    plan->add_option("--policy", policy, "min-min|pareto|fixed-point")
        ->check(CLI::IsMember({"min-min", "pareto", "fixed-point"}));
    plan->add_option("--bands", bands, "expected band count (validated against the input)");
    plan->add_option("--ar-order", ar_order, "AR model order (default 2)");
    plan->add_option("--smoothing", smoothing, "additive smoothing k (default 1)");
    plan->add_option("--min-t1", min_t1, "minimum first sensing time (default 1)");
    plan->add_option("--min-d", min_d, "minimum difference/ratio (-1 = family default)");
    plan->add_option("--max-enum", max_enum, "enumeration cap (default 1000000)");
    plan->add_flag("--gp-pow2", gp_pow2, "restrict GP ratios to powers of two");
    plan->add_flag("--with-matrix", with_matrix, "attach the variance-matrix analysis");
    plan->add_option("--trim-low", trim_low, "drop candidates below this (t1, d) quantile");
    plan->add_option("--trim-high", trim_high, "drop candidates above this (t1, d) quantile");
    plan->add_option("--seed", seed, "seed for synthetic-data helpers (planning ignores it)");
    plan->add_option("--format", format, "json|table")->check(CLI::IsMember({"json", "table"}));

    CLI::App* analyze =
        app.add_subcommand("analyze-matrix", "Analyze the variance matrix G = diag(p) - p p^T");
    analyze->add_option("--probs", probs_csv, "comma-separated band probabilities");
    analyze->add_option("--input", input, "traffic CSV to derive probabilities from");
    analyze->add_option("--ar-order", ar_order, "AR model order (default 2)");
    analyze->add_option("--smoothing", smoothing, "additive smoothing k (default 1)");
    analyze->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));

    CLI::App* predict = app.add_subcommand("predict", "Fit AR models and predict next counts");
    predict->add_option("--input", input, "traffic CSV (band_id,t,count)")->required();
    predict->add_option("--ar-order", ar_order, "AR model order (default 2)");
    predict->add_option("--smoothing", smoothing, "additive smoothing k (default 1)");
    predict->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));

    CLI::App* enumerate =
        app.add_subcommand("enumerate", "List increasing time partitions of the budget");
    enumerate->add_option("--bands", bands, "number of bands")->required();
    enumerate->add_option("--budget", budget, "total sensing-time budget L")->required();
    enumerate->add_option("--min-time", min_time, "strict lower bound on every time (default 0)");
    enumerate->add_option("--max-enum", max_enum, "enumeration cap (default 1000000)");
    enumerate->add_option("--format", format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::string env_error;
    if (!apply_max_enum_env(max_enum, env_error)) {
        std::fprintf(stderr, "error: %s\n", env_error.c_str());
        return 2;
    }

    if (plan->parsed()) {
        cs_history* raw_history = nullptr;
        cs_status status = cs_history_load_csv(input.c_str(), &raw_history);
        if (status != CS_OK) return report_failure(status);
        HistoryPtr history(raw_history);

        cs_plan_config config;
        cs_plan_config_init(&config);
        config.budget = budget;
        config.bands = bands;
        config.strategy = strategy == "gp"          ? CS_STRATEGY_GP
                          : strategy == "agp"       ? CS_STRATEGY_AGP
                          : strategy == "huffman"   ? CS_STRATEGY_HUFFMAN
                          : strategy == "greedy"    ? CS_STRATEGY_GREEDY
                          : strategy == "enumerate" ? CS_STRATEGY_ENUMERATE
                                                    : CS_STRATEGY_AP;
        config.policy = policy == "pareto"        ? CS_POLICY_PARETO
                        : policy == "fixed-point" ? CS_POLICY_FIXED_POINT
                                                  : CS_POLICY_MIN_MIN;
        config.ar_order = ar_order;
        config.smoothing = smoothing;
        config.min_t1 = min_t1;
        config.min_d = min_d;
        config.max_enum = max_enum;
        config.gp_powers_of_two = gp_pow2 ? 1 : 0;
        config.with_matrix = with_matrix ? 1 : 0;
        config.trim_low = trim_low;
        config.trim_high = trim_high;
        config.seed = seed;

        cs_report* raw_report = nullptr;
        status = cs_plan(history.get(), &config, &raw_report);
        ReportPtr report(raw_report);
        if (status != CS_OK && !raw_report) return report_failure(status);
        if (status != CS_OK) std::fprintf(stderr, "error: %s\n", cs_last_error());

        char* text = nullptr;
        const cs_status render = cs_report_render(report.get(), parse_format(format), &text);
        if (render != CS_OK) return report_failure(render);
        print_text(text);
        return static_cast<int>(status);
    }

    if (analyze->parsed()) {
        std::vector<double> probs;
        if (!probs_csv.empty()) {
            std::string error;
            probs = parse_prob_list(probs_csv, error);
            if (probs.empty()) {
                std::fprintf(stderr, "error: %s\n", error.c_str());
                return 2;
            }
        } else if (!input.empty()) {
            cs_history* raw_history = nullptr;
            cs_status status = cs_history_load_csv(input.c_str(), &raw_history);
            if (status != CS_OK) return report_failure(status);
            HistoryPtr history(raw_history);
            probs.resize(static_cast<std::size_t>(cs_history_band_count(history.get())));
            size_t count = 0;
            status = cs_history_occupancy(history.get(), ar_order, smoothing, probs.data(),
                                          probs.size(), &count);
            if (status != CS_OK) return report_failure(status);
            probs.resize(count);
        } else {
            std::fprintf(stderr, "error: analyze-matrix needs --probs or --input\n");
            return 2;
        }

        char* text = nullptr;
        const cs_status status =
            cs_analyze_matrix(probs.data(), probs.size(), parse_format(format), &text);
        if (status != CS_OK) return report_failure(status);
        print_text(text);
        return 0;
    }

    if (predict->parsed()) {
        cs_history* raw_history = nullptr;
        cs_status status = cs_history_load_csv(input.c_str(), &raw_history);
        if (status != CS_OK) return report_failure(status);
        HistoryPtr history(raw_history);

        char* text = nullptr;
        status = cs_render_prediction(history.get(), ar_order, smoothing, parse_format(format),
                                      &text);
        if (status != CS_OK) return report_failure(status);
        print_text(text);
        return 0;
    }

    // enumerate
    char* text = nullptr;
    const cs_status status = cs_enumerate_partitions(bands, budget, min_time, max_enum,
                                                     parse_format(format), &text);
    if (status != CS_OK) return report_failure(status);
    print_text(text);
    return 0;
}
