/* C API for the chronosense planning library.
 *
 * All functions return a cs_status; any non-CS_OK result leaves a
 * human-readable message in cs_last_error() (thread local). Objects returned
 * through out-parameters are opaque handles owned by the caller and released
 * with the matching *_free function. Strings returned through out-parameters
 * are released with cs_string_free.
 */
#ifndef CHRONOSENSE_H
#define CHRONOSENSE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cs_status {
    CS_OK = 0,
    CS_ERROR_INPUT = 2,      /* malformed input or configuration */
    CS_ERROR_INFEASIBLE = 3, /* no allocation satisfies the constraints */
    CS_ERROR_NUMERIC = 4     /* numerical failure */
} cs_status;

typedef enum cs_strategy {
    CS_STRATEGY_AP = 0,
    CS_STRATEGY_GP = 1,
    CS_STRATEGY_AGP = 2,
    CS_STRATEGY_HUFFMAN = 3,
    CS_STRATEGY_GREEDY = 4,
    CS_STRATEGY_ENUMERATE = 5
} cs_strategy;

typedef enum cs_policy {
    CS_POLICY_MIN_MIN = 0,
    CS_POLICY_PARETO = 1,
    CS_POLICY_FIXED_POINT = 2
} cs_policy;

typedef enum cs_format { CS_FORMAT_JSON = 0, CS_FORMAT_TABLE = 1 } cs_format;

typedef struct cs_history cs_history;
typedef struct cs_report cs_report;

typedef struct cs_plan_config {
    long long budget;
    int bands;              /* 0 = take from the input */
    cs_strategy strategy;
    cs_policy policy;
    int ar_order;           /* default 2 */
    double smoothing;       /* additive smoothing, default 1 */
    long long min_t1;       /* default 1 */
    long long min_d;        /* -1 = per-family default (AP 1, GP 2, AGP 1) */
    long long max_enum;     /* enumeration cap, default 1000000 */
    int gp_powers_of_two;   /* restrict GP ratios to powers of two */
    int with_matrix;        /* attach the variance-matrix analysis */
    double trim_low;        /* percentile trim for selection, default 0 */
    double trim_high;       /* default 1 */
    unsigned long long seed; /* reserved for synthetic-data helpers */
} cs_plan_config;

/* Fills a config with the documented defaults. */
void cs_plan_config_init(cs_plan_config* config);

/* Traffic ingestion: CSV with header `band_id,t,count`. */
cs_status cs_history_load_csv(const char* path, cs_history** out);
cs_status cs_history_parse_csv(const char* text, cs_history** out);
void cs_history_free(cs_history* history);
int cs_history_band_count(const cs_history* history);

/* Runs the planning pipeline. On CS_ERROR_INFEASIBLE *out still receives a
 * renderable report whose error_reason names the cause. */
cs_status cs_plan(const cs_history* history, const cs_plan_config* config, cs_report** out);
void cs_report_free(cs_report* report);
cs_status cs_report_render(const cs_report* report, cs_format format, char** out_text);

/* Occupancy probabilities derived from the history (original band order). */
cs_status cs_history_occupancy(const cs_history* history, int ar_order, double smoothing,
                               double* out_probs, size_t capacity, size_t* out_count);

cs_status cs_render_prediction(const cs_history* history, int ar_order, double smoothing,
                               cs_format format, char** out_text);

/* Spectral and algebraic analysis of G = diag(p) - p p^T. */
cs_status cs_analyze_matrix(const double* probs, size_t count, cs_format format,
                            char** out_text);

/* Strictly increasing partitions of the budget with entries above the floor. */
cs_status cs_enumerate_partitions(int bands, long long budget, long long min_time_exclusive,
                                  long long max_results, cs_format format, char** out_text);

void cs_string_free(char* text);
const char* cs_last_error(void);
const char* cs_version(void);

#ifdef __cplusplus
}
#endif

#endif /* CHRONOSENSE_H */
