/*
 * realopt C API.
 *
 * Opaque handles own scenario documents and simulation results. Every
 * fallible call returns a realopt_status; on failure a description of the
 * last error on the calling thread is available from realopt_last_error().
 * Status values match the CLI exit codes.
 */
#ifndef REALOPT_REALOPT_H
#define REALOPT_REALOPT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(REALOPT_BUILDING_LIBRARY)
#    define REALOPT_API __declspec(dllexport)
#  else
#    define REALOPT_API __declspec(dllimport)
#  endif
#else
#  define REALOPT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum realopt_status {
    REALOPT_OK = 0,
    REALOPT_ERROR_INPUT = 2,    /* unreadable or invalid scenario / model */
    REALOPT_ERROR_DOMAIN = 3,   /* math domain error, e.g. rate <= -1 */
    REALOPT_ERROR_USAGE = 4,    /* request not meaningful for this model */
    REALOPT_ERROR_INTERNAL = 5  /* unexpected failure */
} realopt_status;

typedef enum realopt_kind {
    REALOPT_KIND_TWO_SCENARIO = 0,
    REALOPT_KIND_OPTION_TREE = 1,
    REALOPT_KIND_BRCF_ONE_STAGE = 2
} realopt_kind;

typedef enum realopt_quantile_mode {
    REALOPT_QUANTILE_EXACT = 0,
    REALOPT_QUANTILE_PAPER_COMPAT = 1
} realopt_quantile_mode;

typedef enum realopt_sim_mode {
    REALOPT_SIM_EXPECTATION_FORM = 0,
    REALOPT_SIM_BRANCH_SAMPLING = 1
} realopt_sim_mode;

typedef struct realopt_scenario realopt_scenario;
typedef struct realopt_simulation realopt_simulation;

/* Deterministic valuation. For two-scenario projects only v0, npv,
 * investment and time1 are meaningful (has_tree_nodes == 0); time1 holds the
 * scenario values at t = 1 including the year-1 flow. For option trees the
 * node arrays are indexed [i], [2*i + j] and [4*i + 2*j + l]. */
typedef struct realopt_valuation {
    double v0;
    double npv;
    double investment;
    double rate;
    double time1[2];
    int has_tree_nodes;
    double v1[2];
    double v2[4];
    double v3[8];
    double continuation[8]; /* v3 / (1 + rate) */
} realopt_valuation;

typedef struct realopt_risk_report {
    double mean;
    double sd;
    double alpha;
    double z;
    double pvar;
    double pv_alpha;
    double investment;
    int feasible;
    realopt_quantile_mode mode;
} realopt_risk_report;

typedef struct realopt_sim_options {
    uint64_t samples;
    uint64_t seed;
    realopt_sim_mode mode;
    double alpha;
    unsigned threads; /* worker cap, 0 = hardware concurrency; never changes results */
} realopt_sim_options;

typedef struct realopt_sim_summary {
    double mean;
    double sd;
    double pv_alpha;
    double pvar;
    double alpha;
    uint64_t samples;
    uint64_t seed;
    realopt_sim_mode mode;
} realopt_sim_summary;

typedef struct realopt_comparison {
    realopt_sim_summary option;
    realopt_sim_summary baseline;
    double mean_diff;
    double sd_diff;
    double pvar_diff;
    double option_value;
} realopt_comparison;

REALOPT_API const char* realopt_version(void);
REALOPT_API const char* realopt_last_error(void);

/* Scenarios */
REALOPT_API realopt_status realopt_scenario_load_file(const char* path, realopt_scenario** out);
REALOPT_API realopt_status realopt_scenario_load_string(const char* text, size_t length,
                                                        realopt_scenario** out);
REALOPT_API void realopt_scenario_free(realopt_scenario* scenario);
REALOPT_API realopt_status realopt_scenario_kind(const realopt_scenario* scenario, realopt_kind* out);
/* Borrowed pointers, valid until the scenario is freed. */
REALOPT_API const char* realopt_scenario_name(const realopt_scenario* scenario);
REALOPT_API const char* realopt_scenario_option_class(const realopt_scenario* scenario);
REALOPT_API realopt_status realopt_scenario_rate(const realopt_scenario* scenario, double* out);
REALOPT_API realopt_status realopt_scenario_investment(const realopt_scenario* scenario, double* out);
/* Fails with REALOPT_ERROR_DOMAIN for rate <= -1. */
REALOPT_API realopt_status realopt_scenario_set_rate(realopt_scenario* scenario, double rate);
/* Canonical serialization; release with realopt_string_free. */
REALOPT_API realopt_status realopt_scenario_save(const realopt_scenario* scenario, char** out);
REALOPT_API void realopt_string_free(char* text);

/* Deterministic valuation; use_means != 0 projects random distributions onto their means. */
REALOPT_API realopt_status realopt_value(const realopt_scenario* scenario, int use_means,
                                         realopt_valuation* out);
REALOPT_API double realopt_option_value(double npv_with, double npv_without);

/* Analytic Gaussian risk report against the given initial investment. */
REALOPT_API realopt_status realopt_risk(const realopt_scenario* scenario, double alpha,
                                        realopt_quantile_mode mode, double investment,
                                        realopt_risk_report* out);
REALOPT_API realopt_status realopt_risk_option_value(const realopt_risk_report* with_option,
                                                     const realopt_risk_report* without_option,
                                                     double* out);

/* Monte Carlo */
REALOPT_API void realopt_sim_options_default(realopt_sim_options* options);
REALOPT_API realopt_status realopt_simulate(const realopt_scenario* scenario,
                                            const realopt_sim_options* options,
                                            realopt_simulation** out);
REALOPT_API void realopt_simulation_free(realopt_simulation* simulation);
REALOPT_API realopt_status realopt_simulation_summary(const realopt_simulation* simulation,
                                                      realopt_sim_summary* out);
REALOPT_API size_t realopt_simulation_bucket_count(const realopt_simulation* simulation);
REALOPT_API realopt_status realopt_simulation_bucket(const realopt_simulation* simulation, size_t index,
                                                     double* lo, double* width, uint64_t* count);
REALOPT_API realopt_status realopt_simulation_write_histogram(const realopt_simulation* simulation,
                                                              const char* path);
REALOPT_API realopt_status realopt_simulation_compare(const realopt_simulation* option,
                                                      const realopt_simulation* baseline,
                                                      realopt_comparison* out);

#ifdef __cplusplus
}
#endif

#endif /* REALOPT_REALOPT_H */
