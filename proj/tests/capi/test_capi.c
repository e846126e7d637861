#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "realopt/realopt.h"

static int failures = 0;

#define CHECK(cond)                                                            \
    do {                                                                       \
        if (!(cond)) {                                                         \
            fprintf(stderr, "%s:%d: CHECK(%s) failed\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                        \
        }                                                                      \
    } while (0)

static realopt_scenario* open_scenario(const char* name) {
    char path[1024];
    realopt_scenario* s = NULL;
    snprintf(path, sizeof path, "%s/%s.json", REALOPT_SCENARIO_DIR, name);
    if (realopt_scenario_load_file(path, &s) != REALOPT_OK) {
        fprintf(stderr, "cannot load %s: %s\n", path, realopt_last_error());
        exit(1);
    }
    return s;
}

static void test_valuation(void) {
    realopt_scenario* base = open_scenario("base_two_scenario");
    realopt_scenario* red = open_scenario("reduction_option");
    realopt_scenario* sw = open_scenario("switching_option");
    realopt_valuation vb, vr, vs;
    realopt_kind kind;

    CHECK(realopt_scenario_kind(base, &kind) == REALOPT_OK && kind == REALOPT_KIND_TWO_SCENARIO);
    CHECK(realopt_scenario_kind(red, &kind) == REALOPT_OK && kind == REALOPT_KIND_OPTION_TREE);
    CHECK(strcmp(realopt_scenario_name(base), "base_two_scenario") == 0);
    CHECK(strcmp(realopt_scenario_option_class(red), "contraction") == 0);
    CHECK(strcmp(realopt_scenario_option_class(base), "") == 0);

    CHECK(realopt_value(base, 0, &vb) == REALOPT_OK);
    CHECK(fabs(vb.v0 - 4955) <= 1);
    CHECK(fabs(vb.npv + 45) <= 1);
    CHECK(vb.has_tree_nodes == 0);

    CHECK(realopt_value(red, 0, &vr) == REALOPT_OK);
    CHECK(fabs(vr.v0 - 5168) <= 1);
    CHECK(fabs(vr.npv - 168) <= 1);
    CHECK(vr.has_tree_nodes == 1);
    CHECK(fabs(vr.v1[0] - 7831) <= 1);
    CHECK(fabs(vr.v1[1] - 4572) <= 1);
    CHECK(fabs(realopt_option_value(vr.npv, vb.npv) - 213) <= 2);

    CHECK(realopt_value(sw, 0, &vs) == REALOPT_OK);
    CHECK(fabs(vs.v0 - 5673.900462962964) <= 1e-9 * 5673.9);
    CHECK(fabs(vs.continuation[4] - 5583.333) <= 1);
    CHECK(fabs(vs.continuation[6] - 4263.889) <= 1);

    CHECK(realopt_scenario_set_rate(red, -1.0) == REALOPT_ERROR_DOMAIN);
    CHECK(strstr(realopt_last_error(), "rate") != NULL);
    CHECK(realopt_scenario_set_rate(red, 0.0) == REALOPT_OK);
    CHECK(realopt_value(red, 0, &vr) == REALOPT_OK);
    CHECK(vr.v0 > 5168);

    realopt_scenario_free(base);
    realopt_scenario_free(red);
    realopt_scenario_free(sw);
}

static void test_risk(void) {
    realopt_scenario* opt = open_scenario("gauss_option");
    realopt_scenario* base = open_scenario("gauss_base");
    realopt_scenario* tree = open_scenario("reduction_option");
    realopt_scenario* uni = open_scenario("uniform_option");
    realopt_risk_report ro, rb, rx;
    double value = 0;

    CHECK(realopt_risk(opt, 0.05, REALOPT_QUANTILE_PAPER_COMPAT, 5000, &ro) == REALOPT_OK);
    CHECK(realopt_risk(base, 0.05, REALOPT_QUANTILE_PAPER_COMPAT, 5000, &rb) == REALOPT_OK);
    CHECK(fabs(ro.mean - 5683.06) <= 0.5);
    CHECK(fabs(ro.sd - 376.59) <= 0.5);
    CHECK(fabs(ro.pv_alpha - 5065.46) <= 0.5);
    CHECK(fabs(ro.pvar - 617) <= 1);
    CHECK(ro.z == 1.64);
    CHECK(ro.feasible == 1);
    CHECK(fabs(rb.mean - 5507) <= 1);
    CHECK(fabs(rb.pv_alpha - 4936) <= 1);
    CHECK(rb.feasible == 0);
    CHECK(realopt_risk_option_value(&ro, &rb, &value) == REALOPT_OK);
    CHECK(fabs(value - 130) <= 2);

    CHECK(realopt_risk(opt, 0.05, REALOPT_QUANTILE_EXACT, 5000, &rx) == REALOPT_OK);
    CHECK(realopt_risk_option_value(&rx, &rb, &value) == REALOPT_ERROR_USAGE);
    CHECK(realopt_risk(opt, 0.7, REALOPT_QUANTILE_EXACT, 5000, &rx) == REALOPT_ERROR_USAGE);
    CHECK(realopt_risk(tree, 0.05, REALOPT_QUANTILE_EXACT, 5000, &rx) == REALOPT_ERROR_USAGE);
    CHECK(realopt_risk(uni, 0.05, REALOPT_QUANTILE_EXACT, 5000, &rx) == REALOPT_ERROR_USAGE);
    CHECK(strlen(realopt_last_error()) > 0);

    realopt_scenario_free(opt);
    realopt_scenario_free(base);
    realopt_scenario_free(tree);
    realopt_scenario_free(uni);
}

static void test_simulation(void) {
    realopt_scenario* opt = open_scenario("uniform_option");
    realopt_scenario* base = open_scenario("uniform_base");
    realopt_scenario* tree = open_scenario("switching_option");
    realopt_sim_options o;
    realopt_simulation *so = NULL, *sb = NULL, *s1 = NULL, *st = NULL;
    realopt_sim_summary sum;
    realopt_comparison cmp;
    uint64_t total = 0, count = 0;
    double lo, width;
    size_t k;

    realopt_sim_options_default(&o);
    CHECK(o.samples == 100000);
    CHECK(o.alpha == 0.05);
    o.seed = 7;
    CHECK(realopt_simulate(opt, &o, &so) == REALOPT_OK);
    CHECK(realopt_simulate(base, &o, &sb) == REALOPT_OK);
    CHECK(realopt_simulation_summary(so, &sum) == REALOPT_OK);
    CHECK(fabs(sum.mean - 5678) <= 25);
    CHECK(fabs(sum.sd - 218) <= 11);
    CHECK(fabs(sum.pv_alpha - 5323) <= 30);
    CHECK(sum.seed == 7);

    CHECK(realopt_simulation_bucket_count(so) == 50);
    for (k = 0; k < realopt_simulation_bucket_count(so); ++k) {
        CHECK(realopt_simulation_bucket(so, k, &lo, &width, &count) == REALOPT_OK);
        total += count;
    }
    CHECK(total == 100000);
    CHECK(realopt_simulation_bucket(so, 50, &lo, &width, &count) == REALOPT_ERROR_USAGE);

    CHECK(realopt_simulation_compare(so, sb, &cmp) == REALOPT_OK);
    CHECK(fabs(cmp.baseline.mean - 5507) <= 25);
    CHECK(fabs(cmp.baseline.sd - 204) <= 10);
    CHECK(fabs(cmp.baseline.pv_alpha - 5171) <= 30);
    CHECK(cmp.option_value == cmp.option.pv_alpha - cmp.baseline.pv_alpha);

    o.threads = 1;
    CHECK(realopt_simulate(opt, &o, &s1) == REALOPT_OK);
    CHECK(realopt_simulation_summary(s1, &sum) == REALOPT_OK);
    CHECK(sum.mean == cmp.option.mean && sum.pv_alpha == cmp.option.pv_alpha && sum.sd == cmp.option.sd);

    CHECK(realopt_simulate(tree, &o, &st) == REALOPT_ERROR_USAGE);
    CHECK(st == NULL);
    o.mode = REALOPT_SIM_BRANCH_SAMPLING;
    CHECK(realopt_simulate(tree, &o, &st) == REALOPT_OK);
    o.samples = 0;
    realopt_simulation_free(s1);
    s1 = NULL;
    CHECK(realopt_simulate(opt, &o, &s1) == REALOPT_ERROR_USAGE);

    realopt_simulation_free(so);
    realopt_simulation_free(sb);
    realopt_simulation_free(st);
    realopt_scenario_free(opt);
    realopt_scenario_free(base);
    realopt_scenario_free(tree);
}

static void test_io(void) {
    static const char broken[] = "{ \"schema_version\": \"1\", ";
    static const char bad_p[] =
        "{\"schema_version\":\"1\",\"kind\":\"two_scenario\",\"metadata\":{\"name\":\"x\",\"description\":\"\"},"
        "\"body\":{\"investment\":1,\"rate\":0.1,\"scenarios\":[{\"p\":1.3,\"flows\":[1]},{\"p\":0.5,\"flows\":[1]}]}}";
    realopt_scenario* s = NULL;
    realopt_scenario* again = NULL;
    char* text = NULL;
    char* text2 = NULL;

    CHECK(realopt_scenario_load_file("/nonexistent/x.json", &s) == REALOPT_ERROR_INPUT);
    CHECK(s == NULL);
    CHECK(realopt_scenario_load_string(broken, strlen(broken), &s) == REALOPT_ERROR_INPUT);
    CHECK(strstr(realopt_last_error(), "line") != NULL);
    CHECK(realopt_scenario_load_string(bad_p, strlen(bad_p), &s) == REALOPT_ERROR_INPUT);
    CHECK(strstr(realopt_last_error(), "scenarios[1].p") != NULL);
    CHECK(realopt_scenario_load_file(NULL, &s) == REALOPT_ERROR_USAGE);

    s = open_scenario("gauss_option");
    CHECK(realopt_scenario_save(s, &text) == REALOPT_OK);
    CHECK(realopt_scenario_load_string(text, strlen(text), &again) == REALOPT_OK);
    CHECK(realopt_scenario_save(again, &text2) == REALOPT_OK);
    CHECK(strcmp(text, text2) == 0);
    realopt_string_free(text);
    realopt_string_free(text2);
    realopt_scenario_free(s);
    realopt_scenario_free(again);
    CHECK(strlen(realopt_version()) > 0);
}

int main(void) {
    test_valuation();
    test_risk();
    test_simulation();
    test_io();
    if (failures) {
        fprintf(stderr, "%d check(s) failed\n", failures);
        return 1;
    }
    printf("C API tests passed\n");
    return 0;
}
