#include <stdio.h>
#include <string.h>
#include "gqod.h"

int main(void) {
    GqodOrder *order = NULL;
    if (gqod_order_preset("hydra", &order) != GQOD_STATUS_OK) return 10;
    GqodTerm *a = NULL, *b = NULL;
    if (gqod_term_parse(order, "x # x", &a) != GQOD_STATUS_OK) return 11;
    if (gqod_term_parse(order, "(rho, rho) # x", &b) != GQOD_STATUS_OK) return 12;
    bool below = false;
    if (gqod_lll(a, b, &below) != GQOD_STATUS_OK || !below) return 13;
    GqodTerm *bad = NULL;
    if (gqod_term_parse(order, "(0,", &bad) != GQOD_STATUS_PARSE) return 14;
    if (gqod_last_error() == NULL) return 15;
    char *text = gqod_term_print(b);
    printf("%s\n", text);
    gqod_string_free(text);
    GqodOutcome outcome;
    char *trace = NULL;
    if (gqod_hydra_play(b, 3, 50, 200, &outcome, &trace) != GQOD_STATUS_OK) return 16;
    size_t steps = 0;
    if (gqod_hydra_replay(order, trace, &steps) != GQOD_STATUS_OK) return 17;
    gqod_string_free(trace);
    gqod_term_free(a);
    gqod_term_free(b);
    gqod_order_free(order);
    printf("replayed %zu steps\n", steps);
    return 0;
}
