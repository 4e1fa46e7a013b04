#include <stdio.h>
#include <string.h>

#include "pbracket.h"

#define CHECK(cond)                                                   \
    do {                                                              \
        if (!(cond)) {                                                \
            fprintf(stderr, "check failed: %s (%s)\n", #cond, pb_last_error()); \
            return 1;                                                 \
        }                                                             \
    } while (0)

int main(void) {
    PbPoly *f = NULL, *g = NULL;
    CHECK(pb_poly_parse("x1^2 + x3", 3, &f) == PB_STATUS_OK);
    CHECK(pb_poly_parse("x1*x2", 3, &g) == PB_STATUS_OK);

    int64_t deg = 0;
    CHECK(pb_bracket_degree(f, g, &deg) == PB_STATUS_OK);
    CHECK(deg == 4);

    char *json = NULL;
    CHECK(pb_bracket_json(f, g, &json) == PB_STATUS_OK);
    printf("%s\n", json);
    pb_string_free(json);

    PbPoly *bad = NULL;
    CHECK(pb_poly_parse("x1 +", 3, &bad) == PB_STATUS_PARSE_ERROR);
    CHECK(bad == NULL);
    CHECK(strlen(pb_last_error()) > 0);

    pb_poly_free(f);
    pb_poly_free(g);
    return 0;
}
