#include <stdio.h>
#include <string.h>
#include "skewcode.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "line %d: %s\n", __LINE__, skc_last_error()); return 1; } } while (0)

int main(void) {
    SkcRing *ring = NULL;
    CHECK(skc_ring_new("GF(2)", 7, &ring) == SKC_STATUS_OK);
    size_t r = 0;
    CHECK(skc_ring_num_factors(ring, &r) == SKC_STATUS_OK && r == 3);
    uint64_t count = 0;
    CHECK(skc_ring_automorphism_count(ring, &count) == SKC_STATUS_OK && count == 18);
    char *f = NULL;
    CHECK(skc_ring_factor_string(ring, 2, &f) == SKC_STATUS_OK && strcmp(f, "1+x+x^3") == 0);
    skc_string_free(f);
    skc_ring_free(ring);

    CHECK(skc_ring_new("GF(2)", 2, &ring) == SKC_STATUS_PRECONDITION);
    CHECK(strlen(skc_last_error()) > 0);

    SkcCode *code = NULL;
    const char *desc = "{\"field\":\"GF(4)\",\"n\":3,\"sigma\":\"x^2\",\"l\":2,\"d\":2}";
    CHECK(skc_code_from_descriptor(desc, &code) == SKC_STATUS_OK);
    size_t n, k, delta, d;
    CHECK(skc_code_params(code, &n, &k, &delta) == SKC_STATUS_OK && n == 3 && k == 1 && delta == 2);
    CHECK(skc_code_free_distance(code, 0, &d) == SKC_STATUS_OK && d == 9);
    skc_code_free(code);
    printf("ok\n");
    return 0;
}
