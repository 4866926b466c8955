#include <stdio.h>
#include <string.h>
#include "kraitchik.h"

#define CHECK(cond)                                               \
    do {                                                          \
        if (!(cond)) {                                            \
            fprintf(stderr, "check failed line %d: %s\n", __LINE__, #cond); \
            return 1;                                             \
        }                                                         \
    } while (0)

int main(void) {
    KraitchikPairHandle *h = NULL;
    CHECK(kraitchik_pair_new(11, &h) == KRAITCHIK_OK);

    uint64_t dp = 0;
    CHECK(kraitchik_pair_degree(h, &dp) == KRAITCHIK_OK && dp == 5);

    int64_t a[6], b[5];
    const int64_t a_expected[6] = {2, 1, -2, 2, -1, -2};
    const int64_t b_expected[5] = {1, 0, 0, 1, 0};
    CHECK(kraitchik_pair_coefficients(h, a, 6, b, 5) == KRAITCHIK_OK);
    CHECK(memcmp(a, a_expected, sizeof a) == 0);
    CHECK(memcmp(b, b_expected, sizeof b) == 0);

    int32_t verdict = -1;
    CHECK(kraitchik_verify_identity(h, &verdict) == KRAITCHIK_OK && verdict == KRAITCHIK_VERIFIED);
    CHECK(kraitchik_check_bounds(h, 3, 4096, &verdict) == KRAITCHIK_OK && verdict == KRAITCHIK_VERIFIED);
    kraitchik_pair_free(h);

    KraitchikPairHandle *bad = NULL;
    CHECK(kraitchik_pair_new(9, &bad) == KRAITCHIK_ERR_MODULUS && bad == NULL);
    char msg[64];
    kraitchik_last_error(msg, sizeof msg);
    CHECK(strstr(msg, "not squarefree") != NULL);

    printf("ok\n");
    return 0;
}
