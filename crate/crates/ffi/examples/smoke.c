/* Build (from the workspace root, after `cargo build -p shannon-ffi`):
 *   cc crates/ffi/examples/smoke.c -Icrates/ffi/include \
 *      target/debug/libshannon_ffi.a -lpthread -ldl -lm -o smoke
 */
#include <stdio.h>

#include "shannon.h"

int main(void) {
    double h = 0.0;
    double probs[] = {0.5, 0.25, 0.25};
    if (shannon_entropy(probs, 3, 2.0, &h) != SHANNON_STATUS_OK) {
        return 1;
    }
    printf("entropy %.9f\n", h);

    ShannonChannel *bsc = NULL;
    double capacity = 0.0;
    double input[2];
    size_t iterations = 0;
    shannon_channel_new_bsc(0.1, &bsc);
    ShannonStatus status =
        shannon_channel_capacity(bsc, 1e-9, 10000, 2.0, &capacity, input, &iterations);
    printf("capacity %.9f (%s)\n", capacity, shannon_status_name(status));
    shannon_channel_free(bsc);

    ShannonCode *rep = NULL;
    double pd = 0.0;
    shannon_code_new_repetition(3, &rep);
    shannon_code_exact_correct_probability(rep, 0.1, &pd);
    printf("pd_exact %.9f\n", pd);
    shannon_code_free(rep);

    double bad[] = {0.3, 0.3};
    status = shannon_entropy(bad, 2, 2.0, &h);
    printf("error %s: %s\n", shannon_status_name(status), shannon_last_error_message());
    return 0;
}
