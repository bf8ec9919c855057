#include <stdio.h>
#include "cherlab.h"

int main(void) {
    const char *s3 = "dim 2\nconductor 1\ngen\n-1; 1\n0; 1\ngen\n1; 0\n1; -1\n";
    CherlabGroup *g = NULL;
    if (cherlab_group_from_text(s3, 1000, &g) != CHERLAB_STATUS_OK) return 1;
    size_t order = 0, a[5], needed = 0;
    if (cherlab_group_sizes(g, &order, NULL, NULL) != CHERLAB_STATUS_OK) return 2;
    if (cherlab_group_profile(g, a, 5, &needed) != CHERLAB_STATUS_OK) return 3;
    cherlab_group_free(g);

    char *density = NULL;
    if (cherlab_index_density(1, 0, "0", "th", "1", &density) != CHERLAB_STATUS_OK) return 4;

    CherlabGroup *bad = NULL;
    CherlabStatus st = cherlab_group_from_text("dim 0\n", 10, &bad);
    if (cherlab_last_error() == NULL) return 5;

    printf("order=%zu a=%zu,%zu,%zu,%zu,%zu density=%s error=%d\n", order, a[0], a[1], a[2], a[3], a[4], density, (int)st);
    cherlab_string_free(density);
    return 0;
}
