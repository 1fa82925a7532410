#include <stdio.h>
#include "magcube.h"

int main(void) {
    uint64_t count = 0;
    if (magcube_count_fixed(2, 3, 1, 0, &count) != MAGCUBE_STATUS_OK || count != 6) {
        return 1;
    }
    MagcubeCatalog *cat = magcube_catalog_default();
    char *json = NULL;
    MagcubeStatus st = magcube_enumerate_json(cat, "cyan=1,magenta=1", 2, 0, 1, 0, &json);
    if (st != MAGCUBE_STATUS_OK) {
        fprintf(stderr, "%s\n", magcube_last_error());
        return 2;
    }
    printf("%s\n", json);
    magcube_string_free(json);
    if (magcube_count_fixed(7, 3, 1, 0, &count) != MAGCUBE_STATUS_INVALID_INPUT) {
        return 3;
    }
    magcube_catalog_free(cat);
    return 0;
}
