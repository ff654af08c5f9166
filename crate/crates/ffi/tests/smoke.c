#include <stdio.h>
#include <string.h>
#include "varietylab.h"

int main(void) {
    VlAlgebra *a = NULL;
    size_t dim = 0;
    bool simple = false;
    if (vl_algebra_builtin("eminvar", &a) != VL_OK) return 1;
    if (vl_free_dimension(a, 2, &dim) != VL_OK || dim != 30) return 2;
    if (vl_algebra_is_simple(a, &simple) != VL_OK || !simple) return 3;
    vl_algebra_free(a);
    if (vl_algebra_from_json("{\"q\": 2}", &a) != VL_PARSE_ERROR) return 4;
    if (strlen(vl_last_error_message()) == 0) return 5;
    printf("ok %s\n", vl_version());
    return 0;
}
