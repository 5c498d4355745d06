#include <stdio.h>
#include <string.h>
#include "operad.h"

int main(void) {
    struct OperadModel *m = NULL;
    if (operad_model_builtin("LP", 0, &m) != OPERAD_OK) return 10;
    if (operad_model_generator_count(m) != 3) return 11;
    char *dims = NULL;
    if (operad_model_dims_json(m, 3, &dims) != OPERAD_OK) return 12;
    if (!strstr(dims, "\"(2,1;o)\":2")) return 13;
    operad_string_free(dims);
    operad_model_free(m);

    if (operad_model_builtin("OCinf", 4, &m) != OPERAD_OK) return 20;
    size_t checked = 0;
    if (operad_model_d2(m, 4, &checked) != OPERAD_OK || checked == 0) return 21;
    operad_model_free(m);

    if (operad_model_parse("generator m (o,o) -> o\nrelation m(o1\n", &m) != OPERAD_ERR_PARSE) return 30;
    if (!strstr(operad_last_error(), "line 2")) return 31;
    if (operad_model_builtin("nope", 0, &m) != OPERAD_ERR_UNKNOWN_MODEL) return 32;
    printf("ok %s\n", operad_version());
    return 0;
}
