/* Compiles the public header as C and exercises a few calls. */
#include "nsgadyn/nsgadyn.h"

int capi_header_check_from_c(void)
{
    nd_bounds b;
    nd_verify_options o;
    nd_verify_options_init(&o);
    if (o.n_max != 20)
        return 1;
    if (nd_theory_bounds(50, 2, 4.0, 0, 0.0, &b) != ND_OK)
        return 2;
    return b.lb_ojzj_evals > 0.0 ? 0 : 3;
}
