#include <math.h>
#include <stdio.h>
#include "loxhelix.h"

int main(void) {
    LoxSurfaceParams sp = {LOX_FAMILY_I, 4, "x1=const(0.6),x3=linear(1,0),xn=const(0)", 0, 0.0, 1.0, 1.0, true};
    LoxSurface *s = NULL;
    if (lox_surface_new(&sp, &s) != LOX_STATUS_OK) return 10;
    LoxProblemParams pp = {atanh(0.5), 1, 0.0, 0.0, 1.0, 5, 0.0, LOX_SOLVER_AUTO};
    LoxCurve *c = NULL;
    if (lox_solve(s, &pp, &c) != LOX_STATUS_OK) return 11;
    LoxSample last;
    if (lox_curve_sample(c, lox_curve_len(c) - 1, &last) != LOX_STATUS_OK) return 12;
    double len = 0.0;
    if (lox_curve_length(c, &len, NULL) != LOX_STATUS_OK) return 13;
    printf("%.17g %.17g\n", last.v, len);

    sp.profile = "x1=wobble(1)";
    LoxSurface *bad = NULL;
    LoxStatus st = lox_surface_new(&sp, &bad);
    char code[64];
    lox_last_error_code(code, sizeof code);
    printf("%s %s\n", lox_status_name(st), code);
    lox_curve_free(c);
    lox_surface_free(s);
    return bad == NULL ? 0 : 14;
}
