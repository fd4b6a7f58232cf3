"""Special functions, series summation with error control, and exact closed forms
for Euler-type sums, with a catalog of identities checked numerically."""

from .catalog import build_catalog, get, theorem1_closed_form, verify, verify_all
from .closed_form import ClosedForm, cf_add, cf_equal, cf_eval, cf_scale, render

__all__ = [
    "ClosedForm",
    "build_catalog",
    "cf_add",
    "cf_equal",
    "cf_eval",
    "cf_scale",
    "get",
    "render",
    "theorem1_closed_form",
    "verify",
    "verify_all",
]
