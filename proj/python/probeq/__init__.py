"""Exact probabilistic-equivalence certificates on ([0,1), Lebesgue).

Thin wrapper around the compiled _probeq extension. Report-shaped results
come back as JSON strings from the extension; the helpers here decode them.
"""

import json as _json

from ._probeq import (  # noqa: F401
    Distribution,
    DistributionsDiffer,
    Event,
    ParseError,
    RegretFunction,
    RegretFunctional,
    Scalar,
    SimpleRV,
    certify,
    classify_case,
    common_refinement,
    complement,
    comonotone_couple,
    distribution,
    equal_in_distribution,
    event_union,
    fosd_compare,
    gen_pair,
    intersect,
    levy_distance,
    make_rv,
    nu,
    prefer,
    prob_diff_exceeds,
    quantile_rv,
    regret_lottery,
    scalar_compare,
    skorokhod_represent,
    split_prefix,
    validate_regret_function,
    verify,
)
from ._probeq import check_fosd_preference as _check_fosd_preference


def certify_json(x, y, k_min=0, k_max=0):
    """Certificate as a decoded JSON object."""
    return _json.loads(certify(x, y, k_min, k_max))


def couple(f, g):
    return _json.loads(comonotone_couple(f, g))


def skorokhod(seq, target, eps):
    return _json.loads(skorokhod_represent(seq, target, eps))


def check_fosd_preference(psi, v, x, y):
    return _json.loads(_check_fosd_preference(psi, v, x, y))
