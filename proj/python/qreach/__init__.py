"""Covering-number bounds for quantum reachable sets."""

import json

from ._core import (
    PropertyViolation,
    QreachError,
    certify_trotter,
    circuit_bound,
    covering_number,
    crossover_json,
    expm,
    extensive_z_profile,
    grassmann_bounds,
    greedy_packing,
    haar_unitary,
    kato_unitary,
    operator_norm,
    packing_number,
    spectral_width,
    tevol_bound,
)


def crossover(**kwargs):
    """Crossover report as a dict."""
    return json.loads(crossover_json(**kwargs))


__all__ = [
    "PropertyViolation",
    "QreachError",
    "certify_trotter",
    "circuit_bound",
    "covering_number",
    "crossover",
    "crossover_json",
    "expm",
    "extensive_z_profile",
    "grassmann_bounds",
    "greedy_packing",
    "haar_unitary",
    "kato_unitary",
    "operator_norm",
    "packing_number",
    "spectral_width",
    "tevol_bound",
]
