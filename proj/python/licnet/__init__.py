"""Linear information coupling models of interference networks."""

import json as _json

from ._core import (
    LicnetError,
    bc_parameters,
    best_path,
    feedback_ic_parameters,
    feedback_identical_sum_capacity,
    harmonic_mean,
    ic_parameters,
    identical_layer_sum_capacity,
    mac_parameters,
    mode_values,
    p2p_parameter,
    repair_to_balanced,
    run_command_json,
    sum_capacity,
    validate_grid,
)


def run_command(command, document, alpha=None, certificates=False):
    """Run a CLI command on a document given as a dict or JSON text."""
    if not isinstance(document, str):
        document = _json.dumps(document)
    return _json.loads(run_command_json(command, document, alpha, certificates))


__all__ = [
    "LicnetError",
    "bc_parameters",
    "best_path",
    "feedback_ic_parameters",
    "feedback_identical_sum_capacity",
    "harmonic_mean",
    "ic_parameters",
    "identical_layer_sum_capacity",
    "mac_parameters",
    "mode_values",
    "p2p_parameter",
    "repair_to_balanced",
    "run_command",
    "sum_capacity",
    "validate_grid",
]
