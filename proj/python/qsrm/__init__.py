"""Verifiers for the quantum self-replicating machine no-go results."""

from qsrm._core import (
    IoError,
    ResourceError,
    alice_after_closed_form,
    alice_before_closed_form,
    binary_entropy,
    classify,
    demo_orthogonal_replication,
    run_cli,
    run_report,
    state_overlap,
    verify_entanglement_conservation,
    verify_linearity,
    verify_no_signalling,
)

__all__ = [
    "IoError",
    "ResourceError",
    "alice_after_closed_form",
    "alice_before_closed_form",
    "binary_entropy",
    "classify",
    "demo_orthogonal_replication",
    "run_cli",
    "run_report",
    "state_overlap",
    "verify_entanglement_conservation",
    "verify_linearity",
    "verify_no_signalling",
]
