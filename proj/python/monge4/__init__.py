"""Curvature invariants and classification of Monge patches X = (u, v, f, g) in E^4."""

import json

from ._core import (
    ConsistencyError,
    DomainError,
    Expr,
    IngestError,
    IoError,
    Jet2,
    Monge4Error,
    MongePatch,
    ParameterError,
    ParseError,
    ValidationError,
    aminov_patch,
    curvature_from_csv,
    explicit_patch,
    first_form,
    gradient_patch,
    integrate_profile_ode,
    invariants,
    minimal_aminov_patch,
    minimal_translation_family,
    parse_expression,
    patch_from_json,
    run_identity_suite,
    translation_patch,
)
from . import _core

__all__ = [
    "ConsistencyError", "DomainError", "Expr", "IngestError", "IoError", "Jet2", "Monge4Error", "MongePatch",
    "ParameterError", "ParseError", "ValidationError", "aminov_patch", "classify", "curvature_from_csv",
    "explicit_patch", "first_form", "gradient_patch", "integrate_profile_ode", "invariants", "max_mean_curvature",
    "minimal_aminov_patch", "minimal_translation_family", "parse_expression", "patch_from_json",
    "run_identity_suite", "sample_grid", "translation_patch",
]

# (u0, u1, v0, v1, nu, nv)
DEFAULT_GRID = (-1.0, 1.0, -1.0, 1.0, 41, 41)


def classify(patch, grid=DEFAULT_GRID, tol=1e-8, rank_tol=1e-8, workers=1):
    """Classification report as a dict (same schema as the CLI's JSON output)."""
    return json.loads(_core._classify_json(patch, *grid, tol, rank_tol, workers))


def sample_grid(patch, grid=DEFAULT_GRID, workers=1):
    """Invariant columns as (nu, nv) arrays plus a flat list of row flags."""
    return _core._sample_grid(patch, *grid, workers)


def max_mean_curvature(patch, grid=DEFAULT_GRID):
    return _core.max_mean_curvature(patch, *grid)
