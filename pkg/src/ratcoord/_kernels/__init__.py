"""Hot-loop kernels with a compiled core and a pure-Python fallback.

The compiled extension (``_speed``, built from Cython) is used when it
imported successfully and the problem fits its fixed-width integer encoding;
otherwise each call transparently falls back to the reference implementation
in :mod:`ratcoord._kernels.pure`.  Set ``RATCOORD_PURE=1`` to force the pure
backend (used by the benchmark and the backend-equivalence tests).
"""

from __future__ import annotations

import importlib
import os

from . import pure

_speed = None
if not os.environ.get("RATCOORD_PURE"):
    try:
        _speed = importlib.import_module("ratcoord._kernels._speed")
    except ImportError:
        _speed = None

BACKEND = "compiled" if _speed is not None else "python"


def bfs_layer_counts(dim, neighbor_specs, origin_orbit, depth, max_visited):
    if _speed is not None:
        try:
            return _speed.bfs_layer_counts(
                dim, neighbor_specs, origin_orbit, depth, max_visited
            )
        except OverflowError:
            pass
    return pure.bfs_layer_counts(
        dim, neighbor_specs, origin_orbit, depth, max_visited
    )


def accepting_run_profiles(
    num_states,
    sources,
    targets,
    outputs,
    initial,
    final,
    max_len,
    max_entries,
    prune_states,
):
    if _speed is not None:
        try:
            return _speed.accepting_run_profiles(
                num_states,
                sources,
                targets,
                outputs,
                initial,
                final,
                max_len,
                max_entries,
                prune_states,
            )
        except OverflowError:
            pass
    return pure.accepting_run_profiles(
        num_states,
        sources,
        targets,
        outputs,
        initial,
        final,
        max_len,
        max_entries,
        prune_states,
    )


def linear_points_in_box(base, periods, lo, hi, weights, max_nodes):
    if _speed is not None:
        try:
            return _speed.linear_points_in_box(
                base, periods, lo, hi, weights, max_nodes
            )
        except OverflowError:
            pass
    return pure.linear_points_in_box(base, periods, lo, hi, weights, max_nodes)
