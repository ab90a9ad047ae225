"""Exact oracles, connectivity asymptotics and Monte Carlo for near-critical
Erdos-Renyi graphs. Exact results come back as ``fractions.Fraction``."""

from fractions import Fraction

from . import _core
from ._core import (
    Error,
    NoConvergence,
    Regime,
    a_of_x,
    borel_mass_sum,
    borel_mean_sum,
    borel_weight,
    decompose_exact,
    estimate_event,
    log_connected_prob_asymptotic,
    log_connected_probability_hp,
    rate_function,
    recovery_sequence,
    sample_er,
    vague_distance,
    y_of_x,
)

__all__ = [
    "Error",
    "NoConvergence",
    "Regime",
    "a_of_x",
    "borel_mass_sum",
    "borel_mean_sum",
    "borel_weight",
    "cluster_law_exact",
    "connected_count",
    "connected_probability_exact",
    "decompose_exact",
    "dispatch",
    "estimate_event",
    "log_connected_prob_asymptotic",
    "log_connected_probability_hp",
    "prob_all_components_below",
    "rate_function",
    "recovery_sequence",
    "sample_er",
    "vague_distance",
    "y_of_x",
]


def _q(p):
    return str(Fraction(p)) if not isinstance(p, str) else p


def connected_probability_exact(K, p):
    return Fraction(_core.connected_probability_exact(K, _q(p)))


def connected_count(K, m):
    return int(_core.connected_count(K, m))


def cluster_law_exact(n, p):
    """List of (counts dict {k: l_k}, Fraction) pairs."""
    return [(c, Fraction(q)) for c, q in _core.cluster_law_exact(n, _q(p))]


def prob_all_components_below(n, m, p):
    return Fraction(_core.prob_all_components_below(n, m, _q(p)))


def dispatch(args):
    """Run a CLI command line; returns (exit code, stdout, stderr)."""
    return _core.dispatch([str(a) for a in args])
