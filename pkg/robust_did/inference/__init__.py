"""
Robust-DID Inference Module

Cluster bootstrap engine and confidence interval constructions.
"""

from .bootstrap import BootstrapDraws, ClusterSampler, cluster_bootstrap, replicate_generator
from .intervals import (
    ci_att_ye,
    ci_bounds_ye,
    ci_percentile,
    ci_union,
    im_critical_value,
    normal_quantile,
    two_sided_critical_value,
)


__all__ = [
    # Bootstrap
    "BootstrapDraws",
    "ClusterSampler",
    "cluster_bootstrap",
    "replicate_generator",
    # Intervals
    "ci_bounds_ye",
    "ci_att_ye",
    "ci_union",
    "ci_percentile",
    "im_critical_value",
    "normal_quantile",
    "two_sided_critical_value",
]
