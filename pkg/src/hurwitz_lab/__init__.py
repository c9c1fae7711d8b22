"""Exact Hurwitz numbers of orientable and non-orientable surfaces, checked
against relator counting in S_d and Monte Carlo over Ginibre matrix products."""
from .characters import chi, phi
from .hurwitz import (
    CoveringSpec,
    connected_hurwitz,
    connected_number,
    corollary_sum,
    hurwitz_frobenius,
    hurwitz_number,
    oracle_nonorientable,
    oracle_orientable,
    riemann_hurwitz_euler,
)
from .partitions import Partition, enumerate_partitions, parse_partition

__all__ = [
    "CoveringSpec",
    "Partition",
    "chi",
    "connected_hurwitz",
    "connected_number",
    "corollary_sum",
    "enumerate_partitions",
    "hurwitz_frobenius",
    "hurwitz_number",
    "oracle_nonorientable",
    "oracle_orientable",
    "parse_partition",
    "phi",
    "riemann_hurwitz_euler",
]

__version__ = "0.1.0"
