# pylint: disable=wildcard-import
"""Partitioning, overlap expansion and subdomain assembly."""
from .schemes import *
from .subdomain import *

__all__ = [
    "PartitionMap",
    "SCHEMES",
    "partition_regular1d",
    "partition_regular2d",
    "partition_rcb",
    "partition_external",
    "write_partition",
    "make_partition",
    "OverlapSpec",
    "SubdomainProblem",
    "CommPattern",
    "ExchangePlan",
    "expand_overlap",
    "extract_subdomain",
    "decompose",
    "comm_pattern",
    "exchange_plan",
]
