"""Alternating group networks AN_n and their l-component connectivity."""
from annet.perm import count_even, format_perm, is_even, parity, rank_even, unrank_even
from annet.graph import TopologyGraph, components_after_removal, read_edge_list, format_edge_list
from annet.network import AnNetwork, build_an, out_neighbor, subnet_partition
from annet.connectivity import (CutCertificate, KappaResult, kappa_ell_exhaustive,
                                kappa_ell_fragment_search, vertex_connectivity, verify_cut)
from annet.verify import LemmaReport

__version__ = "0.1.0"

__all__ = [
    "AnNetwork", "CutCertificate", "KappaResult", "LemmaReport", "TopologyGraph",
    "build_an", "components_after_removal", "count_even", "format_edge_list", "format_perm",
    "is_even", "kappa_ell_exhaustive", "kappa_ell_fragment_search", "out_neighbor", "parity",
    "rank_even", "read_edge_list", "subnet_partition", "unrank_even", "verify_cut",
    "vertex_connectivity",
]
