"""Random subnetworks of uniform sorting networks: exact laws, samplers and checks."""

from .core import SortingNetwork, shift, subnetwork, validate, wiring_diagram
from .exact import (count_networks, enumerate_networks, first_swap_pmf, hypergeometric_pmf,
                    theorem1_expectation)
from .stats import Estimate
from .tableau import StaircaseSYT, network_to_syt, sample_uniform_network, syt_to_network

__version__ = "0.1.0"

__all__ = [
    "SortingNetwork", "StaircaseSYT", "Estimate", "validate", "subnetwork", "shift", "wiring_diagram",
    "enumerate_networks", "count_networks", "first_swap_pmf", "theorem1_expectation",
    "hypergeometric_pmf", "network_to_syt", "syt_to_network", "sample_uniform_network",
]
