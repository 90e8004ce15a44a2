"""Neumaier graphs from edge-regular graphs with perfect 1-code partitions.

The package builds edge-regular graphs, glues copies of them along perfect
1-codes, certifies the result exactly (parameters, regular cliques, spectra,
isomorphism classes) and reproduces the known example families.
"""

from .errors import (CertificationError, InfeasibleError, InternalConsistencyError, NeumaierError,
                     QuotientError, StructureError, ValidationError)
from .graph import ErgParams, Graph, Regularity, classify_regularity, clique_nexus, common_neighbours
from .codes import CodePartition, find_code_partitions, is_perfect_code
from .certify import NeumaierCertificate, NeumaierParams, certify_neumaier, verify_certificate
from .construction import PermTuple, deconstruct, f_pi_construct, make_context, strictness_verdict
from .switching import prop33_switch, validate_switching_partition, wqh_switch
from .spectral import char_poly, cospectral, spectrum_report
from .iso import are_isomorphic, canonical_form, classify

__version__ = "0.1.0"

__all__ = [
    "CertificationError", "InfeasibleError", "InternalConsistencyError", "NeumaierError", "QuotientError",
    "StructureError", "ValidationError", "ErgParams", "Graph", "Regularity", "classify_regularity",
    "clique_nexus", "common_neighbours", "CodePartition", "find_code_partitions", "is_perfect_code",
    "NeumaierCertificate", "NeumaierParams", "certify_neumaier", "verify_certificate", "PermTuple",
    "deconstruct", "f_pi_construct", "make_context", "strictness_verdict", "prop33_switch",
    "validate_switching_partition", "wqh_switch", "char_poly", "cospectral", "spectrum_report",
    "are_isomorphic", "canonical_form", "classify", "__version__",
]
