"""Exact computations with the topological vertex and its fermionic gluing.

Scalars live in Q(i)(q^(1/12)); amplitudes are truncated polynomials in
Kahler variables Q (half-integer powers) and loop variables Theta.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .amplitude import Amplitude, TruncationConfig
from .diagram import (DiagramError, Table, ToricDiagram, bosonic_glue_step, bosonic_self_glue,
                      fermionic_partition_function, partition_function, preset)
from .fock import (ChargedPartition, FockState, QuadraticExponent, apply_psi, apply_psi_star,
                   basis_state, bogoliubov_amplitude, bogoliubov_state, boson_fermion_image,
                   extract_quadratic_exponent, is_bogoliubov, kp_bilinear_residual)
from .glue import (GluingSpec, closed_part, fermionic_glue, glue_pair, gluing_vector, normalized_glue,
                   r_series, theta_constant_term)
from .partition import FrobeniusCoords, Partition, conjugate, frobenius, from_frobenius, kappa, parse_partition
from .scalar import Scalar, parse_scalar, quantum_factorial, quantum_integer
from .symfunc import MINUS_RHO, RHO, Specialization, littlewood_richardson, skew_schur_principal
from .vertex import Framing, adkmv_matrix, framed_vertex, vertex_W

__all__ = [
    "Amplitude", "TruncationConfig", "DiagramError", "Table", "ToricDiagram", "bosonic_glue_step",
    "bosonic_self_glue", "fermionic_partition_function", "partition_function", "preset",
    "ChargedPartition", "FockState", "QuadraticExponent", "apply_psi", "apply_psi_star", "basis_state",
    "bogoliubov_amplitude", "bogoliubov_state", "boson_fermion_image", "extract_quadratic_exponent",
    "is_bogoliubov", "kp_bilinear_residual", "GluingSpec", "closed_part", "fermionic_glue", "glue_pair",
    "gluing_vector", "normalized_glue", "r_series", "theta_constant_term", "FrobeniusCoords", "Partition",
    "conjugate", "frobenius", "from_frobenius", "kappa", "parse_partition", "Scalar", "parse_scalar",
    "quantum_factorial", "quantum_integer", "MINUS_RHO", "RHO", "Specialization", "littlewood_richardson",
    "skew_schur_principal", "Framing", "adkmv_matrix", "framed_vertex", "vertex_W",
]
