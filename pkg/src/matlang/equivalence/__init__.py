"""Equivalence deciders, witnesses and expression synthesis."""
from .classify import (ClassifyConfig, EquivalenceProfile, FragmentId, Verdict, classify,
                       distinguishing_sentence, to_diag_style)
from .invariants import (cospectral, cospectral_comain, cospectral_plus_cep, cospectral_with_complements,
                         laplacian_invariants, same_walks, spanning_trees, trace_power_vector, walk_count_vector)
from .specht import specht_semidecider
from .synth import synthesize_eqpart_exprs, synthesize_stabcol_exprs
from .witness import ConjugacyWitness, fractional_isomorphism_witness, orthogonal_partition_witness

__all__ = [
    "ClassifyConfig", "EquivalenceProfile", "FragmentId", "Verdict", "classify", "distinguishing_sentence",
    "to_diag_style", "cospectral", "cospectral_comain", "cospectral_plus_cep", "cospectral_with_complements",
    "laplacian_invariants", "same_walks", "spanning_trees", "trace_power_vector", "walk_count_vector",
    "specht_semidecider", "synthesize_eqpart_exprs", "synthesize_stabcol_exprs", "ConjugacyWitness",
    "fractional_isomorphism_witness", "orthogonal_partition_witness",
]
