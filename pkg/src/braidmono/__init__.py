"""Braid monodromy of complex line arrangements via braided wiring diagrams."""

from .braid import (
    BraidWord,
    Permutation,
    PureBraidWord,
    artin_act,
    braids_equal,
    conj_set,
    delta_sq,
    epsilon,
    half_twist,
    parse_braid,
    perm,
    pure_gen,
    twist,
    twist_action,
)
from .extract import Arrangement, choose_projection, extract_diagram
from .freegroup import FreeEndo, FreeWord, delta_aut
from .lattice import VertexMap, lattice_invariants, lattice_isomorphic, lattice_of
from .markov import EquivalenceWitness, MoveSpec, apply_move, bounded_search, move_effect, witness_check
from .monodromy import (
    MonodromyList,
    cf_monodromy,
    conjugate_equivalence_check,
    conjugate_relation_check,
    conjugators,
    infinity_check,
    monodromy,
    monodromy_pure,
)
from .presentation import (
    MeridianTable,
    Presentation,
    abelianization,
    arvola_presentation,
    braid_presentation,
    hom_count,
    meridians,
    randell_presentation,
    tietze_simplify,
)
from .wiring import (
    BraidedWiringDiagram,
    VertexEvent,
    conjugate_diagram,
    j_set,
    local_index,
    make_diagram,
    states,
    unbraided_from_vertex_sets,
    validate,
    vertex_sets,
)

__all__ = [name for name in dir() if not name.startswith("_")]
