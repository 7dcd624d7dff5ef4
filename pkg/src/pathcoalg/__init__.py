"""Path coalgebras of digraphs over finite fields, their automorphism groups,
and realisation of permutation representations by coalgebra automorphisms."""

from .coalgebra import (
    Coalgebra,
    LinearMap,
    automorphisms_brute,
    grouplikes,
    is_morphism,
    verify_axioms,
)
from .errors import CapExceeded, InputError, PathCoalgError, VerificationFailed
from .field import Field, FieldElement, field_make, parse_field
from .graph import BinarySystem, Digraph, SimpleGraph, automorphisms
from .graph_coalgebra import (
    GraphCoalgebra,
    StructuredAut,
    build_path_coalgebra,
    compose,
    decompose_matrix_aut,
    invert,
    section,
    structured_to_matrix,
    verify_exact_sequence,
)
from .group import FiniteGroup, Perm, group_close, in_class_G, normal_subgroups
from .realization import (
    PermRep,
    action_system,
    arrow_replace,
    cayley_diagram,
    make_rep,
    realize_representation,
)

__version__ = "0.1.0"
