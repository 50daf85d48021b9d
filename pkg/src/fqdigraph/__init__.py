"""Strong components of the digraphs D(q; f) and monomial digraphs D(q; m, n)."""

from .errors import FqDigraphError
from .field import GF, FieldElem, arith, field_new
from .fplinalg import SubspaceFp, enumerate_coset, extend, flatten, reduce, span_of, unflatten
from .funcspec import DerivedFuncs, FuncSpec, derive, eval_f, interpolate, load_document, parse_funcspec
from .monomial import MonomialStructure, analyze_monomial, lemma_checks, monomial_component_of, power_subgroup
from .oracle import DigraphExplicit, build_explicit, compare_partitions, diameter, out_neighbors, scc
from .theorem import (
    ComponentDescriptor,
    ComponentStructure,
    analyze,
    component_of,
    materialize,
    phi_map,
    psi_map,
    same_component,
    theorem_partition,
    witness_path,
)
from .vertices import Vertex, vertex_from_index, vertex_index

__version__ = "0.1.0"
