"""Exact computations in wreath products G ≀ Z."""

from .automorphisms import LampAutSpec, apply_aut, block_map, make_autospec, parse_autspec
from .classify import Verdict, classify, cross_validate_cyclic, in_frak_A
from .dl import DLVertex, TreeVertex, check_cayley_isomorphism, element_of_vertex, vertex_of_element
from .groups import CapacityError, FiniteGroup, GroupAut, GroupError, parse_group_spec
from .twisted import ReidemeisterResult, reidemeister_wreath, twisted_classes
from .wreath import WreathElement, eval_word, mul, parse_element, parse_word, word_length_bfs, word_length_ct

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DLVertex",
    "FiniteGroup",
    "GroupAut",
    "GroupError",
    "LampAutSpec",
    "ReidemeisterResult",
    "TreeVertex",
    "Verdict",
    "WreathElement",
    "apply_aut",
    "block_map",
    "check_cayley_isomorphism",
    "classify",
    "cross_validate_cyclic",
    "element_of_vertex",
    "eval_word",
    "in_frak_A",
    "make_autospec",
    "mul",
    "parse_autspec",
    "parse_element",
    "parse_group_spec",
    "parse_word",
    "reidemeister_wreath",
    "twisted_classes",
    "vertex_of_element",
    "word_length_bfs",
    "word_length_ct",
]
