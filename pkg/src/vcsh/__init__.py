"""Logic of individuals and variable concepts, with a conceptual shell."""

from .concepts import (
    Concept, FConcept, IndexedConcept, VariableConcept, comprehend, f_concept, instantiate,
    resolve_description, variable_concept,
)
from .evaluator import Element, Environment, Evaluator, PairVal, SetVal, shift_env
from .parser import parse_formula, parse_object, parse_sort
from .syntax import free_vars, print_term, substitute
from .typecheck import check_workspace, type_of
from .workspace import Workspace, dumps, load_workspace, loads, save_workspace
from .worlds import (
    DataType, Evolvent, Individual, World, actual_objects, compose_evolvents,
    enumerate_domain, identity_evolvent, project, shift_individual,
)

__all__ = [
    "Concept", "DataType", "Element", "Environment", "Evaluator", "Evolvent", "FConcept",
    "IndexedConcept", "Individual", "PairVal", "SetVal", "VariableConcept", "Workspace",
    "World", "actual_objects", "check_workspace", "compose_evolvents", "comprehend", "dumps",
    "enumerate_domain", "f_concept", "free_vars", "identity_evolvent", "instantiate",
    "load_workspace", "loads", "parse_formula", "parse_object", "parse_sort", "print_term",
    "project", "resolve_description", "save_workspace", "shift_env", "shift_individual",
    "substitute", "type_of", "variable_concept",
]
