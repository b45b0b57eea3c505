"""Maximum processable flow and Monte-Carlo reliability of staged process plants."""

from ._plantflow import (
    MappingError,
    NetworkDocument,
    ParseError,
    PlantflowError,
    StructuralError,
    UnsupportedCombination,
    birnbaum_importance,
    builtin,
    builtin_names,
    didactic_fault_tree_probability,
    failure_probability,
    load_network,
    load_network_file,
    max_flow,
    save_network_file,
)

__all__ = [
    "MappingError",
    "NetworkDocument",
    "ParseError",
    "PlantflowError",
    "StructuralError",
    "UnsupportedCombination",
    "birnbaum_importance",
    "builtin",
    "builtin_names",
    "didactic_fault_tree_probability",
    "failure_probability",
    "load_network",
    "load_network_file",
    "max_flow",
    "save_network_file",
]
