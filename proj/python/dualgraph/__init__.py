"""Python bindings for the dualgraph library."""

from ._dualgraph import (
    Graph,
    InputError,
    NumericalError,
    TrialCapExceeded,
    analyze,
    estimate_splittability,
    format_node_link,
    generate,
    is_connected,
    is_planar,
    largest_component,
    load_graph,
    log_spanning_tree_count,
    loglog_fit,
    model_catalog,
    parse_node_link,
    perturbed_grid,
    save_graph,
    spanning_tree_constant,
    splittable_fraction_exact,
    square_grid,
    triangular_grid,
)

__all__ = [
    "Graph",
    "InputError",
    "NumericalError",
    "TrialCapExceeded",
    "analyze",
    "estimate_splittability",
    "format_node_link",
    "generate",
    "is_connected",
    "is_planar",
    "largest_component",
    "load_graph",
    "log_spanning_tree_count",
    "loglog_fit",
    "model_catalog",
    "parse_node_link",
    "perturbed_grid",
    "save_graph",
    "spanning_tree_constant",
    "splittable_fraction_exact",
    "square_grid",
    "triangular_grid",
]
