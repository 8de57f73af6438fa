"""Scaffold calculus over association schemes.

Thin wrapper around the compiled core: build diagrams and schemes from the
catalog or from JSON, contract diagrams to tensors, and check the duality
identity.
"""

from ._core import (
    Diagram,
    ScaffoldTensor,
    Scheme,
    SkaffError,
    TranslationScheme,
    __version__,
    catalog_diagram,
    catalog_diagram_names,
    catalog_scheme,
    catalog_scheme_names,
    dualize,
    elimination_order,
    eval,
    inner_product,
    load_diagram,
    load_scheme,
    verify_duality,
)

__all__ = [
    "Diagram",
    "ScaffoldTensor",
    "Scheme",
    "SkaffError",
    "TranslationScheme",
    "__version__",
    "catalog_diagram",
    "catalog_diagram_names",
    "catalog_scheme",
    "catalog_scheme_names",
    "dualize",
    "elimination_order",
    "eval",
    "inner_product",
    "load_diagram",
    "load_scheme",
    "verify_duality",
]
