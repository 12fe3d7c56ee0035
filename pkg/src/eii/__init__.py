"""Multiple-layer extended integrated interleaved (EII) erasure codes.

Library layout:

- :mod:`eii.gf` -- GF(2^w) arithmetic contexts
- :mod:`eii.matrix` -- dense exact linear algebra over GF(2^w)
- :mod:`eii.codespec` -- recursive code descriptions and derived parameters
- :mod:`eii.codec` -- systematic encoder and recursive erasure decoder
- :mod:`eii.pcheck` -- parity-check synthesis, density, matrix decoding
- :mod:`eii.anetf` -- Monte-Carlo erasures-to-failure estimation
- :mod:`eii.cli` -- command-line front end
"""

from .gf import FieldContext, field
from .codespec import CodeSpec, LeafSpec, NodeSpec, spec_from_capability, validate
from .words import SymbolWord

__all__ = [
    "CodeSpec",
    "FieldContext",
    "LeafSpec",
    "NodeSpec",
    "SymbolWord",
    "field",
    "spec_from_capability",
    "validate",
]

__version__ = "0.1.0"
