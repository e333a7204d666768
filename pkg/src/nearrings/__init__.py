"""Local nearrings on the finite p-groups G(p^m, p^n, p^d)."""

__version__ = "0.1.0"

from .pgroup import GroupParams, make_params  # noqa: F401
from .maps import MapTriple, canonical_maps  # noqa: F401
