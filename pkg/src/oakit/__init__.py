"""Orthogonal arrays: construction, verification, bounds and space-filling designs."""
from .errors import OAError
from .galois import GaloisField, make_field
from .oa import (
    LevelCollapseMap,
    OrthogonalArray,
    collapse_levels,
    format_oa,
    max_strength,
    parse_oa,
    project,
    read_oa,
    verify_strength,
    write_oa,
)

__version__ = "0.1.0"
