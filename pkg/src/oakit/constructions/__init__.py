from .blocks import (
    IncidenceMatrix,
    bibd_complement,
    bibd_residual,
    hadamard_to_sbibd,
    verify_bibd,
)
from .difference import (
    AdditiveGroup,
    DifferenceScheme,
    additive_group,
    ds_expand,
    gf_difference_scheme,
    group_kron,
    kronecker_oa,
    verify_difference_scheme,
)
from .hadamard import (
    format_pm,
    hadamard_double,
    hadamard_kron,
    hadamard_to_oa,
    is_hadamard,
    normalize,
    oa_to_hadamard,
    paley1,
    paley2,
    parse_pm,
    sylvester,
)
from .latin import (
    LatinSquareSet,
    format_squares,
    mols_to_oa,
    oa_to_mols,
    parse_squares,
    verify_mols,
)
from .raohamming import full_factorial, projective_points, rao_hamming
from .recursive import generalized_kronecker, he_expand, split_rows
