"""Binary batch and PIR codes with restricted recovery-set size.

Constructions of systematic generator matrices, an exact verifier for the
batch/PIR property, and the associated length and dimension bounds.
"""

from .bounds import (
    BoundReport,
    asymptotic_rate_bounds,
    cm_dimension_bound,
    cm_dimension_bound_recursive,
    entropy_q,
    griesmer_min_length,
    k_opt,
    lower_bound_nonsystematic,
    lower_bound_rpdv,
    lower_bound_systematic,
    table_lower_bound,
    table_upper_bound,
)
from .constructions import (
    CodeParams,
    Construction,
    RemainderParams,
    construct,
    construct_divisible,
    construct_r2,
    construct_simplex,
    construct_t2,
    construct_t3_remainder,
)
from .gf2core import (
    BitMatrix,
    column_sum,
    has_one_square,
    min_distance,
    parse_matrix,
    projection_dimension,
    rank,
    read_matrix,
)
from .verifier import (
    QueryMultiset,
    RecoveryCertificate,
    enumerate_recovery_sets,
    is_batch,
    is_pir,
    max_t,
    supports_query,
)

__version__ = "0.1.0"
