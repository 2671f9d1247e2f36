"""Orbifold Hodge numbers of quotients of smooth quintic threefolds, in exact arithmetic."""

from .cyclo import CycNumber, parse_coeff, root_of_unity, rou_log
from .errors import (
    ConductorError,
    ConsistencyError,
    GroupCapExceeded,
    NotAutomorphismError,
    NotGorensteinError,
    OrbifoldError,
    SchemaError,
    SmoothnessError,
)
from .mckay import OrbifoldAnalysis, OrbifoldResult
from .pgroup import close, normalize, perm_matrix
from .pipeline import AnalysisInput, AnalysisOutput, analyze, batch, parse_input, verify
from .qform import QuinticForm

__version__ = "0.1.0"
