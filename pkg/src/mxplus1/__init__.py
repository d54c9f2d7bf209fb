"""mx+1 dynamics over GF(2) polynomial rings.

Iterates the map T(f) = f/t, or (m*f+1)/t on odd f, over GF(2)[t] and
its four-branch analogue over GF(2)[x,t]/(x^2+t*x+r); measures stopping
times and cycle lengths, certifies elements with long stopping times
through the parity-sequence bijection, and compares observed timeout
densities with gambler's-ruin predictions.
"""

from .curve_ring import CurveElem, CurveRing, ParitySymbol
from .dynamics import (
    CurveSystem,
    InternalInvariantError,
    LineSystem,
    TrajectoryReport,
    estimate_growth_rate,
)
from .gf2poly import NEG_INF, NotDivisibleError, PolyParseError, format_poly, parse_poly
from .ruin import RuinResult
from .survey import SurveyReport, SurveySpec, run_survey

__version__ = "0.1.0"

__all__ = [
    "NEG_INF",
    "CurveElem",
    "CurveRing",
    "CurveSystem",
    "InternalInvariantError",
    "LineSystem",
    "NotDivisibleError",
    "ParitySymbol",
    "PolyParseError",
    "RuinResult",
    "SurveyReport",
    "SurveySpec",
    "TrajectoryReport",
    "__version__",
    "estimate_growth_rate",
    "format_poly",
    "parse_poly",
    "run_survey",
]
