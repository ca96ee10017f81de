"""Produce token log-probabilities and word-level representations for the
spud toolkit, in its token-score line-JSON and SPUDREPR wire formats."""

from .config import REGIMES, AdapterConfig
from .scores import ScoreStats, extract_scores
from .reprs import ReprStats, extract_reprs

__version__ = "0.1.0"

__all__ = ["AdapterConfig", "REGIMES", "ScoreStats", "extract_scores",
           "ReprStats", "extract_reprs", "__version__"]
