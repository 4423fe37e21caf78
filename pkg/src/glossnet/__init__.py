"""Semantic net construction from dependency-parsed dictionary glosses."""

from .model import MeaningId, Relation, SemanticFrame, Triple, Unit
from .net import SemanticNet, build_net, derive, hypernym_chain
from .pipeline import PipelineConfig, run, run_pipeline

__all__ = [
    "MeaningId", "Relation", "SemanticFrame", "Triple", "Unit",
    "SemanticNet", "build_net", "derive", "hypernym_chain",
    "PipelineConfig", "run", "run_pipeline",
]
__version__ = "0.1.0"
