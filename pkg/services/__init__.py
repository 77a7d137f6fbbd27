"""
Services package for the dissociation / spectral toolkit.
Contains service classes that hold the algorithms and the class store.
"""

from .canonical_labeler import CanonicalLabeler
from .dissociation_solver import DissociationSolver
from .extremal_search import ExtremalSearch
from .family_builder import FamilyBuilder
from .graph_enumerator import GraphEnumerator
from .graph_store import GraphStore
from .graph_transformer import GraphTransformer
from .report_formatter import ReportFormatter
from .spectral_analyzer import SpectralAnalyzer
from .theorem_verifier import TheoremVerifier

__all__ = [
    'CanonicalLabeler',
    'DissociationSolver',
    'ExtremalSearch',
    'FamilyBuilder',
    'GraphEnumerator',
    'GraphStore',
    'GraphTransformer',
    'ReportFormatter',
    'SpectralAnalyzer',
    'TheoremVerifier'
]
