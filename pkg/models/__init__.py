"""
Models package for the dissociation / spectral toolkit.
Contains entity classes representing the core domain objects.
"""

from .config import Config
from .diss_result import DissResult
from .enum_stream import EnumStream
from .extremal_report import ExtremalReport, Minimizer
from .family_spec import FamilyKind, FamilySpec
from .graph import CanonicalForm, Graph
from .internal_path import InternalPath
from .spectral_result import SpectralResult
from .verification_result import VerificationResult

__all__ = [
    'CanonicalForm',
    'Config',
    'DissResult',
    'EnumStream',
    'ExtremalReport',
    'FamilyKind',
    'FamilySpec',
    'Graph',
    'InternalPath',
    'Minimizer',
    'SpectralResult',
    'VerificationResult'
]
