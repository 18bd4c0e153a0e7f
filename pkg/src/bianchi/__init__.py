"""Exact-arithmetic reflectivity classifier for Bianchi groups and their
maximal extensions, via mirror enumeration on the Lorentzian lattice L_m."""

__version__ = "0.1.0"

from .qform import FormSpec, Root, make_form  # noqa: F401
from .vinberg import Budget, RunStatus, run  # noqa: F401
