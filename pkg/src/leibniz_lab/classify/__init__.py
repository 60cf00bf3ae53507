"""Enumeration, quotients and the named classification families."""

from .coflag import CoflagDatum, CoflagFamily, coflag_algebra, coflag_data, coflag_GHL2, coflag_to_system
from .enumerate import compute_GHL2, enumerate_crossed_systems
from .metabelian import TnTriple, tn_algebra, tn_enumerate, tn_quotient, verify_metabelian_presentation
from .metacof import metacof_algebra, metacof_families
from .report import ClassificationReport, Component, Representative
