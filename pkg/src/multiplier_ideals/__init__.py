"""Multiplier ideals of m-primary ideals on surfaces with rational singularities.

Jumping numbers and their multiplicities, antinef closures, Poincaré series
and Hodge spectra, all computed exactly from the dual graph of a
log-resolution.
"""

from .builders import EnriquesCluster, cluster_to_resolution, monomial_ideal, monomial_resolution
from .core import (
    Divisor,
    DualGraph,
    ReducedDivisor,
    ResolutionData,
    ValidationReport,
    arithmetic_genus,
    excesses,
    fundamental_cycle,
    intersect,
    solve_relative_canonical,
    validate,
)
from .errors import CrossCheckError, InvalidResolution, MalformedInput, MultiplierIdealError
from .jumping import (
    candidates,
    ceil_relative,
    dicritical_jumping,
    growth_check,
    intersection_lemma,
    is_jumping_number,
    jumping_numbers,
    maximal_jumping_divisor,
    multiplicity,
    structure_check,
)
from .poincare import PoincareSeries, expand, poincare_series, render
from .spectrum import RootedResolution, rooted, rupture_set, spectrum_multiplicity, spectrum_table
from .unloading import UnloadingTrace, antinef_closure, ideal_codim, unloading_step, virtual_codim

__version__ = "0.1.0"
