"""Diffraction in time: the opened-shutter state in configuration space,
Wigner phase space and symplectic tomography (natural units hbar = m = 1)."""
from ._backend import BACKEND
from .errors import (
    DegenerateNodesError,
    DomainError,
    FrameSingularError,
    NonPositiveTimeError,
    NonRealResultError,
    QuadratureError,
)
from .quad import OscIntegralResult, QuadConfig, integrate_oscillatory_halfline, richardson_extrapolate
from .shutter import ShutterParams, SpacetimePoint, m_amplitude, m_density, m_via_propagator, propagator, step
from .specfun import FresnelPair, erfc_complex, fresnel, sinc
from .tables import SampleTable
from .tomogram import (
    Frame,
    TomogramPoint,
    canonical_map,
    chi_closed,
    chi_oracle,
    frame_from_angles,
    tomogram_closed,
    tomogram_from_chi,
)
from .wigner import (
    PhasePoint,
    PhysicalUnits,
    classical_concentration,
    wigner_cgs,
    wigner_closed,
    wigner_marginal,
    wigner_oracle,
)

__version__ = "0.1.0"
