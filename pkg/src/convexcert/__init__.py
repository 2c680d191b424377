"""Convex-hull membership and interiority oracles, Caratheodory and Steinitz
reductions, Perron-eigenvector separation certificates, and Rankin angle
bounds."""

from .certificates import (
    DirectCertificate,
    LeaveOneOutSeparators,
    PerronCertificate,
    VerificationReport,
    certify_noninterior,
    certify_nonmembership,
    leave_one_out_separators,
    verify_certificate,
)
from .errors import ConvexCertError, GenerationFailed, InputError, NumericalError
from .generate import InstanceSpec, Kind, generate
from .geometry import (
    ConvexCombination,
    InteriorVerdict,
    MembershipVerdict,
    PointSet,
    Provenance,
    SeparationMode,
    SeparatorCertificate,
    contains_origin,
    is_interior,
    min_norm_point,
    weak_separator,
)
from .kernels import backend_name
from .numerics import PerronConfig, PerronPair, SpectralReport, perron, symmetric_eig
from .rankin import AngleMode, check_angles, extremal_config, spectral_witness
from .reduction import ReductionMode, ReductionResult, reduce_caratheodory, reduce_steinitz

__version__ = "0.1.0"
