"""Decision logic for comparing semi-simplifications of Galois representations."""

from .local import CharPolyRecord, Gaussian, LocalFieldDesc, ValuationError, congruent_eigenvalues, parse_gaussian
from .matrices import charpoly, power_traces, residual_twist_unipotent
from .newton import newton_charpoly
from .plan import PlanReport, gcd_condition, gl_order, plan, residual_extension_degrees
from .verdict import (
    Attestation,
    BundleError,
    GaloisData,
    RepComparisonBundle,
    Verdict,
    bundle_from_record,
    bundle_to_record,
    compare,
    dump_bundle,
    load_bundle,
)
