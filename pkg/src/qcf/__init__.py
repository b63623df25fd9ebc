"""Exact continued-fraction dynamics for real quadratic irrationals.

The package computes, with big-integer arithmetic only: continued-fraction
periods and their statistics, fundamental units and negative-Pell data,
stabilizer matrices and closed-orbit lengths, orders of matrices in p-adic
congruence filtrations, Hecke-sphere enumeration, and the invertible
extension of the Gauss map — plus a harness that replays how all of these
evolve when a quadratic irrational is scaled by rationals of growing
height.
"""

from .cfe import Cylinder, PeriodicCF, cylinder, expand, nu_discrepancy, nu_integrate, pattern_freq, period_points
from .errors import (
    InputError,
    InsufficientData,
    InvalidField,
    InvalidPattern,
    InvalidRadicand,
    InvalidRadius,
    InvariantError,
    NoNegativePell,
    NotCompactType,
    OrderBudgetExceeded,
    OutOfDomain,
    OutOfRange,
    PeriodTooLong,
    PrecisionError,
    QcfError,
    ResourceError,
    ZeroDenominator,
)
from .field import FieldData, GeodesicData, SplitType, field_data, geodesic_data, is_S_split, order_of, split_type, unit_action_matrix
from .harness import SweepConfig, SweepRow, freq_sweep, growth_crosscheck, period_sweep
from .hecke import DegeneratePoint, SphereRep, decompose, degenerate_sequence, same_branch_at_depth, sphere_reps
from .natext import MCCheckResult, NatPoint, c_alpha, estimate_c0, lebesgue_mc_check, natext_period, sbar
from .padic import PadicMat, e_ratio_trace, in_kpn, k_order, k_order_bruteforce, k_order_multi, pmat_from_rational, pmat_pow
from .surd import RationalMat, Surd, conj, eval_hp, floor_of, gauss_step, is_reduced, mk_surd, moebius

__version__ = "0.1.0"
