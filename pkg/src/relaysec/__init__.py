"""Secrecy rates and bounds for relay channels with an untrusted relay."""

__version__ = "0.1.0"

from .core import (DomainError, EstimationError, GridSpec, RatePoint, RateRegion,
                   SearchSpaceError, StructuralError, awgn_capacity, clamp_plus,
                   pareto_reduce)
from .coverkim import (CoverKimParams, ck_achievable, ck_capacity, ck_curve,
                       ck_upper)
from .discrete import (DiscreteRelayChannel, DistributionTriple, JointPmf,
                       Model1DiscreteChannel, build_joint, model2_channel,
                       mutual_info, prefix_channel, thm1_point, thm1_search,
                       thm2_point, thm3_point)
from .mcsim import SimConfig, SimReport, af_simulate
from .model1 import (GaussianModel1Params, Model1Split, model1_point,
                     model1_optimum, model1_region, model1_secrecy_capacity)
from .model2 import (GaussianModel2Params, af_optimize, af_rate, b_sweep,
                     cf_optimize, cf_rate, model2_upper_bound, power_sweep)
