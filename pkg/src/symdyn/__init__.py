"""symdyn: symbolic dynamics of group extensions.

Subshifts of finite type, thermodynamic pressure, skew-product
extensions by finitely generated groups, suspension-flow orbit
statistics, and Schottky-group critical exponents, built around the
numerical dichotomy: holonomy-restricted growth rates match the base
exactly when the extending group is amenable.
"""

from .errors import ConvergenceError, ResourceLimitError, SymdynError, ValidationError
from .groups import (Ball, FiniteTableGroup, FreeAbelianGroup, FreeGroup,
                     Group, LamplighterGroup, PermutationImageGroup,
                     QuotientGroup, abelianization, ball, finite_image,
                     folner_defect, folner_search, free_identity_quotient,
                     kill_generators, make_group, trivial_quotient)
from .walks import (CogrowthSeries, ReturnSeries, WalkSpec, cogrowth_estimate,
                    kesten_estimate, reduced_word_count, uniform_walk)
from .sft import (EdgePotential, Involution, SubshiftOfFiniteType, build_sft,
                  check_symmetry, full_shift, orbital_pressure, periodic_sum,
                  spectral_pressure)
from .skew import (AmenabilityVerdict, Cocycle, GurevichEstimate, SkewProduct,
                   VerdictThresholds, amenability_verdict, build_skew,
                   enumerate_holonomy, gurevich_estimate, holonomy_series,
                   holonomy_sum, p_n_count, transitivity_probe)
from .zeta import (DeltaSubRoot, OrbitLengthTable, PerryCheck, RoofFunction,
                   ZetaPartial, delta_root, delta_sub_root, orbit_counts,
                   perry_check, zeta_partial)
from .schottky import (DeltaEstimate, MoebiusMap, PoincareSeries,
                       RefinedCoding, SchottkyGroup, build_schottky,
                       delta_poincare, displacement, isometric_disk,
                       kernel_cocycle, poincare_partial, refined_cocycle,
                       roof_cylinder, shell_table, standard_pair,
                       standard_triple, translation_length)

__version__ = "0.1.0"
