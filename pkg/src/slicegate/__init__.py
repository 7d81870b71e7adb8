"""slicegate: exact knot concordance invariants and 4-genus obstruction reports."""

from .bounds import GenusBounds, Interval
from .laurent import (FoxMilnorResult, IntPoly, InvalidAlexanderError, LaurentPoly,
                      Unit, factor, fox_milnor, normalize)
from .knotdb import (KnotRecord, KnotStore, ingest_csv, load, save, seed_table,
                     whitehead_double_record)
from .obstruct import (AppliedRule, InconsistentBoundsError, ObstructionReport,
                       Verdict, aggregate, band_move_bound, yasuhara)
from .plfunc import (CobordismCheck, PLFunction, cable_sandwich, cobordism_inequality,
                     euler_number_range, g4_lower_bound, oss_gamma4_lower_bound,
                     two_q_corollary_check, two_q_upsilon_interval, upsilon_little)
from .seifert import (ArfBudgetError, NotASeifertMatrixError, SeifertMatrix, alexander,
                      arf, arf_murasugi, determinant, genus_bounds_from_matrix,
                      levine_tristram, signature)
from .whitehead import (CompanionInvariants, HalfTwistRegimeError, MissingInvariantError,
                        WhiteheadParams, alexander_formula, arf_whitehead, cable_target,
                        epsilon_whitehead, gamma4_whitehead, pattern_seifert_matrix,
                        seifert_matrix, sigma_whitehead, tau_whitehead, upsilon_whitehead)

__version__ = "0.1.0"
