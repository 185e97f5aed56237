from .phi import (ConstructionFault, CoverTriangle, PhiResult, build_p, cover_with,
                  inflated_cover, phi, phi_auto, phi_on_sum, reparametrized_cover,
                  resolution_chain, validate_cover, varphi)
from .constructions import (CONSTRUCTIONS, ShapeError, derive_cons1, derive_cons2,
                            derive_cons2_1, derive_cons2_2, derive_cons2_3,
                            derive_cons_new)
from .lemmas import (KINDS, check_choice_independence, round_trip_check,
                     verify_relation_preservation)
from ..diagrams import include
