from .grid import (
    Defuzzified,
    FusionMode,
    GriddedSurface,
    certainty_report,
    defuzzify,
    fuse,
    grid_for_bbox,
    rasterize,
)
from .rules import FuzzyRuleBase, Rule, mamdani_infer
from .sets import Hedge, Hedged, RampDown, RampUp, Trapezoid, Triangle, apply_hedge, membership, set_from_config
from .surface import (
    DirectionSet,
    PossibilitySurface,
    alpha_cut_bbox,
    linguistic_surface,
    possibility_at,
)
