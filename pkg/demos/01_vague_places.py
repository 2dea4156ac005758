"""
How near is "near"?
===================

Vague spatial words become fuzzy sets over distance (km from the edge of a
place), and a fuzzy set anchored on a place becomes a possibility surface
over the map.
"""
import numpy as np

from fuzzygir.fuzzy import Hedge, alpha_cut_bbox, linguistic_surface, membership, Trapezoid
from fuzzygir.geo import Footprint

# "near" is fully true up to 2 km and fades out by 5 km
near = Trapezoid(0, 0, 2, 5)
for km in (1, 2, 3.5, 5, 6):
    print(f"near at {km:>4} km: {membership(near, km):.2f}")

# hedges reshape the curve: "very near" squares it, "somewhat near" takes the root
anchor = Footprint.point(80.2825, 13.05)  # a bare point on Marina Beach
surfaces = {h: linguistic_surface("Near", anchor, h) for h in (Hedge.VERY, None, Hedge.SOMEWHAT)}
lon = 80.2825 + np.linspace(0, 0.05, 6)  # walking east along the parallel
lat = np.full_like(lon, 13.05)
for hedge, s in surfaces.items():
    label = hedge.value.lower() + " near" if hedge else "near"
    print(f"{label:>13}:", np.round(s.possibility(lon, lat), 2))

# the alpha-cut box is the storage/index key: everything with pi >= alpha is inside
s = surfaces[None]
for alpha in (1.0, 0.5, 1e-9):
    box = alpha_cut_bbox(s, alpha)
    print(f"alpha {alpha:<6g} box:", tuple(round(v, 4) for v in box))

# direction: "to the east of" keeps a +-60 degree wedge, capped at 50 km
east = linguistic_surface("CardinalOf", anchor, direction="E")
print("east of, 5 km east :", float(east.possibility(80.2825 + 0.046, 13.05)))
print("east of, 5 km west :", float(east.possibility(80.2825 - 0.046, 13.05)))
