"""Exact verification of mod-p Chow rings of versal complete flag varieties.

Subpackages: ring/groebner (exact graded algebra), symclass (symmetric
functions), catalog (per-group cohomology data), steenrod (operations),
chow (presentations and bases), torsion (torsion indices), cli (front door).
"""

__version__ = "0.1.0"
