"""Exact combinatorics and differential-operator systems for G(2,4) and its toric degeneration.

Modules:
    lattice: integer and rational linear algebra.
    ladder: the ladder diagram, its fan, the small resolution and the class group.
    polytope: lattice polytopes, duality, reflexivity and fan roots.
    weyl: Weyl-algebra operators with coefficients polynomial in t, series application.
    gkz: extended GKZ systems for hypersurfaces and complete intersections.
    grassmann: Pluecker data, the sl4 action and the tautological system.
    bridge: the monomial map, pushforward and the comparison of both systems.
    period: principal period series by constant-term expansion.
    checks: verification runs against reference values.
    cli: command-line entry point.
"""

__version__ = "0.1.0"
