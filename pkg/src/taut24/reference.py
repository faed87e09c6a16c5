"""Published reference data for the (2,4) case, transcribed as plain values.

Checks compare computed objects against these constants; nothing in the
package derives its results from them.
"""

from __future__ import annotations

# positive path -> (edges spanning its maximal cone, w^sigma-hat)
FAN_TABLE: tuple[tuple[str, tuple[str, ...], str], ...] = (
    ("pi12", ("e2", "e3", "e4", "e5", "e6"), "w1"),
    ("pi13", ("e1", "e4", "e5", "e6"), "w2*w3"),
    ("pi14", ("e1", "e3", "e4", "e6"), "w2*w5"),
    ("pi23", ("e1", "e2", "e5", "e6"), "w3*w4"),
    ("pi24", ("e1", "e2", "e3", "e6"), "w4*w5"),
    ("pi34", ("e1", "e2", "e3", "e4", "e5"), "w6"),
)

SINGULAR_CONES: tuple[tuple[str, ...], ...] = (
    ("e1", "e2", "e3", "e4", "e5"),
    ("e2", "e3", "e4", "e5", "e6"),
)

ROOF: tuple[str, ...] = ("e1", "e2", "e4", "e6")

# ample polytope points v0..v5, in positive-path order
AMPLE_POINTS: tuple[tuple[int, ...], ...] = (
    (0, 0, 0, 0),
    (-1, 0, 0, 0),
    (-1, -1, 0, 0),
    (-1, 0, -1, 0),
    (-1, -1, -1, 0),
    (-1, -1, -1, -1),
)

SHIFT: tuple[int, ...] = (3, 2, 2, 1)

ANTICANONICAL_VERTICES: tuple[tuple[int, ...], ...] = (
    (3, 2, 2, 1),
    (-1, 2, 2, 1),
    (-1, -2, 2, 1),
    (-1, 2, -2, 1),
    (-1, -2, -2, 1),
    (-1, -2, -2, -3),
)

ROOTS: tuple[tuple[int, ...], ...] = (
    (-1, 0, 0, 0), (-1, -1, 0, 0), (-1, 0, -1, 0), (-1, -1, -1, 0), (-1, -1, -1, -1),
    (0, -1, 0, 0), (0, 0, -1, 0), (0, 0, 1, 0), (0, 1, 0, 0),
    (0, 1, 1, 1), (0, 1, 0, 1), (0, 0, 1, 1), (0, 0, 0, 1), (1, 1, 1, 1),
)

MISSING_ROOTS: tuple[tuple[int, ...], ...] = ((1, 1, 1, 1), (-1, -1, -1, -1))

# sl4 basis element -> (kind, torus character or root)
CORRESPONDENCE: tuple[tuple[str, str, tuple[int, ...]], ...] = (
    ("E11-E22", "torus", (-1, 0, 2, -1)),
    ("E11-E33", "torus", (1, -1, 1, 1)),
    ("E11-E44", "torus", (0, 1, 1, 0)),
    ("E12", "root", (0, 0, 1, 0)),
    ("E13", "root", (0, 0, 1, 1)),
    ("E14", "root", (0, 1, 1, 1)),
    ("E23", "root", (0, 0, 0, 1)),
    ("E24", "root", (0, 1, 0, 1)),
    ("E34", "root", (0, 1, 0, 0)),
    ("E21", "root", (0, 0, -1, 0)),
    ("E31", "root", (-1, 0, -1, 0)),
    ("E41", "root", (-1, -1, -1, 0)),
    ("E32", "root", (-1, 0, 0, 0)),
    ("E42", "root", (-1, -1, 0, 0)),
    ("E43", "root", (0, -1, 0, 0)),
)

BRACKET_TORUS: tuple[tuple[int, ...], ...] = ((-1, 0, 2, -1), (1, -1, 1, 1), (1, 0, 0, 1))

CI_SPLIT_22: tuple[tuple[int, ...], ...] = ((1, 1, 1, 0, 0, 0), (0, 0, 0, 1, 1, 1))
