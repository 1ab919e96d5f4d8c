"""
Chord tables for the six triangulated 12-gons that assemble the vertex
links of the 16-vertex balanced 2-neighborly 3-sphere.

Each disc is a 12-gon on the vertices of colors u, v, w together with the
nine chords drawn inside it. Triangles are re-derived from the chords, so
a transcription slip shows up as a failed ball or sphere check.
"""

# Boundary cycle shared by A, B and C
OUTER_BOUNDARY = ("w3", "u3", "v3", "w1", "u2", "v1", "u1", "w2", "v4", "u4", "w4", "v2")

# Boundary cycle shared by D, A' and B': the outer cycle with v1 and v2 exchanged
SWAPPED_BOUNDARY = ("w3", "u3", "v3", "w1", "u2", "v2", "u1", "w2", "v4", "u4", "w4", "v1")

DISC_CHORDS = {
    "A": (
        ("v2", "u3"), ("u3", "w1"), ("w1", "v2"), ("v2", "u2"), ("u2", "w4"),
        ("w4", "v1"), ("v1", "u4"), ("u4", "w2"), ("w2", "v1"),
    ),
    "B": (
        ("w3", "v3"), ("v3", "u2"), ("u2", "w3"), ("v1", "w3"), ("w3", "u1"),
        ("u1", "v2"), ("u1", "w4"), ("w4", "v4"), ("v4", "u1"),
    ),
    # zigzag fan
    "C": (
        ("v1", "w1"), ("w1", "u1"), ("u1", "v3"), ("v3", "w2"), ("w2", "u3"),
        ("u3", "v4"), ("v4", "w3"), ("w3", "u4"), ("u4", "v2"),
    ),
    # its chords are exactly the bicolored pairs missing from A, B and C
    "D": (
        ("v2", "w2"), ("w2", "u2"), ("u2", "v4"), ("v4", "w1"), ("w1", "u4"),
        ("u4", "v3"), ("v3", "w4"), ("w4", "u3"), ("u3", "v1"),
    ),
    "A'": (
        ("u3", "w1"), ("w1", "v2"), ("v2", "u3"), ("w2", "u4"), ("u4", "v1"),
        ("v1", "w2"), ("v2", "w3"), ("w3", "u1"), ("u1", "v1"),
    ),
    "B'": (
        ("w3", "v3"), ("v3", "u2"), ("u2", "w3"), ("u1", "v4"), ("v4", "w4"),
        ("w4", "u1"), ("v1", "u2"), ("u2", "w4"), ("w4", "v2"),
    ),
}

DISC_BOUNDARY = {
    "A": OUTER_BOUNDARY,
    "B": OUTER_BOUNDARY,
    "C": OUTER_BOUNDARY,
    "D": SWAPPED_BOUNDARY,
    "A'": SWAPPED_BOUNDARY,
    "B'": SWAPPED_BOUNDARY,
}

# Which two discs glue (along their common boundary) into the link of each z vertex
LINK_DISCS = {
    "z1": ("A", "C"),
    "z3": ("B", "C"),
    "z2": ("A'", "D"),
    "z4": ("B'", "D"),
}

# Automorphism generators quoted for the sphere
GAMMA_GENERATORS = (
    "(u1 u3 u2 u4)(v1 z2 v2 z1)(v3 z4 v4 z3)(w1 w4 w2 w3)",
    "(z1 v1)(z2 v2)(z3 v3)(z4 v4)(u1 w1)(u2 w2)(u3 w3)(u4 w4)",
)

# Symmetries quoted for the 16-vertex lens space. The first omits a
# (u4 v4 w4) cycle; it is checked on its own and never used to search.
LENS_ROTATION = "(u1 u3 u2 u4)(v1 v3 v2 v4)(w1 w3 w2 w4)(z1 z3 z2 z4)"
LENS_SWAPS = (
    "(z1 z2)(z3 z4)(v1 w1)(v2 w2)(v3 w3)(v4 w4)",
    "(z1 z2)(z3 z4)(u1 w1)(u2 w2)(u3 w3)(u4 w4)",
    "(z1 z2)(z3 z4)(u1 v1)(u2 v2)(u3 v3)(u4 v4)",
)
LENS_COLOR_ROTATION = "(u1 v1 w1)(u2 v2 w2)(u3 v3 w3)"
LENS_GENERATORS = (LENS_COLOR_ROTATION, LENS_ROTATION) + LENS_SWAPS

# Hexagon caps of the lens space links: boundary cycle and the three chords
# of the central triangle. Each name lists the subscripts the hexagon spans.
LENS_CAPS = {
    "H13": (("u1", "v3", "w1", "u3", "v1", "w3"), (("v3", "u3"), ("u3", "w3"), ("w3", "v3"))),
    "H24": (("w4", "u2", "v4", "w2", "u4", "v2"), (("w4", "v4"), ("v4", "u4"), ("u4", "w4"))),
    "H14": (("u1", "w4", "v1", "u4", "w1", "v4"), (("u1", "v1"), ("v1", "w1"), ("w1", "u1"))),
    "H23": (("v3", "u2", "w3", "v2", "u3", "w2"), (("u2", "v2"), ("v2", "w2"), ("w2", "u2"))),
}

# The 12-vertex torus shared by both solid tori, cut into four annuli.
# Bands 1 and 2 lie between H13 and H24; bands 3 and 4 between H14 and H23.
LENS_BANDS = {
    "band1": (
        "u1 v3 w4", "v3 w1 u2", "w1 u3 v4", "u3 v1 w2", "v1 w3 u4", "w3 u1 v2",
        "v3 w4 u2", "w1 u2 v4", "u3 v4 w2", "v1 w2 u4", "w3 u4 v2", "u1 v2 w4",
    ),
    "band2": (
        "w4 u2 v1", "u2 v4 w3", "v4 w2 u1", "w2 u4 v3", "u4 v2 w1", "v2 w4 u3",
        "u2 v1 w3", "v4 w3 u1", "w2 u1 v3", "u4 v3 w1", "v2 w1 u3", "w4 u3 v1",
    ),
    "band3": (
        "u1 v3 w4", "w1 u3 v4", "v1 w3 u4", "v3 w4 u2", "u3 v4 w2", "w3 u4 v2",
        "w4 u2 v1", "v4 w2 u1", "u4 v2 w1", "u2 v1 w3", "w2 u1 v3", "v2 w1 u3",
    ),
    "band4": (
        "v3 w1 u2", "u3 v1 w2", "w3 u1 v2", "w1 u2 v4", "v1 w2 u4", "u1 v2 w4",
        "u2 v4 w3", "w2 u4 v3", "v2 w4 u3", "v4 w3 u1", "u4 v3 w1", "w4 u3 v1",
    ),
}

# Cap, band, cap making up the cylinder-shaped link of each z vertex
LENS_LINKS = {
    "z1": ("H13", "band1", "H24"),
    "z2": ("H13", "band2", "H24"),
    "z3": ("H14", "band3", "H23"),
    "z4": ("H14", "band4", "H23"),
}

# Genus-one splitting along color 4: st z1 ∪ st z2 against st z3 ∪ st z4
LENS_SPLIT = (("z1", "z2"), ("z3", "z4"))
