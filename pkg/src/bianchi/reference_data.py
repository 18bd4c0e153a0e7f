"""Reference data for checking computed fundamental domains against the
published tables for m = 33, 17 and 21, and the published loxodromic
witness for m = 35."""

M33_VECTORS = (
    (0, 0, -1, 0),
    (1, 0, 1, 0),
    (0, 0, 0, -1),
    (33, 0, 0, 1),
    (-1, 1, 0, 0),
    (16, 2, 1, 1),
    (6, 6, 3, 1),
    (8, 4, 1, 1),
    (11, 3, 1, 1),
    (11, 11, 0, 2),
    (99, 33, 0, 10),
    (121, 22, 0, 9),
    (90, 18, 3, 7),
    (37, 8, 0, 3),
    (264, 66, 0, 23),
)

M17_VECTORS = (
    (0, 0, -1, 0),
    (1, 0, 1, 0),
    (0, 0, 0, -1),
    (17, 0, 0, 1),
    (-1, 1, 0, 0),
    (8, 2, 1, 1),
    (4, 4, 1, 1),
    (68, 34, 17, 11),
    (19, 8, 0, 3),
    (17, 9, 1, 3),
    (136, 68, 17, 23),
    (85, 51, 0, 16),
    (204, 102, 0, 35),
)

M21_VECTORS = (
    (0, 0, -1, 0),
    (1, 0, 1, 0),
    (0, 0, 0, -1),
    (21, 0, 0, 1),
    (-1, 1, 0, 0),
    (10, 2, 1, 1),
    (6, 3, 0, 1),
    (6, 4, 2, 1),
    (42, 42, 21, 8),
    (14, 14, 3, 3),
    (63, 63, 21, 13),
)

# rank-2 elliptic subdiagrams of the m = 33 domain and their two listed
# completions (1-based vertex labels in the order of M33_VECTORS); the
# remaining rows follow by the symmetry of the diagram
M33_COMPLETIONS = {
    (1, 3): (((2, 4), "2 x A~1"), ((5,), "3 x A1")),
    (1, 4): (((2, 3), "2 x A~1"), ((6,), "A1 + B2")),
    (1, 5): (((3,), "3 x A1"), ((10,), "3 x A1")),
    (1, 8): (((10,), "A1 + B2"), ((11,), "A1 + B2")),
    (1, 10): (((5,), "3 x A1"), ((8,), "A1 + B2")),
    (2, 3): (((1, 4), "2 x A~1"), ((5,), "A1 + A2")),
    (2, 4): (((1, 3), "2 x A~1"), ((6,), "3 x A1")),
    (2, 5): (((3,), "A1 + A2"), ((7,), "A1 + A2")),
    (2, 6): (((4,), "3 x A1"), ((9,), "B3")),
    (2, 7): (((5,), "A1 + A2"), ((8,), "A1 + B2")),
    (2, 8): (((7,), "A1 + B2"), ((9,), "B3")),
    (2, 9): (((6,), "B3"), ((8,), "B3")),
    (3, 5): (((1,), "3 x A1"), ((2,), "A1 + A2")),
    (4, 6): (((1,), "A1 + B2"), ((2,), "3 x A1")),
    (5, 7): (((2,), "A1 + A2"), ((10,), "3 x A1")),
    (5, 10): (((1,), "3 x A1"), ((7,), "3 x A1")),
    (7, 8): (((2,), "A1 + B2"), ((10,), "3 x A1")),
    (7, 10): (((5,), "3 x A1"), ((8,), "3 x A1")),
    (8, 10): (((1,), "A1 + B2"), ((7,), "3 x A1")),
}

# integral isometry of L_35 effecting the translational symmetry of the
# m = 35 mirror system (acts on column vectors); loxodromic
M35_LOXODROMIC = (
    (100, 429, -10, -1230),
    (99, 421, -9, -1212),
    (30, 129, -2, -369),
    (30, 128, -3, -368),
)
