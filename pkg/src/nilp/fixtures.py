"""Reference data: a worked 4x4 instance and tabulated gamma rows for k = 5, 7, 9."""
from fractions import Fraction as F

EXAMPLE_GENERATORS = [
    [[1, 2, -1, 1], [0, 1, 2, 1], [0, 0, 1, 2], [0, 0, 0, 1]],
    [[1, -1, -1, 2], [0, 1, -1, -1], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 0, 3, -1], [0, 1, 0, 1], [0, 0, 1, -1], [0, 0, 0, 1]],
]

EXAMPLE_LOGS = [
    [[0, 2, -3, F(11, 3)], [0, 0, 2, -1], [0, 0, 0, 2], [0, 0, 0, 0]],
    [[0, -1, F(-3, 2), F(3, 2)], [0, 0, -1, -1], [0, 0, 0, 0], [0, 0, 0, 0]],
    [[0, 0, 3, F(1, 2)], [0, 0, 0, 1], [0, 0, 0, -1], [0, 0, 0, 0]],
]

# as tabulated; the span of EXAMPLE_LOGS and their brackets has dimension 4 at k = 1
EXAMPLE_FILTRATION_DIMS = {3: 1, 2: 2, 1: 5}
EXAMPLE_CLASS = 3

# l = (1, 2, 2): the combination only has (1,4) and (2,4) entries
EXAMPLE_ELL = (1, 2, 2)
EXAMPLE_ELL_COMBINATION = {(0, 3): F(23, 3), (1, 3): F(-1)}

# words in the generators (0-based letters) with exponent t = 10
EXAMPLE_T = 10
EXAMPLE_PRIMED_WORDS = [
    [(0, 10), (1, 20), (2, 20)],
    [(1, 20), (2, 20), (0, 10)],
    [(1, 20), (0, 10), (2, 20)],
]
# only the (1,4) and (2,4) entries of their logs are nonzero
EXAMPLE_PRIMED_LOGS = [
    {(0, 3): F(1410), (1, 3): F(190)},
    {(0, 3): F(-2390), (1, 3): F(190)},
    {(0, 3): F(1410), (1, 3): F(-210)},
]
EXAMPLE_PRIMED_WEIGHTS = (117, 282, 361)

H5_PAIRS = [((3, 2), 2)]
H7_PAIRS = [((5, 2), 2), ((4, 3), 3), ((3, 2, 2), 2)]
H9_PAIRS = [((7, 2), 2), ((6, 3), 3), ((5, 4), 4), ((5, 2, 2), 2), ((4, 3, 2), 3), ((4, 3, 2), 2)]

H5_WORD = (1, 2, 3, 4, 4, 5, 5, 6, 6, 1, 2, 3)

H7_WORDS = [
    (1, 2, 3, 4, 5, 5, 6, 6, 7, 7, 8, 8, 1, 2, 3, 4),
    (1, 2, 3, 4, 5, 4, 6, 7, 1, 2, 8, 3, 5, 6, 7, 8),
]
H7_ALPHAS = [F(1, 15), F(8, 15)]

H9_WORDS = [
    (5, 4, 7, 10, 2, 8, 3, 8, 1, 9, 7, 6, 5, 6, 2, 3, 9, 10, 1, 4),
    (8, 3, 5, 7, 10, 6, 8, 2, 1, 10, 2, 4, 9, 1, 5, 9, 3, 6, 7, 4),
    (7, 10, 2, 6, 4, 9, 6, 4, 1, 5, 3, 5, 1, 9, 3, 7, 10, 2, 8, 8),
    (10, 2, 2, 6, 7, 1, 9, 3, 9, 4, 8, 7, 8, 5, 5, 1, 4, 10, 6, 3),
    (3, 5, 10, 1, 4, 8, 6, 9, 3, 2, 7, 6, 1, 10, 9, 7, 2, 4, 5, 8),
    (4, 7, 2, 10, 2, 1, 3, 5, 8, 1, 6, 9, 10, 7, 6, 8, 3, 5, 9, 4),
]
H9_ALPHAS = [
    F(44566633, 13702661), F(557040, 13702661), F(205175, 3915046),
    F(1307207, 13702661), F(86275275, 27405322), F(4105194, 1957523),
]

# tabulated coefficient rows, in the order of the matching *_PAIRS list
H5_ROWS = [
    ("id", tuple(range(1, 7)), [F(1)]),
    ("j1", H5_WORD, [F(-1)]),
]
H7_ROWS = [
    ("id", tuple(range(1, 9)), [F(34, 15), F(-34, 45), F(68, 15)]),
    ("j1", H7_WORDS[0], [F(34, 15), F(238, 45), F(-68, 5)]),
    ("j2", H7_WORDS[1], [F(-68, 15), F(34, 45), F(-34, 5)]),
]
H9_ROWS = [
    ("id", tuple(range(1, 11)),
     [F(347, 105), F(347, 315), F(347, 105), F(1388, 105), F(-347, 21), F(347, 21)]),
    ("j1", H9_WORDS[0],
     [F(-347, 105), F(21167, 945), F(-4511, 315), F(0), F(3817, 63), F(1735, 63)]),
    ("j2", H9_WORDS[1],
     [F(347, 45), F(18391, 945), F(347, 14), F(-1388, 315), F(9022, 63), F(-694, 63)]),
    ("j3", H9_WORDS[2],
     [F(16309, 42), F(85709, 630), F(241859, 1260), F(30883, 126), F(-8675, 63), F(94037, 630)]),
    ("j4", H9_WORDS[3],
     [F(20473, 210), F(-314729, 1890), F(4511, 140), F(137759, 630), F(-23249, 315), F(33659, 210)]),
    # the (4,3,2)|3 entry has the opposite sign to the rest of this row's scaling
    ("j5", H9_WORDS[4],
     [F(347, 210), F(35741, 1890), F(-18391, 1260), F(1041, 70), F(-347, 63), F(1735, 126)]),
    ("j6", H9_WORDS[5],
     [F(-1388, 105), F(-56561, 945), F(4511, 126), F(-3123, 70), F(-28454, 315), F(-51703, 630)]),
]

HK_DATA = {
    5: {"pairs": H5_PAIRS, "rows": H5_ROWS, "alphas": [F(1)]},
    7: {"pairs": H7_PAIRS, "rows": H7_ROWS, "alphas": H7_ALPHAS},
    9: {"pairs": H9_PAIRS, "rows": H9_ROWS, "alphas": H9_ALPHAS},
}

SET_PARTITION_EXAMPLE = ((4, 2, 7, 2, 2, 4), [[1, 6], [2, 4, 5], [3]], (3, 2, 1))
COARSENING_EXAMPLE = [[1, 3, 4], [2], [5, 6]]
COARSENING_EXAMPLE_COUNT = 5
