#!/usr/bin/env python3
"""Regenerate the shipped JSON fixtures under src/iqhecke/data/.

The eigensystem tables are checked for internal consistency (twist and
conjugation relations) while being written, so a transcription slip cannot
land silently.
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "iqhecke" / "data"
DATA.mkdir(parents=True, exist_ok=True)


def dump(name, obj):
    path = DATA / name
    path.write_text(json.dumps(obj, indent=1) + "\n")
    print("wrote", path)


# -- field + class-group pin ---------------------------------------------------

dump(
    "field_68.json",
    {
        "d": 17,
        "disc": -68,
        "label_ordering": "factor",
        "class_group": {"h": 4, "elementary_divisors": [4], "generators": [[3, 2, 6]]},
    },
)

# -- eigensystem tables --------------------------------------------------------

QI2 = {"minpoly": [0, 1], "adjoined": [-1, 2]}
Q2 = {"minpoly": [0, 1], "adjoined": [2]}
QI = {"minpoly": [0, 1], "adjoined": [-1]}
QQ = {"minpoly": [0, 1], "adjoined": []}
CUBIC = {"minpoly": [1, -3, -1, 1], "adjoined": []}

level_2_1 = {
    "field_disc": -68,
    "level": "2.1",
    "systems": [
        {
            "name": "F0",
            "character": [0],
            "field": Q2,
            "alpha": {
                "3.1": "2*sqrt2", "3.2": "-2*sqrt2", "7.1": "0", "7.2": "0",
                "11.1": "2*sqrt2", "11.2": "-2*sqrt2", "13.1": "-2", "13.2": "-2",
                "17.1": "-6", "23.1": "-4*sqrt2", "23.2": "4*sqrt2", "25.1": "2",
            },
            "al": {"2.1": -1},
            "selftwist": None,
        },
        {
            "name": "F1",
            "character": [2],
            "field": QI2,
            "alpha": {
                "3.1": "2*sqrt2*i", "3.2": "2*sqrt2*i", "7.1": "0", "7.2": "0",
                "11.1": "-2*sqrt2*i", "11.2": "-2*sqrt2*i", "13.1": "2", "13.2": "2",
                "17.1": "-6", "23.1": "4*sqrt2*i", "23.2": "4*sqrt2*i", "25.1": "2",
            },
            "al": None,
            "selftwist": None,
        },
        {
            "name": "F2",
            "character": [0],
            "field": Q2,
            "alpha": {
                "3.1": "-2*sqrt2", "3.2": "2*sqrt2", "7.1": "0", "7.2": "0",
                "11.1": "-2*sqrt2", "11.2": "2*sqrt2", "13.1": "-2", "13.2": "-2",
                "17.1": "-6", "23.1": "4*sqrt2", "23.2": "-4*sqrt2", "25.1": "2",
            },
            "al": {"2.1": -1},
            "selftwist": None,
        },
        {
            "name": "F3",
            "character": [2],
            "field": QI2,
            "alpha": {
                "3.1": "-2*sqrt2*i", "3.2": "-2*sqrt2*i", "7.1": "0", "7.2": "0",
                "11.1": "2*sqrt2*i", "11.2": "2*sqrt2*i", "13.1": "2", "13.2": "2",
                "17.1": "-6", "23.1": "-4*sqrt2*i", "23.2": "-4*sqrt2*i", "25.1": "2",
            },
            "al": None,
            "selftwist": None,
        },
    ],
}

level_16_1 = {
    "field_disc": -68,
    "level": "16.1",
    "systems": [
        {
            "name": "F1",
            "character": [1],
            "field": QI2,
            "alpha": {
                "3.1": "sqrt2*(1+i)", "3.2": "-sqrt2*(1-i)",
                "7.1": "-sqrt2*(1+i)", "7.2": "sqrt2*(1-i)",
                "11.1": "sqrt2*(1-i)", "11.2": "-sqrt2*(1+i)",
                "13.1": "-2*i", "13.2": "2*i", "17.1": "-2",
            },
        },
        {
            "name": "F2",
            "character": [1],
            "field": QI,
            "alpha": {
                "3.1": "1+i", "3.2": "-1+i", "7.1": "3+3*i", "7.2": "-3+3*i",
                "11.1": "-1+i", "11.2": "1+i", "13.1": "-4*i", "13.2": "4*i",
                "17.1": "-6",
            },
        },
        {
            "name": "F3",
            "character": [1],
            "field": QI,
            "alpha": {
                "3.1": "-1-i", "3.2": "1-i", "7.1": "-3-3*i", "7.2": "3-3*i",
                "11.1": "1-i", "11.2": "-1-i", "13.1": "-4*i", "13.2": "4*i",
                "17.1": "-6",
            },
        },
        {
            "name": "F4",
            "character": [1],
            "field": QI,
            "alpha": {
                "3.1": "2+2*i", "3.2": "-2+2*i", "7.1": "0", "7.2": "0",
                "11.1": "-2+2*i", "11.2": "2+2*i", "13.1": "2*i", "13.2": "-2*i",
                "17.1": "6",
            },
        },
        {
            "name": "F5",
            "character": [1],
            "field": QI,
            "alpha": {
                "3.1": "-2-2*i", "3.2": "2-2*i", "7.1": "0", "7.2": "0",
                "11.1": "2-2*i", "11.2": "-2-2*i", "13.1": "2*i", "13.2": "-2*i",
                "17.1": "6",
            },
        },
        {
            "name": "F6",
            "character": [1],
            "field": QI,
            "alpha": {
                "3.1": "0", "3.2": "0", "7.1": "2+2*i", "7.2": "-2+2*i",
                "11.1": "4-4*i", "11.2": "-4-4*i", "13.1": "2*i", "13.2": "-2*i",
                "17.1": "6",
            },
        },
        {
            "name": "F7",
            "character": [1],
            "field": QI,
            "alpha": {
                "3.1": "0", "3.2": "0", "7.1": "-2-2*i", "7.2": "2-2*i",
                "11.1": "-4+4*i", "11.2": "4+4*i", "13.1": "2*i", "13.2": "-2*i",
                "17.1": "6",
            },
        },
    ],
}

level_25_1 = {
    "field_disc": -68,
    "level": "25.1",
    "systems": [
        {
            "name": "F0",
            "character": [0],
            "field": CUBIC,
            "alpha": {
                "2.1": "a", "3.1": "a^2-a-2", "3.2": "-a^2+a+2",
                "7.1": "a^2+a-2", "7.2": "-a^2-a+2",
                "11.1": "-a-1", "11.2": "a+1",
                "13.1": "a^2-2*a-3", "13.2": "a^2-2*a-3",
                "17.1": "-4*a^2+2*a+8",
                "23.1": "a^2+3*a-6", "23.2": "-a^2-3*a+6",
            },
            "al": {"25.1": 1},
        }
    ],
}

level_7_2 = {
    "field_disc": -68,
    "level": "7.2",
    "systems": [
        {
            "name": "a",
            "character": [0],
            "field": QQ,
            "alpha": {
                "2.1": "-1", "3.1": "-2", "3.2": "-2", "7.1": "0",
                "11.1": "-6", "11.2": "2", "13.1": "-2", "13.2": "6",
                "17.1": "-2", "23.1": "0", "23.2": "8", "25.1": "-2",
            },
            "al": {"7.2": 1},
        }
    ],
}

level_64_1 = {
    "field_disc": -68,
    "level": "64.1",
    "systems": [
        {
            "name": "selftwist",
            "character": [0],
            "field": QQ,
            "alpha": {
                "3.1": "0", "3.2": "0", "7.1": "0", "7.2": "0",
                "11.1": "0", "11.2": "0", "13.1": "6", "13.2": "6",
                "25.1": "-6",
            },
            "al": None,
            "selftwist": {"possible": [[2]]},
        }
    ],
}

dump("eigensystems_2.1.json", level_2_1)
dump("eigensystems_16.1.json", level_16_1)
dump("eigensystems_25.1.json", level_25_1)
dump("eigensystems_7.2.json", level_7_2)
dump("eigensystems_64.1.json", level_64_1)

# -- principal-operator oracle for level 2.1 ------------------------------------

dump(
    "oracle_2.1.json",
    {
        "field_disc": -68,
        "level": "2.1",
        "field": QQ,
        "values": [
            {"aa": "9.1", "t": None, "w": None, "value": "1"},
            {"aa": "3.1", "t": "9.1", "w": None, "value": "5"},
            {"aa": None, "t": "9.2", "w": None, "value": "-8"},
            {"aa": "3.1", "t": "13.1", "w": None, "value": "-2"},
            {"aa": "3.1", "t": None, "w": "2.1", "value": "-1"},
        ],
    },
)

# -- elliptic-curve a_p list for the 7.2 comparison ------------------------------

dump(
    "curve_7.2a2.json",
    {
        "field_disc": -68,
        "curve": "2.0.68.1-7.2-a2",
        "conductor": "7.2",
        "ap": {
            "2.1": -1, "3.1": -2, "3.2": -2, "7.1": 0, "11.1": -6, "11.2": 2,
            "13.1": -2, "13.2": 6, "17.1": -2, "23.1": 0, "23.2": 8, "25.1": -2,
        },
        "bad_primes": {"7.2": {"ap": 1, "reduction": "nonsplit"}},
    },
)

# -- newspace dimension table ----------------------------------------------------

ROWS = [
    ("2.1", None, 4, [1], [], [2], []),
    ("4.1", None, 4, [1], [], [2], []),
    ("7.1", "7.2", 4, [1], [], [1, 1], []),
    ("8.1", None, 8, [1, 1], [], [1, 1, 2], []),
    ("9.1", "9.3", 4, [], [1], [], [2, 2]),
    ("9.2", None, 8, [1, 1], [], [1, 1, 1, 1], []),
    ("12.1", "12.2", 4, [], [1], [], [4]),
    ("16.1", None, 16, [], [1, 1, 1, 1], [], [2, 2, 2, 2, 2, 2, 4]),
    ("17.1", None, 4, [1], [], [1, 1], []),
    ("18.2", None, 4, [1], [], [1, 1], []),
    ("21.1", "21.4", 4, [1], [], [1, 1], []),
    ("25.1", None, 12, [3], [], [3, 3], []),
    ("26.1", "26.2", 4, [], [1], [], [2, 2]),
    ("27.2", "27.3", 20, [1], [4], [1, 1], [16]),
    ("34.1", None, 4, [1], [], [1, 1], []),
    ("36.1", "36.3", 4, [1], [], [2], []),
    ("36.2", None, 4, [1], [], [1, 1], []),
    ("42.2", "42.3", 8, [1], [1], [1, 1], [4]),
    ("48.1", "48.2", 4, [1], [], [1, 1], []),
    ("49.1", "49.3", 4, [1], [], [2], []),
    ("49.2", None, 20, [5], [], [5, 5], []),
    ("50.1", None, 12, [1, 1, 1], [], [1, 1, 1, 1, 1, 1], []),
    ("62.1", "62.2", 4, [1], [], [1, 1], []),
    ("63.1", "63.6", 8, [], [1, 1], [], [4, 4]),
    ("64.1", None, 20, [1, 2], [1, 2], [1, 4], [2, 8]),
    ("66.1", "66.4", 4, [1], [], [1, 1], []),
    ("66.2", "66.3", 12, [], [1, 2], [], [4, 8]),
    ("68.1", None, 8, [2], [], [2, 2], []),
    ("72.2", None, 24, [1, 2, 3], [], [1, 1, 2, 2, 3, 3], []),
    ("78.2", "78.3", 20, [1], [4], [1, 1], [16]),
    ("81.3", None, 28, [1, 1, 1], [2, 2], [1, 1, 1, 1, 2], [4, 4, 4, 4]),
    ("93.2", "93.3", 8, [1], [1], [1, 1], [4]),
    ("98.1", "98.3", 4, [1], [], [2], []),
    ("98.2", None, 28, [1, 1, 2, 3], [], [1, 1, 1, 1, 2, 2, 3, 3], []),
    ("99.3", "99.4", 16, [], [1, 3], [], [4, 12]),
    ("100.1", None, 16, [1, 3], [], [1, 1, 3, 3], []),
    ("104.1", "104.2", 4, [1], [], [2], []),
    ("106.1", "106.2", 4, [], [1], [], [2, 2]),
    ("108.2", "108.3", 16, [1, 2], [1], [1, 1, 2, 2], [4]),
    ("112.1", "112.2", 4, [], [1], [], [4]),
    ("121.1", "121.3", 4, [], [1], [], [2, 2]),
    ("121.2", None, 36, [1, 8], [], [1, 1, 8, 8], []),
    ("126.1", "126.6", 12, [1], [1, 1], [1, 1], [4, 4]),
    ("136.1", None, 40, [1, 1, 2, 2], [2, 2], [1, 1, 1, 1, 2, 2, 2, 2], [8, 8]),
    ("138.2", "138.3", 4, [], [1], [], [4]),
    ("144.1", "144.3", 8, [1], [1], [2], [2, 2]),
    ("144.2", None, 40, [], [1, 1, 1, 1, 1, 2, 3], [], [4, 4, 4, 4, 4, 8, 12]),
    ("147.1", "147.6", 8, [1, 1], [], [1, 1, 1, 1], []),
    ("150.1", "150.2", 4, [1], [], [1, 1], []),
    ("153.2", None, 12, [1, 2], [], [1, 1, 2, 2], []),
    ("159.2", "159.3", 4, [1], [], [1, 1], []),
    ("161.2", "161.3", 4, [1], [], [1, 1], []),
    ("162.1", "162.5", 16, [2], [1, 1], [4], [4, 4]),
    ("162.2", "162.4", 8, [1], [1], [1, 1], [4]),
    ("162.3", None, 16, [1, 1, 1, 1], [], [1, 1, 2, 2, 2], []),
    ("168.1", "168.4", 8, [1], [1], [1, 1], [4]),
    ("169.2", None, 36, [1, 2, 3, 3], [], [1, 1, 4, 6, 6], []),
    ("178.1", "178.2", 16, [1], [1, 1, 1], [1, 1], [2, 2, 2, 2, 2, 2]),
    ("186.1", "186.4", 4, [], [1], [], [4]),
    ("189.4", "189.5", 8, [], [1, 1], [], [4, 4]),
    ("196.1", "196.3", 4, [], [1], [], [2, 2]),
    ("196.2", None, 16, [4], [], [4, 4], []),
    ("198.2", "198.5", 20, [3], [1, 1], [3, 3], [4, 4]),
    ("198.3", "198.4", 8, [], [1, 1], [], [4, 4]),
    ("200.1", None, 72, [1, 1, 4, 4], [1, 1, 3, 3], [1, 1, 1, 1, 4, 4, 4, 4], [2, 2, 2, 2, 12, 12]),
]

SELFTWIST_RECORDS = [
    {"level": "64.1", "side": "plus", "degree": 1},
    {"level": "64.1", "side": "minus", "degree": 1},
]

for lev, conj, nd, hp, hm, c0, c13 in ROWS:
    deficit = sum(
        2 * r["degree"] for r in SELFTWIST_RECORDS if r["level"] == lev
    )
    assert nd == 4 * (sum(hp) + sum(hm)) - deficit, lev

dump(
    "dimension_table_68.json",
    {
        "field_disc": -68,
        "selftwist_records": SELFTWIST_RECORDS,
        "rows": [
            {
                "level": lev, "conj": conj, "nd": nd,
                "Hplus": hp, "Hminus": hm, "chi0": c0, "chi13": c13,
            }
            for lev, conj, nd, hp, hm, c0, c13 in ROWS
        ],
    },
)

# -- Hecke fields for trivial-character newforms ---------------------------------

HF = [
    ("2.1", 1, "Q", 1, "Q(sqrt2)", 2),
    ("4.1", 1, "Q", 1, "Q(sqrt2)", 2),
    ("7.1", 1, "Q", 1, "Q", 1),
    ("8.1", 1, "Q", 1, "Q", 1),
    ("8.1", 2, "Q", 1, "Q(sqrt2)", 2),
    ("9.2", 1, "Q", 1, "Q", 1),
    ("9.2", 2, "Q", 1, "Q", 1),
    ("17.1", 1, "Q", 1, "Q", 1),
    ("18.2", 1, "Q", 1, "Q", 1),
    ("21.1", 1, "Q", 1, "Q", 1),
    ("25.1", 1, "3.3.148.1", 3, "3.3.148.1", 3),
    ("27.2", 1, "Q", 1, "Q", 1),
    ("34.1", 1, "Q", 1, "Q", 1),
    ("36.1", 1, "Q", 1, "Q(sqrt2)", 2),
    ("36.2", 1, "Q", 1, "Q", 1),
    ("42.2", 1, "Q", 1, "Q", 1),
    ("48.1", 1, "Q", 1, "Q", 1),
    ("49.1", 1, "Q", 1, "Q(sqrt2)", 2),
    ("49.2", 1, "5.5.240133.1", 5, "5.5.240133.1", 5),
    ("50.1", 1, "Q", 1, "Q", 1),
    ("50.1", 2, "Q", 1, "Q", 1),
    ("50.1", 3, "Q", 1, "Q", 1),
    ("62.2", 1, "Q", 1, "Q", 1),
    ("64.1", 1, "Q", 1, "Q", 1),
    ("64.1", 2, "Q(sqrt2)", 2, "Q(sqrt(2+sqrt2))", 4),
    ("66.1", 1, "Q", 1, "Q", 1),
    ("68.1", 1, "Q(sqrt3)", 2, "Q(sqrt3)", 2),
    ("72.2", 1, "Q", 1, "Q", 1),
    ("72.2", 2, "Q(sqrt33)", 2, "Q(sqrt33)", 2),
    ("72.2", 3, "3.3.316.1", 3, "3.3.316.1", 3),
    ("78.2", 1, "Q", 1, "Q", 1),
    ("81.3", 1, "Q", 1, "Q", 1),
    ("81.3", 2, "Q", 1, "Q", 1),
    ("81.3", 3, "Q", 1, "Q(sqrt17)", 2),
    ("93.2", 1, "Q", 1, "Q", 1),
    ("98.1", 1, "Q", 1, "Q(sqrt2)", 2),
    ("98.2", 1, "Q", 1, "Q", 1),
    ("98.2", 2, "Q", 1, "Q", 1),
    ("98.2", 3, "Q(sqrt3)", 2, "Q(sqrt3)", 2),
    ("98.2", 4, "3.3.148.1", 3, "3.3.148.1", 3),
    ("100.1", 1, "Q", 1, "Q", 1),
    ("100.1", 2, "3.3.1524.1", 3, "3.3.1524.1", 3),
    ("104.1", 1, "Q", 1, "Q(sqrt2)", 2),
    ("108.2", 1, "Q", 1, "Q", 1),
    ("108.2", 2, "Q(sqrt15)", 2, "Q(sqrt15)", 2),
    ("121.2", 1, "Q", 1, "Q", 1),
    ("121.2", 2, "Q(a), f8(a)=0", 8, "Q(a), f8(a)=0", 8),
    ("126.1", 1, "Q", 1, "Q", 1),
    ("136.1", 1, "Q", 1, "Q", 1),
    ("136.1", 2, "Q", 1, "Q", 1),
    ("136.1", 3, "Q(sqrt5)", 2, "Q(sqrt5)", 2),
    ("136.1", 4, "Q(sqrt3)", 2, "Q(sqrt3)", 2),
    ("144.1", 1, "Q", 1, "Q(sqrt2)", 2),
    ("147.1", 1, "Q", 1, "Q", 1),
    ("147.1", 2, "Q", 1, "Q", 1),
    ("150.1", 1, "Q", 1, "Q", 1),
    ("153.2", 1, "Q", 1, "Q", 1),
    ("153.2", 2, "Q(sqrt17)", 2, "Q(sqrt17)", 2),
    ("159.2", 1, "Q", 1, "Q", 1),
    ("161.2", 1, "Q", 1, "Q", 1),
    ("162.1", 1, "Q(sqrt3)", 2, "Q(sqrt2,sqrt3)", 4),
    ("162.2", 1, "Q", 1, "Q", 1),
    ("162.3", 1, "Q", 1, "Q", 1),
    ("162.3", 2, "Q", 1, "Q(sqrt2)", 2),
    ("162.3", 3, "Q", 1, "Q(sqrt2)", 2),
    ("162.3", 4, "Q", 1, "Q(sqrt2)", 2),
    ("168.1", 1, "Q", 1, "Q", 1),
    ("169.2", 1, "Q", 1, "Q", 1),
    ("169.2", 2, "Q(sqrt17)", 2, "Q(sqrt((5+sqrt17)/2))", 4),
    ("169.2", 3, "3.3.621.1", 3, "3.3.621.1(sqrt(a^2-2a-1))", 6),
    ("169.2", 4, "3.3.229.1", 3, "3.3.229.1(sqrt(5-a^2))", 6),
    ("178.1", 1, "Q", 1, "Q", 1),
    ("196.2", 1, "4.4.1957.1", 4, "4.4.1957.1", 4),
    ("198.2", 1, "3.3.788.1", 3, "3.3.788.1", 3),
    ("200.1", 1, "Q", 1, "Q", 1),
    ("200.1", 2, "Q", 1, "Q", 1),
    ("200.1", 3, "4.4.23252.1", 4, "4.4.23252.1", 4),
    ("200.1", 4, "4.4.92692.1", 4, "4.4.92692.1", 4),
]

dump(
    "hecke_fields_68.json",
    {
        "field_disc": -68,
        "rows": [
            {
                "level": lev, "index": idx,
                "kf": kf, "kf_degree": kfd, "kF": kF, "kF_degree": kFd,
            }
            for lev, idx, kf, kfd, kF, kFd in HF
        ],
    },
)

# -- consistency pass over the eigensystem fixtures ------------------------------

from iqhecke.quadfield import make_field, ideal_from_label  # noqa: E402
from iqhecke.classgroup import compute_class_group  # noqa: E402
from iqhecke.characters import ClassCharacter  # noqa: E402
from iqhecke.eigensystem import (  # noqa: E402
    eigensystem_from_json,
    galois_conjugate_system,
    systems_equal,
    twist,
)

K = make_field(17)
G = compute_class_group(K)


def load(bundle, name):
    for row in bundle["systems"]:
        if row["name"] == name:
            return eigensystem_from_json(G, {**row, "level": bundle["level"]})
    raise KeyError(name)


F0 = load(level_2_1, "F0")
for j, name in enumerate(["F0", "F1", "F2", "F3"]):
    expected = load(level_2_1, name)
    got = twist(F0, ClassCharacter((j,)))
    assert systems_equal(got, expected), f"2.1 twist mismatch at {name}"
assert systems_equal(galois_conjugate_system(F0), load(level_2_1, "F2"))

for a, b in [("F2", "F3"), ("F4", "F5"), ("F6", "F7")]:
    Fa, Fb = load(level_16_1, a), load(level_16_1, b)
    assert systems_equal(twist(Fa, ClassCharacter((2,))), Fb), f"16.1 {a}x{b}"

F25 = load(level_25_1, "F0")
assert systems_equal(galois_conjugate_system(F25), twist(F25, ClassCharacter((2,))))

print("fixture consistency checks passed")
