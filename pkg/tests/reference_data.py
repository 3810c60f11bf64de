"""Hand-checked reference values used across the test suite: published
sign assignments on reduced words, class colorings, and the abelian-vector
tables for small ranks."""

# letter-order sign per reduced word of the longest element, type A3
A3_S_SIGNS = {
    "123121": 1, "123212": -1, "132312": 1, "312132": 1,
    "321232": 1, "321323": -1, "323123": 1, "232123": -1,
    "231213": 1, "213231": 1, "212321": 1, "121321": -1,
    "312312": -1, "132132": -1, "213213": -1, "231231": -1,
}

# punctual sign per reduced word, type A3 (greedy normalization)
A3_PUNCTUAL_SIGNS = {
    "121321": 1, "123121": 1, "123212": -1, "132132": 1,
    "132312": 1, "212321": -1, "213213": -1, "213231": -1,
    "231213": -1, "231231": -1, "232123": 1, "312132": 1,
    "312312": 1, "321232": 1, "321323": -1, "323123": -1,
}

# letter-order sign per reduced word, type B3 (41 distinct published
# labels; the published drawing repeats one label on two vertices, with
# consistent signs, so one of the 42 words is not listed)
B3_S_SIGNS = {
    "312132312": 1, "312132132": -1, "312312312": -1, "132132312": -1,
    "312312132": 1, "132132132": 1, "132312312": 1, "132312132": -1,
    "123212132": -1, "123212312": 1, "132123212": -1, "312123212": 1,
    "123121232": -1, "123121323": -1, "121321232": 1, "123123123": 1,
    "121321323": 1, "121323123": -1, "213231213": 1, "231231213": -1,
    "213213213": -1, "213231231": -1, "231213213": 1, "231231231": 1,
    "213213231": 1, "231213231": -1, "231212321": -1, "213212321": 1,
    "212321231": -1, "212321213": 1, "323121321": -1, "323123121": 1,
    "321321321": 1, "321323121": -1, "232123121": 1, "232121321": -1,
    "321232121": -1, "321231212": -1, "212312123": 1, "212132123": -1,
    "121232123": -1,
}
# the repeated label above belongs on one vertex to this word instead
B3_S_SIGN_CORRECTION = {"321213212": 1}

# punctual sign per reduced word, type B3; the repeated label carries
# conflicting signs in the drawing, so that word is omitted here
B3_PUNCTUAL_SIGNS = {
    "312132312": -1, "312132132": -1, "312312312": -1, "132132312": -1,
    "312312132": -1, "132132132": -1, "132312312": -1, "132312132": -1,
    "123212132": -1, "123212312": -1, "132123212": -1,
    "123121232": 1, "123121323": 1, "121321232": 1, "123123123": 1,
    "121321323": 1, "121323123": 1, "213231213": 1, "231231213": 1,
    "213213213": 1, "213231231": 1, "231213213": 1, "231231231": 1,
    "213213231": 1, "231213231": 1, "231212321": 1, "213212321": 1,
    "212321231": 1, "212321213": 1, "323121321": -1, "323123121": -1,
    "321321321": -1, "321323121": -1, "232123121": -1, "232121321": -1,
    "321232121": -1, "321231212": 1, "212312123": -1, "212132123": -1,
    "121232123": 1,
}

# the 16 reduced words of the longest element of A3, as drawn
A3_REDUCED_WORDS = [
    "123121", "123212", "132312", "312132", "321232", "321323",
    "323123", "232123", "231213", "213231", "212321", "121321",
    "312312", "132132", "213213", "231231",
]

# the even-move class coloring for A3 (classes merged along odd moves)
A3_EVEN_CLASSES = [
    (("123121", "123212", "132312"), 1),
    (("321323", "321232", "312132"), 1),
    (("231213", "232123", "323123"), -1),
    (("213231", "212321", "121321"), -1),
    (("312312",), -1),
    (("132132",), -1),
    (("213213",), 1),
    (("231231",), 1),
]

# the odd-move class coloring for A3 (classes merged along even moves),
# written with the brace shorthand: {ab} stands for both letter orders
A3_ODD_CLASSES = [
    ("12{13}21", 1), ("{123212}", -1), ("{13}2{13}2", 1), ("{321232}", -1),
    ("32{13}23", 1), ("{232123}", -1), ("2{13}2{13}", 1), ("{212321}", -1),
]

# the even-move class coloring for B3 on classes merged along length-3
# moves, brace shorthand as above
B3_EVEN_CLASSES = [
    ("3121{232}12", -1), ("{312132132}", 1), ("{312312312}", 1),
    ("1321{232}12", 1), ("{312312132}", -1), ("{132132132}", -1),
    ("1{232}12312", -1), ("1{232}12132", 1), ("123121{232}", -1),
    ("{123123123}", 1), ("121321{232}", 1), ("121{232}123", -1),
    ("21{232}1213", 1), ("{231231213}", -1), ("{213213213}", -1),
    ("21{232}1231", -1), ("{231213213}", 1), ("{231231231}", 1),
    ("21321{232}1", 1), ("23121{232}1", -1), ("{232}121321", 1),
    ("{232}123121", -1), ("{321321321}", -1), ("321{232}121", 1),
    ("{321231212}", -1), ("{321213212}", 1), ("{212312123}", -1),
    ("{212132123}", 1),
]


def expand_braces(pattern: str) -> set[str]:
    """Expand the brace shorthand: each {f} stands for the alternating
    factor f and its other-letter twin; a fully braced label is a
    singleton class."""
    if pattern.startswith("{") and pattern.endswith("}") and pattern.count("{") == 1:
        return {pattern[1:-1]}

    def flip(factor: str) -> str:
        a, b = factor[0], next(ch for ch in factor if ch != factor[0])
        return "".join(b if k % 2 == 0 else a for k in range(len(factor)))

    out = [""]
    i = 0
    while i < len(pattern):
        if pattern[i] == "{":
            j = pattern.index("}", i)
            factor = pattern[i + 1 : j]
            out = [prefix + choice for prefix in out for choice in (factor, flip(factor))]
            i = j + 1
        else:
            out = [prefix + pattern[i] for prefix in out]
            i += 1
    return set(out)


# abelian-vector tables for the longest elements of small ranks
ABELIAN_TABLE = {
    "A1": {(1,)},
    "A2": {(2, 1), (1, 2)},
    "A3": {(3, 2, 1), (2, 3, 1), (2, 2, 2), (1, 3, 2), (1, 2, 3)},
    "A4": {
        (4, 3, 2, 1), (3, 4, 2, 1), (3, 3, 3, 1),
        (3, 3, 2, 2), (3, 2, 4, 1), (3, 2, 3, 2),
        (2, 5, 2, 1), (2, 4, 3, 1), (2, 4, 2, 2),
        (2, 3, 4, 1), (2, 3, 3, 2), (2, 3, 2, 3),
        (2, 2, 4, 2), (2, 2, 3, 3), (1, 4, 3, 2),
        (1, 4, 2, 3), (1, 3, 4, 2), (1, 3, 3, 3),
        (1, 2, 5, 2), (1, 2, 4, 3), (1, 2, 3, 4),
    },
    "B2": {(2, 2)},
    "B3": {(3, 4, 2), (3, 3, 3)},
    "B4": {
        (4, 6, 4, 2), (4, 6, 3, 3), (4, 5, 5, 2), (4, 5, 4, 3),
        (4, 4, 6, 2), (4, 4, 5, 3), (4, 4, 4, 4),
    },
    "D4": {
        (4, 2, 4, 2), (3, 3, 4, 2), (3, 3, 3, 3),
        (3, 2, 5, 2), (3, 2, 4, 3), (2, 4, 4, 2),
        (2, 3, 5, 2), (2, 3, 4, 3), (2, 2, 6, 2),
        (2, 2, 5, 3), (2, 2, 4, 4),
    },
    "H3": {(6, 6, 3), (5, 7, 3), (5, 6, 4), (5, 5, 5)},
}

# summary rows for the two ranks whose full vector lists are not published
ABELIAN_SUMMARY = {
    "A5": {"count": 97, "min": (1, 2, 3, 2, 1), "max": (5, 6, 6, 6, 5)},
    "D5": {"count": 111, "min": (2, 2, 4, 3, 2), "max": (6, 6, 9, 7, 5)},
}

# reduced-word counts for the longest elements
REDUCED_WORD_COUNTS = {"A2": 2, "A3": 16, "B2": 2, "B3": 42}

# commutation-class counts
COMMUTATION_CLASS_COUNTS = {"A3": 8, "B3": 14, "H3": 44}
