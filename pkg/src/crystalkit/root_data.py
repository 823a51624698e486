"""Affine root-system bookkeeping.

Index sets, Cartan matrices, marks and comarks for the seven affine families,
classical weights as integer pairing vectors, level, dominance, and the
weight-lattice automorphism sigma attached to each coherent family of perfect
crystals.

Weights are stored classically: a weight is the tuple of its pairings with the
simple coroots h_0, ..., h_n.  The delta direction of the full weight lattice
is dropped throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DimensionError, InvalidTypeError

Weight = tuple[int, ...]

# family tag -> (display name, minimal rank parameter n)
FAMILIES = {
    "A1": ("A_n^(1)", 2),
    "A2dual_odd": ("A_{2n-1}^(2)", 3),
    "B1": ("B_n^(1)", 3),
    "A2dual_even": ("A_{2n}^(2)", 2),
    "D2dual": ("D_{n+1}^(2)", 2),
    "C1": ("C_n^(1)", 2),
    "D1": ("D_n^(1)", 4),
}


@dataclass(frozen=True)
class AffineType:
    """One of the seven affine families together with its rank parameter."""

    family: str
    n: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidTypeError(f"unknown family tag {self.family!r}")
        floor = FAMILIES[self.family][1]
        if self.n < floor:
            raise InvalidTypeError(
                f"{self.family} requires n >= {floor}, got n = {self.n}"
            )

    @property
    def num_nodes(self) -> int:
        return self.n + 1

    def label(self) -> str:
        return f"{self.family}:{self.n}"

    @staticmethod
    def parse(text: str) -> "AffineType":
        """Parse a label such as "A1:2" into an AffineType."""
        try:
            family, n = text.split(":")
            return AffineType(family, int(n))
        except (ValueError, TypeError) as exc:
            raise InvalidTypeError(f"cannot parse affine type {text!r}") from exc


@dataclass(frozen=True)
class RootData:
    """Cartan matrix plus the marks (delta) and comarks (canonical center)."""

    type: AffineType
    cartan: tuple[tuple[int, ...], ...]
    marks: tuple[int, ...]
    comarks: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.type.n

    @property
    def index_set(self) -> range:
        return range(self.type.num_nodes)

    def a(self, i: int, j: int) -> int:
        """Cartan entry <h_i, alpha_j>."""
        return self.cartan[i][j]


def _empty_cartan(size):
    rows = [[0] * size for _ in range(size)]
    for i in range(size):
        rows[i][i] = 2
    return rows


def _build_cartan(t: AffineType):
    n = t.n
    rows = _empty_cartan(n + 1)

    def link(i, j, aij=-1, aji=-1):
        rows[i][j] = aij
        rows[j][i] = aji

    if t.family == "A1":
        # cycle 0 - 1 - ... - n - 0
        for i in range(n + 1):
            link(i, (i + 1) % (n + 1))
    elif t.family == "B1":
        link(0, 2)
        link(1, 2)
        for i in range(2, n - 1):
            link(i, i + 1)
        link(n - 1, n, -1, -2)  # alpha_n short
    elif t.family == "C1":
        link(0, 1, -1, -2)  # alpha_0 long
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 1, n, -2, -1)  # alpha_n long
    elif t.family == "D1":
        link(0, 2)
        link(1, 2)
        for i in range(2, n - 2):
            link(i, i + 1)
        link(n - 2, n - 1)
        link(n - 2, n)
    elif t.family == "A2dual_odd":
        link(0, 2)
        link(1, 2)
        for i in range(2, n - 1):
            link(i, i + 1)
        link(n - 1, n, -2, -1)
    elif t.family == "A2dual_even":
        link(0, 1, -2, -1)
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 1, n, -2, -1)
    elif t.family == "D2dual":
        link(0, 1, -2, -1)
        for i in range(1, n - 1):
            link(i, i + 1)
        link(n - 1, n, -1, -2)
    return tuple(tuple(row) for row in rows)


def _marks_comarks(t: AffineType):
    n = t.n
    if t.family == "A1":
        marks = (1,) * (n + 1)
        comarks = marks
    elif t.family == "B1":
        marks = (1, 1) + (2,) * (n - 1)
        comarks = (1, 1) + (2,) * (n - 2) + (1,)
    elif t.family == "C1":
        marks = (1,) + (2,) * (n - 1) + (1,)
        comarks = (1,) * (n + 1)
    elif t.family == "D1":
        marks = (1, 1) + (2,) * (n - 3) + (1, 1)
        comarks = marks
    elif t.family == "A2dual_odd":
        marks = (1, 1) + (2,) * (n - 2) + (1,)
        comarks = (1, 1) + (2,) * (n - 1)
    elif t.family == "A2dual_even":
        marks = (2,) * n + (1,)
        comarks = (1,) + (2,) * n
    else:  # D2dual
        marks = (1,) * (n + 1)
        comarks = (1,) + (2,) * (n - 1) + (1,)
    return marks, comarks


@lru_cache(maxsize=None)
def build_root_data(t: AffineType) -> RootData:
    """Standard affine Cartan matrix, marks, and comarks for the family.

    The tables are compiled in; both null-vector identities (the marks and
    comarks annihilate the Cartan matrix from the right and left) hold exactly
    and are asserted here.
    """
    cartan = _build_cartan(t)
    marks, comarks = _marks_comarks(t)
    size = t.num_nodes
    for i in range(size):
        if sum(cartan[i][j] * marks[j] for j in range(size)) != 0:
            raise InvalidTypeError(f"marks are not a null vector for {t.label()}")
    for j in range(size):
        if sum(comarks[i] * cartan[i][j] for i in range(size)) != 0:
            raise InvalidTypeError(f"comarks are not a null vector for {t.label()}")
    return RootData(t, cartan, marks, comarks)


def check_weight(rd: RootData, w: Weight) -> None:
    if len(w) != rd.type.num_nodes:
        raise DimensionError(
            f"weight has {len(w)} components, expected {rd.type.num_nodes}"
        )


def zero_weight(rd: RootData) -> Weight:
    return (0,) * rd.type.num_nodes


def fundamental(rd: RootData, i: int) -> Weight:
    """The classical fundamental weight Lambda_i as a pairing vector."""
    return tuple(1 if j == i else 0 for j in rd.index_set)


def weight_from_coeffs(rd: RootData, coeffs: dict[int, int]) -> Weight:
    """Build sum_i c_i Lambda_i from a {node: coefficient} mapping."""
    for i in coeffs:
        if i not in rd.index_set:
            raise DimensionError(f"node {i} not in index set of {rd.type.label()}")
    return tuple(coeffs.get(i, 0) for i in rd.index_set)


def add_weights(a: Weight, b: Weight) -> Weight:
    if len(a) != len(b):
        raise DimensionError("weight length mismatch")
    return tuple(x + y for x, y in zip(a, b))


def negate_weight(a: Weight) -> Weight:
    return tuple(-x for x in a)


def add_root(rd: RootData, w: Weight, i: int, times: int = 1) -> Weight:
    """Add `times` copies of alpha_i to w; component j moves by a_{ji}."""
    check_weight(rd, w)
    return tuple(w[j] + times * rd.cartan[j][i] for j in rd.index_set)


def level(rd: RootData, w: Weight) -> int:
    """Pairing with the canonical central element: sum of comark * component."""
    check_weight(rd, w)
    return sum(c * x for c, x in zip(rd.comarks, w))


def is_dominant(w: Weight) -> bool:
    return all(x >= 0 for x in w)


def dominant_weights_of_level(rd: RootData, l: int) -> list[Weight]:
    """All dominant classical weights of the given level, lexicographic order."""
    out = []
    size = rd.type.num_nodes

    def rec(prefix, remaining):
        i = len(prefix)
        if i == size:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        comark = rd.comarks[i]
        for c in range(remaining // comark + 1):
            rec(prefix + [c], remaining - c * comark)

    rec([], l)
    return out


def sigma_inv(t: AffineType, w: Weight) -> Weight:
    """The weight lambda' = sigma^{-1} lambda attached to the family.

    Family A1 shifts Lambda-indices cyclically by one; A2dual_odd, B1 swap the
    coefficients of Lambda_0 and Lambda_1; A2dual_even, D2dual, C1 act as the
    identity; D1 swaps (Lambda_0, Lambda_1) and (Lambda_{n-1}, Lambda_n).
    """
    if len(w) != t.num_nodes:
        raise DimensionError("weight length mismatch")
    n = t.n
    if t.family == "A1":
        return tuple(w[(i - 1) % (n + 1)] for i in range(n + 1))
    if t.family in ("A2dual_odd", "B1"):
        return (w[1], w[0]) + w[2:]
    if t.family == "D1":
        mid = w[2 : n - 1]
        return (w[1], w[0]) + mid + (w[n], w[n - 1])
    return w


def sigma(t: AffineType, w: Weight) -> Weight:
    """Inverse of sigma_inv; sigma(sigma_inv(w)) == w for every family."""
    if len(w) != t.num_nodes:
        raise DimensionError("weight length mismatch")
    n = t.n
    if t.family == "A1":
        return tuple(w[(i + 1) % (n + 1)] for i in range(n + 1))
    return sigma_inv(t, w)  # the non-cyclic cases are involutions


def weight_to_str(w: Weight) -> str:
    """Render a dominant-ish weight in the compact L-token form, e.g. L0+2L1."""
    parts = []
    for i, c in enumerate(w):
        if c == 0:
            continue
        parts.append(f"L{i}" if c == 1 else f"{c}L{i}")
    return "+".join(parts) if parts else "0"


def parse_weight(rd: RootData, text: str) -> Weight:
    """Parse the compact token form ("L0", "L0+2L1", "0") into a weight.

    Parsing is strict: unknown nodes for the family and malformed tokens are
    rejected.
    """
    text = text.strip()
    if text in ("0", ""):
        return zero_weight(rd)
    coeffs: dict[int, int] = {}
    for token in text.split("+"):
        token = token.strip()
        head, sep, idx = token.partition("L")
        if not sep or not idx.isdigit():
            raise DimensionError(f"bad weight token {token!r}")
        if head == "":
            c = 1
        elif head.isdigit():
            c = int(head)
        else:
            raise DimensionError(f"bad coefficient in weight token {token!r}")
        i = int(idx)
        if i not in rd.index_set:
            raise DimensionError(
                f"node {i} not in index set of {rd.type.label()}"
            )
        coeffs[i] = coeffs.get(i, 0) + c
    return weight_from_coeffs(rd, coeffs)
