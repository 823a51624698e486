"""The abstract crystal contract, one-element crystals, and the tensor rule.

An element of a crystal is any object providing

    wt()            -> Weight (tuple of coroot pairings)
    eps(i), phi(i)  -> int or NEG_INF
    e(i), f(i)      -> element or None
    colors          -> tuple of colors (the index set)
    serialize()     -> JSON-able canonical form

None plays the role of the absorbing zero: an operator that annihilates its
argument returns None, and a tensor pair with a None component collapses to
None.  NEG_INF is a sentinel with total arithmetic (NEG_INF + k == NEG_INF,
max(NEG_INF, k) == k), so the tensor formulas evaluate uniformly when
one-element crystals T_lambda appear as factors.
"""

from __future__ import annotations

import json
from typing import NamedTuple

from .errors import BoundExceeded, DimensionError

NEG_INF = float("-inf")


def canonical_key(elem) -> str:
    """Stable string key: compact JSON of the element's canonical form."""
    return json.dumps(elem.serialize(), separators=(",", ":"), sort_keys=True)


class TElem:
    """The single element t_lambda: weight lambda, all statistics -infinity."""

    __slots__ = ("weight",)

    def __init__(self, weight):
        self.weight = tuple(weight)

    @property
    def colors(self):
        return tuple(range(len(self.weight)))

    def wt(self):
        return self.weight

    def eps(self, i):
        return NEG_INF

    def phi(self, i):
        return NEG_INF

    def e(self, i):
        return None

    def f(self, i):
        return None

    def serialize(self):
        return {"t": list(self.weight)}

    def __eq__(self, other):
        return isinstance(other, TElem) and self.weight == other.weight

    def __hash__(self):
        return hash(("t", self.weight))

    def __repr__(self):
        return f"TElem{self.weight}"


class TensorElem:
    """Ordered pair of crystal elements under the tensor product rule.

    Statistics are precomputed at construction:

        wt        = wt(b1) + wt(b2)
        eps_i     = max(eps_i(b1), eps_i(b2) - <h_i, wt(b1)>)
        phi_i     = max(phi_i(b2), phi_i(b1) + <h_i, wt(b2)>)

    e_i acts on the left factor iff phi_i(b1) >= eps_i(b2), f_i acts on the
    left iff phi_i(b1) > eps_i(b2); otherwise they act on the right.  A nil
    result on the acting factor annihilates the pair.
    """

    __slots__ = ("left", "right", "_wt", "_eps", "_phi")

    def __init__(self, left, right):
        if left.colors != right.colors:
            raise DimensionError("tensor factors over different index sets")
        self.left = left
        self.right = right
        wl, wr = left.wt(), right.wt()
        self._wt = tuple(a + b for a, b in zip(wl, wr))
        eps = []
        phi = []
        for i in left.colors:
            eps.append(max(left.eps(i), right.eps(i) - wl[i]))
            phi.append(max(right.phi(i), left.phi(i) + wr[i]))
        self._eps = tuple(eps)
        self._phi = tuple(phi)

    @property
    def colors(self):
        return self.left.colors

    def wt(self):
        return self._wt

    def eps(self, i):
        return self._eps[i]

    def phi(self, i):
        return self._phi[i]

    def e(self, i):
        if self.left.phi(i) >= self.right.eps(i):
            up = self.left.e(i)
            return None if up is None else TensorElem(up, self.right)
        up = self.right.e(i)
        return None if up is None else TensorElem(self.left, up)

    def f(self, i):
        if self.left.phi(i) > self.right.eps(i):
            down = self.left.f(i)
            return None if down is None else TensorElem(down, self.right)
        down = self.right.f(i)
        return None if down is None else TensorElem(self.left, down)

    def serialize(self):
        return [self.left.serialize(), self.right.serialize()]

    def __eq__(self, other):
        return (
            isinstance(other, TensorElem)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"{self.left!r} (x) {self.right!r}"


def tensor(left, right):
    """Tensor two elements; None on either side absorbs."""
    if left is None or right is None:
        return None
    return TensorElem(left, right)


def tensor_wt(pair: TensorElem):
    return pair.wt()


def tensor_eps(pair: TensorElem, i: int):
    return pair.eps(i)


def tensor_phi(pair: TensorElem, i: int):
    return pair.phi(i)


def tensor_e(pair: TensorElem, i: int):
    return pair.e(i)


def tensor_f(pair: TensorElem, i: int):
    return pair.f(i)


class SeminormalResult(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def seminormal_check(b, i: int, bound: int = 1000) -> SeminormalResult:
    """Check eps_i/phi_i against the actual raising/lowering string lengths.

    Elements with minus-infinity statistics (such as t_lambda) are not
    seminormal and report False without walking.  A string longer than
    `bound` raises BoundExceeded.
    """
    ei, pi = b.eps(i), b.phi(i)
    if ei == NEG_INF or pi == NEG_INF:
        return SeminormalResult(False, "minus-infinity string")
    cur, ups = b, 0
    while True:
        cur = cur.e(i)
        if cur is None:
            break
        ups += 1
        if ups > bound:
            raise BoundExceeded(f"raising string through {b!r} exceeds {bound}")
    cur, downs = b, 0
    while True:
        cur = cur.f(i)
        if cur is None:
            break
        downs += 1
        if downs > bound:
            raise BoundExceeded(f"lowering string through {b!r} exceeds {bound}")
    if ups != ei:
        return SeminormalResult(False, f"eps_{i}={ei} but string climbs {ups}")
    if downs != pi:
        return SeminormalResult(False, f"phi_{i}={pi} but string drops {downs}")
    return SeminormalResult(True)


def rebracket_left_to_right(elem: TensorElem) -> TensorElem:
    """Canonical associativity map (b1 (x) b2) (x) b3 -> b1 (x) (b2 (x) b3)."""
    if not isinstance(elem.left, TensorElem):
        raise DimensionError("element is not left-nested")
    a, b, c = elem.left.left, elem.left.right, elem.right
    return TensorElem(a, TensorElem(b, c))
