"""Depth-truncated realization of the highest weight crystal B(lambda).

Family A_n^(1) only.  An element is a frozen boundary weight mu_N together
with N slots of level-k perfect crystal coordinates,

    u_{mu_N} (x) b_N (x) ... (x) b_1,      mu_N = sigma^N(lambda),

associated left to right.  The frozen boundary carries the statistics of the
highest weight vector u_{mu_N} (eps_i = 0, phi_i = <h_i, mu_N>), so the
tensor rule routes operators exactly as in B(mu_N); a lowering that selects
the boundary would produce an element deeper than the truncation and raises
TruncationFault instead of guessing.
"""

from __future__ import annotations

from .crystal_core import canonical_key
from .errors import (
    BudgetError,
    DimensionError,
    InvalidTypeError,
    PreconditionError,
    SoundnessError,
    TruncationFault,
)
from .graph_ops import DEFAULT_BUDGET, MISSING, CrystalGraph, generate
from .perfect_families import minimal_for
from .root_data import AffineType, Weight, build_root_data, is_dominant, level, sigma

DEFAULT_SLACK = 2
RETRY_CAP = 4


class PathElem:
    """One element of the truncated path model."""

    __slots__ = ("typ", "k", "mu", "slots", "_phi_prefix", "_eps", "_phi", "_wt")

    def __init__(self, typ: AffineType, k: int, mu: Weight, slots):
        if typ.family != "A1":
            raise InvalidTypeError("path model implemented for family A1 only")
        self.typ = typ
        self.k = k
        self.mu = tuple(mu)
        self.slots = tuple(tuple(s) for s in slots)
        m = typ.n + 1
        if len(self.mu) != m:
            raise DimensionError("boundary weight length mismatch")
        for s in self.slots:
            if len(s) != m or any(c < 0 for c in s) or sum(s) != k:
                raise DimensionError(f"slot {s} is not a level-{k} coordinate tuple")
        self._compute_stats()

    def _compute_stats(self):
        m = self.typ.n + 1
        rng = range(m)
        # running statistics of the left-associated prefixes, boundary first
        phi = list(self.mu)
        eps = [0] * m
        wt = list(self.mu)
        prefixes = [tuple(phi)]
        for s in self.slots:
            s_phi = [s[(i - 1) % m] for i in rng]
            s_eps = s
            s_wt = [s_phi[i] - s_eps[i] for i in rng]
            for i in rng:
                new_phi = max(s_phi[i], phi[i] + s_wt[i])
                new_eps = max(eps[i], s_eps[i] - wt[i])
                phi[i] = new_phi
                eps[i] = new_eps
                wt[i] += s_wt[i]
            prefixes.append(tuple(phi))
        self._phi_prefix = tuple(prefixes)
        self._eps = tuple(eps)
        self._phi = tuple(phi)
        self._wt = tuple(wt)

    @property
    def colors(self):
        return tuple(range(self.typ.n + 1))

    def wt(self):
        return self._wt

    def eps(self, i):
        return self._eps[i]

    def phi(self, i):
        return self._phi[i]

    def _select(self, i, strict):
        """Index of the slot the operator acts on, or -1 for the boundary.

        Walks the left-associated comparisons from the rightmost factor:
        continue left iff phi(prefix) > eps(slot) (strict, lowering) or
        >= (raising).
        """
        for j in range(len(self.slots) - 1, -1, -1):
            prev_phi = self._phi_prefix[j][i]
            slot_eps = self.slots[j][i]
            if (prev_phi > slot_eps) if strict else (prev_phi >= slot_eps):
                continue
            return j
        return -1

    def e(self, i):
        j = self._select(i, strict=False)
        if j < 0:
            return None  # raising the boundary: e_i u_mu = 0
        s = self.slots[j]
        if s[i] == 0:
            return None
        m = self.typ.n + 1
        new = list(s)
        new[i] -= 1
        new[(i - 1) % m] += 1
        return PathElem(
            self.typ, self.k, self.mu,
            self.slots[:j] + (tuple(new),) + self.slots[j + 1:],
        )

    def f(self, i):
        j = self._select(i, strict=True)
        if j < 0:
            if self.mu[i] == 0:
                return None  # genuine nil: f_i u_mu = 0 when <h_i, mu> = 0
            raise TruncationFault(
                f"f_{i} acts past the frozen boundary (mu_N = {self.mu})",
                suggested_increase=1,
            )
        s = self.slots[j]
        m = self.typ.n + 1
        col = (i - 1) % m
        if s[col] == 0:
            return None
        new = list(s)
        new[col] -= 1
        new[i] += 1
        return PathElem(
            self.typ, self.k, self.mu,
            self.slots[:j] + (tuple(new),) + self.slots[j + 1:],
        )

    def deepen(self) -> "PathElem":
        """Natural inclusion into the depth-(N+1) model: prepend the next
        ground-state slot (coordinates sigma(mu_N), whose phi interlocks with
        the old boundary)."""
        new_mu = sigma(self.typ, self.mu)
        return PathElem(self.typ, self.k, new_mu, (new_mu,) + self.slots)

    def serialize(self):
        return {"mu_N": list(self.mu), "slots": [list(s) for s in self.slots]}

    def __eq__(self, other):
        return (
            isinstance(other, PathElem)
            and self.typ == other.typ
            and self.mu == other.mu
            and self.slots == other.slots
        )

    def __hash__(self):
        return hash((self.typ, self.mu, self.slots))

    def __repr__(self):
        return f"PathElem(mu={self.mu}, slots={self.slots})"


def ground_state(t: AffineType, lam: Weight, N: int) -> PathElem:
    """The truncated ground-state path realizing u_lambda.

    Slot j (counting from the right) is the unique minimal element with
    eps = sigma^j(lambda); adjacent slots interlock, the whole path has
    weight lambda, and every raising operator annihilates it.
    """
    rd = build_root_data(t)
    if not is_dominant(lam):
        raise PreconditionError("lambda must be dominant")
    k = level(rd, lam)
    if k < 1:
        raise PreconditionError("lambda must have level >= 1")
    if N < 1:
        raise PreconditionError("need N >= 1")
    sig = [tuple(lam)]
    for _ in range(N):
        sig.append(sigma(t, sig[-1]))
    # left-to-right: g_N, ..., g_1 where g_j has coordinates sigma^j(lambda)
    slots = tuple(minimal_for(t, k, sig[N - p]).coords for p in range(N))
    return PathElem(t, k, sig[N], slots)


def path_e(p: PathElem, i: int):
    return p.e(i)


def path_f(p: PathElem, i: int):
    return p.f(i)


def path_from_json_obj(t: AffineType, obj) -> PathElem:
    """Rebuild a path from its {"mu_N": ..., "slots": ...} serialization.

    Slot membership and interlocking lengths are re-validated; reachability
    from the ground state is not re-proved on ingestion.
    """
    try:
        mu = tuple(int(x) for x in obj["mu_N"])
        slots = tuple(tuple(int(x) for x in s) for s in obj["slots"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionError(f"malformed path object: {exc}")
    k = sum(slots[0]) if slots else 0
    return PathElem(t, k, mu, slots)


def trivial_highest_weight(t: AffineType) -> PathElem:
    """B(0) = {u_0}: the empty path with zero boundary weight."""
    return PathElem(t, 0, (0,) * t.num_nodes, ())


def generate_bl_lambda_crystal(
    t: AffineType,
    lam: Weight,
    depth: int,
    N: int | None = None,
    budget: int = DEFAULT_BUDGET,
) -> CrystalGraph:
    """The full depth-<=d lowering ball of B(lambda), raising-closed.

    Lowers breadth-first from the ground state, then records every raising
    edge inside the ball (raising strictly decreases depth, so the ball is
    automatically closed under it).  Nodes at exactly depth d keep their
    unevaluated lowering slots and stay frontier-marked.  On a truncation
    fault the slot count doubles, up to a retry cap.

    lam = 0 is allowed and yields the one-element crystal B(0).

    The graph's `meta` dict records the ground-state key, the slot count
    used, and the depth.
    """
    rd = build_root_data(t)
    if not is_dominant(lam):
        raise PreconditionError("lambda must be dominant")
    if depth < 0:
        raise PreconditionError("depth must be >= 0")
    if level(rd, lam) == 0:
        u0 = trivial_highest_weight(t)
        g = generate([u0], depth=max(depth, 1), directions="both", budget=budget)
        g.meta = {"ground": next(iter(g.nodes)), "N": 0, "depth": depth}
        return g
    n_slots = N if N is not None else depth + DEFAULT_SLACK
    last_fault = None
    for _ in range(RETRY_CAP):
        root = ground_state(t, lam, n_slots)
        try:
            g = generate([root], depth=depth, directions="f", budget=budget)
            _complete_raising_records(g)
        except TruncationFault as fault:
            last_fault = fault
            n_slots *= 2
            continue
        g.meta = {
            "ground": next(
                k for k, rec in g.nodes.items() if rec.elem == root
            ),
            "N": n_slots,
            "depth": depth,
        }
        return g
    raise BudgetError(
        f"persistent truncation fault after {RETRY_CAP} retries: {last_fault}"
    )


def _complete_raising_records(g: CrystalGraph):
    """Fill every raising slot of a lowering-generated ball.

    Raising results must stay inside the ball; a target outside it would mean
    the lowering closure missed an element, which is a soundness failure.
    """
    for u, rec in list(g.nodes.items()):
        for i in g.colors:
            if g.e_record(u, i) is MISSING:
                up = rec.elem.e(i)
                if up is None:
                    g.record_e(u, i, None)
                else:
                    k2 = canonical_key(up)
                    if k2 not in g.nodes:
                        raise SoundnessError(
                            f"raising edge leaves the lowering ball at {u}"
                        )
                    g.record_e(u, i, k2)
