from collections import Counter

import pytest

from crystalkit import rank2
from crystalkit.crystal_core import TensorElem
from crystalkit.errors import BudgetError, PreconditionError, TruncationFault
from crystalkit.path_model import (
    PathElem,
    generate_bl_lambda_crystal,
    ground_state,
    path_e,
    path_f,
    trivial_highest_weight,
)
from crystalkit.perfect_families import PerfectCoordA
from crystalkit.root_data import AffineType, build_root_data, sigma

T2 = AffineType("A1", 2)
L0 = (1, 0, 0)


class _Fault(Exception):
    pass


class HeadStub:
    """Frozen-boundary element for the independent nested-tensor oracle."""

    def __init__(self, mu):
        self.mu = tuple(mu)

    @property
    def colors(self):
        return tuple(range(len(self.mu)))

    def wt(self):
        return self.mu

    def eps(self, i):
        return 0

    def phi(self, i):
        return self.mu[i]

    def e(self, i):
        return None

    def f(self, i):
        if self.mu[i] == 0:
            return None
        raise _Fault

    def serialize(self):
        return {"stub": list(self.mu)}

    def __eq__(self, other):
        return isinstance(other, HeadStub) and self.mu == other.mu

    def __hash__(self):
        return hash(("stub", self.mu))


def nested(p: PathElem):
    """Left-associated nested tensor over crystal_core, independent of the
    flat routing in PathElem."""
    cur = HeadStub(p.mu)
    for s in p.slots:
        cur = TensorElem(cur, PerfectCoordA(p.typ, s))
    return cur


def nested_slots(elem):
    out = []
    while isinstance(elem, TensorElem):
        out.append(elem.right.coords)
        elem = elem.left
    return tuple(reversed(out))


def test_ground_state_example():
    gs = ground_state(T2, L0, 3)
    assert gs.slots == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert gs.mu == L0
    assert all(gs.eps(i) == 0 for i in range(3))


def test_ground_state_weight_e_and_interlocking():
    for N in range(1, 7):
        gs = ground_state(T2, L0, N)
        assert gs.wt() == L0
        for i in range(3):
            assert gs.eps(i) == 0
            assert path_e(gs, i) is None
    lam = (1, 1, 0)
    gs = ground_state(T2, lam, 4)
    assert gs.wt() == lam
    assert tuple(gs.phi(i) for i in range(3)) == lam


def test_ground_state_guards():
    with pytest.raises(PreconditionError):
        ground_state(T2, (0, 0, 0), 3)
    with pytest.raises(PreconditionError):
        ground_state(T2, L0, 0)
    with pytest.raises(PreconditionError):
        ground_state(T2, (1, -1, 1), 3)


def test_operators_match_nested_tensor_oracle():
    seen = [ground_state(T2, (1, 1, 0), 5)]
    frontier = list(seen)
    for _ in range(3):
        new = []
        for p in frontier:
            for i in range(3):
                ref = nested(p)
                got = path_f(p, i)
                expect = ref.f(i)
                if got is None:
                    assert expect is None
                else:
                    assert nested_slots(expect) == got.slots
                    new.append(got)
                got_e = path_e(p, i)
                expect_e = ref.e(i)
                if got_e is None:
                    assert expect_e is None
                else:
                    assert nested_slots(expect_e) == got_e.slots
        frontier = new
        seen.extend(new)
    assert len(seen) > 10


def test_statistics_match_nested_tensor_oracle():
    p = ground_state(T2, (0, 1, 1), 6)
    for _ in range(4):
        nxt = None
        for i in range(3):
            nxt = nxt or path_f(p, i)
        p = nxt
        ref = nested(p)
        assert p.wt() == ref.wt()
        for i in range(3):
            assert p.eps(i) == ref.eps(i)
            assert p.phi(i) == ref.phi(i)


def test_truncation_fault_contract():
    p = ground_state(T2, L0, 1)
    p = path_f(p, 0)
    p = path_f(p, 1)
    with pytest.raises(TruncationFault) as err:
        path_f(p, 2)
    assert err.value.suggested_increase >= 1
    # raising never faults, and raising the boundary is a genuine nil
    assert path_e(ground_state(T2, L0, 1), 0) is None


def test_generate_depth_zero_single_node():
    g = generate_bl_lambda_crystal(T2, L0, 0)
    assert g.node_count() == 1


def depth2_expected_counter(t, lam):
    """Weight multiset of the depth <= 2 ball, by rank <= 2 Freudenthal.

    Any weight lambda - alpha_i - alpha_j lies in the subalgebra module over
    colors {i, j}, so shallow multiplicities reduce to finite type.
    """
    rd = build_root_data(t)
    size = t.num_nodes

    def wt_of(offset):
        return tuple(
            lam[p] - sum(offset[q] * rd.cartan[p][q] for q in range(size))
            for p in range(size)
        )

    out = Counter({wt_of((0,) * size): 1})
    for i in range(size):
        sub = ((2,),)
        mults = rank2.weight_multiplicities(sub, (lam[i],))
        for m in (1, 2):
            if mults.get((m,), 0):
                off = [0] * size
                off[i] = m
                out[wt_of(tuple(off))] += mults[(m,)]
    for i in range(size):
        for j in range(i + 1, size):
            sub = (
                (rd.cartan[i][i], rd.cartan[i][j]),
                (rd.cartan[j][i], rd.cartan[j][j]),
            )
            mults = rank2.weight_multiplicities(sub, (lam[i], lam[j]))
            if mults.get((1, 1), 0):
                off = [0] * size
                off[i] = 1
                off[j] = 1
                out[wt_of(tuple(off))] += mults[(1, 1)]
    return out


@pytest.mark.parametrize(
    "t,lam",
    [
        (T2, (1, 0, 0)),
        (T2, (1, 1, 0)),
        (T2, (2, 0, 1)),
        (AffineType("A1", 3), (1, 0, 0, 0)),
        (AffineType("A1", 3), (0, 1, 0, 1)),
    ],
    ids=lambda x: str(x),
)
def test_depth2_character_against_freudenthal_oracle(t, lam):
    g = generate_bl_lambda_crystal(t, lam, 2)
    actual = Counter(rec.wt for rec in g.nodes.values())
    assert actual == depth2_expected_counter(t, lam)


def test_ball_monotone_in_depth():
    g2 = generate_bl_lambda_crystal(T2, L0, 2, N=6)
    g3 = generate_bl_lambda_crystal(T2, L0, 3, N=6)
    assert set(g2.nodes) <= set(g3.nodes)


def test_unique_highest_weight_node():
    g = generate_bl_lambda_crystal(T2, (1, 1, 0), 3)
    highest = [
        k for k, rec in g.nodes.items() if all(x == 0 for x in rec.eps)
    ]
    assert len(highest) == 1
    assert g.nodes[highest[0]].wt == (1, 1, 0)


def test_deepening_commutes_with_operators():
    g = generate_bl_lambda_crystal(T2, L0, 2, N=4)
    for rec in g.nodes.values():
        p = rec.elem
        q = p.deepen()
        assert q.mu == sigma(T2, p.mu)
        for i in range(3):
            up, up_deep = path_e(p, i), path_e(q, i)
            assert (up is None) == (up_deep is None)
            if up is not None:
                assert up_deep == up.deepen()
            try:
                down = path_f(p, i)
            except TruncationFault:
                continue
            down_deep = path_f(q, i)
            if down is None:
                assert down_deep is None
            else:
                assert down_deep == down.deepen()


def test_truncation_stability_of_generated_ball():
    a = generate_bl_lambda_crystal(T2, (1, 1, 0), 3, N=5)
    b = generate_bl_lambda_crystal(T2, (1, 1, 0), 3, N=6)
    c = generate_bl_lambda_crystal(T2, (1, 1, 0), 3, N=7)
    assert a.node_count() == b.node_count() == c.node_count()
    assert a.edge_count() == b.edge_count() == c.edge_count()
    # deepening is a label-preserving bijection between the balls
    amap = {k: rec.elem.deepen() for k, rec in a.nodes.items()}
    from crystalkit.crystal_core import canonical_key

    assert {canonical_key(v) for v in amap.values()} == set(b.nodes)


def test_retry_on_truncation_fault():
    g = generate_bl_lambda_crystal(T2, L0, 4, N=1)
    ref = generate_bl_lambda_crystal(T2, L0, 4)
    assert g.node_count() == ref.node_count()
    assert g.meta["N"] > 1


def test_budget_error():
    with pytest.raises(BudgetError):
        generate_bl_lambda_crystal(T2, L0, 6, budget=3)


def test_trivial_highest_weight_crystal():
    u0 = trivial_highest_weight(T2)
    assert u0.wt() == (0, 0, 0)
    for i in range(3):
        assert u0.eps(i) == 0 and u0.phi(i) == 0
        assert path_e(u0, i) is None and path_f(u0, i) is None
    g = generate_bl_lambda_crystal(T2, (0, 0, 0), 3)
    assert g.node_count() == 1 and not g.frontier
