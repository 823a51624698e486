"""Characters of highest weight modules over rank <= 2 finite-type algebras.

Weight multiplicities are computed by Freudenthal's recursion, entirely in
integers.  This is the independent oracle behind the rank-2 regularity probe
and the shallow character checks of truncated highest weight crystals: the
crystal operators never enter here.
"""

from __future__ import annotations

from collections import Counter
from math import gcd

from .errors import BoundExceeded, DimensionError

_HEIGHT_CAP = 400


def _pairing(cartan, i, coeffs):
    """<h_i, sum_j coeffs_j alpha_j>."""
    return sum(cartan[i][j] * coeffs[j] for j in range(len(cartan)))


def positive_roots(cartan) -> list[tuple[int, ...]]:
    """Positive roots as simple-root coefficient tuples (reflection orbit)."""
    rank = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots = set(simples)
    work = list(simples)
    steps = 0
    while work:
        beta = work.pop()
        for i in range(rank):
            p = _pairing(cartan, i, beta)
            new = tuple(
                beta[j] - (p if j == i else 0) for j in range(rank)
            )
            if new not in roots:
                roots.add(new)
                work.append(new)
        steps += 1
        if steps > 10_000:
            raise BoundExceeded("root system does not close; Cartan matrix not finite type")
    return sorted(b for b in roots if all(c >= 0 for c in b))


def symmetrizer(cartan) -> tuple[int, ...]:
    """Minimal positive integers d with d_i a_ij = d_j a_ji (rank <= 2)."""
    rank = len(cartan)
    if rank == 1:
        return (1,)
    if rank != 2:
        raise DimensionError("symmetrizer implemented for rank <= 2 only")
    a12, a21 = cartan[0][1], cartan[1][0]
    if a12 == 0 and a21 == 0:
        return (1, 1)
    g = gcd(abs(a12), abs(a21))
    d = (abs(a21) // g, abs(a12) // g)
    if d[0] * a12 != d[1] * a21:
        raise DimensionError("Cartan matrix is not symmetrizable")
    return d


def weight_multiplicities(cartan, mu) -> dict[tuple[int, ...], int]:
    """Multiplicity of mu - sum_j c_j alpha_j in the module with highest
    weight mu, as a {c: multiplicity} dict over nonzero entries.

    Freudenthal:  (|mu+rho|^2 - |nu+rho|^2) m(nu)
                  = 2 sum_{beta>0} sum_{j>=1} m(nu + j beta) (nu + j beta, beta)
    with (x, alpha_i) = d_i <h_i, x>.
    """
    rank = len(cartan)
    mu = tuple(int(x) for x in mu)
    if len(mu) != rank:
        raise DimensionError("highest weight length != rank")
    if any(x < 0 for x in mu):
        raise DimensionError("highest weight must be dominant")
    d = symmetrizer(cartan)
    proots = positive_roots(cartan)
    mult = {(0,) * rank: 1}

    def level_coeffs(h):
        if rank == 1:
            yield (h,)
        else:
            for c0 in range(h + 1):
                yield (c0, h - c0)

    for h in range(1, _HEIGHT_CAP + 1):
        found = False
        for c in level_coeffs(h):
            # pairings of nu = mu - sum c_j alpha_j
            p = [mu[i] - _pairing(cartan, i, c) for i in range(rank)]
            rhs = 0
            for beta in proots:
                j = 1
                while True:
                    up = tuple(c[t] - j * beta[t] for t in range(rank))
                    if any(x < 0 for x in up):
                        break
                    m_up = mult.get(up, 0)
                    if m_up:
                        val = sum(
                            beta[i] * d[i] * (p[i] + j * _pairing(cartan, i, beta))
                            for i in range(rank)
                        )
                        rhs += m_up * val
                    j += 1
            if rhs == 0:
                continue
            rhs *= 2
            denom = sum(c[i] * d[i] * (mu[i] + p[i] + 2) for i in range(rank))
            if denom <= 0 or rhs % denom != 0:
                raise BoundExceeded(
                    f"Freudenthal recursion inconsistent at offset {c}"
                )
            mult[c] = rhs // denom
            found = True
        if not found:
            return mult
    raise BoundExceeded("Freudenthal recursion exceeded the height cap")


def character_counter(cartan, mu) -> Counter:
    """Weight multiset of the highest weight module, keyed by pairing tuples."""
    rank = len(cartan)
    out: Counter = Counter()
    for c, m in weight_multiplicities(cartan, mu).items():
        nu = tuple(mu[i] - _pairing(cartan, i, c) for i in range(rank))
        out[nu] += m
    return out


def module_dimension(cartan, mu) -> int:
    return sum(weight_multiplicities(cartan, mu).values())
