"""Extraction and verification oracles.

Two tools stand in for the heavy machinery a full-scale verifier would use:

* decompose_2d writes a torsion point over a basis via Weil pairings and
  Pohlig-Hellman discrete logs in the group of N-th roots of unity;
* recover_isogeny finds the unique chain of a given degree matching a set
  of torsion images by exhausting kernel-subgroup candidates, which is
  sound exactly when 4*degree < order^2 and gcd(degree, order) = 1.

Candidates are enumerated per prime power ell^e and combined
multiplicatively: a subgroup of order ell^e splits uniquely into b
multiplication-by-ell blocks (realized as a step followed by its exact
dual) and a cyclic part walked without backtracking, giving the closed
candidate count sum(ell^i, i=0..e) per prime power.
"""

import logging
import math
import time
from dataclasses import dataclass

from .curve import (
    Curve,
    Point,
    _add,
    _in_cyclic,
    _mul,
    isomorphisms,
    factorize,
    small_torsion_basis,
    twist_point,
    weil_pairing,
)
from .errors import AmbiguityBound, NotABasis, NotFound, OrderMismatch
from .field import Fp2
from .isogeny import EfficientRep, IsogenyChain, Step, dual_step

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BasisDecomposition:
    x: int
    y: int


def dlog_root_of_unity(target: Fp2, base: Fp2, N: int) -> int:
    """x with base^x = target, base of exact order N; Pohlig-Hellman with
    brute-forced digits (all prime factors here are tiny)."""
    residues = []
    moduli = []
    for ell, e in factorize(N).items():
        ne = ell**e
        cof = N // ne
        b = base**cof
        t = target**cof
        gamma = b ** (ell ** (e - 1))
        x = 0
        for k in range(e):
            cur = (t * b ** (-x)) ** (ell ** (e - 1 - k))
            g = Fp2.one(base.p)
            for d in range(ell):
                if g == cur:
                    x += d * ell**k
                    break
                g = g * gamma
            else:
                raise NotABasis("discrete log does not exist")
        residues.append(x)
        moduli.append(ne)
    x = 0
    M = 1
    for r, m in zip(residues, moduli):
        # CRT fold
        g, inv = m, pow(M, -1, m) if M > 1 else 1
        x = x + M * ((r - x) * inv % m)
        M *= m
    return x % N


def decompose_2d(E: Curve, U: Point, V: Point, T: Point, N: int) -> BasisDecomposition:
    """(x, y) with T = [x]U + [y]V, for (U, V) a basis of E[N]."""
    for P in (U, V, T):
        if not _mul(E, N, P).is_inf:
            raise OrderMismatch(f"point not killed by {N}")
    z = weil_pairing(E, U, V, N)
    if not _has_exact_rou_order(z, N):
        raise NotABasis("pairing of the basis does not have exact order N")
    x = dlog_root_of_unity(weil_pairing(E, T, V, N), z, N)
    y = dlog_root_of_unity(weil_pairing(E, U, T, N), z, N)
    if _add(E, _mul(E, x, U), _mul(E, y, V)) != T:
        raise NotABasis("reconstruction failed")  # pragma: no cover
    return BasisDecomposition(x, y)


def _has_exact_rou_order(z: Fp2, N: int) -> bool:
    one = Fp2.one(z.p)
    if z ** N != one:
        return False
    return all(z ** (N // ell) != one for ell in factorize(N))


def evaluate_rep(rep: EfficientRep, X: Point) -> Point:
    """Evaluate the represented isogeny at X in E[order] from basis images."""
    d = decompose_2d(rep.domain, rep.basis[0], rep.basis[1], X, rep.order)
    E2 = rep.codomain
    return _add(E2, _mul(E2, d.x, rep.images[0]), _mul(E2, d.y, rep.images[1]))


# ---------------------------------------------------------------------------
# kernel-candidate enumeration
# ---------------------------------------------------------------------------


def _subgroup_gens(E: Curve, ell: int, group_order: int):
    """Canonical generators of the ell+1 order-ell subgroups of E[ell]."""
    U, V = small_torsion_basis(E, ell, group_order)
    gens = []
    W = U
    for _ in range(ell):
        gens.append(W)
        W = _add(E, W, V)
    gens.append(V)
    return gens, U, V


def _ell_block(E: Curve, ell: int, group_order: int):
    """Two steps composing to exact multiplication by ell on E."""
    gens, _, _ = _subgroup_gens(E, ell, group_order)
    s0 = Step(E, gens[0], ell)
    return [s0, dual_step(s0, group_order)]


def _pp_candidates(E, ell, e, U, V, group_order):
    """Yield (steps, codomain, imgU, imgV) for every order-ell^e kernel
    subgroup of E, each exactly once."""
    for b in range(e // 2 + 1):
        r = e - 2 * b
        prefix = []
        for _ in range(b):
            prefix = prefix + _ell_block(E, ell, group_order)
        U0 = _mul(E, ell**b, U)
        V0 = _mul(E, ell**b, V)
        yield from _walks(E, ell, r, prefix, U0, V0, group_order, None)


def _walks(E, ell, r, steps, U, V, group_order, back_gen):
    if r == 0:
        yield steps, E, U, V
        return
    gens, B1, B2 = _subgroup_gens(E, ell, group_order)
    for G in gens:
        if back_gen is not None and _in_cyclic(E, G, back_gen, ell):
            continue
        s = Step(E, G, ell)
        nb = s.evaluate(B1)
        if nb.is_inf:
            nb = s.evaluate(B2)
        yield from _walks(
            s.codomain,
            ell,
            r - 1,
            steps + [s],
            s.evaluate(U),
            s.evaluate(V),
            group_order,
            nb,
        )


def count_kernel_candidates(degree: int) -> int:
    """Closed-form candidate count: prod over ell^e || degree of sum ell^i."""
    n = 1
    for ell, e in factorize(degree).items():
        n *= sum(ell**i for i in range(e + 1))
    return n


def iter_kernel_candidates(E: Curve, degree: int, U: Point, V: Point, group_order: int):
    """Every order-`degree` kernel subgroup of E as a candidate chain.

    Yields (steps, codomain, image of U, image of V), enumerating prime
    powers in ascending order and subgroups in canonical generator order;
    each subgroup appears exactly once.
    """
    fac = sorted(factorize(degree).items())

    def rec(cur, curU, curV, idx, steps):
        if idx == len(fac):
            yield steps, cur, curU, curV
            return
        ell, e = fac[idx]
        for seg, nxt, nU, nV in _pp_candidates(cur, ell, e, curU, curV, group_order):
            yield from rec(nxt, nU, nV, idx + 1, steps + seg)

    yield from rec(E, U, V, 0, [])


def recover_isogeny(rep: EfficientRep, group_order: int) -> IsogenyChain:
    """The unique chain of rep.degree from rep.domain matching rep.images.

    Exhausts kernel-subgroup candidates prime power by prime power; the
    returned chain is twist-normalized so that its codomain equals
    rep.codomain and its basis images equal rep.images exactly.  Raises
    NotFound when no candidate matches (a forgery signal) and
    AmbiguityBound when the uniqueness precondition fails.
    """
    d, N = rep.degree, rep.order
    if 4 * d >= N * N:
        raise AmbiguityBound(f"4*{d} >= {N}^2: images do not pin the isogeny")
    if math.gcd(d, N) != 1:
        raise AmbiguityBound(f"gcd({d}, {N}) != 1: torsion images may degenerate")
    E = rep.domain
    T1, T2 = rep.images
    U, V = rep.basis
    if d == 1:
        if E == rep.codomain and U == T1 and V == T2:
            return IsogenyChain.identity(E)
        raise NotFound("images are not the identity's")

    target_j = rep.codomain.j_invariant()
    tested = 0
    t0 = time.perf_counter()
    for steps, cur, curU, curV in iter_kernel_candidates(E, d, U, V, group_order):
        tested += 1
        if cur.j_invariant() != target_j:
            continue
        for u in isomorphisms(cur, rep.codomain):
            if twist_point(curU, u) == T1 and twist_point(curV, u) == T2:
                out = list(steps)
                out[-1] = out[-1].retwist(u)
                logger.debug(
                    "recovery of degree %d: matched after %d of %d candidates, %.3fs",
                    d,
                    tested,
                    count_kernel_candidates(d),
                    time.perf_counter() - t0,
                )
                return IsogenyChain(E, rep.codomain, out, d, None)
    logger.debug(
        "recovery of degree %d: exhausted %d candidates, %.3fs",
        d,
        tested,
        time.perf_counter() - t0,
    )
    raise NotFound(f"no degree-{d} isogeny matches the images ({tested} candidates)")
