"""Proof that the commitment curve is honestly derived from the statement.

A Fiat-Shamir sigma protocol over parallel-isogeny squares: each round
masks the statement curve with a random 2-power isogeny, pushes the
oriented isogeny through the mask to close the square, commits to the two
new corner curves, and reveals either both masks (challenge 0) or the
parallel kernel (challenge 1).  Soundness error is 2^-rounds.
"""

import hashlib
from dataclasses import dataclass

from .curve import Curve, Point
from .errors import WitnessMismatch
from .isogeny import isogeny_from_kernel, push_forward
from .orientation import oriented_kernel
from .params import ParamSet
from .sig import challenge_walk, fp2_bytes, mu


@dataclass
class NizkRound:
    f: Curve
    fp: Curve
    tag: int
    reveal: tuple  # tag 0: (mask kernel on E_w, mask kernel on E1)
    #                tag 1: tuple of parallel kernel generators on f


@dataclass
class NizkProof:
    rounds: list


def _curve_bytes(E: Curve) -> bytes:
    return fp2_bytes(E.a) + fp2_bytes(E.b)


def _point_bytes(P: Point, p: int) -> bytes:
    if P.is_inf:
        return b"\x00inf"
    return fp2_bytes(P.x) + fp2_bytes(P.y)


def _statement_bytes(statement) -> bytes:
    ew, wB, e1 = statement
    h = hashlib.sha256()
    h.update(_curve_bytes(ew))
    for ell, G1, G2 in wB.pairs:
        h.update(ell.to_bytes(4, "big"))
        h.update(_point_bytes(G1, ew.p))
        h.update(_point_bytes(G2, ew.p))
    h.update(_curve_bytes(e1))
    return h.digest()


def _challenge_bits(statement, corners, k: int):
    """k challenge bits from the statement and all corner j-invariants."""
    h = hashlib.sha256()
    h.update(_statement_bytes(statement))
    for F, Fp in corners:
        h.update(fp2_bytes(F.j_invariant()))
        h.update(fp2_bytes(Fp.j_invariant()))
    stream = b""
    counter = 0
    while 8 * len(stream) < k:
        stream += hashlib.sha256(h.digest() + counter.to_bytes(4, "big")).digest()
        counter += 1
    return [(stream[i // 8] >> (7 - i % 8)) & 1 for i in range(k)]


def prove_parallel(statement, witness_bits, ps: ParamSet, rng) -> NizkProof:
    """Prove that e1 = E_w / <oriented kernel of witness_bits>."""
    ew, wB, e1 = statement
    gens = oriented_kernel(wB, witness_bits)
    psip = isogeny_from_kernel(ew, gens, ps.B)
    if psip.codomain != e1:
        raise WitnessMismatch("choice vector does not produce the commitment curve")

    A = ps.A
    witness_rounds = []
    corners = []
    for _ in range(ps.nizk_rounds):
        h = rng.randrange(1, mu(A) + 1)
        mask = challenge_walk(ew, h, A, ps.group_order)
        par = push_forward(mask, psip)  # F -> F'' with j(F'') = j(F')
        maskp = push_forward(psip, mask)  # e1 -> F'
        F = mask.codomain
        Fp = maskp.codomain
        witness_rounds.append((F, Fp, mask, maskp, par))
        corners.append((F, Fp))

    bits = _challenge_bits(statement, corners, ps.nizk_rounds)
    rounds = []
    for (F, Fp, mask, maskp, par), bit in zip(witness_rounds, bits):
        if bit == 0:
            reveal = (mask.kernel_gens[0], maskp.kernel_gens[0])
        else:
            reveal = tuple(par.kernel_gens)
        rounds.append(NizkRound(F, Fp, bit, reveal))
    return NizkProof(rounds)


def verify_parallel(statement, proof: NizkProof, ps: ParamSet) -> bool:
    """Recompute the challenge and check every revealed branch."""
    ew, wB, e1 = statement
    if len(proof.rounds) != ps.nizk_rounds:
        return False
    bits = _challenge_bits(
        statement, [(r.f, r.fp) for r in proof.rounds], ps.nizk_rounds
    )
    for r, bit in zip(proof.rounds, bits):
        if r.tag != bit:
            return False
        try:
            if bit == 0:
                km, kmp = r.reveal
                mask = isogeny_from_kernel(ew, [km], ps.A)
                if mask.codomain != r.f:
                    return False
                maskp = isogeny_from_kernel(e1, [kmp], ps.A)
                if maskp.codomain != r.fp:
                    return False
            else:
                par = isogeny_from_kernel(r.f, list(r.reveal), ps.B)
                if par.codomain.j_invariant() != r.fp.j_invariant():
                    return False
        except Exception:
            return False
    return True
