"""The four adaptor algorithms: presign, preverify, adapt, extract.

A pre-signature shifts the underlying response so that it starts at the
masked commitment curve E_psi; holding the witness lets anyone translate
it to the true commitment curve E1 (adapt), and the pair of signatures
exposes the witness again (extract).  The torsion-image representation of
the shifted response is taken on the full AC-basis of E_psi: the adapter
needs the C-part of the action to complete the signature honestly, while
verification and extraction use the A-part, where the uniqueness bound
4*B*D_tau*D_phi < A^2 applies.
"""

import logging
import math

from .curve import Curve, canonical_torsion_basis, isomorphisms, weil_pairing
from .dlog import decompose_2d, evaluate_rep, recover_isogeny
from .errors import (
    AmbiguityBound,
    NotABasis,
    NotFound,
    OrderMismatch,
    WitnessStatementMismatch,
)
from .isogeny import (
    EfficientRep,
    IsogenyChain,
    compose_chains,
    dual,
    efficient_rep,
    isogeny_from_kernel,
)
from .nizk import NizkProof, prove_parallel, verify_parallel
from .orientation import oriented_kernel
from .params import ParamSet
from .relation import Statement, Witness, verify_relation, witness_chain
from .sig import KeyPair, challenge_walk, hash_to_challenge_index, mu, response_degree

logger = logging.getLogger(__name__)


class PreSignature:
    __slots__ = ("e1", "proof", "epsi", "s", "rep_tilde")

    def __init__(self, e1, proof: NizkProof, epsi, s, rep_tilde: EfficientRep):
        self.e1 = e1
        self.proof = proof
        self.epsi = epsi
        self.s = s  # (psi(P), psi(Q))
        self.rep_tilde = rep_tilde


class AdaptedSignature:
    __slots__ = ("e1", "rep")

    def __init__(self, e1, rep: EfficientRep):
        self.e1 = e1
        self.rep = rep


def presign(kp: KeyPair, m: bytes, s: Statement, ps: ParamSet, rng) -> PreSignature:
    """Produce the shifted signature tuple (E1, proof, E_psi, S, rep)."""
    bits = [rng.randrange(1, 3) for _ in range(ps.t)]
    psi = isogeny_from_kernel(
        ps.e0, oriented_kernel(ps.orientation, bits), ps.B
    )
    P, Q = ps.pq
    S = (psi.evaluate(P), psi.evaluate(Q))
    # the same choice vector applied to the transported orientation realizes
    # the push-forward of psi through the witness without knowing it
    psip = isogeny_from_kernel(
        s.ew, oriented_kernel(s.oriented_image, bits), ps.B
    )
    e1 = psip.codomain
    proof = prove_parallel((s.ew, s.oriented_image, e1), bits, ps, rng)
    h = hash_to_challenge_index(e1.j_invariant(), m, mu(ps.d_phi))
    phi = challenge_walk(kp.pk, h, ps.d_phi, ps.group_order)
    sigma_tilde = compose_chains(dual(psi, ps.group_order), kp.sk, phi)
    rep_tilde = efficient_rep(sigma_tilde, ps.A * ps.C, ps.group_order)
    return PreSignature(e1, proof, psi.codomain, S, rep_tilde)


def preverify(
    pk: Curve,
    m: bytes,
    s: Statement,
    presig: PreSignature,
    mode: str,
    ps: ParamSet,
    reasons=None,
) -> bool:
    """Check a pre-signature: S-pairing, proof, challenge, representation."""
    if mode not in ("light", "strict"):
        raise ValueError(f"unknown mode {mode!r}")
    fail = reasons.append if reasons is not None else (lambda tag: None)
    C = ps.C
    epsi = presig.epsi
    S1, S2 = presig.s

    # (1) S well-formed and the pairing identity with exponent B
    from .curve import _mul, has_exact_order

    if not (epsi.on_curve(S1) and epsi.on_curve(S2)):
        fail("s-points:off-curve")
        return False
    if not (has_exact_order(epsi, S1, C) and has_exact_order(epsi, S2, C)):
        fail("s-points:order")
        return False
    P, Q = ps.pq
    try:
        if weil_pairing(epsi, S1, S2, C) != weil_pairing(ps.e0, P, Q, C) ** ps.B:
            fail("s-points:pairing")
            return False
    except OrderMismatch:
        fail("s-points:pairing")
        return False

    # (2) the commitment curve is honestly derived from the statement
    if not verify_parallel((s.ew, s.oriented_image, presig.e1), presig.proof, ps):
        fail("nizk")
        return False

    # (3) recompute the challenge walk
    h = hash_to_challenge_index(presig.e1.j_invariant(), m, mu(ps.d_phi))
    try:
        phi = challenge_walk(pk, h, ps.d_phi, ps.group_order)
    except Exception:
        fail("challenge")
        return False

    # (4) the representation of the shifted response
    rep = presig.rep_tilde
    N = ps.A * C
    qt = response_degree(ps)
    if rep.domain != epsi or rep.codomain != phi.codomain:
        fail("rep:endpoints")
        return False
    if rep.order != N or rep.degree != qt:
        fail("rep:shape")
        return False
    if rep.basis != canonical_torsion_basis(epsi, N, ps.group_order):
        fail("rep:basis")
        return False
    E2 = rep.codomain
    for T in rep.images:
        if not E2.on_curve(T) or not _mul(E2, N, T).is_inf:
            fail("rep:images")
            return False
    try:
        zb = weil_pairing(epsi, rep.basis[0], rep.basis[1], N)
        zi = weil_pairing(E2, rep.images[0], rep.images[1], N)
    except OrderMismatch:
        fail("rep:pairing")
        return False
    if zi != zb**qt:
        fail("rep:pairing")
        return False

    if mode == "strict":
        # certify an actual isogeny behind the images: recover on the
        # A-part (where 4*qt < A^2 holds), then check the full AC images
        sub = _a_part_rep(rep, ps)
        try:
            rec = recover_isogeny(sub, ps.group_order)
        except (NotFound, AmbiguityBound):
            fail("rep:recovery")
            return False
        if rec.evaluate(rep.basis[0]) != rep.images[0] or rec.evaluate(
            rep.basis[1]
        ) != rep.images[1]:
            fail("rep:recovery-images")
            return False
    return True


def _a_part_rep(rep: EfficientRep, ps: ParamSet) -> EfficientRep:
    """Scale an AC-basis representation down to the A-torsion."""
    from .curve import _mul

    C = ps.C
    return EfficientRep(
        rep.domain,
        rep.codomain,
        rep.degree,
        ps.A,
        (_mul(rep.domain, C, rep.basis[0]), _mul(rep.domain, C, rep.basis[1])),
        (_mul(rep.codomain, C, rep.images[0]), _mul(rep.codomain, C, rep.images[1])),
    )


def adapt(presig: PreSignature, w: Witness, ps: ParamSet) -> AdaptedSignature:
    """Complete a pre-signature with the witness.

    The parallel copy of the witness isogeny is built from S alone; its
    codomain must match the committed curve E1 up to isomorphism, the
    signature images are the represented response evaluated at the dual's
    images of the canonical AC-basis of E1.
    """
    from .curve import _mul

    C = ps.C
    epsi = presig.epsi
    S1, S2 = presig.s
    K = epsi.add(S1, _mul(epsi, w.alpha % C, S2))
    try:
        wprime = isogeny_from_kernel(epsi, [K], C)
    except Exception as exc:
        raise WitnessStatementMismatch(f"witness kernel invalid: {exc}") from exc
    isos = isomorphisms(wprime.codomain, presig.e1)
    if not isos:
        raise WitnessStatementMismatch(
            "parallel witness isogeny does not land on the commitment curve"
        )
    steps = list(wprime.steps)
    steps[-1] = steps[-1].retwist(isos[0])
    wprime = IsogenyChain(epsi, presig.e1, steps, C, wprime.kernel_gens)
    what = dual(wprime, ps.group_order)  # E1 -> E_psi, exact

    P0, Q0 = canonical_torsion_basis(presig.e1, ps.A * C, ps.group_order)
    sigP = evaluate_rep(presig.rep_tilde, what.evaluate(P0))
    sigQ = evaluate_rep(presig.rep_tilde, what.evaluate(Q0))
    rep = EfficientRep(
        presig.e1,
        presig.rep_tilde.codomain,
        presig.rep_tilde.degree * C,
        ps.A * C,
        (P0, Q0),
        (sigP, sigQ),
    )
    return AdaptedSignature(presig.e1, rep)


def extract(
    sig: AdaptedSignature,
    presig: PreSignature,
    s: Statement,
    ps: ParamSet,
    reasons=None,
):
    """Recover the witness from a pre-signature/signature pair, or None.

    Works on the A-torsion: the signature images scaled by C reveal the
    action of the dual parallel isogeny on a basis of E1[A], the recovery
    oracle turns that into a kernel, and a change of basis to (psi(P),
    psi(Q)) yields alpha.  Every failure returns None (bottom).
    """
    from .curve import _mul

    def fail(tag):
        logger.debug("extraction returned bottom: %s", tag)
        if reasons is not None:
            reasons.append(tag)

    A, C = ps.A, ps.C
    if sig.e1 != presig.e1:
        fail("commitment-curve-mismatch")
        return None
    e1 = sig.e1
    rep = sig.rep
    if rep.order != A * C or rep.domain != e1:
        fail("rep-shape")
        return None
    if rep.basis != canonical_torsion_basis(e1, A * C, ps.group_order):
        fail("rep-basis")
        return None
    if rep.codomain != presig.rep_tilde.codomain:
        fail("response-curve-mismatch")
        return None

    P0, Q0 = rep.basis
    P1 = _mul(e1, C, P0)
    Q1 = _mul(e1, C, Q0)
    Pp = _mul(rep.codomain, C, rep.images[0])
    Qp = _mul(rep.codomain, C, rep.images[1])

    # sigma-tilde's action on the A-basis of E_psi, from the pre-signature
    tilde = _a_part_rep(presig.rep_tilde, ps)
    (R1A, R2A) = tilde.basis
    (T1A, T2A) = tilde.images
    epsi = presig.epsi
    E2 = rep.codomain
    try:
        da = decompose_2d(E2, T1A, T2A, Pp, A)
        db = decompose_2d(E2, T1A, T2A, Qp, A)
    except (NotABasis, OrderMismatch):
        fail("a-torsion-decomposition")
        return None
    X = epsi.add(_mul(epsi, da.x, R1A), _mul(epsi, da.y, R2A))
    Y = epsi.add(_mul(epsi, db.x, R1A), _mul(epsi, db.y, R2A))

    synth = EfficientRep(e1, epsi, C, A, (P1, Q1), (X, Y))
    try:
        rec = recover_isogeny(synth, ps.group_order)
    except NotFound:
        fail("recovery:not-found")
        return None
    except AmbiguityBound:  # pragma: no cover - parameters forbid this
        fail("recovery:ambiguity")
        return None

    # kernel of the parallel witness isogeny = image of E1[C] under the dual
    Uc, Vc = canonical_torsion_basis(e1, C, ps.group_order)
    K = rec.evaluate(Uc)
    from .curve import has_exact_order

    if not has_exact_order(epsi, K, C):
        K = rec.evaluate(Vc)
    S1, S2 = presig.s
    try:
        d = decompose_2d(epsi, S1, S2, K, C)
    except (NotABasis, OrderMismatch):
        fail("c-torsion-decomposition")
        return None
    if math.gcd(d.x, C) != 1:
        fail("non-invertible-first-coefficient")
        return None
    alpha = d.y * pow(d.x, -1, C) % C

    wit = Witness(alpha, witness_chain(ps, alpha))
    if not verify_relation(wit, s, ps):
        fail("relation-check")
        return None
    return wit
