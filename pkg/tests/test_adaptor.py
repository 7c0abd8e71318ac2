import copy
import random

from adaptorsig import serial
from adaptorsig.adaptor import (
    PreSignature,
    adapt,
    extract,
    presign,
    preverify,
)
from adaptorsig.errors import WitnessStatementMismatch
from adaptorsig.isogeny import EfficientRep
from adaptorsig.nizk import NizkRound
from adaptorsig.relation import Statement, Witness, gen_r, verify_relation, witness_chain
from adaptorsig.orientation import orientation_image
from adaptorsig.sig import keygen, response_degree, verify


def session(ps, seed):
    rng = random.Random(seed)
    kp = keygen(ps, rng)
    w, s = gen_r(ps, rng)
    m = b"session %d" % seed
    pre = presign(kp, m, s, ps, rng)
    return kp, w, s, m, pre


def test_roundtrip_light(t0):
    kp, w, s, m, pre = session(t0, 1)
    assert pre.rep_tilde.degree == response_degree(t0) == 3675
    assert preverify(kp.pk, m, s, pre, "light", t0)
    full = adapt(pre, w, t0)
    assert full.rep.degree == 3675 * 3 == 11025
    assert verify(kp.pk, m, full, "light", t0)
    rec = extract(full, pre, s, t0)
    assert rec is not None and rec.alpha == w.alpha
    assert verify_relation(rec, s, t0)


def test_roundtrip_strict(t0):
    kp, w, s, m, pre = session(t0, 2)
    assert preverify(kp.pk, m, s, pre, "strict", t0)


def test_presign_deterministic_bytes(t0):
    kp = keygen(t0, random.Random(3))
    w, s = gen_r(t0, random.Random(4))
    m = b"determinism"
    a = presign(kp, m, s, t0, random.Random(5))
    b = presign(kp, m, s, t0, random.Random(5))
    assert serial.encode(serial.presig_doc(a)) == serial.encode(serial.presig_doc(b))


def test_s_point_scaling_rejected_at_pairing_check(t0):
    kp, w, s, m, pre = session(t0, 6)
    bad = PreSignature(
        pre.e1,
        pre.proof,
        pre.epsi,
        (pre.s[0], pre.epsi.mul(2, pre.s[1])),
        pre.rep_tilde,
    )
    reasons = []
    assert not preverify(kp.pk, m, s, bad, "light", t0, reasons)
    assert reasons == ["s-points:pairing"]


def test_rep_image_swap_rejected(t0):
    kp, w, s, m, pre = session(t0, 7)
    rt = pre.rep_tilde
    bad = PreSignature(
        pre.e1,
        pre.proof,
        pre.epsi,
        pre.s,
        EfficientRep(rt.domain, rt.codomain, rt.degree, rt.order, rt.basis,
                     (rt.images[1], rt.images[0])),
    )
    reasons = []
    assert not preverify(kp.pk, m, s, bad, "light", t0, reasons)
    assert reasons == ["rep:pairing"]


def test_nizk_corner_substitution_rejected(t0):
    kp, w, s, m, pre = session(t0, 8)
    proof = copy.deepcopy(pre.proof)
    r0, r1 = proof.rounds[0], proof.rounds[1]
    proof.rounds[0] = NizkRound(r1.f, r0.fp, r0.tag, r0.reveal)
    bad = PreSignature(pre.e1, proof, pre.epsi, pre.s, pre.rep_tilde)
    reasons = []
    assert not preverify(kp.pk, m, s, bad, "light", t0, reasons)
    assert reasons == ["nizk"]


def test_wrong_witness_exhaustive(t0):
    kp, w, s, m, pre = session(t0, 9)
    adapted = 0
    for alpha in range(t0.C):
        cand = Witness(alpha, witness_chain(t0, alpha))
        try:
            full = adapt(pre, cand, t0)
        except WitnessStatementMismatch:
            assert alpha != w.alpha
            continue
        if alpha == w.alpha:
            adapted += 1
            assert verify(kp.pk, m, full, "light", t0)
        else:
            # a j-invariant collision let the adaptation through; the
            # extracted witness must still fail the relation
            rec = extract(full, pre, s, t0)
            assert rec is None or rec.alpha != w.alpha
    assert adapted == 1


def test_cross_presignature_extract_bottom(t0):
    kp, w, s, m, pre = session(t0, 10)
    kp2, w2, s2, m2, pre2 = session(t0, 11)
    full = adapt(pre, w, t0)
    reasons = []
    assert extract(full, pre2, s2, t0, reasons) is None
    assert reasons


def test_adaptability_after_reserialization(t0):
    kp, w, s, m, pre = session(t0, 12)
    doc = serial.presig_doc(pre)
    back = serial.parse_presig(serial.loads(serial.encode(doc)), t0, s)
    assert preverify(kp.pk, m, s, back, "light", t0)
    full = adapt(back, w, t0)
    assert verify(kp.pk, m, full, "light", t0)
    rec = extract(full, back, s, t0)
    assert rec is not None and rec.alpha == w.alpha


def test_degree_bookkeeping(t0, t1):
    for ps, seed in ((t0, 13), (t1, 14)):
        kp, w, s, m, pre = session(ps, seed)
        full = adapt(pre, w, ps)
        assert full.rep.degree == pre.rep_tilde.degree * ps.C


def test_exhaustive_alpha_pipeline(t0, t1):
    for ps in (t0, t1):
        rng = random.Random(15)
        kp = keygen(ps, rng)
        for alpha in range(ps.C):
            w = Witness(alpha, witness_chain(ps, alpha))
            s = Statement(
                w.chain.codomain, orientation_image(w.chain, ps.orientation)
            )
            m = b"alpha %d" % alpha
            pre = presign(kp, m, s, ps, rng)
            assert preverify(kp.pk, m, s, pre, "light", ps)
            full = adapt(pre, w, ps)
            assert verify(kp.pk, m, full, "light", ps)
            rec = extract(full, pre, s, ps)
            assert rec is not None and rec.alpha == alpha
