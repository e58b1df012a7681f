from __future__ import annotations

import random

import pytest

from cmcubics import GF, QQ
from cmcubics import catalog
from cmcubics.properties import PROPERTIES, member_by_linear_algebra, prop_membership, run_property


def test_plan_expands_characteristic_sensitive_checks():
    todo = catalog.plan("all", None)
    fields = {cid: [f for c, f in todo if c == cid] for cid, _ in todo}
    assert fields["tangent-12-15-16"] == [QQ, GF(2), GF(3)]
    assert fields["roundtrip-sc"] == [QQ]
    assert catalog.plan("ps-obstruction", GF(5)) == [("ps-obstruction", GF(5))]
    with pytest.raises(KeyError):
        catalog.plan("nope", None)


def test_failed_expectation_marks_check_failed():
    rec = catalog._Recorder()
    rec.expect("good", True)
    rec.expect("bad", False, 3)
    assert not rec.ok
    assert rec.details[-1] == ("bad", "FAILED (3)")


def test_exceptions_become_error_reports(monkeypatch):
    def boom(r, F, seed):
        raise RuntimeError("kaput")

    monkeypatch.setitem(catalog.CHECKS, "boom", catalog.Check("boom", "raises", boom))
    rep = catalog.run_check("boom")
    assert rep.status == "error" and not rep.passed
    assert "kaput" in rep.details[-1][1]


@pytest.mark.parametrize("check_id", ["determinantal-fiber", "saturation-limit-point", "plain-double-points",
                                      "critical-locus", "normal-module-generators"])
def test_individual_checks_pass(check_id):
    rep = catalog.run_check(check_id)
    assert rep.passed, rep.details


@pytest.mark.parametrize("name", list(PROPERTIES))
def test_properties_pass_on_a_different_seed(name):
    res = run_property(name, cases=25, seed=7)
    assert res.ok, res.failures[:3]


def test_membership_property_exercises_both_outcomes():
    rng = random.Random("both-outcomes")
    fld = GF(32003)
    from cmcubics.polyring import PolyRing
    from cmcubics.properties import random_form, random_homogeneous_ideal
    ring = PolyRing("x,y,z", fld)
    seen = set()
    for _ in range(40):
        I = random_homogeneous_ideal(ring, rng)
        f = random_form(ring, 3, rng)
        g = I.generators[0] * random_form(ring, 3 - I.generators[0].total_degree(), rng) \
            if I.generators[0].total_degree() <= 3 else f
        for h in (f, g):
            seen.add(member_by_linear_algebra(h, list(I.generators)))
    assert seen == {True, False}
    assert prop_membership(rng, fld) is None
