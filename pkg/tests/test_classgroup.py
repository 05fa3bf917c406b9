import pytest
from hypothesis import given, strategies as st

from flasque.classgroup import (CyclotomicFull, CyclotomicMixed, CyclotomicReal, RayQuaternion,
                                SemiDihedralSpecial, max_order_class_group, quaternion_ray_summand,
                                rationality_reports)
from flasque.cyclo import ConditionallyKnown, Known, Unknown, emit_table, ingest_table
from flasque.errors import BadDivisor, UnsupportedFamily
from flasque.groups import (Cyclic, CyclicTimesDihedral, Dihedral, Generic, Modular, Quaternion,
                            SemiDihedral, build_group)


def _verdicts(spec):
    return {v.statement: v.verdict for v in rationality_reports(spec)}


def test_cyclic_23():
    r = max_order_class_group(Cyclic(23))
    assert r.total == Known(3)
    fields = {str(s.field): s.status for s in r.summands}
    assert fields == {"Z[zeta_1]": Known(1), "Z[zeta_23]": Known(3)}


def test_dihedral_nine_and_modular():
    assert max_order_class_group(Dihedral(9)).total == Known(1)
    assert all(isinstance(s.field, CyclotomicReal) for s in max_order_class_group(Dihedral(9)).summands)
    for t in (3, 4, 5):
        assert max_order_class_group(Modular(t)).total == Known(1)


@given(st.integers(1, 60))
def test_dihedral_totals(n):
    assert max_order_class_group(Dihedral(n)).total == Known(1)


@pytest.mark.parametrize("t", range(1, 6))
def test_quaternion_two_powers(t):
    assert max_order_class_group(Quaternion(2 ** t)).total == Known(1)


def test_ray_summands():
    assert quaternion_ray_summand(4, 8) == Known(1)
    assert quaternion_ray_summand(64, 128) == Known(1)
    st_ = quaternion_ray_summand(3, 6)
    assert isinstance(st_, Unknown) and st_.reason == "unit signature data required"
    with pytest.raises(BadDivisor):
        quaternion_ray_summand(4, 4)
    with pytest.raises(BadDivisor):
        quaternion_ray_summand(4, 2)


def test_quaternion_ray_fields_listed():
    r = max_order_class_group(Quaternion(3))
    rays = [s for s in r.summands if isinstance(s.field, RayQuaternion)]
    assert [s.field.d for s in rays] == [6]
    assert isinstance(r.total, Unknown)


def test_semidihedral():
    r16 = max_order_class_group(SemiDihedral(3))
    assert r16.total == Known(1)
    r32 = max_order_class_group(SemiDihedral(4))
    assert isinstance(r32.total, Unknown)
    assert any(isinstance(s.field, SemiDihedralSpecial) and isinstance(s.status, Unknown)
               for s in r32.summands)


@pytest.mark.parametrize("n, m, mult", [(3, 5, 2), (5, 3, 2), (3, 4, 4), (9, 5, 2), (7, 2, 4)])
def test_cyclic_times_dihedral_multiplicities(n, m, mult):
    r = max_order_class_group(CyclicTimesDihedral(n, m))
    full = [s for s in r.summands if isinstance(s.field, CyclotomicFull)]
    assert full and all(s.multiplicity == mult for s in full)
    mixed = [s for s in r.summands if isinstance(s.field, CyclotomicMixed)]
    assert all(s.field.d2 >= 3 for s in mixed)


def test_mixed_fields_unknown_unless_degenerate():
    r = max_order_class_group(CyclicTimesDihedral(9, 5))
    statuses = {(s.field.d1, s.field.d2): s.status for s in r.summands
                if isinstance(s.field, CyclotomicMixed)}
    assert statuses[(1, 5)] == Known(1)
    assert isinstance(statuses[(3, 5)], Unknown)
    assert isinstance(r.total, Unknown)


def test_totals_multiply():
    for spec in (Cyclic(23), Cyclic(46), Cyclic(29), CyclicTimesDihedral(23, 2), Dihedral(12)):
        r = max_order_class_group(spec)
        prod = 1
        for s in r.summands:
            prod *= s.status.value ** s.multiplicity
        assert r.total == Known(prod)


def test_grh_conditional_total():
    r = max_order_class_group(Dihedral(67))
    assert isinstance(r.total, ConditionallyKnown) and r.total.condition == "GRH"


def test_unsupported():
    with pytest.raises(UnsupportedFamily):
        max_order_class_group(Generic(build_group(Cyclic(2)).mul.tolist()))
    with pytest.raises(UnsupportedFamily):
        max_order_class_group(CyclicTimesDihedral(3, 3))


def test_reports_are_deterministic():
    a = max_order_class_group(CyclicTimesDihedral(9, 5)).to_json()
    assert a == max_order_class_group(CyclicTimesDihedral(9, 5)).to_json()


def test_table_override_feeds_the_report():
    table = ingest_table(emit_table([23]).replace("23\t3\t", "23\t5\t"))
    assert max_order_class_group(Cyclic(23), table).total == Known(5)
    assert max_order_class_group(Cyclic(23)).table_rows == ((23, 3, Known(1)),)


# ------------------------------------------------------------- verdicts

def test_rationality_verdicts():
    v = _verdicts(Dihedral(9))
    assert v["all D_9-tori are stably rational iff h+(9) = 1"] is True
    assert _verdicts(Quaternion(4))["every invertible lattice is stably permutation"] is True
    assert _verdicts(SemiDihedral(4))["every invertible lattice is stably permutation"] == "Unknown"
    assert _verdicts(Dihedral(16))[
        "a lattice is flabby and coflabby iff it is stably permutation"] is True


def test_class_group_verdict_negative_for_c23():
    v = _verdicts(Cyclic(23))
    [(k, val)] = [(k, val) for k, val in v.items() if k.startswith("T(pi) is trivial")]
    assert val is False


def test_unknown_propagates_to_verdicts():
    for v in rationality_reports(Quaternion(3)):
        assert v.verdict == "Unknown"
