import pytest

from conftest import mat2
from tpqr.k3glue import (
    INOSE_FIBER_COUNTS,
    SINGULAR_FIBER_EULER,
    DualPair,
    InoseCase,
    classify_inose_boundary,
    critical_count,
    glued_lattice,
    inose_monodromy,
    pair_for_triple,
    strange_duality_table,
    torus_knot_types,
)
from tpqr.quadlattice import discriminant, signature, t_lattice
from tpqr.sl2z import GAMMA, HomologyClass, is_conjugate, is_conjugate_to_inverse, monodromy_matrix


def test_table_structure():
    table = strange_duality_table()
    assert len(table) == 10
    assert sum(1 for p in table if p.self_dual) == 6
    assert sum(1 for p in table if not p.self_dual) == 4
    triples = {p.left for p in table} | {p.right for p in table}
    assert len(triples) == 14
    assert any(p.left == p.right == (2, 3, 7) for p in table)
    assert any({p.left, p.right} == {(2, 4, 5), (2, 3, 8)} for p in table)
    for p in table:
        assert p.index_sum == 24


def test_pair_lookup():
    pair = pair_for_triple(2, 3, 8)
    assert pair is not None and {pair.left, pair.right} == {(2, 4, 5), (2, 3, 8)}
    assert pair_for_triple(5, 5, 5) is None


def test_critical_count():
    for pair in strange_duality_table():
        assert critical_count(pair) == 24
    with pytest.raises(ValueError):
        critical_count(DualPair("X", (2, 2, 2), "X", (2, 2, 2)))


def test_boundary_gluing_inverse_conjugacy_all_pairs():
    for pair in strange_duality_table():
        a = monodromy_matrix(*pair.left)
        b = monodromy_matrix(*pair.right)
        cert = is_conjugate_to_inverse(a, b)
        assert cert is not None and cert.verify(), pair


def test_glued_lattice_237():
    pair = pair_for_triple(2, 3, 7)
    lat, verdict = glued_lattice(pair)
    assert lat.rank == 22
    assert verdict.signature == (3, 0, 19)
    assert abs(verdict.det) == 1
    assert verdict.parity == "even"
    assert verdict.unimodular and verdict.isomorphic_to_k3
    assert "section.3" in lat.labels and "fiber.3" in lat.labels


def test_glued_lattice_z11_e13_not_unimodular():
    pair = pair_for_triple(2, 4, 5)
    _, verdict = glued_lattice(pair)
    # disc T(2,4,5) = disc T(2,3,8) = -2 in magnitude 2; H contributes -1
    assert abs(discriminant(t_lattice(2, 4, 5))) == 2
    assert abs(discriminant(t_lattice(2, 3, 8))) == 2
    assert abs(verdict.det) == 4
    assert not verdict.unimodular and verdict.isomorphic_to_k3 is None


def test_glued_lattice_unimodular_only_for_237():
    for pair in strange_duality_table():
        _, verdict = glued_lattice(pair)
        expect = pair.left == pair.right == (2, 3, 7)
        assert verdict.unimodular == expect, pair
        # determinant factorizes over the three summands
        det = (
            discriminant(t_lattice(*pair.left))
            * discriminant(t_lattice(*pair.right))
            * -1
        )
        assert verdict.det == det


def test_inose_monodromy_cases():
    # direct 2x2 products frozen from the fixed twist convention
    assert inose_monodromy(InoseCase.of(0, 0, 2, 2)) == mat2(((2, 1), (1, 1)))
    m2 = inose_monodromy(InoseCase.of(0, 2, 0, 2))
    assert m2 == mat2(((2, 3), (3, 5))) and m2.trace == 7
    assert monodromy_matrix(2, 5, 5).trace == 7
    m0 = inose_monodromy(InoseCase.of(0, 0, 0, 0))
    assert m0 == mat2(((0, 1), (-1, -1)))
    from tpqr.sl2z import MatrixClass, classify

    assert classify(m0) is MatrixClass.ELLIPTIC


def test_inose_case_validation():
    with pytest.raises(ValueError):
        InoseCase.of(0, 3, 0, 0)
    with pytest.raises(ValueError):
        InoseCase((1, 1))


@pytest.mark.parametrize(
    "case,triple,trace",
    [
        ((0, 0, 2, 2), (2, 3, 7), 3),
        ((0, 2, 0, 2), (2, 5, 5), 7),
        ((0, 1, 0, 2), (2, 4, 5), 4),
        ((0, 2, 1, 2), (2, 3, 8), 4),
    ],
)
def test_boundary_classification(case, triple, trace):
    m = inose_monodromy(InoseCase.of(*case))
    assert m.trace == trace
    cls = classify_inose_boundary(InoseCase.of(*case))
    assert cls is not None
    assert cls.triple.sorted == triple
    assert cls.certificate.verify()
    # self-dual monodromies match on both sides, dual pairs on one
    assert cls.side == ("both" if triple in ((2, 3, 7), (2, 5, 5)) else "inverse")


def test_trace4_cases_distinguish_the_dual_pair():
    a = inose_monodromy(InoseCase.of(0, 1, 0, 2))
    b = inose_monodromy(InoseCase.of(0, 2, 1, 2))
    assert a.trace == b.trace == 4
    assert is_conjugate(a, b) is None
    # within the preferred side the match is unique
    assert classify_inose_boundary(InoseCase.of(0, 1, 0, 2)).triple.sorted == (2, 4, 5)
    assert classify_inose_boundary(InoseCase.of(0, 2, 1, 2)).triple.sorted == (2, 3, 8)


def test_no_match_case():
    assert classify_inose_boundary(InoseCase.of(0, 0, 0, 0)) is None


def test_alternative_gamma_convention_fails_case_two():
    # the convention gamma=(1,1) breaks the trace of the second case,
    # documenting why gamma=(1,-1) is the right third curve
    bad = HomologyClass(1, 1)
    m = inose_monodromy(InoseCase.of(0, 2, 0, 2), gamma=bad)
    assert m.trace != 7
    good = inose_monodromy(InoseCase.of(0, 2, 0, 2), gamma=GAMMA)
    assert good.trace == 7


def test_euler_number_bookkeeping():
    total = sum(
        SINGULAR_FIBER_EULER[kind] * count for kind, count in INOSE_FIBER_COUNTS.items()
    )
    assert total == 24
    assert INOSE_FIBER_COUNTS == {"I1": 8, "IV*": 2}


def test_torus_knot_metadata():
    assert torus_knot_types(2, 3, 7) == ((2, 1), (3, 2), (7, 6))


def test_all_81_quadrant_cases_classify_unambiguously():
    import itertools

    classified = 0
    for counts in itertools.product((0, 1, 2), repeat=4):
        out = classify_inose_boundary(InoseCase(counts))
        if out is not None:
            assert out.certificate.verify()
            classified += 1
    assert classified == 22  # frozen census over the full case space
