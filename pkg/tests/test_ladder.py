import pytest

from gcohom.cochains import InhomCochain, homogeneous_of
from gcohom.cohomology import cohomology_group
from gcohom.continuity import all_class, quotient_class
from gcohom.errors import ValidationError
from gcohom.groups import make_cyclic
from gcohom.ladder import (classes_nested, connecting_cochain, connecting_hom,
                           ladder_check, les_segment, make_ses, split_section,
                           validate_ses, CoefficientSES)
from gcohom.modules import module_with_action, trivial_module


def z2_z4_z2(group):
    gamma = trivial_module(group, rank=0, torsion=(2,), label="Z/2")
    mid = trivial_module(group, rank=0, torsion=(4,), label="Z/4")
    quot = trivial_module(group, rank=0, torsion=(2,), label="Z/2")
    return make_ses(gamma, mid, quot, incl=[[2]], proj=[[1]],
                    section=[(0,), (1,)])


def test_ses_validation_catches_defects():
    g2 = make_cyclic(2)
    gamma = trivial_module(g2, 0, (2,))
    mid = trivial_module(g2, 0, (4,))
    quot = trivial_module(g2, 0, (2,))
    # non-exact: image of x -> x is not the kernel of mod 2
    bad = CoefficientSES(gamma, mid, quot, ((1,),), ((1,),), ((0,), (1,)))
    assert validate_ses(bad)
    # section that does not split the projection
    bad2 = CoefficientSES(gamma, mid, quot, ((2,),), ((1,),), ((0,), (2,)))
    assert validate_ses(bad2)
    with pytest.raises(ValidationError):
        make_ses(gamma, mid, quot, [[1]], [[1]], [(0,), (1,)])
    # free module refused
    free = trivial_module(g2, 1, ())
    assert validate_ses(CoefficientSES(free, mid, quot, ((2,),), ((1,),),
                                       ((0,), (1,))))


def test_les_over_z2_fixture():
    g2 = make_cyclic(2)
    ses = z2_z4_z2(g2)
    rep = les_segment(ses, 2)
    assert [str(n.cohomology.structure) for n in rep.nodes] == \
        ["Z/2", "Z/4", "Z/2", "Z/2", "Z/2", "Z/2", "Z/2", "Z/2", "Z/2"]
    assert str(rep.tail.structure) == "Z/2"
    assert [(m.label, m.matrix) for m in rep.maps] == [
        ("incl", ((2,),)), ("proj", ((1,),)), ("delta", ((0,),)),
        ("incl", ((1,),)), ("proj", ((0,),)), ("delta", ((1,),)),
        ("incl", ((0,),)), ("proj", ((1,),)),
    ]
    assert rep.tail_matrix == ((0,),)
    assert rep.exact_at == (True,) * 9
    assert rep.compositions_zero
    assert rep.all_exact()


def test_connecting_image_matches_kernel_at_degree_zero():
    g2 = make_cyclic(2)
    ses = z2_z4_z2(g2)
    d0 = connecting_hom(ses, 0)
    image = {d0.apply(x) for x in [(0,), (1,)]}
    incl1 = les_segment(ses, 1).maps[3]
    assert incl1.label == "incl" and incl1.matrix == ((1,),)
    # incl on degree 1 is injective, so the kernel and the delta image are 0
    assert image == {(0,)}


def test_connecting_degree_one_is_carry():
    g2 = make_cyclic(2)
    ses = z2_z4_z2(g2)
    ident = homogeneous_of(InhomCochain(g2, ses.a, 1, ((0,), (1,))))
    gamma_out = connecting_cochain(ses, ident)
    bar = [gamma_out.value((0, g1, (g1 + g2) % 2))
           for g1 in range(2) for g2 in range(2)]
    assert bar == [(0,), (0,), (0,), (1,)]


def test_split_ses_kills_connecting():
    g2 = make_cyclic(2)
    gamma = trivial_module(g2, 0, (2,))
    mid = trivial_module(g2, 0, (2, 2))
    quot = trivial_module(g2, 0, (2,))
    ses = make_ses(gamma, mid, quot, incl=[[1], [0]], proj=[[0, 1]],
                   section=split_section(mid, quot, [[0], [1]]))
    rep = les_segment(ses, 2)
    assert rep.all_exact()
    assert all(m.matrix in ((), ((0,),)) for m in rep.maps if m.label == "delta")
    assert rep.tail_matrix == ((0,),)


def test_les_trivial_group():
    g1 = make_cyclic(1)
    gamma = trivial_module(g1, 0, (2,))
    mid = trivial_module(g1, 0, (4,))
    quot = trivial_module(g1, 0, (2,))
    ses = make_ses(gamma, mid, quot, [[2]], [[1]], [(0,), (1,)])
    rep = les_segment(ses, 2)
    assert [str(n.cohomology.structure) for n in rep.nodes] == \
        ["Z/2", "Z/4", "Z/2", "0", "0", "0", "0", "0", "0"]
    assert rep.all_exact()


def test_les_zero_modules():
    g2 = make_cyclic(2)
    z0 = trivial_module(g2, 0, ())
    ses = make_ses(z0, z0, z0, [], [], [()])
    rep = les_segment(ses, 1)
    assert rep.all_exact()
    assert all(n.cohomology.structure.is_trivial() for n in rep.nodes)


def test_connecting_zero_class_is_zero():
    g2 = make_cyclic(2)
    ses = z2_z4_z2(g2)
    for n in (0, 1):
        d = connecting_hom(ses, n)
        zero = tuple(0 for _ in d.domain.structure.factors)
        out = d.apply(zero)
        assert all(v == 0 for v in out)


def test_connecting_representative_independent():
    # negation action, two representatives per class in H^1 of the quotient
    g2 = make_cyclic(2)
    gamma = module_with_action(g2, 0, (2,), {})
    mid = module_with_action(g2, 0, (8,), {1: [[-1]]})
    quot = module_with_action(g2, 0, (4,), {1: [[-1]]})
    ses = make_ses(gamma, mid, quot, [[4]], [[1]],
                   [(0,), (1,), (2,), (3,)])
    d1 = connecting_hom(ses, 1)
    assert str(d1.domain.structure) == "Z/2"
    by_class = {}
    for f1 in range(4):
        bar = InhomCochain(g2, quot, 1, ((0,), (f1,)))
        f = homogeneous_of(bar)
        cls_coords = d1.domain.class_of(f)
        out = d1.codomain.class_of(connecting_cochain(ses, f))
        by_class.setdefault(cls_coords, set()).add(out)
    assert len(by_class) == 2
    assert all(len(images) == 1 for images in by_class.values())


def test_classes_nested_logic():
    g4 = make_cyclic(4)
    fine = quotient_class(g4, [0, 2])
    assert classes_nested(fine, all_class(g4))
    assert not classes_nested(all_class(g4), fine)
    assert classes_nested(fine, quotient_class(g4, [0]))
    assert not classes_nested(quotient_class(g4, [0]), fine)
    assert classes_nested(fine, fine)


def test_ladder_quotient_into_all():
    g4 = make_cyclic(4)
    gamma = trivial_module(g4, 0, (2,))
    mid = trivial_module(g4, 0, (4,))
    quot = trivial_module(g4, 0, (2,))
    ses = make_ses(gamma, mid, quot, [[2]], [[1]], [(0,), (1,)])
    lad = ladder_check(ses, quotient_class(g4, [0, 2]), all_class(g4), 1)
    assert lad.fine.all_exact() and lad.coarse.all_exact()
    assert lad.all_squares_commute()
    assert [str(n.cohomology.structure) for n in lad.fine.nodes] == \
        ["Z/2", "Z/4", "Z/2", "Z/2", "Z/2", "Z/2"]
    assert [str(n.cohomology.structure) for n in lad.coarse.nodes] == \
        ["Z/2", "Z/4", "Z/2", "Z/2", "Z/4", "Z/2"]
    assert lad.vertical == (((1,),), ((1,),), ((1,),), ((1,),), ((2,),), ((1,),))
    assert lad.vertical_iso == (True, True, True, True, False, True)
    assert lad.five_lemma_checks == ()


def test_ladder_identity_classes_five_lemma_fires():
    g2 = make_cyclic(2)
    ses = z2_z4_z2(g2)
    lad = ladder_check(ses, all_class(g2), all_class(g2), 1)
    assert lad.all_squares_commute()
    assert all(lad.vertical_iso)
    assert lad.five_lemma_checks == ((2, True), (3, True))


def test_ladder_rejects_non_nested():
    g4 = make_cyclic(4)
    ses_mods = (trivial_module(g4, 0, (2,)), trivial_module(g4, 0, (4,)),
                trivial_module(g4, 0, (2,)))
    ses = make_ses(*ses_mods, [[2]], [[1]], [(0,), (1,)])
    with pytest.raises(ValidationError):
        ladder_check(ses, all_class(g4), quotient_class(g4, [0, 2]), 1)
