"""The 3x3 extension problem: obstruction, construction, uniqueness,
compatible isomorphisms."""

import random

import pytest

from hexext.diagram import (
    Diagram3x3,
    DiagramExtension,
    build_Y,
    check_uniqueness,
    compatible_isomorphism,
    enumerate_extensions,
    extend_diagram,
    extend_homomorphism,
    is_injective_module,
    obstruction,
    validate_diagram1,
    validate_extension,
)
from hexext.errors import (
    ClassesDifferError,
    InvalidDiagramError,
    LambdaNotExtendableError,
    NotExtendableError,
)
from hexext.ext import ext_module, ses_of_class
from hexext.linalg import ExactMatrix
from hexext.modules import (
    PresentedModule,
    ShortExactSequence,
    hom,
    make_ses,
    split_ses,
    submodule_generated,
    zero_morphism,
)
from hexext.randgen import extend_with_variant_cocycle, perturb_extension, random_diagram
from hexext.rings import ZZ, Zmod

R4 = Zmod(4)
Z2m = PresentedModule.cyclic(R4, 2)
Z4m = PresentedModule.free(R4, 1)
Zf = PresentedModule.free(ZZ, 1)


def nonsplit_mod4():
    e = ext_module(1, Z2m, Z2m)
    return ses_of_class(e.class_from_coords((1,)))


def example_a():
    """Nonsplit top row and right column, split elsewhere; obstructed."""
    ns = nonsplit_mod4()
    sp = split_ses(Z2m, Z2m)
    return Diagram3x3(row_top=ns, row_bottom=sp, col_left=sp, col_right=ns)


def all_split():
    sp = split_ses(Z2m, Z2m)
    return Diagram3x3(row_top=sp, row_bottom=sp, col_left=sp, col_right=sp)


# -- validation -----------------------------------------------------------------


def test_validate_all_split_ok():
    assert validate_diagram1(all_split()) == []


def test_validate_example_a_ok():
    assert validate_diagram1(example_a()) == []


def test_validate_flags_nonsurjective_projection():
    sp = split_ses(Z2m, Z2m)
    broken = ShortExactSequence(sp.left, sp.middle, sp.right, sp.inject,
                                zero_morphism(sp.middle, sp.right))
    d = Diagram3x3(row_top=broken, row_bottom=sp, col_left=sp, col_right=sp)
    out = validate_diagram1(d)
    assert any("rowTop" in v for v in out)


def test_validate_flags_corner_mismatch():
    sp = split_ses(Z2m, Z2m)
    sp4 = split_ses(Z4m, Z4m)
    d = Diagram3x3(row_top=sp, row_bottom=sp, col_left=sp4, col_right=sp)
    assert any("corner" in v for v in validate_diagram1(d))


# -- obstruction ------------------------------------------------------------------


def test_obstruction_example_a_nonzero():
    ob = obstruction(example_a())
    assert not ob.yoneda_ef.is_zero()
    assert ob.yoneda_hg.is_zero()
    assert not ob.is_zero


def test_obstruction_all_split_zero():
    ob = obstruction(all_split())
    assert ob.yoneda_ef.is_zero() and ob.yoneda_hg.is_zero() and ob.is_zero


def test_obstruction_over_z_always_zero():
    rng = random.Random(4)
    for _ in range(5):
        d = random_diagram(rng, ZZ, 16)
        assert obstruction(d).is_zero


def test_obstruction_requires_valid_diagram():
    sp = split_ses(Z2m, Z2m)
    sp4 = split_ses(Z4m, Z4m)
    d = Diagram3x3(row_top=sp, row_bottom=sp, col_left=sp4, col_right=sp)
    with pytest.raises(InvalidDiagramError):
        obstruction(d)


# -- Y ---------------------------------------------------------------------------------


def test_build_y_cardinality():
    by = build_Y(example_a())
    assert by.y.cardinality() == 8  # |R (+) S| * |Q|
    assert by.ses.left.cardinality() * by.ses.right.cardinality() == 8


def test_build_y_all_split():
    d = all_split()
    by = build_Y(d)
    expected = PresentedModule.from_invariant_factors(R4, [2, 2, 2])
    assert by.y.is_isomorphic_to(expected)


def test_build_y_degenerate_diagonal():
    # F = G = Q with identity maps: Y is the diagonal, R = S = 0
    z = PresentedModule.zero(R4)
    idseq = make_ses(zero_morphism(z, Z4m), hom(Z4m, Z4m, [[1]]))
    d = Diagram3x3(row_top=make_ses(zero_morphism(z, z), zero_morphism(z, z)),
                   row_bottom=idseq, col_left=make_ses(zero_morphism(z, z), zero_morphism(z, z)),
                   col_right=idseq)
    by = build_Y(d)
    assert by.y.is_isomorphic_to(Z4m)


# -- extension -------------------------------------------------------------------------


def test_extend_example_a_not_extendable():
    with pytest.raises(NotExtendableError) as exc:
        extend_diagram(example_a())
    assert exc.value.report is not None and not exc.value.report.is_zero


def test_extend_all_split():
    d = all_split()
    ext = extend_diagram(d)
    assert validate_extension(d, ext) == []


def test_extend_over_z_with_mixed_corners():
    z2 = PresentedModule.cyclic(ZZ, 2)
    z3 = PresentedModule.cyclic(ZZ, 3)
    z6 = PresentedModule.cyclic(ZZ, 6)
    d = Diagram3x3(
        row_top=ses_of_class(ext_module(1, z2, Zf).class_from_coords((1,))),
        col_left=ses_of_class(ext_module(1, z3, Zf).class_from_coords((1,))),
        row_bottom=ses_of_class(ext_module(1, z6, z3).class_from_coords((1,))),
        col_right=ses_of_class(ext_module(1, z6, z2).class_from_coords((1,))),
    )
    ext = extend_diagram(d)
    assert validate_extension(d, ext) == []


def test_validate_extension_rejects_zeroed_map():
    d = all_split()
    ext = extend_diagram(d)
    broken = DiagramExtension(ext.x, ext.i, ext.j, ext.m,
                              zero_morphism(ext.x, d.g), ext.row_mid, ext.col_mid)
    out = validate_extension(d, broken)
    assert any("colMid" in v or "square" in v for v in out)


def test_validate_extension_accepts_hand_built_middle():
    # coordinate middle for the all-split diagram: X = P (+) R (+) S (+) Q
    d = all_split()
    x = PresentedModule.from_invariant_factors(R4, [2, 2, 2, 2])
    i = hom(d.h, x, [[1, 0], [0, 0], [0, 1], [0, 0]])        # H = P (+) S
    j = hom(d.e, x, [[1, 0], [0, 1], [0, 0], [0, 0]])        # E = P (+) R
    m = hom(x, d.f, [[0, 1, 0, 0], [0, 0, 0, 1]])            # F = R (+) Q
    n = hom(x, d.g, [[0, 0, 1, 0], [0, 0, 0, 1]])            # G = S (+) Q
    ext = DiagramExtension(x, i, j, m, n, make_ses(i, m), make_ses(j, n))
    assert validate_extension(d, ext) == []


def test_degenerate_corner_p_zero():
    # P = 0 forces X isomorphic to Y
    z = PresentedModule.zero(R4)
    rt = make_ses(zero_morphism(z, Z2m), hom(Z2m, Z2m, [[1]]))
    cl = make_ses(zero_morphism(z, Z2m), hom(Z2m, Z2m, [[1]]))
    rb = ses_of_class(ext_module(1, Z2m, Z2m).class_from_coords((1,)))
    cr = ses_of_class(ext_module(1, Z2m, Z2m).class_from_coords((0,)))
    d = Diagram3x3(row_top=rt, row_bottom=rb, col_left=cl, col_right=cr)
    ext = extend_diagram(d)
    assert validate_extension(d, ext) == []
    assert ext.x.is_isomorphic_to(build_Y(d).y)


# -- uniqueness --------------------------------------------------------------------------


def test_uniqueness_all_split_false():
    rep = check_uniqueness(all_split())
    assert rep.alpha.is_zero()
    assert not rep.unique
    assert rep.alpha_cokernel.cardinality() == 2


def test_uniqueness_trivial_when_ext_vanishes():
    # free Q over Z: Ext^1(Q, P) = 0
    z = PresentedModule.zero(ZZ)
    idse = make_ses(zero_morphism(z, Zf), hom(Zf, Zf, [[1]]))
    zz = make_ses(zero_morphism(z, z), zero_morphism(z, z))
    d = Diagram3x3(row_top=zz, row_bottom=idse, col_left=zz, col_right=idse)
    assert check_uniqueness(d).unique


def test_uniqueness_alpha_onto_over_z():
    # free R makes Hom(R (+) S, Z) big enough for alpha to hit the generator
    # of Ext^1(Z/2, Z): P = Z, R = Z, S = 0, Q = Z/2
    z2 = PresentedModule.cyclic(ZZ, 2)
    z = PresentedModule.zero(ZZ)
    rt = split_ses(Zf, Zf)                                    # 0 -> Z -> Z^2 -> Z -> 0
    cl = make_ses(hom(Zf, Zf, [[1]]), zero_morphism(Zf, z))   # S = 0
    rb = make_ses(zero_morphism(z, z2), hom(z2, z2, [[1]]))   # G = Q = Z/2
    cr = make_ses(hom(Zf, Zf, [[2]]), hom(Zf, z2, [[1]]))     # 0 -> Z -> Z -> Z/2 -> 0
    d = Diagram3x3(row_top=rt, row_bottom=rb, col_left=cl, col_right=cr)
    assert validate_diagram1(d) == []
    rep = check_uniqueness(d)
    assert rep.unique


# -- homomorphism extension -----------------------------------------------------------------


def test_extend_homomorphism_divisible_case():
    sub, incl = submodule_generated(Z4m, ExactMatrix.from_cols(R4, [[2]], 1))
    lam = hom(sub, Z4m, [[2]])
    big = extend_homomorphism(lam, incl)
    assert (big @ incl).equals(lam)


def test_extend_homomorphism_obstructed():
    sub, incl = submodule_generated(Z4m, ExactMatrix.from_cols(R4, [[2]], 1))
    lam = hom(sub, Z2m, [[1]])
    with pytest.raises(LambdaNotExtendableError):
        extend_homomorphism(lam, incl)


def test_extend_homomorphism_whole_module():
    lam = hom(Z4m, Z2m, [[1]])
    big = extend_homomorphism(lam, hom(Z4m, Z4m, [[1]]))
    assert big.equals(lam)


# -- compatible isomorphisms ------------------------------------------------------------------


def test_compatible_automorphism_with_itself():
    d = all_split()
    ext = extend_diagram(d)
    phi = compatible_isomorphism(d, ext, ext)
    assert phi.is_isomorphism()


def test_distinct_lift_classes_rejected():
    d = all_split()
    exts = enumerate_extensions(d)
    assert len(exts) == 2
    with pytest.raises(ClassesDifferError):
        compatible_isomorphism(d, exts[0], exts[1])


def test_variant_cocycle_representatives_compatible():
    # P injective here, so any two valid solutions must be compatible
    rng = random.Random(21)
    rt = ses_of_class(ext_module(1, Z2m, Z4m).zero_class())
    ns = ses_of_class(ext_module(1, Z2m, Z2m).class_from_coords((1,)))
    d = Diagram3x3(row_top=rt, row_bottom=ns, col_left=rt, col_right=ns)
    assert is_injective_module(d.p)
    e1 = extend_diagram(d)
    e2 = extend_with_variant_cocycle(rng, d)
    phi = compatible_isomorphism(d, e1, e2)
    assert (phi @ e1.i).equals(e2.i)
    assert (phi @ e1.j).equals(e2.j)
    assert (e2.m @ phi).equals(e1.m)
    assert (e2.n @ phi).equals(e1.n)


def test_perturbed_solutions_compatible_under_injective_p():
    rng = random.Random(31)
    rt = ses_of_class(ext_module(1, Z2m, Z4m).zero_class())
    ns = ses_of_class(ext_module(1, Z2m, Z2m).class_from_coords((1,)))
    d = Diagram3x3(row_top=rt, row_bottom=ns, col_left=rt, col_right=ns)
    base = extend_diagram(d)
    for _ in range(3):
        other = perturb_extension(rng, d, base)
        assert validate_extension(d, other) == []
        phi = compatible_isomorphism(d, base, other)
        assert phi.is_isomorphism()


def test_compatibility_bijective_on_elements():
    d = all_split()
    ext = extend_diagram(d)
    phi = compatible_isomorphism(d, ext, ext)
    seen = set()
    for el in ext.x.elements():
        seen.add(ext.x.canonical_rep(phi.apply(el)))
    assert len(seen) == ext.x.cardinality()


# -- injectivity --------------------------------------------------------------------------------


@pytest.mark.parametrize("module,expected", [
    (Z4m, True),
    (Z2m, False),
    (PresentedModule.zero(R4), True),
    (PresentedModule.from_invariant_factors(R4, [4, 4]), True),
    (PresentedModule.from_invariant_factors(R4, [2, 4]), False),
    # over Z/6 = Z/2 x Z/3, injectivity is componentwise: Z/2 and Z/3 both
    # carry the full prime power of their prime, so they are injective
    (PresentedModule.from_invariant_factors(Zmod(6), [6]), True),
    (PresentedModule.from_invariant_factors(Zmod(6), [2]), True),
    (PresentedModule.from_invariant_factors(Zmod(6), [2, 3]), True),
    (PresentedModule.from_invariant_factors(Zmod(12), [2]), False),
    (PresentedModule.from_invariant_factors(Zmod(12), [3]), True),
    (PresentedModule.cyclic(ZZ, 2), False),
    (PresentedModule.zero(ZZ), True),
])
def test_is_injective_module(module, expected):
    assert is_injective_module(module) is expected


def test_injective_matches_brute_force_small():
    from hexext.oracle import brute_injective
    from tests.conftest import all_modules_over

    for ring in (R4, Zmod(8), Zmod(9)):
        for m in all_modules_over(ring, 16):
            assert is_injective_module(m) == brute_injective(m), m


def test_existence_law_over_composite_moduli():
    # moduli with several primes exercise the unit-rescaling paths
    for m in (6, 12):
        rng = random.Random(m)
        ring = Zmod(m)
        for _ in range(15):
            d = random_diagram(rng, ring, 16)
            zero = obstruction(d).is_zero
            try:
                ext = extend_diagram(d)
                assert validate_extension(d, ext) == [] and zero
            except NotExtendableError:
                assert not zero
