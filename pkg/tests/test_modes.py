from fractions import Fraction

import pytest

from lattice_virasoro.core.correlator import Geometry, InsertionList, Sector
from lattice_virasoro.core.errors import ContourTooSmallError, GeometryMismatchError
from lattice_virasoro.core.lattice import Site
from lattice_virasoro.core.modes import (
    CURRENT_PAIRING, ModeEvaluator, ModeWord, Parity, auto_contours, auto_radii, check_radii, coulomb,
    coulomb_bar, coulomb_central_charge, current, current_bar, expand_word, parity_of_action,
    truncation_bound, virasoro,
)
from lattice_virasoro.core.scalar import I, INV_SQRT_PI, ONE, ZERO
from lattice_virasoro.core.suites import (
    coulomb_current_identity, coulomb_identity, mixed_coulomb_identity, virasoro_current_identity,
    virasoro_identity,
)

A = Sector.ANALYTIC
EMPTY = InsertionList()


def fields(*points, geometry=Geometry.FULL_PLANE):
    return InsertionList.of_fields(*(Site.at(x, y) for x, y in points), geometry=geometry)


@pytest.mark.parametrize('ins, bound', [
    (EMPTY, 1),
    (fields((1, 0)), 3),
    (fields((2, 1)), 7),
    (fields((1, 0), (-1, -1)), 5),
])
def test_truncation_bound(ins, bound):
    assert truncation_bound(ins) == bound


def test_auto_radii():
    assert auto_radii([-4], EMPTY) == [2]
    assert auto_radii([0, 0], fields((1, 0))) == [1, 2]
    assert auto_radii([3, -6], EMPTY) == [0, 3]
    assert auto_radii([0, 0], fields((1, 0)), growth=2) == [3, 4]
    inner, outer = auto_contours([1, 1], fields((1, 1)))
    assert outer.encloses(inner)


def test_check_radii():
    check_radii([1], fields((1, 0)), [1])
    with pytest.raises(ContourTooSmallError):
        check_radii([1], fields((1, 0)), [0])
    with pytest.raises(ContourTooSmallError):
        check_radii([1, 1], fields((1, 0)), [2, 2])
    with pytest.raises(ContourTooSmallError):
        check_radii([1, -8], fields((1, 0)), [1, 2])
    with pytest.raises(ContourTooSmallError):
        check_radii([1], fields((1, 0)), [1, 2])


def test_expand_current_word():
    assert expand_word(ModeWord.of(current(2), current(-1)), EMPTY) == {((A, 2), (A, -1)): Fraction(1)}


def test_expand_sugawara_is_normal_ordered():
    terms = expand_word(ModeWord.of(virasoro(0)), EMPTY)
    assert terms[((A, 0), (A, 0))] == Fraction(1, 2)
    assert terms[((A, -1), (A, 1))] == Fraction(1)
    assert all(word[-1][1] >= 0 for word in terms)


def test_expand_coulomb_adds_current():
    b = Fraction(1, 2)
    plain = expand_word(ModeWord.of(virasoro(1)), EMPTY)
    shifted = expand_word(ModeWord.of(coulomb(1, b)), EMPTY)
    assert shifted[((A, 1),)] == 1
    assert {w: c for w, c in shifted.items() if len(w) == 2} == plain


@pytest.mark.parametrize('point', [(1, 0), (1, 1), (2, -1), (0, 3)])
@pytest.mark.parametrize('n', [1, 2, 3])
def test_current_on_one_field(evaluator, monomials, point, n):
    ins = fields(point)
    expected = -I * INV_SQRT_PI * monomials(n, Site.at(*point))
    assert evaluator.action(ModeWord.of(current(n)), ins) == expected


@pytest.mark.parametrize('n', [-2, -1, 0])
def test_nonpositive_current_on_one_field(evaluator, n):
    assert evaluator.action(ModeWord.of(current(n)), fields((1, 0))) == ZERO


def test_antianalytic_current_is_conjugate(evaluator):
    ins = fields((1, 1))
    for n in (1, 2):
        assert (evaluator.action(ModeWord.of(current_bar(n)), ins)
                == evaluator.action(ModeWord.of(current(n)), ins).conjugate())


def test_heisenberg_on_vacuum(evaluator):
    assert evaluator.action(ModeWord.of(current(1), current(-1)), EMPTY) == ONE
    assert evaluator.action(ModeWord.of(current(-1), current(1)), EMPTY) == ZERO
    assert evaluator.action(ModeWord.of(current(2), current(-2)), EMPTY) == 2


@pytest.mark.parametrize('radii', [[1, 2], [1, 3], [2, 3], [2, 5]])
def test_heisenberg_does_not_depend_on_radii(evaluator, radii):
    assert evaluator.mode_action(ModeWord.of(current(1), current(-1)), EMPTY, radii) == ONE
    assert evaluator.mode_action(ModeWord.of(current(-1), current(1)), EMPTY, radii) == ZERO
    assert evaluator.mode_action(ModeWord.of(current(2), current(-2)), EMPTY, radii) == 2


def test_contour_currents_pair_with_half_weight(evaluator):
    assert CURRENT_PAIRING == Fraction(1, 2)
    assert evaluator.double_integral((A, -1), 1, (A, 1), 2, Geometry.FULL_PLANE) == ONE
    assert evaluator.double_integral((A, 1), 1, (A, -1), 2, Geometry.FULL_PLANE) == ZERO


def test_heisenberg_with_a_field(correlator, monomials):
    ins = fields((1, 0))
    word = ModeWord.of(current(1), current(-1), current(1))
    expected = -I * INV_SQRT_PI
    assert ModeEvaluator(correlator, monomials).action(word, ins) == expected
    assert ModeEvaluator(correlator, monomials, reference=True).action(word, ins) == expected


def test_virasoro_central_term(evaluator):
    up = evaluator.action(ModeWord.of(virasoro(2), virasoro(-2)), EMPTY)
    down = evaluator.action(ModeWord.of(virasoro(-2), virasoro(2)), EMPTY)
    assert up - down == Fraction(1, 2)
    assert evaluator.action(ModeWord.of(virasoro(0)), EMPTY) == ZERO
    assert virasoro_identity(2, -2).residual(evaluator, EMPTY) == ZERO


def test_coulomb_central_term(evaluator):
    b = Fraction(1, 2)
    assert coulomb_central_charge(b) == -2
    up = evaluator.action(ModeWord.of(coulomb(2, b), coulomb(-2, b)), EMPTY)
    down = evaluator.action(ModeWord.of(coulomb(-2, b), coulomb(2, b)), EMPTY)
    assert up - down == -1
    assert coulomb_identity(2, -2, b).residual(evaluator, EMPTY) == ZERO


def test_antianalytic_coulomb(evaluator):
    b = Fraction(1, 2)
    up = evaluator.action(ModeWord.of(coulomb_bar(2, b), coulomb_bar(-2, b)), EMPTY)
    down = evaluator.action(ModeWord.of(coulomb_bar(-2, b), coulomb_bar(2, b)), EMPTY)
    assert up - down == -1
    assert str(coulomb_bar(1, b)) == 'Lbarb[1/2]_1'
    assert parity_of_action(ModeWord.of(coulomb_bar(1, b)), EMPTY) is Parity.MIXED
    assert mixed_coulomb_identity(1, -1, b).residual(evaluator, fields((1, 0))) == ZERO


@pytest.mark.parametrize('sector', [Sector.ANALYTIC, Sector.ANTIANALYTIC])
def test_coulomb_shifts_current_commutator(evaluator, sector):
    b = Fraction(1, 2)
    gen = coulomb if sector is Sector.ANALYTIC else coulomb_bar
    a_gen = current if sector is Sector.ANALYTIC else current_bar
    up = evaluator.action(ModeWord.of(gen(1, b), a_gen(-1)), EMPTY)
    down = evaluator.action(ModeWord.of(a_gen(-1), gen(1, b)), EMPTY)
    assert up - down == 1
    for n, m in [(1, -1), (0, 1), (-1, 1), (2, -2)]:
        assert coulomb_current_identity(n, m, b, sector).residual(evaluator, fields((1, 0))) == ZERO


@pytest.mark.parametrize('n, m', [(0, 1), (1, 1), (-1, 1)])
@pytest.mark.parametrize('point', [(1, 0), (-1, 0), (0, 1), (0, -1)])
def test_virasoro_moves_currents(evaluator, n, m, point):
    assert virasoro_current_identity(n, m).residual(evaluator, fields(point)) == ZERO


def test_virasoro_zero_on_a_field(evaluator):
    ins = fields((1, 0))
    up = evaluator.action(ModeWord.of(virasoro(0), current(1)), ins)
    down = evaluator.action(ModeWord.of(current(1), virasoro(0)), ins)
    assert up - down == I * INV_SQRT_PI


@pytest.mark.parametrize('n, m', [(0, 1), (1, 1), (1, -1)])
def test_half_plane_virasoro_moves_currents(evaluator, n, m):
    ins = fields((0, 1), geometry=Geometry.HALF_PLANE)
    assert virasoro_current_identity(n, m).residual(evaluator, ins) == ZERO


def test_parity(evaluator):
    two = fields((1, 0), (0, 1))
    assert parity_of_action(ModeWord.of(current(1)), two) is Parity.ODD
    assert evaluator.action(ModeWord.of(current(1)), two) == ZERO
    assert parity_of_action(ModeWord.of(virasoro(1)), fields((1, 0))) is Parity.ODD
    assert evaluator.action(ModeWord.of(virasoro(-1)), fields((1, 0))) == ZERO
    assert parity_of_action(ModeWord.of(current(1), current(-1)), EMPTY) is Parity.EVEN
    assert parity_of_action(ModeWord.of(coulomb(1, Fraction(1, 2))), EMPTY) is Parity.MIXED


def test_explicit_radii(evaluator):
    ins = fields((1, 0))
    word = ModeWord.of(current(2))
    assert evaluator.mode_action(word, ins, radii=[3]) == evaluator.action(word, ins)
    with pytest.raises(ContourTooSmallError):
        evaluator.mode_action(word, ins, radii=[0])
    with pytest.raises(ValueError):
        evaluator.mode_action(ModeWord.of(virasoro(0)), ins)


def test_grown_contours_agree(evaluator):
    grown = evaluator.with_growth(2)
    cases = [
        (ModeWord.of(current(1), current(-1)), fields((1, 0))),
        (ModeWord.of(virasoro(-1)), fields((1, 0), (0, 1))),
        (ModeWord.of(virasoro(1), current(-1)), fields((1, 1))),
    ]
    for word, ins in cases:
        assert grown.action(word, ins) == evaluator.action(word, ins)


def test_fast_matches_reference(correlator, monomials):
    fast = ModeEvaluator(correlator, monomials)
    reference = ModeEvaluator(correlator, monomials, reference=True)
    cases = [
        (ModeWord.of(current(1), current(-1)), fields((1, 0), (0, 1))),
        (ModeWord.of(current(2)), fields((1, 1))),
        (ModeWord.of(current(-1), current_bar(1)), EMPTY),
    ]
    for word, ins in cases:
        assert reference.action(word, ins) == fast.action(word, ins)


@pytest.mark.slow
def test_fast_matches_reference_for_sugawara(correlator, monomials):
    fast = ModeEvaluator(correlator, monomials)
    reference = ModeEvaluator(correlator, monomials, reference=True)
    ins = fields((1, 0), (0, 1))
    word = ModeWord.of(virasoro(-1))
    assert reference.action(word, ins) == fast.action(word, ins)


@pytest.mark.parametrize('n', [-1, 0, 1, 2])
def test_half_plane_images(evaluator, n):
    x = Site.at(1, 1)
    half = evaluator.action(ModeWord.of(current(n)), fields((1, 1), geometry=Geometry.HALF_PLANE))
    direct = evaluator.action(ModeWord.of(current(n)), InsertionList.of_fields(x))
    image = evaluator.action(ModeWord.of(current(n)), InsertionList.of_fields(x.conjugate()))
    assert half == direct - image


@pytest.mark.parametrize('n', [-1, 0, 1, 2])
@pytest.mark.parametrize('point', [(0, 1), (1, 2)])
def test_upper_half_fold(evaluator, n, point):
    ins = fields(point, geometry=Geometry.HALF_PLANE)
    assert evaluator.upper_half_action(n, ins) == evaluator.action(ModeWord.of(current(n)), ins)


def test_upper_half_fold_needs_half_plane(evaluator):
    with pytest.raises(GeometryMismatchError):
        evaluator.upper_half_action(1, fields((0, 1)))
