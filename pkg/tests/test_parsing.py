import pytest

from ramdyn.errors import ParseError
from ramdyn.parsing import parse_header, parse_scalar, parse_series
from ramdyn.rings import LaurentScalar


def test_scalar_literals():
    assert parse_scalar("(1+t)", 5) == LaurentScalar.from_coeffs(5, [1, 1])
    assert parse_scalar("2+t", 5) == LaurentScalar.from_coeffs(5, [2, 1])
    assert parse_scalar("4", 5) == LaurentScalar.constant(5, 4)
    assert parse_scalar("(1+t)^2 - 2*t", 5) == LaurentScalar.from_coeffs(5, [1, 0, 1])
    assert parse_scalar("t^-1", 5).val == -1
    assert parse_scalar("-1", 5) == LaurentScalar.constant(5, 4)


def test_series_literal():
    f = parse_series("z + (1+t)*z^3 + z^4", p=5)
    assert f.ring == "laurent" and f.N == 4 and f.exact
    assert f.coeff(3) == LaurentScalar.from_coeffs(5, [1, 1])
    g = parse_series("z+2z^3", p=7)
    assert g.ring == "fp" and int(g.coeff(3)) == 2


def test_header():
    settings, body = parse_header("p=5, ring=laurent | z + z^3")
    assert settings == {"p": "5", "ring": "laurent"} and body.strip() == "z + z^3"
    f = parse_series("p=7, zprec=20 | z + z^3")
    assert f.p == 7 and f.N == 20


@pytest.mark.parametrize("text,pos", [("z + (1+t*z^3", 12), ("z + $", 4), ("z^", 2)])
def test_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_series(text, p=5)
    assert exc.value.position == pos


def test_t_in_fp_ring_rejected():
    with pytest.raises(ParseError):
        parse_series("z + t*z^2", p=5, ring="fp")


def test_missing_prime():
    with pytest.raises(ParseError):
        parse_series("z + z^3")
