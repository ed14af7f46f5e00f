"""Literal grammar for scalars and series.

Scalars use integers, ``t``, ``+ - * ^`` and parentheses (``2+t``, ``(1+t)^2``,
``t^-1``).  Series add the variable ``z`` (``ζ`` is accepted too), e.g.
``z + (1+t)*z^3 + z^4``.  A series may carry a header of ``key=value``
settings separated from the body by ``|``::

    p=5, ring=laurent, zprec=40 | z + (1+t)*z^3 + z^4
"""

from __future__ import annotations

from .errors import ParseError
from .rings import LaurentScalar, PrimeField
from .series import FP, LAURENT, TruncatedSeries

# A polynomial is a dict {(zdeg, tdeg): int}.


def _padd(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return {k: v for k, v in out.items() if v}


def _pmul(a, b):
    out = {}
    for (z1, t1), c1 in a.items():
        for (z2, t2), c2 in b.items():
            k = (z1 + z2, t1 + t2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


class _Parser:
    def __init__(self, text, variables):
        self.text = text
        self.pos = 0
        self.variables = variables

    def error(self, msg):
        raise ParseError(msg, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def parse(self):
        if not self.peek():
            self.error("empty expression")
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        if self.take("-"):
            value = _pmul({(0, 0): -1}, self.term())
        else:
            self.take("+")
            value = self.term()
        while True:
            if self.take("+"):
                value = _padd(value, self.term())
            elif self.take("-"):
                value = _padd(value, self.term(), -1)
            else:
                return value

    def term(self):
        value = self.power()
        while True:
            if self.take("*"):
                value = _pmul(value, self.power())
            elif self.peek() in ("(",) or self.peek() in self.variables or self.peek().isdigit():
                # implicit multiplication: 2t, 3z^2, (1+t)z
                value = _pmul(value, self.power())
            else:
                return value

    def power(self):
        base = self.atom()
        if not self.take("^"):
            return base
        self.skip()
        start = self.pos
        neg = self.take("-")
        self.skip()
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            self.error("expected integer exponent")
        e = int(self.text[digits : self.pos])
        if neg:
            if len(base) != 1:
                self.pos = start
                self.error("negative exponent needs a monomial base")
            ((z, t), c), = base.items()
            if z != 0 or c not in (1, -1):
                self.pos = start
                self.error("negative exponent is allowed only on t")
            return {(0, -t * e): c**e}
        out = {(0, 0): 1}
        for _ in range(e):
            out = _pmul(out, base)
        return out

    def atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if not self.take(")"):
                self.error("expected ')'")
            return value
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return {(0, 0): int(self.text[start : self.pos])} if int(self.text[start : self.pos]) else {}
        if ch in self.variables:
            self.pos += 1
            return {(1, 0): 1} if ch in ("z", "ζ") else {(0, 1): 1}
        if not ch:
            self.error("unexpected end of input")
        self.error(f"unexpected {ch!r}")


def parse_poly(text, variables=("t", "z", "ζ")):
    """Parse to a dict {(zdeg, tdeg): int}."""
    return _Parser(text, variables).parse()


def parse_scalar(text, p):
    """Parse a scalar literal into an exact :class:`LaurentScalar` over F_p."""
    PrimeField(p)
    poly = parse_poly(text, variables=("t",))
    return LaurentScalar.from_dict(p, {t: c for (_, t), c in poly.items()})


def parse_header(text):
    """Split ``"k=v, k=v | body"`` into (settings dict, body)."""
    if "|" not in text:
        return {}, text
    head, body = text.split("|", 1)
    settings = {}
    for item in head.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ParseError(f"header entry {item!r} is not key=value", text.find(item))
        k, v = (s.strip() for s in item.split("=", 1))
        settings[k] = v
    return settings, body


def parse_series(text, p=None, ring=None, zprec=None):
    """Parse a series literal; header settings fill in any argument left as None.

    The result is exact.  Its precision is ``zprec`` if given, else the degree
    of the polynomial.
    """
    settings, body = parse_header(text)
    offset = len(text) - len(body)
    if p is None:
        if "p" not in settings:
            raise ParseError("prime p not given", 0)
        p = int(settings["p"])
    if ring is None:
        ring = settings.get("ring")
    if zprec is None and "zprec" in settings:
        zprec = int(settings["zprec"])
    PrimeField(p)
    try:
        poly = parse_poly(body)
    except ParseError as exc:
        pos = None if exc.position is None else exc.position + offset
        raise ParseError(str(exc).split(" (at position")[0], pos) from None
    uses_t = any(t != 0 for (_, t) in poly)
    if ring is None:
        ring = LAURENT if uses_t else FP
    if ring not in (FP, LAURENT):
        raise ParseError(f"unknown ring {ring!r}", 0)
    if ring == FP and uses_t:
        raise ParseError("t appears in an F_p series (use ring=laurent)", offset + body.find("t"))
    by_z = {}
    for (z, t), c in poly.items():
        if z < 0:
            raise ParseError("negative power of z", offset)
        by_z.setdefault(z, {})[t] = c
    if ring == FP:
        coeffs = {z: d.get(0, 0) % p for z, d in by_z.items()}
    else:
        coeffs = {z: LaurentScalar.from_dict(p, d) for z, d in by_z.items()}
    top = max((z for z, c in coeffs.items() if (c if ring == FP else not c.is_zero())), default=1)
    return TruncatedSeries.from_coeffs(p, coeffs, N=zprec if zprec is not None else top, ring=ring, exact=True)
