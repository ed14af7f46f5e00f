"""Lower ramification numbers i_n, their leading coefficients mu_n, and classification."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalInconsistency, PrecisionExhausted
from .series import AtLeast, ord_delta, iterate_p_power


def geometric(p: int, n: int) -> int:
    """1 + p + ... + p^n."""
    return (p ** (n + 1) - 1) // (p - 1)


@dataclass(frozen=True)
class PrecisionPolicy:
    """Start at ``2(1+...+p^n) + 6`` (or ``start``) and double up to ``max_N``."""

    start: int | None = None
    max_N: int | None = None
    doublings: int = 3
    budget: int | None = None

    def initial(self, p, n):
        return self.start if self.start is not None else 2 * geometric(p, n) + 6

    def ceiling(self, p, n):
        if self.max_N is not None:
            return self.max_N
        return self.initial(p, n) * 2**self.doublings


@dataclass(frozen=True)
class RamEntry:
    n: int
    i: object  # int or AtLeast
    mu: object  # scalar or None
    N: int

    def finite(self):
        return not isinstance(self.i, AtLeast)


def ram_number(f, n, policy=None):
    """Return (i_n, mu_n) for parabolic f; i_n is AtLeast(N) if f^(p^n) = id to precision N."""
    e = ram_entry(f, n, policy)
    return e.i, e.mu


def ram_entry(f, n, policy=None) -> RamEntry:
    if not f.is_parabolic():
        raise ValueError("ram_number needs a parabolic series (f(0)=0, f'(0)=1)")
    policy = policy or PrecisionPolicy()
    N = policy.initial(f.p, n)
    top = policy.ceiling(f.p, n)
    if not f.exact:
        N = min(N, f.N)
        top = f.N
    while True:
        g = iterate_p_power(f.truncate(N), n, policy.budget)
        o, lead = ord_delta(g)
        if not isinstance(o, AtLeast):
            return RamEntry(n, o - 1, lead, N)
        if N >= top:
            return RamEntry(n, AtLeast(N), None, N)
        N = min(2 * N, top)


@dataclass
class RamificationProfile:
    p: int
    entries: list = field(default_factory=list)
    certified_precision: int | None = None

    @classmethod
    def from_values(cls, p, values):
        return cls(p, [RamEntry(n, v, None, None) for n, v in enumerate(values)])

    def values(self):
        return [e.i for e in self.entries]

    def validate(self):
        """Raise InternalInconsistency if a theorem-guaranteed property fails."""
        if not sen_check(self):
            raise InternalInconsistency(f"Sen congruence violated by {self.values()} (p={self.p})")
        vals = self.values()
        if vals and not isinstance(vals[0], AtLeast) and vals[0] >= 1:
            for e in self.entries:
                if e.finite() and e.i < geometric(self.p, e.n):
                    raise InternalInconsistency(
                        f"i_{e.n} = {e.i} is below the lower bound {geometric(self.p, e.n)}"
                    )
        return self


def profile(f, depth=2, policy=None) -> RamificationProfile:
    """i_0..i_depth with mu values; validated against Sen's congruence."""
    entries = [ram_entry(f, n, policy) for n in range(depth + 1)]
    N = max(e.N for e in entries)
    return RamificationProfile(f.p, entries, N).validate()


def sen_check(prof: RamificationProfile) -> bool:
    p = prof.p
    ents = prof.entries
    for prev, cur in zip(ents, ents[1:]):
        if prev.finite() and cur.finite():
            if (cur.i - prev.i) % p**cur.n:
                return False
    return True


@dataclass(frozen=True)
class Classification:
    kind: str  # minimally_ramified | b_ramified | other | inconclusive
    b: int | None
    depth: int

    def __str__(self):
        if self.kind == "b_ramified":
            return f"BRamified({self.b}) up to depth {self.depth}"
        if self.kind == "minimally_ramified":
            return f"MinimallyRamified up to depth {self.depth}"
        if self.kind == "inconclusive":
            return f"Inconclusive (lower bounds only, depth {self.depth})"
        return "Other"

    def is_b_ramified(self, b):
        if b == 1:
            return self.kind == "minimally_ramified"
        return self.kind == "b_ramified" and self.b == b


def classify(prof: RamificationProfile) -> Classification:
    depth = len(prof.entries) - 1
    if any(not e.finite() for e in prof.entries):
        return Classification("inconclusive", None, depth)
    b = prof.entries[0].i
    if b >= 1 and all(e.i == b * geometric(prof.p, e.n) for e in prof.entries):
        kind = "minimally_ramified" if b == 1 else "b_ramified"
        return Classification(kind, b, depth)
    return Classification("other", None, depth)


def require_finite(entry: RamEntry):
    if not entry.finite():
        raise PrecisionExhausted(f"i_{entry.n} is only known to be {entry.i} (raise zprec)")
    return entry.i
