"""Command line front end.

Every command prints flat ``key=value`` lines and ends with
``verdict=pass|fail|inconclusive``.  Exit status: 0 when verified, 2 when a
verification fails, 1 on usage or precision errors.

Random sampling (``fuzz``, ``mainlemma --fuzz``, ``lemmas``) derives one child
seed per sample from ``--seed`` with ``numpy.random.SeedSequence.spawn`` and
draws from ``numpy.random.default_rng(child)``.  The same seed therefore gives
byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import closed_form as cf
from . import newton as nw
from . import padic_sums as ps
from . import ramification as rm
from . import recurrences as rc
from .errors import InternalInconsistency, LambdaZero, RamdynError, UnsupportedPrime
from .parsing import parse_series
from .series import TruncatedSeries, iterate_p_power, reduce_series

EXAMPLES = {
    "q1": "p=5, ring=laurent | z + (1+t)*z^3 + z^4",
    "q2": "p=5, ring=laurent | z + (2+t)*z^3 + 4*z^4 + 4*z^5",
    "sphere": "p=5, ring=laurent | z + t*z^3 + z^4",
}


class Out:
    def __init__(self, stream):
        self.stream = stream
        self.failed = False
        self.unsure = False

    def __call__(self, key, value):
        self.stream.write(f"{key}={value}\n")

    def check(self, key, ok):
        self(key, "pass" if ok else "fail")
        if not ok:
            self.failed = True

    def verdict(self):
        v = "fail" if self.failed else ("inconclusive" if self.unsure else "pass")
        self("verdict", v)
        return 2 if self.failed else 0


def _rngs(seed, count):
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(count)]


def _series(args):
    if not args.f:
        raise SystemExit("--f is required for this command")
    return parse_series(args.f, p=args.p, ring=args.ring)


def _random_parabolic(p, rng):
    a = {j: int(rng.integers(p)) for j in (2, 3, 4, 5)}
    return TruncatedSeries.parabolic(p, a, N=6, ring="fp")


def _policy(args):
    return rm.PrecisionPolicy(start=args.zprec, budget=args.budget)


def _fmt(x):
    return str(x)


# -- commands --------------------------------------------------------------------


def cmd_ramify(args, out):
    f = _series(args)
    out("p", f.p)
    out("f", f)
    prof = rm.profile(f, args.depth, _policy(args))
    for e in prof.entries:
        out(f"i_{e.n}", _fmt(e.i))
        out(f"mu_{e.n}", "none" if e.mu is None else e.mu)
        if not e.finite():
            out.unsure = True
    out("certified_precision", prof.certified_precision)
    out.check("sen", rm.sen_check(prof))


def cmd_classify(args, out):
    f = _series(args)
    out("p", f.p)
    prof = rm.profile(f, args.depth, _policy(args))
    out("profile", ",".join(map(_fmt, prof.values())))
    c = rm.classify(prof)
    out("classification", c)
    if c.kind == "inconclusive":
        out.unsure = True


def cmd_thmb(args, out):
    f = _series(args)
    n = args.n
    c = cf.thmB_coeffs(f, n)
    for k in ("n", "d", "phi", "alpha", "beta", "gamma"):
        out(k, getattr(c, k))
    out("lambda", "undefined" if c.lam is None else c.lam)
    out("degree", c.degree)
    if cf.is_zero_scalar(c.phi):
        out("note", "phi=0; the closed form predicts zero coefficients here")
    g = iterate_p_power(f.truncate(c.degree + 2), n, args.budget).minus_identity()
    low = all(cf.is_zero_scalar(g.coeff(k)) for k in range(2, c.degree))
    out.check("low_terms_vanish", low)
    got = [g.coeff(c.degree + i) for i in range(3)]
    out("brute_force", ",".join(map(str, got)))
    out.check("match", got == list(c.triple()))


def cmd_mainlemma(args, out):
    p = args.p
    if p is None:
        raise SystemExit("--p is required")
    if args.fuzz:
        bad = 0
        for rng in _rngs(args.seed, args.fuzz):
            f = _random_parabolic(p, rng)
            c = cf.thmB_coeffs(f, 1)
            g = iterate_p_power(f.truncate(2 * p + 5), 1).minus_identity()
            ok = all(int(g.coeff(k)) == 0 for k in range(2, 2 * p + 3))
            ok = ok and [g.coeff(2 * p + 3 + i) for i in range(3)] == list(c.triple())
            bad += not ok
        out("samples", args.fuzz)
        out("mismatches", bad)
        out.check("fuzz", bad == 0)
    if args.symbolic or not args.fuzz:
        r = rc.verify_main_lemma_symbolic(p)
        for k in "CDE":
            out(f"{k}_p", r.values[k])
        for k, diff in r.mismatches.items():
            out(f"mismatch_{k}", diff)
        out.check("symbolic", r.passed)


def _lemma_families(args):
    if args.family:
        tag = args.family
        k = ps.ARITY.get(tag)
        if k is None:
            raise SystemExit(f"unknown family {tag!r}")
        return [ps.SumFamily(tag, tuple(int(r.integers(-10, 11)) for _ in range(k))) for r in _rngs(args.seed, 3 if k else 1)]
    fams = []
    for tag, k in ps.ARITY.items():
        if tag in ("K", "H", "HPrime"):
            continue
        for r in _rngs([args.seed, len(fams)], 3 if k else 1):
            fams.append(ps.SumFamily(tag, tuple(int(r.integers(-10, 11)) for _ in range(k))))
    return fams


def cmd_lemmas(args, out):
    p = args.p
    if p is None:
        raise SystemExit("--p is required")
    out("p", p)
    for fam in _lemma_families(args):
        try:
            chk = ps.reduce_family(fam, p)
        except UnsupportedPrime as exc:
            out("family", f"{fam} skipped ({exc})")
            continue
        line = f"{fam} nu={chk.valuation} reduced={chk.reduced} table={chk.table}"
        if ps.residue_applicable(fam, p):
            line += f" residue={ps.residue_reduce(fam, p)}"
            ok = chk.match is not False and ps.residue_reduce(fam, p) == chk.reduced
        else:
            ok = chk.match is not False
        out("family", line)
        out.check(f"family_{fam}", ok)
    if args.family:
        return
    if p >= 5:
        h, hp = ps.harmonic_pair(p)
        out("harmonic", f"{h},{hp}")
        out.check("harmonic_sum_zero", (h + hp) == 0)
        out.check("wilson", all(ps.wilson_product(a, b, p) == -1 for a in range(1, p) for b in range(0, p, max(1, p // 5))))
    if p >= 7:
        ks = [k for k in range(0, (p + 3) // 2)]
        out.check("K_integral", all(ps.nu_p(ps.eval_K(p, k), p) >= 0 for k in ks))
        out.check("K_closed_form", all(ps.eval_K(p, k) == ps.K_closed(p, k) for k in ks))
        out.check("Fprime_zero", ps.reduce_mod_p(ps.eval_F_families("FPrime", lambda j: j * j + 1, p), p) == 0)
        f = lambda j: 3 * j + 2  # noqa: E731
        out.check("F_reduction", ps.reduce_mod_p(ps.eval_F_families("F", f, p), p) == ps.F_expected(f, p))


def _periodic_lines(out, f, n, args):
    rep = nw.periodic_report(f, n, start=args.zprec, budget=args.budget, tprec=args.tprec)
    out(f"polygon_n{n}", rep.polygon)
    out(f"slopes_n{n}", ",".join(str(s) for s in rep.polygon.slopes()))
    out(f"quotient_ord_n{n}", rep.quotient_ord)
    out(f"quotient_wideg_n{n}", rep.quotient_wideg)
    out(f"valuations_n{n}", ",".join(f"{v}x{c}" for v, c in rep.buckets) or "none")
    return rep


def cmd_newton(args, out):
    f = _series(args)
    out("f", f)
    rep = _periodic_lines(out, f, args.n, args)
    try:
        bound = nw.lambda_bound(f)
    except (LambdaZero, UnsupportedPrime) as exc:
        out("bound", f"none ({exc})")
        out.unsure = True
        return
    out("v_lambda_over_p", bound)
    out.check("periodic_bound", all(v <= bound for v, _ in rep.buckets))
    out("on_sphere", "yes" if all(v == bound for v, _ in rep.buckets) else "no")


def cmd_example(args, out):
    name = args.name
    f = parse_series(EXAMPLES[name])
    out("example", name)
    out("f", f)
    prof = rm.profile(reduce_series(f), 1)
    i0, i1 = prof.values()
    out("i0_reduced", i0)
    out("i1_reduced", i1)
    lam = cf.lambda_(f)
    out("lambda", lam)
    bound = nw.lambda_bound(f)
    out("v_lambda_over_p", bound)
    rep = _periodic_lines(out, f, 1, args)
    vals = [v for v, _ in rep.buckets]
    cc = nw.check_corollary_C(f, depth=args.depth)
    out("sphere_hypothesis", "holds" if cc.hypothesis else "fails")
    out("sphere_conclusion", "holds" if cc.conclusion else "fails")
    out.check("lambda_nonzero", bool(lam))
    if name == "q1":
        out.check("i0", i0 == 2)
        out.check("i1", i1 == 17)
        out.check("on_sphere", bool(vals) and all(v == bound for v in vals))
    elif name == "q2":
        out.check("i0", i0 == 2)
        out.check("i1", i1 == 27)
        out.check("inside_sphere", bool(vals) and all(v < bound for v in vals))
    else:
        out.check("three_ramified_precheck", nw.three_ramified_precheck(f))
        out.check("on_sphere", cc.hypothesis and cc.conclusion)


def cmd_fuzz(args, out):
    p = args.p
    if p is None:
        raise SystemExit("--p is required")
    count = args.fuzz or 50
    sen_bad = lam_bad = thm_bad = unsure = 0
    for rng in _rngs(args.seed, count):
        f = _random_parabolic(p, rng)
        prof = rm.profile(f, args.depth, _policy(args))
        sen_bad += not rm.sen_check(prof)
        cls = rm.classify(prof)
        if cls.kind == "inconclusive":
            unsure += 1
        c = cf.thmB_coeffs(f, 1)
        alpha = c.alpha
        g = iterate_p_power(f.truncate(c.degree + 2), 1).minus_identity()
        thm_bad += [g.coeff(c.degree + i) for i in range(3)] != list(c.triple())
        two = cls.is_b_ramified(2)
        if (not cf.is_zero_scalar(alpha)) != two and cls.kind != "inconclusive":
            lam_bad += 1
    out("samples", count)
    out("inconclusive", unsure)
    out.check("sen", sen_bad == 0)
    out.check("alpha_nonzero_iff_2_ramified", lam_bad == 0)
    out.check("thmb", thm_bad == 0)


COMMANDS = {
    "ramify": cmd_ramify,
    "classify": cmd_classify,
    "thmb": cmd_thmb,
    "mainlemma": cmd_mainlemma,
    "lemmas": cmd_lemmas,
    "newton": cmd_newton,
    "example": cmd_example,
    "fuzz": cmd_fuzz,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, help="odd prime below 2^16")
    common.add_argument("--ring", choices=["fp", "laurent"])
    common.add_argument("--f", help="series text, e.g. 'z + (1+t)*z^3 + z^4'")
    common.add_argument("--zprec", type=int, help="starting zeta-precision")
    common.add_argument("--tprec", type=int, default=32, help="relative t-precision for inverses")
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--depth", type=int, default=2)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="composition budget (default $RAMDYN_BUDGET or 10^6)")
    common.add_argument("--family", help="sum family tag, e.g. SHat")
    common.add_argument("--symbolic", action="store_true")
    common.add_argument("--fuzz", type=int, default=0, help="number of random samples")

    parser = argparse.ArgumentParser(prog="ramdyn", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "example":
            sp.add_argument("name", choices=sorted(EXAMPLES))
    return parser


def main(argv=None, stream=None):
    stream = stream or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Out(stream)
    out("command", args.command)
    try:
        COMMANDS[args.command](args, out)
    except InternalInconsistency as exc:
        out("error", f"internal inconsistency: {exc}")
        out.failed = True
    except SystemExit as exc:
        if isinstance(exc.code, str):
            out("error", exc.code)
            out("verdict", "inconclusive")
            return 1
        raise
    except (RamdynError, ValueError) as exc:
        out("error", f"{type(exc).__name__}: {exc}")
        out("verdict", "inconclusive")
        return 1
    return out.verdict()


if __name__ == "__main__":
    sys.exit(main())
