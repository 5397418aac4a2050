"""Command-line front end.

Exit codes: 0 when everything asked for checks out, 1 when a verification
fails (or a derivation stays Unknown), 2 for usage and domain errors.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .bott import bott_omega, bott_tableau, endo_cohomology
from .classify import (
    MultiDegree,
    h0_tz1_nonzero,
    h0_tz_nonzero,
    theorem_main_verdict,
    vmrt_multidegree,
    xi0_trivial,
    xi_equals_xiv_verdict,
    xi_prime_nonzero,
)
from .deduce import Deducer, ReplayError, replay
from .lemmas import LEMMAS, PreconditionError, derive_named
from .lie import (
    EXCEPTIONAL_RANK,
    WeightVec,
    format_table,
    ihss_list,
    ihss_table,
    is_singular,
    longest_root_table,
    root_system,
    theorem85_check,
    weyl_dim,
)
from .report import load_bounds, reproduce
from .sheaves import Space, forms, koszul_complex, structure
from .xi import GaussianVec, check_xi_V, sigma_conic, witness_sweep

log = logging.getLogger("ciflat")

OUTPUT_DIR_ENV = "CIFLAT_OUTPUT_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # one line, not the full usage block
        raise UsageError(f"{self.prog}: {message}")


def multidegree(text: str) -> tuple[int, ...]:
    try:
        degs = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed multi-degree {text!r}; expected e.g. 2,3") from None
    if not degs or any(m < 1 for m in degs):
        raise argparse.ArgumentTypeError(f"malformed multi-degree {text!r}; degrees must be positive")
    return degs


def _verdict(v) -> str:
    if v.is_zero:
        return "Zero"
    return "Nonzero" if v.dim is None else f"Nonzero dim={v.dim}"


def _bool(x: bool) -> str:
    return "true" if x else "false"


# -- handlers ----------------------------------------------------------------------


def cmd_bott(a, out):
    print(_verdict(bott_omega(a.N, a.r, a.p, a.q)), file=out)
    return 0


def cmd_tableau(a, out):
    print(_verdict(bott_tableau(a.N, a.k, a.p, a.q)), file=out)
    return 0


def cmd_endo(a, out):
    print(_verdict(endo_cohomology(a.N, a.k, a.q)), file=out)
    return 0


def _parse_sheaf(text: str, P: Space):
    if text in ("O", "structure"):
        return structure(P)
    kind, _, r = text.partition(":")
    if kind != "omega" or not r.lstrip("-").isdigit():
        raise UsageError(f"--sheaf: expected O or omega:r, got {text!r}")
    return forms(P, int(r))


def cmd_koszul(a, out):
    Z = Space.ci(a.N, a.degrees)
    F = _parse_sheaf(a.sheaf, Space.proj(a.N))
    cx = koszul_complex(Z, F, a.twist)
    print(f"complex: {cx}", file=out)
    D = Deducer()
    (target,) = cx.last.summands
    unknown = False
    for q in range(Z.dim + 1):
        d = D.query(target, q)
        unknown |= d.is_unknown
        print(f"H^{q}({target}) = {d.conclusion()}", file=out)
        if a.trace:
            print(d.to_text(), end="", file=out)
    return 1 if unknown else 0


def _parse_params(items: list[str]) -> dict:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"chase: parameter {item!r} must look like key=value")
        if key == "degrees":
            params[key] = multidegree(value)
        elif key == "clause":
            params[key] = value
        else:
            try:
                params[key] = int(value)
            except ValueError:
                raise UsageError(f"chase: parameter {key} needs an integer, got {value!r}") from None
    return params


def cmd_chase(a, out):
    params = _parse_params(a.params)
    d = derive_named(a.lemma, **params)
    print(f"{a.lemma}: H^{d.q}({d.sheaf}) = {d.conclusion()}", file=out)
    if d.detail:
        print(f"note: {d.detail}", file=out)
    if a.trace:
        print(d.to_text(), end="", file=out)
    if d.is_unknown:
        return 1
    try:
        replay(d)
    except ReplayError as e:
        print(f"replay failed: {e}", file=out)
        return 1
    return 0


def cmd_classify(a, out):
    Z = MultiDegree(a.degrees, a.ambient)
    raw = ",".join(map(str, a.degrees))
    print(f"multi-degree: {raw} -> {list(Z.degrees)} in P{Z.N} (dim {Z.dim})", file=out)
    print(f"h0_tz1_nonzero = {_bool(h0_tz1_nonzero(Z))}", file=out)
    print(f"h0_tz_nonzero = {_bool(h0_tz_nonzero(Z))}", file=out)
    print(f"xi_prime = {_bool(xi_prime_nonzero(Z))}", file=out)
    print(f"xi0_trivial = {_bool(xi0_trivial(Z))}", file=out)
    print(f"main = {theorem_main_verdict(Z, a.covered_by_lines, a.in_hypersurface)}", file=out)
    print(f"xi_equals_xiv = {_bool(xi_equals_xiv_verdict(Z, a.covered_by_lines, a.in_hypersurface))}", file=out)
    if a.covered_by_lines:
        try:
            C = vmrt_multidegree(Z)
            print(f"vmrt = {list(C.degrees)} in P{C.N}", file=out)
        except ValueError as e:
            print(f"vmrt = none ({e})", file=out)
    return 0


def cmd_xi(a, out):
    rep = witness_sweep(a.grid, a.samples, a.seed)
    e = [GaussianVec.basis(3, i) for i in range(3)]
    separated = not check_xi_V(sigma_conic(), e[0], e[1])
    print(f"grid points: {rep.grid_points}, tangent checks: {rep.grid_checks}", file=out)
    print(f"random tangents: {rep.random_tangent_checks}, contractions: {rep.contraction_checks}", file=out)
    print(f"failures: {rep.failures}", file=out)
    print(f"sigma_conic outside Xi_V: {_bool(separated)}", file=out)
    return 0 if rep.ok and separated else 1


def _system(kind: str, nums: list[int]):
    """Split TYPE [RANK] args...: exceptional types carry their own rank."""
    kind = kind.upper()
    if kind in EXCEPTIONAL_RANK:
        rank = EXCEPTIONAL_RANK[kind]
        if len(nums) > 1 and nums[0] == rank:
            nums = nums[1:]
        return root_system(kind), nums
    if not nums:
        raise UsageError(f"lie: type {kind} needs a rank")
    return root_system(kind, nums[0]), nums[1:]


def cmd_lie(a, out):
    if a.lie_cmd == "table":
        rows = ihss_table() if a.which == "ihss" else longest_root_table()
        print(format_table(rows, a.format), end="", file=out)
        return 0
    if a.lie_cmd == "check85":
        ok = theorem85_check(a.family, a.n)
        print(_bool(ok), file=out)
        return 0 if ok else 1
    g, rest = _system(a.type, a.args)
    if a.lie_cmd == "dim":
        if len(rest) == 1:
            lam = WeightVec.fundamental(g.rank, rest[0])
        elif len(rest) == g.rank:
            lam = WeightVec(tuple(rest))
        else:
            raise UsageError(f"lie dim: give k or {g.rank} weight coefficients")
        print(weyl_dim(g, lam), file=out)
        return 0
    if a.lie_cmd == "singular":
        if len(rest) != g.rank:
            raise UsageError(f"lie singular: need {g.rank} weight coefficients")
        print(_bool(is_singular(g, WeightVec(tuple(rest)))), file=out)
        return 0
    if a.lie_cmd == "ihss":
        print(" ".join(map(str, ihss_list(g))), file=out)
        return 0
    raise UsageError(f"lie: unknown command {a.lie_cmd!r}")  # pragma: no cover


def _resolve_out(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def cmd_reproduce(a, out):
    bounds = {}
    if a.config:
        try:
            bounds = load_bounds(Path(a.config).read_text())
        except OSError as e:
            raise UsageError(f"--config: cannot read {a.config}: {e.strerror}") from None
        except ValueError as e:
            raise UsageError(f"--config: {e}") from None
    rep = reproduce(a.seed, bounds)
    text = rep.to_json() if a.format == "json" else rep.to_markdown()
    if a.out:
        dest = _resolve_out(a.out)
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
        log.info("wrote %s", dest)
    else:
        out.write(text)
    return 0 if rep.ok else 1


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ciflat", description="Exact cohomology and Lie-theoretic checks for complete intersections.")
    p.add_argument("--version", action="version", version=f"ciflat {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("bott", help="H^q(P^N, Omega^r(p))")
    for name in ("N", "r", "p", "q"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_bott)

    s = sub.add_parser("tableau", help="H^q(P^N, Omega^{T_k}(p))")
    for name in ("N", "k", "p", "q"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_tableau)

    s = sub.add_parser("endo", help="H^q(P^N, T (x) Omega (k))")
    for name in ("N", "k", "q"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_endo)

    s = sub.add_parser("koszul", help="cohomology of F|_Z(t) through the Koszul complex")
    s.add_argument("N", type=int)
    s.add_argument("degrees", type=multidegree, metavar="m1,...,mc")
    s.add_argument("--sheaf", default="O", help="O (default) or omega:r")
    s.add_argument("--twist", type=int, default=0)
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_koszul)

    s = sub.add_parser("chase", help="run a named derivation")
    s.add_argument("lemma", choices=sorted(LEMMAS))
    s.add_argument("params", nargs="*", metavar="key=value")
    s.add_argument("--trace", action="store_true")
    s.set_defaults(func=cmd_chase)

    s = sub.add_parser("classify", help="closed-form verdicts for a multi-degree")
    s.add_argument("degrees", type=multidegree, metavar="m1,...,mc")
    s.add_argument("--ambient", type=int, required=True, metavar="N")
    s.add_argument("--covered-by-lines", action="store_true")
    s.add_argument("--in-hypersurface", type=int, metavar="d")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("xi", help="the conic witness")
    s.add_argument("which", choices=["conic"])
    s.add_argument("--grid", type=int, default=20)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_xi)

    s = sub.add_parser("lie", help="root systems and Weyl dimensions")
    lie = s.add_subparsers(dest="lie_cmd", required=True, parser_class=_Parser)
    t = lie.add_parser("table")
    t.add_argument("which", choices=["ihss", "roots"])
    t.add_argument("--format", choices=["text", "json"], default="text")
    for name in ("dim", "singular", "ihss"):
        t = lie.add_parser(name)
        t.add_argument("type")
        t.add_argument("args", type=int, nargs="*")
    t = lie.add_parser("check85")
    t.add_argument("family", choices=["Spinor", "Lagrangian", "spinor", "lagrangian"])
    t.add_argument("n", type=int)
    s.set_defaults(func=cmd_lie)

    s = sub.add_parser("reproduce", help="rerun every sweep and emit a report")
    s.add_argument("--format", choices=["json", "md"], default="md")
    s.add_argument("--out", metavar="PATH")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--config", metavar="PATH", help="key = value file overriding sweep bounds")
    s.set_defaults(func=cmd_reproduce)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return 2
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"ciflat: {e}", file=sys.stderr)
        return 2
    except (PreconditionError, ValueError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"ciflat {args.cmd}: {msg}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
