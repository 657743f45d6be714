"""Command-line interface: ``g2braid <command> [options]``.

Reports are JSON on stdout and diagnostics go to stderr.  Exit codes:
0 success, 1 internal error, 2 usage or guard error, 3 synthesis failure,
4 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .bratteli import build_diagram, export
from .braidrep import DEFAULT_MAX_N, assemble
from .catalog import b3_semisimple, classify_W, degeneracy_report, generic_table, subquotient_table, table_json, w_cases
from .dims import admissible_q, classical_dim, qdim
from .errors import (
    ConditionsViolated, G2BraidError, InadmissibleQ, NotExpressible, NotInAlcove, SolverFailed, UnknownFormat,
)
from .fusion import product
from .lattice import LevelRule, Weight
from .qarith import CycloContext, CycNumber, FloatContext, FormalContext, LaurentPoly, QContext, RatFunc
from . import verify

EXIT_OK, EXIT_INTERNAL, EXIT_USAGE, EXIT_SOLVER, EXIT_VERIFY = 0, 1, 2, 3, 4


class UsageError(G2BraidError, ValueError):
    """Bad command-line input detected after argument parsing."""


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def parse_qspec(text: str | None) -> QContext | None:
    """``generic``, ``root:<m>:<e>`` (q = zeta_m^e) or ``float:<re>,<im>``."""
    if text is None:
        return None
    text = text.strip()
    if text == "generic":
        return FormalContext()
    kind, _, rest = text.partition(":")
    if kind == "root":
        try:
            m, e = (int(x) for x in rest.split(":"))
        except ValueError:
            raise UsageError(f"cannot parse {text!r}; expected root:<m>:<e>") from None
        if m < 1 or math.gcd(e, m) != 1:
            raise UsageError(f"root:{m}:{e} is not a primitive root of unity (need gcd(e, m) = 1)")
        return CycloContext(m, e)
    if kind == "float":
        try:
            parts = [float(x) for x in rest.split(",")]
        except ValueError:
            raise UsageError(f"cannot parse {text!r}; expected float:<re>,<im>") from None
        if len(parts) not in (1, 2):
            raise UsageError(f"cannot parse {text!r}; expected float:<re>,<im>")
        q = complex(parts[0], parts[1] if len(parts) == 2 else 0.0)
        if q == 0:
            raise UsageError("q must be nonzero")
        return FloatContext(q)
    raise UsageError(f"unknown q spec {text!r}; use generic, root:<m>:<e> or float:<re>,<im>")


@dataclass
class Config:
    rule: LevelRule
    ctx: QContext | None
    mode: str
    tol: float
    max_n: int
    cache: Path | None
    fmt: str
    seed: int

    @classmethod
    def from_args(cls, args) -> "Config":
        try:
            rule = LevelRule.parse(args.level)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        ctx = parse_qspec(args.q)
        if isinstance(ctx, FloatContext):
            ctx = FloatContext(ctx.q, args.tol)
        return cls(rule, ctx, args.mode, args.tol, args.max_n, Path(args.cache) if args.cache else None,
                   args.format, args.seed)

    def numeric_ctx(self) -> QContext:
        """The q used for synthesis: explicit, or a default for the rule."""
        if self.ctx is None:
            if self.rule.k is None:
                return FloatContext(1.1, self.tol)
            return CycloContext(2 * (self.rule.k + 12), 1)
        if isinstance(self.ctx, FormalContext):
            raise UsageError("synthesis needs a numerical q (root:<m>:<e> or float:<re>,<im>)")
        return self.ctx

    def value_ctx(self) -> QContext:
        return self.ctx if self.ctx is not None else FormalContext()


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------

class FusionCache:
    """Fusion products stored as JSON in ``<dir>/fusion-<version>.json``.

    Keys include the level rule and both factors; the file name carries the
    package version, so a new version never reads stale entries.  Deleting
    the directory is always safe.
    """

    def __init__(self, directory: Path | None):
        self.path = None if directory is None else Path(directory) / f"fusion-{__version__}.json"
        self._data: dict[str, dict] = {}
        if self.path is not None and self.path.exists():
            try:
                self._data = json.loads(self.path.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError):
                self._data = {}

    @staticmethod
    def key(rule: LevelRule, a: Weight, b: Weight) -> str:
        return f"{rule}|{a}|{b}"

    def get(self, rule: LevelRule, a: Weight, b: Weight) -> dict:
        k = self.key(rule, a, b)
        if k not in self._data:
            self._data[k] = product(a, b, rule).to_json()
            self._save()
        return self._data[k]

    def _save(self) -> None:
        if self.path is None:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(self._data, fh, indent=1, sort_keys=True)
        os.replace(tmp, self.path)


# ---------------------------------------------------------------------------
# value formatting
# ---------------------------------------------------------------------------

def _value_json(x, ctx: QContext):
    if isinstance(x, (LaurentPoly, RatFunc)):
        return str(x)
    if isinstance(x, CycNumber):
        z = complex(x)
        return {"exact": x.to_json(), "complex": [z.real, z.imag]}
    z = complex(x)
    return [z.real, z.imag]


def _emit(obj, cfg: Config | None = None) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _weight(text: str) -> Weight:
    try:
        return Weight.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_fuse(args, cfg: Config) -> int:
    a, b = _weight(args.a), _weight(args.b)
    _emit(FusionCache(cfg.cache).get(cfg.rule, a, b))
    return EXIT_OK


def cmd_synth(args, cfg: Config) -> int:
    if args.n > cfg.max_n or args.n < 1:
        raise UsageError(f"n must be between 1 and {cfg.max_n}")
    mu = _weight(args.mu)
    ctx = cfg.numeric_ctx()
    rep = assemble(mu, args.n, cfg.rule, ctx, mode=cfg.mode, tol=cfg.tol, seed=cfg.seed, max_n=cfg.max_n)
    verdicts = verify.report(rep, cfg.tol, burnside=not args.no_burnside)
    ok = all(verdicts)
    _emit({"representation": rep.to_json(), "verdicts": [v.to_json() for v in verdicts], "pass": ok})
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bratteli(args, cfg: Config) -> int:
    diagram = build_diagram(args.n, cfg.rule)
    fmt = cfg.fmt
    if fmt == "text":
        lines = [f"{j}: " + " ".join(f"{w}x{diagram.levels[j][w]}" for w in diagram.vertices(j))
                 for j in range(args.n + 1)]
        _emit("\n".join(lines))
    else:
        _emit(export(diagram, fmt))
    return EXIT_OK


def cmd_dims(args, cfg: Config) -> int:
    mu = _weight(args.mu)
    ctx = cfg.value_ctx()
    value = qdim(mu, ctx, method=args.method)
    if cfg.fmt == "text":
        _emit(str(value) if not isinstance(value, (CycNumber, complex)) else repr(value))
        return EXIT_OK
    _emit({"weight": mu.to_json(), "q": ctx.describe(), "qdim": _value_json(value, ctx),
           "classical": classical_dim(mu)})
    return EXIT_OK


def _eigen_triplet(cfg: Config):
    from .braidrep import eigen_data

    ctx = cfg.numeric_ctx() if not isinstance(cfg.ctx, FormalContext) else cfg.ctx
    eig = eigen_data(ctx)
    return ctx, (eig.l1, eig.l2, eig.l3)


def cmd_catalog(args, cfg: Config) -> int:
    if args.what == "table":
        _emit(table_json())
        return EXIT_OK
    if args.what == "check":
        rows = [("generic", r.label, r.consistency()) for r in generic_table()]
        rows += [("subquotient", s.notation, s.consistency()) for s in subquotient_table()]
        rows += [("w_case", str(c.case), c.consistency()) for c in w_cases()]
        bad = [{"table": t, "row": name, "failed": [k for k, v in c.items() if not v]}
               for t, name, c in rows if not all(c.values())]
        _emit({"rows": len(rows), "failures": bad, "pass": not bad})
        return EXIT_OK if not bad else EXIT_VERIFY
    ctx, lams = _eigen_triplet(cfg)
    if args.what == "classify":
        res = classify_W(*lams, ctx)
        _emit({"q": ctx.describe(), "result": res if isinstance(res, str) else res.to_json()})
    elif args.what == "report":
        _emit({"q": ctx.describe(), **degeneracy_report(*lams, ctx)})
    else:  # b3
        ok, failed = b3_semisimple(*lams, ctx)
        _emit({"q": ctx.describe(), "semisimple": ok, "failed": failed})
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    target = args.target
    if target == "lemma459":
        if args.ell is None:
            raise UsageError("lemma459 needs --ell")
        verdicts = [verify.check_lemma459(args.ell, args.maxdeg)]
    elif target == "tl-obstruction":
        if args.ell is None:
            raise UsageError("tl-obstruction needs --ell")
        verdicts = [verify.check_tl_obstruction(args.ell, cfg.rule)]
    elif target == "recent":
        verdicts = [verify.check_recent_blocks(cfg.rule)]
    elif target == "distinctness":
        if cfg.rule.k is None:
            raise UsageError("distinctness runs over the labels of a level; pass --level")
        from .fusion import alcove_weights
        verdicts = [verify.check_distinctness(w, cfg.rule) for w in alcove_weights(cfg.rule)]
    elif target == "homomorphism":
        verdicts = [verify.check_dim_homomorphism(cfg.rule, None if cfg.ctx is None else cfg.numeric_ctx())]
    elif target == "recursion":
        ctx = cfg.ctx
        verdicts = [verify.check_dim_recursion(cfg.rule, args.maxdeg or 6, ctx)]
    elif target == "admissible":
        _emit(admissible_q(cfg.rule).to_json())
        return EXIT_OK
    else:  # rep
        if args.mu is None or args.n is None:
            raise UsageError("rep needs --mu and --n")
        if args.n > cfg.max_n:
            raise UsageError(f"n must be at most {cfg.max_n}")
        rep = assemble(_weight(args.mu), args.n, cfg.rule, cfg.numeric_ctx(), tol=cfg.tol, seed=cfg.seed,
                       max_n=cfg.max_n)
        verdicts = verify.report(rep, cfg.tol)
    ok = all(verdicts)
    _emit({"verdicts": [v.to_json() for v in verdicts], "pass": ok})
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", default="generic", help="level k >= -2, or 'generic' (default)")
    common.add_argument("--q", default=None, help="generic | root:<m>:<e> | float:<re>,<im>")
    common.add_argument("--mode", choices=("exact", "float"), default="float")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, dest="max_n")
    common.add_argument("--cache", default=None, help="directory for the on-disk fusion cache")
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="g2braid", description="G2 fusion rules and braid representations.")
    parser.add_argument("--version", action="version", version=f"g2braid {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fuse", parents=[common], help="decompose V_a (x) V_b")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("synth", parents=[common], help="assemble braid matrices and verify them")
    p.add_argument("--mu", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--no-burnside", action="store_true", help="skip the span-dimension check")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bratteli", parents=[common], help="Bratteli diagram up to V^(x)n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_bratteli)

    p = sub.add_parser("dims", parents=[common], help="quantum dimension of V_mu")
    p.add_argument("mu")
    p.add_argument("--method", choices=("laurent", "quotient"), default="laurent")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("catalog", parents=[common], help="K3/K4 representation tables")
    p.add_argument("what", choices=("table", "check", "classify", "report", "b3"), nargs="?", default="table")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", parents=[common], help="run a named check")
    p.add_argument("target", choices=("lemma459", "tl-obstruction", "recent", "distinctness", "homomorphism",
                                      "recursion", "admissible", "rep"))
    p.add_argument("--ell", type=int)
    p.add_argument("--maxdeg", type=int)
    p.add_argument("--mu")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = Config.from_args(args)
        return args.func(args, cfg)
    except (SolverFailed, ConditionsViolated) as exc:
        print(f"g2braid: synthesis failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except (UsageError, NotInAlcove, InadmissibleQ, UnknownFormat, NotExpressible, ValueError) as exc:
        print(f"g2braid: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # pragma: no cover - reported as an internal error
        print(f"g2braid: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main_entry() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
