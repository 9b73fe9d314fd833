"""``gz``: batch front end over the gzsys modules.

Inputs are JSON files and results go to stdout (or ``-o``) as JSON.  Exit codes:
0 success, 1 malformed input, 2 domain error, 3 numerical diagnostic or a failed
self-test.  Failures print ``{"error": code, "detail": ...}``.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from gzsys import jsonio
from gzsys.coords import GZCoord, coord_from_tower, is_disjoint, is_interlacing, phi, tower_from_matrix
from gzsys.errors import DomainError, NumericalError
from gzsys.fiber import is_jacobi, normal_form, symmetric_fiber
from gzsys.flows import FlowKey, act, flow
from gzsys.linalg import DEFAULT_TOL, ToleranceConfig
from gzsys.orthopoly import interlaces, jacobi_matrix, monic_mismatch, recurrence, recurrence_from_tower
from gzsys.poisson import num_bracket, sym_bracket, symbolic_from_expr, symbolic_gradient, verify_gz_commutativity
from gzsys.regularity import is_regular_cutoff, is_strongly_regular, orbit_dim
from gzsys.section import invert_phi, invert_phi_with_subdiag
from gzsys.selftest import run_selftest

EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    """Bad command line; mapped to the malformed-input exit code."""


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    tolerances: ToleranceConfig = field(default_factory=lambda: DEFAULT_TOL)
    n: int | None = None
    output_path: Path | None = None

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        raise UsageError(message)


def parse_complex(text: str) -> complex:
    """``"re,im"`` or ``"re"``."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise jsonio.FormatError(f"expected 're,im', got {text!r}")


def parse_key(text: str) -> FlowKey:
    try:
        k, m = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise jsonio.FormatError(f"expected 'k,m', got {text!r}") from exc
    return FlowKey(k, m)


# -- commands -------------------------------------------------------------------


def _matrix(args):
    return jsonio.matrix_from_json(jsonio.load(args.matrix))


def _coord(args) -> GZCoord:
    if args.coord is not None:
        return jsonio.coord_from_json(jsonio.load(args.coord))
    if getattr(args, "tower", None) is not None:
        return coord_from_tower(jsonio.tower_from_json(jsonio.load(args.tower)))
    raise UsageError("one of --coord or --tower is required")


def cmd_phi(args, cfg: RunConfig):
    return jsonio.coord_to_json(phi(_matrix(args)))


def cmd_invert(args, cfg: RunConfig):
    c = _coord(args)
    if args.subdiag is not None:
        z = jsonio.load(args.subdiag)
        if not isinstance(z, list):
            raise jsonio.FormatError("subdiagonal file must hold a list of complex scalars")
        x = invert_phi_with_subdiag(c, [jsonio.scalar_from_json(v) for v in z])
    else:
        x = invert_phi(c)
    return jsonio.matrix_to_json(x)


def cmd_classify(args, cfg: RunConfig):
    x = _matrix(args)
    tol = cfg.tolerances
    c = phi(x)
    return {
        "n": x.shape[0],
        "regular_per_level": [is_regular_cutoff(x, m, tol) for m in range(1, x.shape[0] + 1)],
        "strongly_regular": is_strongly_regular(x, tol),
        "disjoint": is_disjoint(c, tol),
        "interlacing": is_interlacing(c, tol),
        "orbit_dim": orbit_dim(x, tol),
    }


def cmd_flow(args, cfg: RunConfig):
    return jsonio.matrix_to_json(flow(_matrix(args), parse_key(args.key), parse_complex(args.t)))


def cmd_act(args, cfg: RunConfig):
    w = jsonio.word_from_json(jsonio.load(args.word))
    return jsonio.matrix_to_json(act(_matrix(args), w))


def cmd_fiber(args, cfg: RunConfig):
    tol = cfg.tolerances
    if args.fiber_cmd == "normal-form":
        res = normal_form(_matrix(args), tol)
        return {"canonical": jsonio.matrix_to_json(res.canonical), "word": jsonio.word_to_json(res.word)}
    fib = symmetric_fiber(_coord(args), tol)
    members = []
    for i, x in enumerate(fib.members):
        jac = is_jacobi(x, tol)
        if args.jacobi_only and not jac:
            continue
        members.append(
            {
                "sign_index": int(fib.sign_index[i]),
                "signs": [int(s) for s in fib.signs(i)],
                "jacobi": jac,
                "matrix": jsonio.matrix_to_json(x),
            }
        )
    return {
        "n": fib.c.n,
        "count": len(members),
        "jacobi_count": sum(m["jacobi"] for m in members),
        "members": members,
    }


def cmd_orthopoly(args, cfg: RunConfig):
    mu = jsonio.measure_from_json(jsonio.load(args.measure))
    n = args.n
    if args.ortho_cmd == "jacobi":
        rec = recurrence(mu, n)
        return {
            "n": n,
            "diag": rec.diag.tolist(),
            "offdiag": rec.offdiag.tolist(),
            "matrix": jsonio.matrix_to_json(rec.matrix()),
        }
    x = jacobi_matrix(mu, n)
    spectra = [np.linalg.eigvalsh(x[:m, :m]) for m in range(1, n + 1)]
    gap = monic_mismatch(mu, n)
    _, rebuilt = recurrence_from_tower(tower_from_matrix(x, cfg.tolerances), cfg.tolerances)
    rebuild_err = float(np.max(np.abs(rebuilt - x)))
    interlacing = all(interlaces(spectra[m], spectra[m - 1]) for m in range(1, n))
    return {
        "n": n,
        "monic_mismatch": gap,
        "interlacing": interlacing,
        "reconstruction_error": rebuild_err,
        "ok": bool(gap < cfg.tolerances.eq_tol and interlacing and rebuild_err < cfg.tolerances.eq_tol),
    }


def cmd_poisson(args, cfg: RunConfig):
    if args.poisson_cmd == "verify":
        res = verify_gz_commutativity(args.n)
        return {
            "n": res["n"],
            "pairs": res["pairs"],
            "all_zero": res["all_zero"],
            "nonzero": [[list(a), list(b)] for a, b in res["nonzero"]],
        }
    f = symbolic_from_expr(args.n, args.f)
    g = symbolic_from_expr(args.n, args.g)
    br = sym_bracket(f, g)
    out = {"n": args.n, "bracket": str(br), "is_zero": br.is_zero()}
    if args.matrix is not None:
        x = _matrix(args)
        if x.shape[0] != args.n:
            raise jsonio.FormatError(f"matrix is {x.shape[0]}x{x.shape[0]}, expected n={args.n}")
        out["value"] = jsonio.scalar_to_json(br(x))
        out["numeric_value"] = jsonio.scalar_to_json(num_bracket(symbolic_gradient(f), symbolic_gradient(g), x))
    return out


def cmd_selftest(args, cfg: RunConfig):
    report = run_selftest(cfg.seed, args.n_max, cfg.tolerances)
    return report, (EXIT_OK if report["all_pass"] else EXIT_NUMERIC)


COMMANDS = {
    "phi": cmd_phi,
    "invert": cmd_invert,
    "classify": cmd_classify,
    "flow": cmd_flow,
    "act": cmd_act,
    "fiber": cmd_fiber,
    "orthopoly": cmd_orthopoly,
    "poisson": cmd_poisson,
    "selftest": cmd_selftest,
}


# -- parser ---------------------------------------------------------------------


def _global_flags(parser, suppress: bool):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=default(0), help="RNG seed for randomized commands")
    parser.add_argument("--tol-rank", type=float, default=default(DEFAULT_TOL.rank_tol))
    parser.add_argument("--tol-eq", type=float, default=default(DEFAULT_TOL.eq_tol))
    parser.add_argument("--tol-disjoint", type=float, default=default(DEFAULT_TOL.disjoint_tol))
    parser.add_argument("-o", "--output", type=Path, default=default(None), help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gz", description=__doc__.splitlines()[0])
    _global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("phi", parents=[common], help="GZ coordinates of a matrix")
    p.add_argument("--matrix", required=True)

    p = sub.add_parser("invert", parents=[common], help="cross-section matrix with given coordinates")
    p.add_argument("--coord")
    p.add_argument("--tower")
    p.add_argument("--subdiag", help="JSON list of the n-1 nonzero subdiagonal entries")

    p = sub.add_parser("classify", parents=[common], help="regularity and disjointness report")
    p.add_argument("--matrix", required=True)

    p = sub.add_parser("flow", parents=[common], help="flow of one GZ Hamiltonian")
    p.add_argument("--matrix", required=True)
    p.add_argument("--key", required=True, metavar="K,M")
    p.add_argument("--t", required=True, metavar="RE,IM")

    p = sub.add_parser("act", parents=[common], help="action of a group word")
    p.add_argument("--matrix", required=True)
    p.add_argument("--word", required=True)

    p = sub.add_parser("fiber", parents=[common], help="fiber geometry")
    fsub = p.add_subparsers(dest="fiber_cmd", required=True, parser_class=_Parser)
    q = fsub.add_parser("normal-form", parents=[common])
    q.add_argument("--matrix", required=True)
    q = fsub.add_parser("symmetric", parents=[common])
    q.add_argument("--coord")
    q.add_argument("--tower")
    q.add_argument("--jacobi-only", action="store_true")

    p = sub.add_parser("orthopoly", parents=[common], help="orthogonal polynomials of a discrete measure")
    osub = p.add_subparsers(dest="ortho_cmd", required=True, parser_class=_Parser)
    for name in ("jacobi", "verify"):
        q = osub.add_parser(name, parents=[common])
        q.add_argument("--measure", required=True)
        q.add_argument("--n", type=int, required=True)

    p = sub.add_parser("poisson", parents=[common], help="exact Lie-Poisson brackets")
    psub = p.add_subparsers(dest="poisson_cmd", required=True, parser_class=_Parser)
    q = psub.add_parser("verify", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q = psub.add_parser("bracket", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--f", required=True, help="polynomial in a_ij, e.g. 'a_11*a_22'")
    q.add_argument("--g", required=True)
    q.add_argument("--matrix", help="also evaluate the bracket at this matrix")

    p = sub.add_parser("selftest", parents=[common], help="seeded property sweep")
    p.add_argument("--n-max", type=int, default=5)
    return parser


def _emit(obj, path: Path | None):
    text = jsonio.dumps(obj) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text)


def _fail(code: int, name: str, detail: str) -> int:
    sys.stdout.write(jsonio.dumps({"error": name, "detail": detail}) + "\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(
            seed=args.seed,
            tolerances=ToleranceConfig(args.tol_rank, args.tol_eq, args.tol_disjoint),
            n=getattr(args, "n", None),
            output_path=args.output,
        )
        result = COMMANDS[args.command](args, cfg)
        code = EXIT_OK
        if isinstance(result, tuple):
            result, code = result
        _emit(result, cfg.output_path)
        return code
    except (UsageError, jsonio.FormatError) as exc:
        return _fail(EXIT_INPUT, "malformed_input", str(exc))
    except DomainError as exc:
        return _fail(EXIT_DOMAIN, "domain_error", str(exc))
    except NumericalError as exc:
        return _fail(EXIT_NUMERIC, "numerical_error", str(exc))
    except OSError as exc:
        return _fail(EXIT_INPUT, "malformed_input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
