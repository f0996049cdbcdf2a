"""Command-line interface.

Results go to stdout as JSON (or the bare value with --plain); errors go to
stderr as JSON.  Exit codes: 0 success, 2 invalid input, 3 a verification
mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import closed_forms as cf
from .arith import CycloNumber, format_rational
from .lattice import lattice_kernel
from .model import SpecError, enumerate_dirichlet_characters, is_primitive, load_spec
from .snf import smith_normal_form
from .spectral import eigenvalues, galois_integrality_check, spectral_kernel, verify_main_identity
from .torus import evolve_delta, images_kernel, snf_kernel
from .walk import SimConfig, compare_to_exact, simulate

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MISMATCH = 3

METHODS = ("images", "snf", "spectral", "evolve")


class Mismatch(Exception):
    def __init__(self, payload: dict):
        super().__init__("verification mismatch")
        self.payload = payload


# ---------------------------------------------------------------------------
# value formatting


def value_to_json(value) -> dict:
    """Canonical JSON for a Fraction, CycloNumber or complex."""
    if isinstance(value, (int, Fraction)):
        return {"value": format_rational(value)}
    if isinstance(value, CycloNumber):
        out = value.to_json()
        if value.is_rational():
            out["value"] = format_rational(value.to_rational())
        z = complex(value)
        out["approx"] = [z.real, z.imag]
        return out
    z = complex(value)
    return {"approx": [z.real, z.imag]}


def value_from_json(obj: dict):
    """Inverse of value_to_json (floats come back as complex)."""
    if "conductor" in obj:
        return CycloNumber.from_json(obj)
    if "value" in obj:
        return Fraction(obj["value"])
    re, im = obj["approx"]
    return complex(re, im)


def plain(value) -> str:
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    if isinstance(value, CycloNumber):
        if value.is_rational():
            return format_rational(value.to_rational())
        return json.dumps(value.to_json())
    z = complex(value)
    return repr(z)


# ---------------------------------------------------------------------------
# argument parsing helpers


def vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def angle(text: str):
    """'p/q' or an integer is exact; a decimal is read as a float."""
    text = text.strip()
    if any(c in text for c in ".eE") and "/" not in text:
        try:
            return float(text)
        except ValueError:
            pass
    try:
        return Fraction(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read {text!r} as a rational or real number")


def angles(text: str) -> tuple:
    return tuple(angle(t) for t in text.split(","))


def _json_arg(text: str):
    path = Path(text)
    if not text.lstrip().startswith(("[", "{")) and path.exists():
        return json.loads(path.read_text())
    return json.loads(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_kernel(args) -> dict:
    spec = load_spec(args.spec)
    if args.kind == "lattice":
        return {"kernel": "lattice", "result": value_to_json(lattice_kernel(spec, args.x, args.n))}
    y = args.y if args.y else (0,) * spec.d
    methods = METHODS if args.method == "all" else tuple(args.method.split(","))
    for meth in methods:
        if meth not in METHODS:
            raise ValueError(f"unknown method {meth!r}")
    values = {}
    for meth in methods:
        if meth == "images":
            values[meth] = images_kernel(spec, args.x, y, args.n)
        elif meth == "spectral":
            values[meth] = spectral_kernel(spec, args.x, y, args.n)
        elif meth == "evolve":
            values[meth] = evolve_delta(spec, y, args.n).at(args.x)
        else:
            values[meth] = snf_kernel(spec, tuple(a - b for a, b in zip(args.x, y)), args.n)
    first = values[methods[0]]
    out = {"kernel": "torus", "result": value_to_json(first)}
    if len(methods) > 1:
        if spec.exact:
            agree = all(v == first for v in values.values())
        else:
            agree = all(abs(complex(v) - complex(first)) < 1e-9 for v in values.values())
        out["methods"] = {k: value_to_json(v) for k, v in values.items()}
        out["agree"] = agree
        if not agree:
            raise Mismatch(out)
    return out


def cmd_spectrum(args) -> dict:
    spec = load_spec(args.spec)
    return {
        "eigenvalues": [
            {"index": list(d.index), "eigenvalue": value_to_json(d.eigenvalue)} for d in eigenvalues(spec)
        ]
    }


def cmd_verify(args) -> dict:
    spec = load_spec(args.spec)
    if args.what == "main-identity":
        y = args.y if args.y else (0,) * spec.d
        report = verify_main_identity(spec, args.x, y, args.n)
        out = report.to_json()
        if not report.equal:
            raise Mismatch(out)
        return out
    report = galois_integrality_check(spec, args.n)
    out = report.to_json()
    if not report.ok:
        raise Mismatch(out)
    return out


def _character(m: int, index: int):
    chars = enumerate_dirichlet_characters(m)
    if not 0 <= index < len(chars):
        raise ValueError(f"character index must be in 0..{len(chars) - 1}")
    return chars[index]


def cmd_sum(args) -> dict:
    name = args.name
    if name == "cos-power":
        value = cf.cos_power_sum(args.m, args.n, args.beta, args.sine)
        lhs = lambda: cf.cos_power_lhs(args.m, args.n, args.beta, args.sine)
    elif name == "twisted-cos":
        value = cf.additive_twisted_cos_sum(args.m, args.b, args.r, args.alpha, args.n, args.sine)
        lhs = lambda: cf.additive_twisted_lhs(args.m, args.b, args.r, args.alpha, args.n, args.sine)
    elif name == "alternating-S":
        value = cf.alternating_cos_S(args.n, args.m)
        lhs = lambda: cf.alternating_S_lhs(args.n, args.m)
    elif name == "mult-char":
        chi = _character(args.m, args.index)
        value = cf.multiplicative_twisted_sum(chi, args.b, args.alpha, args.n, args.variant)
        lhs = lambda: cf.multiplicative_lhs(chi, args.b, args.alpha, args.n, args.variant)
    elif name == "product-cos":
        beta = args.betas or (0,) * len(args.moduli)
        value = cf.product_cos_power_sum(args.moduli, args.n, beta)
        lhs = lambda: cf.product_cos_lhs(args.moduli, args.n, beta)
    elif name == "combo":
        beta = args.betas or (0, 0)
        value = cf.linear_combo_power_sum(args.m1, args.m2, args.n, beta)
        lhs = lambda: cf.linear_combo_lhs(args.m1, args.m2, args.n, beta)
    else:  # mixed-2d
        value = cf.mixed_cos_sin_2d(args.m1, args.m2, args.a, args.b, args.k, args.alpha1, args.alpha2)
        lhs = lambda: cf.mixed_2d_lhs(args.m1, args.m2, args.a, args.b, args.k, args.alpha1, args.alpha2)
    out = {"sum": name, "result": value_to_json(value)}
    if args.check:
        if not isinstance(value, (Fraction, CycloNumber)):
            raise ValueError("--check needs exact (rational) parameters")
        oracle = cf.brute_force_trig_sum(lhs())
        match = oracle == value
        out["oracle"] = {"result": value_to_json(oracle), "match": match}
        if not match:
            raise Mismatch(out)
    return out


def cmd_snf(args) -> dict:
    matrix = _json_arg(args.matrix)
    if not isinstance(matrix, list) or not matrix or not all(isinstance(r, list) for r in matrix):
        raise ValueError("matrix must be a nonempty JSON array of arrays")
    if len({len(r) for r in matrix}) != 1:
        raise ValueError("matrix rows must have equal length")
    return smith_normal_form([[int(v) for v in row] for row in matrix]).to_json()


def cmd_simulate(args) -> dict:
    spec = load_spec(args.spec)
    config = SimConfig(spec, args.walks, args.n, args.seed, tuple(args.start or ()))
    if args.compare:
        report = compare_to_exact(config, args.sigmas)
        return report.to_json()
    return simulate(config).to_json()


def cmd_characters(args) -> dict:
    out = []
    for i, chi in enumerate(enumerate_dirichlet_characters(args.m)):
        entry = chi.to_json()
        entry.update(index=i, primitive=is_primitive(chi), even=chi.is_even(), real=chi.is_real())
        out.append(entry)
    return {"modulus": args.m, "characters": out}


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heatsums", description="Exact twisted heat kernels and trigonometric sums.")
    p.add_argument("--plain", action="store_true", help="print only the bare result value")
    # accept --plain after the subcommand too; SUPPRESS keeps it from resetting the top-level flag
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--plain", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kernel", parents=[common], help="lattice or torus heat kernel")
    k.add_argument("kind", choices=("lattice", "torus"))
    k.add_argument("--spec", required=True)
    k.add_argument("--x", type=vector, required=True)
    k.add_argument("--y", type=vector)
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--method", default="images", help="images, snf, spectral, evolve, a comma list, or all")
    k.set_defaults(func=cmd_kernel)

    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues of the twisted walk")
    s.add_argument("--spec", required=True)
    s.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", parents=[common], help="exact identity checks")
    v.add_argument("what", choices=("main-identity", "integrality"))
    v.add_argument("--spec", required=True)
    v.add_argument("--x", type=vector)
    v.add_argument("--y", type=vector)
    v.add_argument("--n", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("sum", parents=[common], help="closed-form trigonometric sums")
    q.add_argument("name", choices=("cos-power", "twisted-cos", "alternating-S", "mult-char",
                                    "product-cos", "combo", "mixed-2d"))
    q.add_argument("--m", type=int)
    q.add_argument("--moduli", type=vector, help="product-cos: comma-separated moduli")
    q.add_argument("--n", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("--b", type=int)
    q.add_argument("--r", type=int)
    q.add_argument("--a", type=int)
    q.add_argument("--m1", type=int)
    q.add_argument("--m2", type=int)
    q.add_argument("--index", type=int, default=0, help="mult-char: index into `characters --m`")
    q.add_argument("--variant", choices=(cf.COS, cf.SIN), default=cf.COS)
    q.add_argument("--beta", type=angle, default=Fraction(0))
    q.add_argument("--betas", type=angles)
    q.add_argument("--alpha", type=angle, default=Fraction(0), help="angle as a multiple of pi")
    q.add_argument("--alpha1", type=angle, default=Fraction(0))
    q.add_argument("--alpha2", type=angle, default=Fraction(0))
    q.add_argument("--sine", action="store_true")
    q.add_argument("--check", action="store_true", help="also evaluate the trigonometric side directly")
    q.set_defaults(func=cmd_sum)

    n = sub.add_parser("snf", parents=[common], help="Smith normal form of an integer matrix")
    n.add_argument("--matrix", required=True, help="JSON array of arrays, or a file containing one")
    n.set_defaults(func=cmd_snf)

    w = sub.add_parser("simulate", parents=[common], help="Monte Carlo random walks")
    w.add_argument("--spec", required=True)
    w.add_argument("--walks", type=int, required=True)
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--start", type=vector)
    w.add_argument("--compare", action="store_true")
    w.add_argument("--sigmas", type=float, default=4.0)
    w.set_defaults(func=cmd_simulate)

    c = sub.add_parser("characters", parents=[common], help="Dirichlet characters modulo m")
    c.add_argument("--m", type=int, required=True)
    c.set_defaults(func=cmd_characters)
    return p


_REQUIRED = {
    "cos-power": ("m", "n"),
    "twisted-cos": ("m", "b", "r", "n"),
    "alternating-S": ("n", "m"),
    "mult-char": ("m", "b", "n"),
    "product-cos": ("moduli", "n"),
    "combo": ("m1", "m2", "n"),
    "mixed-2d": ("m1", "m2", "a", "b", "k"),
}


def _error(payload: dict, code: int) -> int:
    print(json.dumps(payload), file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sum":
        missing = [f"--{a}" for a in _REQUIRED[args.name] if getattr(args, a) is None]
        if missing:
            return _error({"error": f"{args.name} needs {', '.join(missing)}"}, EXIT_INVALID)
    if args.command == "verify" and args.what == "main-identity" and args.x is None:
        return _error({"error": "main-identity needs --x"}, EXIT_INVALID)
    try:
        out = args.func(args)
    except SpecError as exc:
        return _error({"error": str(exc), **exc.report.to_json()}, EXIT_INVALID)
    except Mismatch as exc:
        print(json.dumps(exc.payload))
        return _error({"error": "verification mismatch"}, EXIT_MISMATCH)
    except (ValueError, TypeError, OSError, json.JSONDecodeError, ArithmeticError) as exc:
        return _error({"error": str(exc), "type": type(exc).__name__}, EXIT_INVALID)
    if args.plain and "result" in out:
        print(plain(value_from_json(out["result"])))
    else:
        print(json.dumps(out))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
