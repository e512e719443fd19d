"""Command-line front end.  JSON on stdout by default; exit 0 / 1 (domain error) / 2 (usage)."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import index as idx
from .charclass import CATALOGUE, CatalogueError, CharClassPoly, catalogue_class, segre_substitute
from .chow import InternalConsistencyError, SpecSyntaxError, build_variety
from .cobordism import (
    check_integral_class,
    fundamental_polynomial,
    hattori_stong_verify,
    lattice_I,
    lattice_L,
    pairing,
)
from .hrr import BundleSyntaxError, euler_characteristic, half_euler_check, parse_bundle, signature
from .symfun import MultiIndex, partitions_of

DOMAIN_ERRORS = (
    ValueError,  # parse, catalogue, lattice and certificate errors all derive from it
    InternalConsistencyError,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _rational(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": q.numerator, "den": q.denominator}


def _partition(text: str) -> MultiIndex:
    try:
        return MultiIndex.from_key(text.replace(",", "+"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}")


def _load_class(name: str, args) -> CharClassPoly:
    if name in CATALOGUE:
        return catalogue_class(name, d=args.d, q=args.q, I=args.partition)
    path = Path(name)
    if not path.exists():
        raise CatalogueError(f"{name!r} is neither a catalogue class ({', '.join(CATALOGUE)}) nor a file")
    return CharClassPoly.from_json(json.loads(path.read_text()))


def _lattice_payload(d: int, L) -> dict:
    out = {"degree": d, "partitions": [sorted(I.parts) for I in partitions_of(d)]}
    out.update(L.to_json())
    if L.is_full_rank:
        out["index"] = _rational(L.index())
    return out


# ---- subcommand bodies; each returns a JSON-serializable dict


def cmd_index_bound(a):
    return {"value": idx.index_bound(a.d, a.N)}


def cmd_chi(a):
    return {"value": idx.chi_hypersurface(a.d, a.n)}


def cmd_gcd_lemma(a):
    chis = [idx.chi_hypersurface(a.d, n) for n in range(1, a.N + 1)]
    return {"holds": idx.verify_gcd_lemma(a.d, a.N), "index_bound": idx.index_bound(a.d, a.N), "chi": chis}


def cmd_threshold(a):
    return {"value": idx.unit_index_threshold(a.d)}


def cmd_fermat(a):
    cert = idx.fermat_certificate(a.d, a.N, a.e)
    out = cert.to_json()
    out["valid"] = cert.check()
    return out


def cmd_fund_poly(a):
    return fundamental_polynomial(build_variety(a.variety)).to_json()


def cmd_lattice(a):
    return _lattice_payload(a.d, lattice_L(a.d))


def cmd_dual_lattice(a):
    return _lattice_payload(a.d, lattice_I(a.d))


def cmd_hattori_stong(a):
    return hattori_stong_verify(a.d, a.max_B).to_json()


def cmd_check_class(a):
    P = _load_class(a.cls, a)
    out = check_integral_class(P).to_json()
    out["class"] = P.to_json()
    return out


def cmd_pair(a):
    P = _load_class(a.cls, a)
    X = build_variety(a.variety)
    if P.degree != X.dimension:
        raise ValueError(f"class has degree {P.degree} but {a.variety} has dimension {X.dimension}")
    if a.tangent:
        P = segre_substitute(P)
    return {"value": _rational(pairing(P, fundamental_polynomial(X)))}


def cmd_chi_bundle(a):
    X = build_variety(a.variety)
    return {"value": euler_characteristic(X, parse_bundle(a.bundle))}


def cmd_signature(a):
    return {"value": signature(build_variety(a.variety))}


def cmd_half_euler(a):
    r = half_euler_check(build_variety(a.variety))
    return {"euler": r.e, "half": r.half, "rho": r.rho_value, "equal": r.equal}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cobindex", description="Index bounds and cobordism lattices, in exact arithmetic.")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", type=Path, help="write output here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, *positionals):
        s = sub.add_parser(name, help=help_)
        for arg, typ, h in positionals:
            s.add_argument(arg, type=typ, help=h)
        s.set_defaults(func=fn)
        return s

    add("index-bound", cmd_index_bound, "I_{d,N}", ("d", int, "degree"), ("N", int, "ambient dimension"))
    add("chi", cmd_chi, "chi(O) of a degree-d hypersurface in P^n", ("d", int, "degree"), ("n", int, "dimension"))
    add("gcd-lemma", cmd_gcd_lemma, "compare I_{d,N} with gcd of chi", ("d", int, "degree"), ("N", int, "bound"))
    add("threshold", cmd_threshold, "smallest N with I_{d,N} = 1", ("d", int, "degree"))
    add("fermat", cmd_fermat, "twisted Fermat certificate",
        ("d", int, "degree"), ("N", int, "ambient dimension"), ("e", int, "field degree"))
    add("fund-poly", cmd_fund_poly, "fundamental polynomial b(X)", ("variety", str, "e.g. P2xH2,3"))
    add("lattice", cmd_lattice, "the cobordism lattice L_d", ("d", int, "degree"))
    add("dual-lattice", cmd_dual_lattice, "the dual lattice I_d", ("d", int, "degree"))
    hs = add("hattori-stong", cmd_hattori_stong, "compare I'_d with I_d", ("d", int, "degree"))
    hs.add_argument("--max-B", dest="max_B", type=int, default=None, help="exponent ceiling (default from COBINDEX_MAX_B)")

    for name, fn, help_ in (("check-class", cmd_check_class, "test a class for integrality"),
                            ("pair", cmd_pair, "evaluate a class on a variety")):
        s = add(name, fn, help_, ("cls", str, "catalogue name or JSON file"))
        if name == "pair":
            s.add_argument("variety", help="variety spec")
            s.add_argument("--tangent", action="store_true",
                           help="evaluate on T_X rather than on -T_X")
        s.add_argument("--d", type=int, default=None)
        s.add_argument("--q", type=int, default=None)
        s.add_argument("--partition", type=_partition, default=None, help="e.g. 1+3")

    add("chi-bundle", cmd_chi_bundle, "chi(X, E) by Riemann-Roch",
        ("variety", str, "variety spec"), ("bundle", str, "bundle expression, e.g. '~T^2 + O(1)'"))
    add("signature", cmd_signature, "signature of an even-dimensional X", ("variety", str, "variety spec"))
    add("half-euler", cmd_half_euler, "e(X)/2 against the rho sum", ("variety", str, "variety spec"))
    return p


def _table(obj, prefix="") -> list[str]:
    lines = []
    if isinstance(obj, dict) and set(obj) == {"num", "den"}:
        return [f"{prefix}: {Fraction(obj['num'], obj['den'])}"]
    if isinstance(obj, dict):
        for k, v in obj.items():
            lines += _table(v, f"{prefix}.{k}" if prefix else str(k))
        return lines
    if isinstance(obj, list) and obj and isinstance(obj[0], list):
        lines.append(f"{prefix}:")
        lines += ["  " + " ".join(str(x) for x in row) for row in obj]
        return lines
    return [f"{prefix}: {json.dumps(obj)}"]


def render(payload: dict, fmt: str) -> str:
    if fmt == "table":
        return "\n".join(_table(payload)) + "\n"
    return json.dumps(payload, sort_keys=False) + "\n"


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str, str]:
    """Returns (exit status, stdout text, stderr text)."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return 2, "", str(exc) + "\n"
    except SystemExit as exc:  # --help
        return int(exc.code or 0), "", ""
    try:
        payload = args.func(args)
    except (SpecSyntaxError, BundleSyntaxError) as exc:
        return 1, "", f"parse error: {exc}\n"
    except DOMAIN_ERRORS as exc:
        return 1, "", f"error: {exc}\n"
    text = render(payload, args.format)
    if args.out is not None:
        args.out.write_text(text)
        return 0, "", ""
    return 0, text, ""


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
