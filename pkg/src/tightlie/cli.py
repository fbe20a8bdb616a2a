"""Command-line front end.

Exit codes: 0 success, 1 usage error (bad flags, unknown descriptor, missing
or unreadable file), 2 validation failure (the input is not a Cartan-respecting
homomorphism, or its matrices do not lie in the declared algebras).
"""

from __future__ import annotations

import argparse
import io
import itertools
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from .hom_catalog import (
    LieHom,
    compose,
    corner_su,
    diagonal_disk,
    direct_sum_hom,
    hom_from_json,
    hom_to_json,
    identity,
    irreducible_sl2_to_sp,
    sp4_embeddings,
    sym2_su12_to_su24,
)
from .lie_core import Family, NotInSubalgebra, parse_algebra, sl2_elements, trace_pairing
from .tightness import (
    check_cartan,
    check_homomorphism,
    hermitian_hull,
    isotypic_decomposition,
    tightness_report,
)
from .domain_geom import domains as dg
from .domain_geom import search

__all__ = ["main", "parse_hom", "load_hom", "emit_report", "UsageError", "ValidationError"]


class UsageError(Exception):
    pass


class ValidationError(Exception):
    def __init__(self, message: str, detail: Optional[dict] = None):
        super().__init__(message)
        self.detail = detail or {}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# descriptors

_SP4 = {"iA": ("iA", "A"), "iB": ("iB", "B"), "iA@B": ("iA", "B"), "iB@A": ("iB", "A")}


def parse_hom(text: str) -> LieHom:
    """Catalog homomorphism from a descriptor such as ``irrep:sp(4)`` or ``compose:iA,diag:sl(2,R)``."""
    text = text.strip()
    if text in _SP4:
        return sp4_embeddings()[_SP4[text]]
    head, sep, rest = text.partition(":")
    if not sep:
        raise UsageError(f"unknown homomorphism descriptor {text!r}")
    try:
        if head == "diag":
            return diagonal_disk(parse_algebra(rest))
        if head == "id":
            return identity(parse_algebra(rest))
        if head == "irrep":
            g = parse_algebra(rest)
            if g.family is not Family.SP:
                raise UsageError("irrep targets sp(2n)")
            return irreducible_sl2_to_sp(g.params[0])
        if head == "sym2" and rest == "su12-su24":
            return sym2_su12_to_su24()
        if head == "corner":
            nums = [int(x) for x in rest.split(",")]
            if len(nums) != 4:
                raise UsageError("corner takes p1,q1,p2,q2")
            return corner_su(*nums)
        if head == "sum":
            return direct_sum_hom([parse_hom(part) for part in rest.split("+")])
        if head == "compose":
            return _parse_compose(rest)
    except UsageError:
        raise
    except ValueError as e:
        raise UsageError(f"{text!r}: {e}") from None
    raise UsageError(f"unknown homomorphism descriptor {text!r}")


def _parse_compose(rest: str) -> LieHom:
    # descriptors contain commas themselves, so try every split point
    last = None
    for i, ch in enumerate(rest):
        if ch != ",":
            continue
        try:
            f, g = parse_hom(rest[:i]), parse_hom(rest[i + 1:])
        except UsageError as e:
            last = e
            continue
        return compose(f, g)
    raise UsageError(f"cannot split compose arguments {rest!r}" + (f" ({last})" if last else ""))


def load_hom(path: str) -> LieHom:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from None
    try:
        return hom_from_json(data)
    except NotInSubalgebra as e:
        raise ValidationError(str(e)) from None
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise ValidationError(f"malformed homomorphism: {e}") from None


def _resolve(args) -> LieHom:
    if args.file:
        if args.target:
            raise UsageError("give either a descriptor or --file, not both")
        return load_hom(args.file)
    if not args.target:
        raise UsageError("a homomorphism descriptor or --file is required")
    return parse_hom(args.target)


def _validate(rho: LieHom) -> None:
    w = check_homomorphism(rho)
    if not w:
        raise ValidationError("not a homomorphism", {
            "pair": list(w.pair), "residual": w.residual.to_json(),
        })
    if not check_cartan(rho):
        raise ValidationError("does not respect the Cartan decompositions")


# ---------------------------------------------------------------------------
# output

def _fmt_float(x: float) -> str:
    return repr(float(x))


def _pretty(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines += _pretty(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines += _pretty(v, indent + 1)
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def emit_report(report: dict, fmt: str = "json", rows: Optional[tuple[list[str], list[list]]] = None) -> bytes:
    """Serialize a report; ``csv`` needs ``rows`` as (header, data rows)."""
    if fmt == "json":
        return (json.dumps(report, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "pretty":
        return ("\n".join(_pretty(report)) + "\n").encode("utf-8")
    if fmt == "csv":
        if rows is None:
            raise UsageError("this command has no CSV form")
        header, data = rows
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for r in data:
            buf.write(",".join(_fmt_float(x) if isinstance(x, float) else str(x) for x in r) + "\n")
        return buf.getvalue().encode("utf-8")
    raise UsageError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# commands

def _cmd_algebra_info(args):
    try:
        g = parse_algebra(args.target)
    except ValueError as e:
        raise UsageError(str(e)) from None
    rep = {
        "algebra": g.descriptor,
        "family": g.family.value,
        "ambient_dim": g.ambient_dim,
        "real_dim": g.real_dim,
        "rank": g.rank,
        "tube_type": g.is_tube,
        "dim_k": len(g.k_basis),
        "dim_p": len(g.p_basis),
        "form": g.form.to_json(),
        "Z": g.Z.to_json(),
        "trace_ZZ": str(trace_pairing(g.Z, g.Z)),
    }
    return rep, None


def _hom_report(rho: LieHom, hull: bool, h1_reading: str) -> dict:
    rep = tightness_report(rho, hull=hull, h1_reading=h1_reading).to_json()
    if len(rep["factors"]) == 1:
        f = rep["factors"][0]
        rep["trace_Z_rhoZ"] = f["trace"]
        # λ projection of ρ(Z_D) against the codomain Z, before dividing by the
        # diagonal-disk reference value
        rep["raw_trace_ratio"] = f["trace_ratio"]
        rep["tube_normalized"] = f["dc"]
        rep["dc"] = f["dc"]
    return rep


def _cmd_hom_check(args):
    rho = _resolve(args)
    _validate(rho)
    if args.save_hom:
        _write(args.save_hom, (json.dumps(hom_to_json(rho), indent=2) + "\n").encode("utf-8"))
    rep = {"command": "hom-check", "seed": args.seed}
    rep.update(_hom_report(rho, args.hull, args.h1_reading))
    rows = (["factor", "dc", "lambda", "rank"],
            [[i, f["dc"], f["lambda"], f["rank"]] for i, f in enumerate(rep["factors"])])
    return rep, rows


def _cmd_hom_hull(args):
    rho = _resolve(args)
    _validate(rho)
    import warnings

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        h = hermitian_hull(rho)
    rep = {
        "command": "hom-hull",
        "seed": args.seed,
        "label": rho.label,
        "hull_dim": h.dimension,
        "hull_label": h.label,
        "codomain_dim": rho.codomain.real_dim,
        "warnings": [str(w.message) for w in caught],
    }
    dom = rho.domain
    if getattr(dom, "rank", None) == 1 and getattr(dom, "is_tube", False):
        rep["isotypic"] = isotypic_decomposition(rho)
    if args.basis:
        rep["basis"] = [M.to_json() for M in h.basis]
    return rep, None


def _tolerances(args) -> dg.Tolerances:
    return dg.Tolerances(transverse=args.tol_transverse, shilov=args.tol_shilov)


def _domain(args) -> dg.BoundedDomain:
    try:
        return dg.parse_domain(args.domain)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _parse_point(D, obj):
    """JSON complex array: [re, im] pairs, nested to the point shape."""
    a = np.asarray(obj, dtype=float)
    if a.shape[-1:] != (2,):
        raise UsageError("points are arrays of [re, im] pairs")
    z = a[..., 0] + 1j * a[..., 1]
    if D.shape == ():
        if z.size != 1:
            raise UsageError(f"{D.descriptor} points are scalars")
        return complex(z.ravel()[0])
    if z.shape != D.shape:
        raise UsageError(f"{D.descriptor} points have shape {D.shape}, got {z.shape}")
    return z


def _cmd_cocycle_eval(args):
    D = _domain(args)
    try:
        pts = json.loads(args.points)
    except json.JSONDecodeError as e:
        raise UsageError(f"--points is not valid JSON: {e}") from None
    if not isinstance(pts, list) or len(pts) != 3:
        raise UsageError("--points takes a JSON list of three points")
    x, y, z = (_parse_point(D, p) for p in pts)
    try:
        ev = dg.bergmann_cocycle(D, x, y, z, tol=_tolerances(args))
    except dg.NonTransverse as e:
        raise ValidationError(str(e)) from None
    rep = {"command": "cocycle-eval", "seed": args.seed, "domain": D.descriptor, "rank": D.rank}
    rep.update(ev.to_json())
    return rep, (["beta", "min_h"], [[ev.beta, ev.min_transversality]])


def _cmd_cocycle_sup(args):
    D = _domain(args)
    if args.restarts < 1 or args.iters < 1:
        raise UsageError("--restarts and --iters must be positive")
    res = search.sup_search(D, restarts=args.restarts, iters=args.iters, seed=args.seed,
                            tol=_tolerances(args))
    rep = {"command": "cocycle-sup", "rank": D.rank, "bound": D.rank / 2}
    rep.update(res.to_json())
    rows = (["restart", "beta"], [[i, v] for i, v in enumerate(res.restart_values)])
    return rep, rows


def _cmd_shilov_scan(args):
    D = _domain(args)
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    res = search.integrality_scan(D, samples=args.samples, seed=args.seed, tol=_tolerances(args))
    rep = {"command": "shilov-scan", "rank": D.rank, "tube_type": D.is_tube}
    rep.update(res.to_json())
    n, gap = search.gap_statistics(res.betas, -D.rank / 2, D.rank / 2)
    rep["distinct_inside"] = n
    rep["max_gap_inside"] = gap if math.isfinite(gap) else None
    rows = (["beta", "min_h", "lattice_distance"],
            [[float(b), float(h), float(d)] for b, h, d in zip(res.betas, res.min_h, res.lattice_distance)])
    return rep, rows


def boundary_trace(rho: LieHom, directions: int = 20, tol: dg.Tolerances = dg.DEFAULT_TOL) -> dict:
    """Limits of the rays exp(tρ(Y))·0 for unit directions Y in p of sl(2,R).

    Each ρ(Y) is moved to the standard symplectic frame of the codomain and
    read as a Siegel disk tangent vector.
    """
    cod, dom = rho.codomain, rho.domain
    if getattr(dom, "rank", None) != 1 or not getattr(dom, "is_tube", False):
        raise UsageError("boundary-trace needs a homomorphism out of sl(2,R)")
    if cod.family is not Family.SP:
        raise UsageError("boundary-trace supports symplectic codomains")
    n = cod.params[0]
    D = dg.parse_domain(f"siegel:{n}")
    B = dg.symplectic_standard_frame(cod.form.to_numpy().real, cod.complex_structure.to_numpy().real)
    Bi = np.linalg.inv(B)
    s = sl2_elements()
    dH = rho.apply(s["H"]).to_numpy().real
    dS = (rho.apply(s["E"]) + rho.apply(s["F"])).to_numpy().real
    limits, rows = [], []
    for k in range(directions):
        phi = 2 * math.pi * k / directions
        X = Bi @ (math.cos(phi) * dH + math.sin(phi) * dS) @ B
        P = dg.boundary_limit(D, dg.tangent_from_sp(X), tol)
        limits.append(P)
        rows.append([k, phi, P.classification.value, float(P.residuals.get("shilov", float("nan")))])
    hs = [abs(dg.h_kernel(D, a.coords, b.coords)) for a, b in itertools.combinations(limits, 2)]
    return {
        "domain": D.descriptor,
        "directions": directions,
        "pairs": len(hs),
        "max_shilov_residual": max(r[3] for r in rows),
        "all_shilov": all(P.classification is dg.Classification.SHILOV for P in limits),
        "min_pair_h": min(hs) if hs else None,
        "_rows": rows,
    }


def _cmd_boundary_trace(args):
    rho = _resolve(args)
    _validate(rho)
    if args.directions < 1:
        raise UsageError("--directions must be positive")
    info = boundary_trace(rho, args.directions, _tolerances(args))
    rows = info.pop("_rows")
    rep = {"command": "boundary-trace", "seed": args.seed, "label": rho.label}
    rep.update(info)
    rep["limits"] = [{"direction": r[0], "angle": r[1], "classification": r[2], "shilov_residual": r[3]}
                     for r in rows]
    return rep, (["direction", "angle", "classification", "shilov_residual"], rows)


# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    fmt.add_argument("--pretty", dest="fmt", action="store_const", const="pretty")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--tol-transverse", type=float, default=dg.DEFAULT_TOL.transverse)
    common.add_argument("--tol-shilov", type=float, default=dg.DEFAULT_TOL.shilov)

    p = _Parser(prog="tightlie", description="Tightness certificates and Bergmann cocycle experiments.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    a = sub.add_parser("algebra-info", parents=[common], help="describe sp(2n,R) or su(p,q)")
    a.add_argument("target")
    a.set_defaults(fn=_cmd_algebra_info)

    for verb, fn, helptext in (("hom-check", _cmd_hom_check, "certify tightness of a homomorphism"),
                               ("hom-hull", _cmd_hom_hull, "Hermitian hull of an sl(2,R) map"),
                               ("boundary-trace", _cmd_boundary_trace, "boundary limits of image rays")):
        h = sub.add_parser(verb, parents=[common], help=helptext)
        h.add_argument("target", nargs="?")
        h.add_argument("--file", metavar="PATH", help="homomorphism JSON instead of a descriptor")
        h.set_defaults(fn=fn)
        if verb == "hom-check":
            h.add_argument("--save-hom", metavar="PATH")
            h.add_argument("--hull", action="store_true")
            h.add_argument("--h1-reading", choices=["intertwining", "literal"], default="intertwining")
        elif verb == "hom-hull":
            h.add_argument("--basis", action="store_true")
        else:
            h.add_argument("--directions", type=int, default=20)

    c = sub.add_parser("cocycle-eval", parents=[common], help="Bergmann cocycle of a triple")
    c.add_argument("--domain", required=True)
    c.add_argument("--points", required=True, help="JSON list of three points")
    c.set_defaults(fn=_cmd_cocycle_eval)

    s = sub.add_parser("cocycle-sup", parents=[common], help="maximise the cocycle over interior triples")
    s.add_argument("--domain", required=True)
    s.add_argument("--restarts", type=int, default=32)
    s.add_argument("--iters", type=int, default=800)
    s.set_defaults(fn=_cmd_cocycle_sup)

    sc = sub.add_parser("shilov-scan", parents=[common], help="cocycle values on random Shilov triples")
    sc.add_argument("--domain", required=True)
    sc.add_argument("--samples", type=int, default=1000)
    sc.set_defaults(fn=_cmd_shilov_scan)
    return p


def _write(path: str, data: bytes) -> None:
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    out = stdout if stdout is not None else sys.stdout.buffer
    err = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        fmt = args.fmt or "json"
        rep, rows = args.fn(args)
        data = emit_report(rep, fmt, rows)
        if args.out:
            _write(args.out, data)
        else:
            out.write(data)
            out.flush()
        return 0
    except UsageError as e:
        print(f"tightlie: error: {e}", file=err)
        return 1
    except ValidationError as e:
        print(f"tightlie: validation failed: {e}", file=err)
        if e.detail:
            print(json.dumps(e.detail), file=err)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
