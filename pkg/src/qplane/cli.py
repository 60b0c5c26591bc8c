"""Command-line surface: classify, verify, quiver.

    qplane classify <datum.toml> --out <report.json> [--quiver-dir <dir>]
    qplane verify   <datum.toml> [--level identities|regular|full]
    qplane quiver   <datum.toml> --out-dir <dir>

Datum files are TOML; reports are JSON with every scalar serialized exactly
(zeta-power / rational terms, never floats); quivers are GraphViz DOT.
Exit codes: 0 success, 1 I/O or internal failure, 2 datum validation failure
(the violated condition number goes to stderr), 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .abelian import AbelianGroup
from .cyclo import Cyclo
from .lifting import DatumError, LiftingDatum, build, class_decomposition, validate
from .reports import ClassReport, QuiverDescription
from .structalg import NonSplitError


def load_datum(path: str | Path) -> LiftingDatum:
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    try:
        group = AbelianGroup(data["group"])
        a = group.element(data["a"])
        b = group.element(data["b"])
        chi1 = group.character(data["chi1"])
        chi2 = group.character(data["chi2"])
        eps1 = int(data.get("eps1", 0))
        eps2 = int(data.get("eps2", 0))
        gamma = _parse_gamma(data.get("gamma", 0))
    except KeyError as err:
        raise ValueError(f"datum file is missing key {err}") from err
    return LiftingDatum(group, a, b, eps1, eps2, chi1, chi2, gamma)


def _parse_gamma(raw):
    """gamma as 0, {zeta_pow=j}, {rational=[p,q]}, a combined table, or a list of terms."""
    if isinstance(raw, (int, float)):
        if isinstance(raw, float) and not raw.is_integer():
            raise ValueError("gamma must be exact; use {rational = [p, q]}")
        return int(raw)
    if isinstance(raw, dict):
        raw = [raw]
    if isinstance(raw, list):
        terms = []
        for entry in raw:
            zeta_pow = int(entry.get("zeta_pow", 0))
            rat = entry.get("rational", [1, 1])
            terms.append((zeta_pow, Fraction(int(rat[0]), int(rat[1]))))
        return terms
    raise ValueError(f"cannot interpret gamma = {raw!r}")


def cyclo_terms(c: Cyclo) -> list[dict]:
    """Exact serialization: sum of (p/q) zeta_M^j terms over the canonical basis."""
    out = []
    for j, coeff in enumerate(c.coeffs()):
        if coeff:
            out.append({"zeta_pow": j, "rational": [coeff.numerator, coeff.denominator]})
    return out


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, Cyclo):
        return cyclo_terms(obj)
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


def quiver_dict(q: QuiverDescription | None):
    if q is None:
        return None
    return {
        "vertices": list(q.vertices),
        "arrows": [[s, t, m, g] for (s, t, m, g) in q.arrows],
        "relations": list(q.relations),
    }


def class_report_dict(rep: ClassReport) -> dict:
    return {
        "label": rep.label,
        "dim": rep.dim,
        "case": rep.case,
        "simples": [
            {"label": s.label, "dim": s.dim, "weights": _json_safe(s.weights)}
            for s in rep.simples
        ],
        "projectives": [
            {
                "label": p.label,
                "dim": p.dim,
                "multiplicity": p.multiplicity,
                "loewy": _json_safe(p.loewy),
            }
            for p in rep.projectives
        ],
        "blocks": [
            {
                "label": b.label,
                "dim": b.dim,
                "rep_type": b.rep_type,
                "simples": list(b.simples),
                "radical_dim": b.radical_dim,
                "idempotent": b.idempotent,
                "quiver": quiver_dict(b.quiver),
            }
            for b in rep.blocks
        ],
        "radical_dim": rep.radical_dim,
        "notes": _json_safe(rep.notes),
    }


def build_report(datum: LiftingDatum, verify_level: str | None = None) -> dict:
    from . import linked as linked_mod
    from . import unlinked as unlinked_mod

    tag = validate(datum)
    H = build(datum)
    subs = class_decomposition(H)
    out = {
        "datum": dict(datum.describe(), gamma=cyclo_terms(datum.gamma)),
        "conductor": datum.conductor,
        "case": {
            "linked": tag.linked,
            "potency": tag.potency,
            "n1": tag.n1,
            "n2": tag.n2,
        },
        "dim": H.dim,
        "class_subalgebras": [],
        "verification": None,
    }
    for sub in subs:
        rep = linked_mod.classify(sub) if tag.linked else unlinked_mod.classify(sub)
        out["class_subalgebras"].append(class_report_dict(rep))
    if verify_level is not None:
        from .verify import Verifier

        verifier = Verifier(datum, verify_level, H=H, subs=subs)
        verifier.run()
        out["verification"] = {
            "level": verify_level,
            "passed": verifier.passed(),
            "checks": [
                {"name": o.name, "ok": o.ok, "detail": o.detail} for o in verifier.outcomes
            ],
        }
    return out


# -- DOT ------------------------------------------------------------------------


def _sanitize(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_") or "block"


def quiver_to_dot(rep_dict: dict, block: dict) -> str:
    """One directed multigraph per block; isolated labeled nodes when semisimple."""
    dims = {s["label"]: s["dim"] for s in rep_dict["simples"]}
    lines = [f"digraph \"{block['label']}\" {{"]
    quiv = block.get("quiver")
    vertices = quiv["vertices"] if quiv else list(block["simples"])
    for v in vertices:
        lines.append(f'  "{v}" [dim={dims.get(v, 0)}];')
    if quiv:
        for s, t, mult, gen in quiv["arrows"]:
            for _ in range(mult):
                lines.append(f'  "{s}" -> "{t}" [gen="{gen}"];')
        for rel in quiv.get("relations", []):
            lines.append(f"  // relation: {rel}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _write_quivers(report: dict, out_dir: Path, nonsemisimple_only: bool) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for ci, rep in enumerate(report["class_subalgebras"]):
        for block in rep["blocks"]:
            if nonsemisimple_only and block["rep_type"] == "semisimple":
                continue
            name = f"class{ci}_{_sanitize(block['label'])}.dot"
            path = out_dir / name
            path.write_text(quiver_to_dot(rep, block), encoding="utf-8")
            written.append(path)
    return written


# -- commands ----------------------------------------------------------------------


def cmd_classify(args) -> int:
    try:
        datum = load_datum(args.datum)
        report = build_report(datum, verify_level=args.verify)
    except DatumError as err:
        print(f"datum invalid: {err}", file=sys.stderr)
        return 2
    except (OSError, ValueError, tomllib.TOMLDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except NonSplitError as err:
        print(f"internal splitting error: {err}", file=sys.stderr)
        return 1
    try:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        if args.quiver_dir:
            _write_quivers(report, Path(args.quiver_dir), nonsemisimple_only=True)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    from .verify import Verifier

    try:
        datum = load_datum(args.datum)
    except DatumError as err:
        print(f"datum invalid: {err}", file=sys.stderr)
        return 2
    except (OSError, ValueError, tomllib.TOMLDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    try:
        verifier = Verifier(datum, args.level)
        if args.self_test_corrupt:
            _corrupt_structure_constants(verifier.H)
        verifier.run()
    except DatumError as err:
        print(f"datum invalid: {err}", file=sys.stderr)
        return 2
    for o in verifier.outcomes:
        status = "ok  " if o.ok else "FAIL"
        detail = f"  [{o.detail}]" if o.detail and not o.ok else ""
        print(f"{status} {o.name}{detail}")
    if verifier.passed():
        print(f"verify {args.level}: all {len(verifier.outcomes)} checks passed")
        return 0
    first = verifier.first_failure()
    print(f"verify {args.level}: FAILED at {first.name}: {first.detail}", file=sys.stderr)
    return 3


def _corrupt_structure_constants(H) -> None:
    """Test mode: damage one product so the verification batteries must trip."""
    alg = H.algebra
    i, j = 1 % alg.dim, 2 % alg.dim
    entry = alg.basis_product(i, j)
    two = alg.field.rational(2)
    if entry:
        k, c = entry[0]
        alg._table[(i, j)] = ((k, c * two),) + tuple(entry[1:])
    else:
        alg._table[(i, j)] = ((0, two),)


def cmd_quiver(args) -> int:
    try:
        datum = load_datum(args.datum)
        report = build_report(datum)
        written = _write_quivers(report, Path(args.out_dir), nonsemisimple_only=False)
    except DatumError as err:
        print(f"datum invalid: {err}", file=sys.stderr)
        return 2
    except (OSError, ValueError, tomllib.TOMLDecodeError, NonSplitError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qplane",
        description="Exact representation theory of liftings of quantum planes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify a lifting datum and write a JSON report")
    p_classify.add_argument("datum")
    p_classify.add_argument("--out", required=True)
    p_classify.add_argument("--quiver-dir", default=None)
    p_classify.add_argument(
        "--verify",
        choices=["identities", "regular", "full"],
        default=None,
        help="also run verification at this level and embed the results",
    )
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="run identity and oracle checks against a datum")
    p_verify.add_argument("datum")
    p_verify.add_argument("--level", choices=["identities", "regular", "full"], default="regular")
    p_verify.add_argument("--self-test-corrupt", action="store_true", help=argparse.SUPPRESS)
    p_verify.set_defaults(func=cmd_verify)

    p_quiver = sub.add_parser("quiver", help="emit DOT quivers for every block")
    p_quiver.add_argument("datum")
    p_quiver.add_argument("--out-dir", required=True)
    p_quiver.set_defaults(func=cmd_quiver)

    args = parser.parse_args(argv)
    return args.func(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
