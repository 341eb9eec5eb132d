"""Command-line front end: ``veronese COMMAND DOCUMENT [options]``.

Documents are JSON objects with a ``ring`` entry and exactly one payload::

    {"ring": {"blocks": [5]},
     "veronese": [{"support": [1, 2, 3], "power": 1}, ...]}

Other payloads are ``generators`` (exponent vectors or strings such as
``"x1*x2^2"``), ``fatpoints`` (``{"mults": [...]}``) and ``complex``
(``{"nonfaces": [[1, 4, 5], ...]}``).  Variable indices are 1-based.

Exit status is 0 on success, 1 when the verdict is negative and 2 on error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .betti import GRADINGS, BettiTable
from .errors import CapacityError, DocumentError, VeroneseError
from .formulas import (
    betti_power_formula,
    betti_two_fat_points,
    betti_two_veronese,
    build_UV_split,
    classify_two_veronese,
    verify_splitting,
)
from .geometry import (
    FatPointScheme,
    SimplicialComplexSpec,
    fat_points_ideal,
    is_sequentially_cm,
    stanley_reisner_ideal,
)
from .linalg import DEFAULT_PRIME
from .linearity import is_polymatroidal, linear_quotients_status
from .oracle import (
    betti_table,
    hilbert_numerator,
    is_componentwise_linear,
    multiplicity,
    multiplicity_upper_bound_check,
)
from .ring import (
    MonomialIdeal,
    RingCtx,
    VeroneseSpec,
    alexander_dual,
    degree_component,
    veronese_ideal,
)

PAYLOADS = ("veronese", "generators", "fatpoints", "complex")
FIELD_ENV = "VERONESE_FIELD"


# -- documents ---------------------------------------------------------------------

def _default_names(blocks) -> tuple:
    if len(blocks) == 1:
        return tuple(f"x{k}" for k in range(1, blocks[0] + 1))
    return tuple(f"x{i}{j}" for i, size in enumerate(blocks, 1) for j in range(size))


@dataclass(frozen=True)
class IdealDocument:
    """A ring plus one payload; ``payload`` is stored in normalized form."""

    ring: RingCtx
    kind: str
    payload: tuple

    def ideal(self) -> MonomialIdeal:
        if self.kind == "veronese":
            return veronese_ideal(self.veronese_spec())
        if self.kind == "generators":
            return MonomialIdeal(self.ring, self.payload)
        if self.kind == "fatpoints":
            return fat_points_ideal(FatPointScheme(self.ring, self.payload))
        return stanley_reisner_ideal(self.complex_spec())

    def veronese_spec(self) -> VeroneseSpec:
        return VeroneseSpec(self.ring, self.payload)

    def complex_spec(self) -> SimplicialComplexSpec:
        return SimplicialComplexSpec(self.ring.n, self.payload)

    def to_json(self) -> dict:
        ring = {"blocks": list(self.ring.blocks)}
        if self.ring.var_names != _default_names(self.ring.blocks):
            ring["names"] = list(self.ring.var_names)
        out = {"ring": ring}
        if self.kind == "veronese":
            out["veronese"] = [{"support": sorted(S), "power": p} for S, p in self.payload]
        elif self.kind == "generators":
            out["generators"] = [list(g) for g in self.payload]
        elif self.kind == "fatpoints":
            out["fatpoints"] = {"mults": list(self.payload)}
        else:
            out["complex"] = {"nonfaces": [sorted(F) for F in self.payload]}
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _int_list(value, where: str) -> list:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool)
                                              for v in value):
        raise DocumentError("expected a list of integers", where)
    return value


def _indices(value, n: int, where: str) -> list:
    out = _int_list(value, where)
    for k, v in enumerate(out):
        if not 1 <= v <= n:
            raise DocumentError(f"index {v} outside [1, {n}]", f"{where}[{k}]")
    return out


def _parse_ring(raw) -> RingCtx:
    if not isinstance(raw, dict):
        raise DocumentError("expected an object", "ring")
    blocks = _int_list(raw.get("blocks"), "ring.blocks")
    if not blocks or min(blocks) < 1:
        raise DocumentError("block sizes must be positive", "ring.blocks")
    names = raw.get("names")
    if names is None:
        names = _default_names(blocks)
    elif not isinstance(names, list) or not all(isinstance(x, str) for x in names):
        raise DocumentError("expected a list of strings", "ring.names")
    try:
        return RingCtx(tuple(names), tuple(blocks))
    except VeroneseError as exc:
        raise DocumentError(str(exc), "ring") from exc


def _parse_payload(kind: str, raw, ring: RingCtx) -> tuple:
    n = ring.n
    if kind == "veronese":
        if not isinstance(raw, list) or not raw:
            raise DocumentError("expected a nonempty list of components", kind)
        comps = []
        for k, comp in enumerate(raw):
            where = f"veronese[{k}]"
            if not isinstance(comp, dict) or set(comp) != {"support", "power"}:
                raise DocumentError("expected {\"support\": [...], \"power\": p}", where)
            support = _indices(comp["support"], n, f"{where}.support")
            if not support:
                raise DocumentError("support must be nonempty", f"{where}.support")
            power = comp["power"]
            if not isinstance(power, int) or isinstance(power, bool) or power < 1:
                raise DocumentError("power must be a positive integer", f"{where}.power")
            comps.append((frozenset(support), power))
        return tuple(comps)
    if kind == "generators":
        if not isinstance(raw, list):
            raise DocumentError("expected a list of generators", kind)
        gens = []
        for k, g in enumerate(raw):
            where = f"generators[{k}]"
            if isinstance(g, str):
                try:
                    gens.append(ring.parse(g))
                except (VeroneseError, ValueError) as exc:
                    raise DocumentError(str(exc), where) from exc
                continue
            exps = _int_list(g, where)
            if len(exps) != n or min(exps, default=0) < 0:
                raise DocumentError(f"expected {n} nonnegative exponents", where)
            gens.append(tuple(exps))
        return MonomialIdeal(ring, tuple(gens)).gens
    if kind == "fatpoints":
        if not isinstance(raw, dict) or set(raw) != {"mults"}:
            raise DocumentError("expected {\"mults\": [...]}", kind)
        mults = _int_list(raw["mults"], "fatpoints.mults")
        try:
            return FatPointScheme(ring, tuple(mults)).mults
        except VeroneseError as exc:
            raise DocumentError(str(exc), "fatpoints.mults") from exc
    if not isinstance(raw, dict) or set(raw) != {"nonfaces"}:
        raise DocumentError("expected {\"nonfaces\": [...]}", kind)
    if not isinstance(raw["nonfaces"], list):
        raise DocumentError("expected a list of vertex lists", "complex.nonfaces")
    faces = [_indices(F, n, f"complex.nonfaces[{k}]") for k, F in enumerate(raw["nonfaces"])]
    try:
        return SimplicialComplexSpec(n, tuple(faces)).nonfaces
    except VeroneseError as exc:
        raise DocumentError(str(exc), "complex.nonfaces") from exc


def parse_document(source) -> IdealDocument:
    """Parse a document from a path, a JSON string or an already-decoded dict."""
    if isinstance(source, dict):
        raw = source
    else:
        text = str(source)
        if isinstance(source, Path) or not text.lstrip().startswith("{"):
            text = Path(text).read_text(encoding="utf-8")
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise DocumentError("a document must be a JSON object")
    unknown = set(raw) - {"ring", *PAYLOADS}
    if unknown:
        raise DocumentError(f"unknown keys {sorted(unknown)}")
    if "ring" not in raw:
        raise DocumentError("missing ring", "ring")
    kinds = [k for k in PAYLOADS if k in raw]
    if len(kinds) != 1:
        raise DocumentError(f"expected exactly one of {', '.join(PAYLOADS)}; found {len(kinds)}")
    ring = _parse_ring(raw["ring"])
    kind = kinds[0]
    return IdealDocument(ring, kind, _parse_payload(kind, raw[kind], ring))


# -- reports -------------------------------------------------------------------------

class UsageError(VeroneseError):
    pass


def table_json(table: BettiTable) -> dict:
    return {"grading": table.grading, "entries": [list(t) for t in table.triples()]}


def _gens(ring: RingCtx, gens) -> list:
    return [ring.format(g) for g in gens]


def formula_table(doc: IdealDocument) -> BettiTable:
    """Closed-form total Betti table, when the document has one."""
    if doc.kind == "veronese":
        comps = doc.payload
        if len(comps) == 1:
            (S, a), = comps
            return betti_power_formula(len(S), a)
        if len(comps) == 2:
            (J, a), (K, b) = comps
            return betti_two_veronese(J, K, a, b)
    if doc.kind == "fatpoints":
        dims = [size - 1 for size in doc.ring.blocks]
        if len(doc.payload) == 1:
            return betti_power_formula(sum(dims), doc.payload[0])
        if len(doc.payload) == 2:
            return betti_two_fat_points(dims, *doc.payload)
    raise UsageError("no closed form applies: need one or two Veronese components or fat points")


def cmd_build(doc, args):
    I = doc.ideal()
    return True, {"generators": _gens(doc.ring, I.gens), "count": len(I.gens)}, \
        "\n".join(_gens(doc.ring, I.gens)) or "(zero ideal)"


def cmd_betti(doc, args):
    if args.formula:
        if args.grading != "total":
            raise UsageError("closed forms give total-graded tables only")
        table = formula_table(doc)
        source = "formula"
    else:
        table = betti_table(doc.ideal(), args.grading, args.field)
        source = "oracle"
    text = table.format() if table.grading == "total" else "\n".join(
        f"{i} {d} {v}" for i, d, v in table.triples())
    return True, {"source": source, "table": table_json(table)}, text


def cmd_cwl(doc, args):
    rep = is_componentwise_linear(doc.ideal(), args.field)
    data = {"verdict": rep.verdict, "regularity": rep.regularity,
            "degrees": [[d, ok] for d, ok in sorted(rep.degrees.items())],
            "failing_degree": rep.failing_degree}
    text = f"componentwise linear: {rep.verdict} (regularity {rep.regularity})"
    if rep.failing_degree is not None:
        text += f"\nfirst degree without a linear resolution: {rep.failing_degree}"
    return rep.verdict, data, text


def _poly_report(ring, I, d):
    rep = is_polymatroidal(I)
    out = {"degree": d, "verdict": rep.verdict, "reason": rep.reason, "witness": None}
    text = f"degree {d}: polymatroidal {rep.verdict} ({rep.reason})"
    if rep.witness is not None:
        w = rep.witness
        out["witness"] = {"u": ring.format(w.u), "v": ring.format(w.v), "i": w.i,
                          "rejected": [[j, ring.format(m)] for j, m in w.tried]}
        text += f"\n  witness u={ring.format(w.u)} v={ring.format(w.v)} i={w.i}"
    return rep.verdict, out, text


def cmd_polymatroidal(doc, args):
    I = doc.ideal()
    if args.degree is not None:
        degrees = [args.degree]
    elif args.all:
        reg = betti_table(I, "total", args.field).regularity
        degrees = list(range(I.min_gen_degree, reg + 1))
    else:
        degrees = [None]
    results, texts, ok = [], [], True
    for d in degrees:
        part = I if d is None else degree_component(I, d)
        if part.is_zero:
            raise UsageError(f"degree {d} lies below every generator")
        verdict, data, text = _poly_report(doc.ring, part, d)
        ok &= verdict
        results.append(data)
        texts.append(text)
    return ok, {"verdict": ok, "components": results}, "\n".join(texts)


def cmd_linear_quotients(doc, args):
    status, cert = linear_quotients_status(doc.ideal())
    data = {"status": status, "verdict": status == "found", "order": None}
    text = f"linear quotients: {status}"
    if cert is not None:
        data["order"] = _gens(doc.ring, cert.ordered_gens)
        data["colons"] = [_gens(doc.ring, c) for c in cert.colon_gens_per_step]
        text += "\norder: " + ", ".join(data["order"])
    return status == "found", data, text


def cmd_split(doc, args):
    if doc.kind != "veronese" or len(doc.payload) != 2:
        raise UsageError("split needs a document with exactly two Veronese components")
    (J, a), (K, b) = doc.payload
    case = classify_two_veronese(J, K, a, b)
    pair = build_UV_split(doc.ring, J, K, a, b)
    rep = verify_splitting(doc.ideal(), pair)
    ring = doc.ring
    data = {"case": case.tag, "verdict": rep.verdict, "method": rep.method,
            "failed_condition": rep.failed_condition,
            "U": _gens(ring, pair.U.gens), "V": _gens(ring, pair.V.gens),
            "map": [[ring.format(w), ring.format(p), ring.format(q)]
                    for w, (p, q) in sorted(pair.phi_psi.items(), key=lambda kv: kv[0])]}
    text = (f"U: {', '.join(data['U'])}\nV: {', '.join(data['V'])}\n"
            f"splitting verified: {rep.verdict} ({rep.method})")
    return rep.verdict, data, text


def cmd_dual(doc, args):
    D = alexander_dual(doc.ideal())
    return True, {"generators": _gens(doc.ring, D.gens)}, "\n".join(_gens(doc.ring, D.gens))


def cmd_seqcm(doc, args):
    if doc.kind == "complex":
        spec = doc.complex_spec()
    else:
        I = doc.ideal()
        if not I.is_squarefree:
            raise UsageError("seqcm needs a complex or squarefree generators")
        spec = SimplicialComplexSpec(doc.ring.n, tuple(
            frozenset(k + 1 for k, e in enumerate(g) if e) for g in I.gens))
    rep = is_sequentially_cm(spec, args.field)
    return rep.verdict, {"verdict": rep.verdict}, f"sequentially Cohen-Macaulay: {rep.verdict}"


def cmd_mult_bound(doc, args):
    rep = multiplicity_upper_bound_check(doc.ideal(), args.field)
    data = {"e": rep.e, "c": rep.c, "max_shifts": list(rep.max_shifts),
            "bound": f"{rep.bound.numerator}/{rep.bound.denominator}", "holds": rep.holds}
    text = f"e = {rep.e}, c = {rep.c}, shifts {list(rep.max_shifts)}, bound {rep.bound}: holds {rep.holds}"
    return rep.holds, data, text


def cmd_hilbert(doc, args):
    I = doc.ideal()
    num = hilbert_numerator(I)
    data = {"numerator": num}
    text = "K(t) coefficients: " + " ".join(map(str, num))
    if not I.is_zero and not I.is_unit:
        summary = multiplicity(I)
        data.update(codim=summary.codim, multiplicity=summary.multiplicity)
        text += f"\ncodim {summary.codim}, multiplicity {summary.multiplicity}"
    return True, data, text


COMMANDS = {
    "build": cmd_build,
    "betti": cmd_betti,
    "cwl": cmd_cwl,
    "polymatroidal": cmd_polymatroidal,
    "linear-quotients": cmd_linear_quotients,
    "split": cmd_split,
    "dual": cmd_dual,
    "seqcm": cmd_seqcm,
    "mult-bound": cmd_mult_bound,
    "hilbert": cmd_hilbert,
}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p ** 0.5) + 1))


def _field(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value != 0 and not _is_prime(value):
        raise argparse.ArgumentTypeError(f"{text} is neither 0 nor a prime")
    if value >= 2 ** 31:
        raise argparse.ArgumentTypeError("prime fields must stay below 2^31")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="veronese", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("document", help="JSON document path, or - for standard input")
    parser.add_argument("--field", type=_field, default=None,
                        help=f"prime characteristic, or 0 for the rationals (default ${FIELD_ENV} or {DEFAULT_PRIME})")
    parser.add_argument("--grading", choices=GRADINGS, default="total")
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--formula", action="store_true", help="betti: use the closed forms")
    source.add_argument("--oracle", action="store_true", help="betti: use the homology oracle (default)")
    scope = parser.add_mutually_exclusive_group()
    scope.add_argument("--degree", type=int, help="polymatroidal: test the degree-d component")
    scope.add_argument("--all", action="store_true", help="polymatroidal: test every degree up to the regularity")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.field is None:
            args.field = _field(os.environ.get(FIELD_ENV, str(DEFAULT_PRIME)))
        doc = parse_document(sys.stdin.read() if args.document == "-" else Path(args.document))
        verdict, data, text = COMMANDS[args.command](doc, args)
    except CapacityError as exc:
        where = f" (size {exc.size})" if exc.size is not None else ""
        where += f" (degree {exc.degree})" if exc.degree is not None else ""
        print(f"error: {exc}{where}", file=stderr)
        return 2
    except (VeroneseError, OSError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    if args.json:
        print(json.dumps({"command": args.command, **data}, sort_keys=True, indent=2), file=stdout)
    else:
        print(text, file=stdout)
    return 0 if verdict else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
