"""Batch front-end: construct, verify, export.

The single input format is a plain-text instance file of ``key = value``
lines with ``#`` comments::

    mode = powers          # or: truncation
    field = Q              # or: Fp:<prime>
    n = 3
    a = 1, 2               # powers mode
    # f = x1^2; x2^2       # truncation mode (';' or ',' separated)
    # d = 3
    # delta = 1, 2         # symbolic-power exponents to verify
    # seed = 0
    # pair-cap = 200000
    # deg-cap = 80

Exit codes are a stable scripting contract: 0 all checks pass, 1 usage or
parse error, 2 a resource guard aborted a computation, 3 a check failed.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .groebner import Guard, Ideal, ResourceGuardError, kernel_of_map
from .polyring import FieldSpec, ParseError, PolyError, Polynomial
from .reescomb import Instance, build_B, build_C, minors2, rees_maps
from .report import text_summary, write_report_files
from .truncation import (
    TruncationInstance,
    chi_map,
    h_polynomials,
    rees_presentation,
    truncation_generators,
    truncation_instance,
)
from .verifier import CHECK_KINDS, POWERS_CHECKS, TRUNCATION_CHECKS, Report, sweep


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # map argparse's exit(2) onto exit code 1
        raise UsageError(message)


# ---------------------------------------------------------------------------
# instance files


@dataclass
class InstanceFile:
    mode: str
    field: FieldSpec
    n: int
    a: Optional[tuple] = None
    f: Optional[tuple] = None
    d: Optional[int] = None
    deltas: tuple = (1, 2)
    seed: int = 0
    pair_cap: int = 200_000
    deg_cap: int = 80

    def target(self):
        if self.mode == "powers":
            return Instance.powers(self.n, self.a, self.field)
        return truncation_instance(self.n, self.field, list(self.f), self.d)

    def guard(self) -> Guard:
        return Guard(pair_cap=self.pair_cap, deg_cap=self.deg_cap)


def _split_list(value: str) -> list:
    sep = ";" if ";" in value else ","
    return [part.strip() for part in value.split(sep) if part.strip()]


def parse_instance_file(path: Path) -> InstanceFile:
    data: dict = {}
    lines = path.read_text(encoding="utf-8").splitlines()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path.name}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not value:
            raise ParseError(f"{path.name}:{lineno}: empty value for {key!r}")
        if key in data:
            raise ParseError(f"{path.name}:{lineno}: duplicate key {key!r}")
        data[(key, lineno)] = value
    fields: dict = {}
    for (key, lineno), value in data.items():
        try:
            if key == "mode":
                if value not in ("powers", "truncation"):
                    raise ParseError("mode must be powers or truncation")
                fields["mode"] = value
            elif key == "field":
                fields["field"] = FieldSpec.parse(value)
            elif key == "n":
                fields["n"] = int(value)
            elif key == "a":
                fields["a"] = tuple(int(v) for v in _split_list(value))
            elif key == "f":
                fields["f"] = tuple(_split_list(value))
            elif key == "d":
                fields["d"] = int(value)
            elif key == "delta":
                fields["deltas"] = tuple(int(v) for v in _split_list(value))
            elif key == "seed":
                fields["seed"] = int(value)
            elif key == "pair-cap":
                fields["pair_cap"] = int(value)
            elif key == "deg-cap":
                fields["deg_cap"] = int(value)
            else:
                raise ParseError(f"unknown key {key!r}")
        except ParseError as exc:
            raise ParseError(f"{path.name}:{lineno}: {exc}") from None
        except ValueError as exc:
            raise ParseError(f"{path.name}:{lineno}: {exc}") from None
    for required in ("mode", "field", "n"):
        if required not in fields:
            raise ParseError(f"{path.name}: missing required key {required!r}")
    inst = InstanceFile(**fields)
    if inst.mode == "powers":
        if inst.a is None:
            raise ParseError(f"{path.name}: powers mode needs key 'a'")
        if inst.pair_cap <= 0 or inst.deg_cap <= 0:
            raise ParseError(f"{path.name}: guards must be positive")
    else:
        if inst.f is None or inst.d is None:
            raise ParseError(f"{path.name}: truncation mode needs keys 'f' and 'd'")
    return inst


# ---------------------------------------------------------------------------
# construct


def cmd_construct(inst_file: InstanceFile, out=sys.stdout) -> int:
    target = inst_file.target()
    w = out.write
    if isinstance(target, Instance):
        w(f"instance: powers  n={target.n}  a={tuple(target.a)}  field={target.field}\n")
        if target.stripped:
            w(f"stripped zero powers: {target.stripped} (free polynomial factor)\n")
        B = build_B(target)
        w(f"\nmatrix B ({B.rows} x {B.ncols}):\n{B.render()}\n")
        C = build_C(target)
        w(f"\nmatrix C ({C.rows} x {C.ncols}):\n{C.render()}\n")
        mins = minors2(C)
        w(f"\ndefining ideal of the Rees algebra: {len(mins)} minors of C\n")
        for m in mins:
            w(f"  {m}\n")
    else:
        w(
            f"instance: truncation  n={target.n}  d={target.d}  "
            f"degrees={tuple(target.degrees)}  a={tuple(target.a)}  field={target.field}\n"
        )
        w(f"regime: {target.regime}")
        if target.r >= 2:
            w(f"  (delta = {target.delta})")
        w("\n")
        inst = target.instance()
        B = build_B(inst)
        w(f"\nmatrix B ({B.rows} x {B.ncols}):\n{B.render()}\n")
        C = build_C(inst)
        w(f"\nmatrix C ({C.rows} x {C.ncols}):\n{C.render()}\n")
        gens = truncation_generators(target)
        w(f"\ntruncation generators ({len(gens)}):\n")
        for g in gens:
            w(f"  {g}\n")
        fam = h_polynomials(target)
        w(f"\nextra presentation relations ({len(fam)}):\n")
        for h in fam.polys:
            w(f"  {h}\n")
    return 0


# ---------------------------------------------------------------------------
# verify


def _default_checks(target) -> list:
    if isinstance(target, TruncationInstance):
        checks = ["rees-presentation", "quadratic-gb", "height-Q"]
        if target.r == 2:
            checks.insert(1, "divisorial-identity")
        return checks
    return list(POWERS_CHECKS)


def _build_plan(inst_file: InstanceFile, checks: Sequence[str]) -> list:
    target = inst_file.target()
    guard = inst_file.guard()
    plan = []
    for kind in checks:
        if kind not in CHECK_KINDS:
            raise UsageError(
                f"unknown check {kind!r} (known: {', '.join(CHECK_KINDS)})"
            )
        if kind in TRUNCATION_CHECKS and not isinstance(target, TruncationInstance):
            raise UsageError(f"check {kind!r} needs a truncation-mode instance file")
        if kind == "symbolic-power":
            for delta in inst_file.deltas:
                plan.append(
                    (kind, target, {"seed": inst_file.seed, "guard": guard, "delta": delta})
                )
        else:
            plan.append((kind, target, {"seed": inst_file.seed, "guard": guard}))
    return plan


def cmd_verify(
    inst_file: InstanceFile,
    checks: Optional[Sequence[str]],
    outdir: Path,
    stem: str,
    jobs: int = 1,
    out=sys.stdout,
) -> int:
    target = inst_file.target()
    plan = _build_plan(inst_file, checks or _default_checks(target))
    reports = sweep(plan, jobs=jobs)
    meta = {"instance": target.to_dict(), "seed": inst_file.seed, "jobs": jobs}
    paths = write_report_files(reports, outdir, stem=stem, meta=meta)
    out.write(text_summary(reports) + "\n")
    out.write(f"report files: {paths['json']}  {paths['csv']}  {paths['png']}\n")
    if any(r.verdict == "fail" for r in reports):
        return 3
    if any(r.verdict == "aborted" for r in reports):
        return 2
    return 0


# ---------------------------------------------------------------------------
# export


_M2_ORDER = "GRevLex"


def _m2_name(name: str) -> str:
    if name.startswith("T"):
        bits = name[1:].split("_")
        return "T_(" + ",".join(bits) + ")"
    if name[0] in "xt" and name[1:].isdigit():
        return f"{name[0]}_{name[1:]}"
    return name


def _singular_name(name: str) -> str:
    if name.startswith("T"):
        bits = name[1:].split("_")
        return "T(" + ")(".join(bits) + ")"
    if name[0] in "xt" and name[1:].isdigit():
        return f"{name[0]}({name[1:]})"
    return name


def _render_poly(p: Polynomial, name_fn) -> str:
    fld = p.ring.field
    names = [name_fn(n) for n in p.ring.names]
    if not p.terms:
        return "0"
    chunks = []
    for k, (e, c) in enumerate(p.terms):
        neg = fld.is_negative(c)
        mag = -c if neg else c
        factors = [f"{names[i]}^{x}" if x > 1 else names[i] for i, x in enumerate(e) if x]
        body = "*".join(([str(mag)] if (mag != fld.one or not factors) else []) + factors)
        chunks.append(("-" if neg else ("+" if k else "")) + body)
    return "".join(chunks)


def _presentation_data(inst_file: InstanceFile):
    """Common export payload: source ring, presentation ideal, oracle map."""
    target = inst_file.target()
    if isinstance(target, Instance):
        phi, _ = rees_maps(target)
        pres = Ideal(phi.source, tuple(minors2(build_C(target))))
        return target, phi, pres
    chi = chi_map(target)
    pres = rees_presentation(target)
    return target, chi, pres


def cmd_export(inst_file: InstanceFile, dialect: str, out=sys.stdout) -> int:
    if dialect not in ("plain", "m2", "singular"):
        raise UsageError(f"unsupported dialect {dialect!r} (plain, m2, singular)")
    target, mapping, pres = _presentation_data(inst_file)
    src, tgt = mapping.source, mapping.target
    w = out.write
    if dialect == "plain":
        w("# reeskit plain export: replayable instance file\n")
        if isinstance(target, Instance):
            w("mode = powers\n")
            w(f"field = {target.field}\n")
            w(f"n = {target.n}\n")
            w(f"a = {', '.join(str(v) for v in target.a)}\n")
        else:
            w("mode = truncation\n")
            w(f"field = {target.field}\n")
            w(f"n = {target.n}\n")
            w(f"f = {'; '.join(str(p) for p in target.f)}\n")
            w(f"d = {target.d}\n")
        w("# presentation ideal generators:\n")
        for g in pres.generators:
            w(f"#   {g}\n")
        w("# map images (source variable -> value):\n")
        for name in src.names:
            w(f"#   {name} -> {mapping.image(name)}\n")
        return 0
    if dialect == "m2":
        coeff = "QQ" if src.field.kind == "rationals" else f"ZZ/{src.field.characteristic}"
        src_vars = ", ".join(_m2_name(n) for n in src.names)
        tgt_vars = ", ".join(_m2_name(n) for n in tgt.names)
        w("-- generated by reeskit: presentation ideal and kernel assertion\n")
        w(f"R = {coeff}[{src_vars}, MonomialOrder => {_M2_ORDER}];\n")
        gens = ",\n  ".join(_render_poly(g, _m2_name) for g in pres.generators)
        w(f"I = ideal(\n  {gens}\n);\n")
        w(f"S = {coeff}[{tgt_vars}, MonomialOrder => {_M2_ORDER}];\n")
        images = ", ".join(_render_poly(mapping.image(n), _m2_name) for n in src.names)
        w(f"phi = map(S, R, {{{images}}});\n")
        w("assert(ker phi == I);\n")
        w('print "kernel equality holds";\n')
        return 0
    # singular
    char = "0" if src.field.kind == "rationals" else str(src.field.characteristic)
    src_vars = ", ".join(_singular_name(n) for n in src.names)
    tgt_vars = ", ".join(_singular_name(n) for n in tgt.names)
    w("// generated by reeskit: presentation ideal and kernel assertion\n")
    w(f"ring Rsrc = {char}, ({src_vars}), dp;\n")
    gens = ",\n  ".join(_render_poly(g, _singular_name) for g in pres.generators)
    w(f"ideal I = {gens};\n")
    w(f"ring Rtgt = {char}, ({tgt_vars}), dp;\n")
    images = ", ".join(_render_poly(mapping.image(n), _singular_name) for n in src.names)
    w(f"map phi = Rsrc, {images};\n")
    w("setring Rsrc;\n")
    w("ideal K = preimage(Rtgt, phi, ideal(0));\n")
    w("ideal d1 = reduce(I, std(K));\n")
    w("ideal d2 = reduce(K, std(I));\n")
    w("// both reductions must be zero for the kernel equality to hold\n")
    w("d1; d2;\n")
    return 0


# ---------------------------------------------------------------------------
# entry point


def _build_argparser() -> _Parser:
    parser = _Parser(prog="reeskit", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("instance", type=Path, help="instance file")
        p.add_argument("--field", help="override the instance field (Q or Fp:<p>)")
        p.add_argument("--seed", type=int, help="override the instance seed")
        p.add_argument("--pair-cap", type=int, help="S-pair guard cap")
        p.add_argument("--deg-cap", type=int, help="degree guard cap")

    c = sub.add_parser("construct", help="print matrices, generators, relations")
    common(c)

    v = sub.add_parser("verify", help="run checks and write report files")
    common(v)
    v.add_argument("--checks", help="comma-separated check kinds")
    v.add_argument("--jobs", type=int, default=1, help="parallel check workers")
    v.add_argument("--out", type=Path, default=Path("."), help="report directory")

    e = sub.add_parser("export", help="emit a cross-check script")
    common(e)
    e.add_argument(
        "--dialect", default="plain", help="script dialect: plain, m2, singular"
    )
    return parser


def _load(args) -> InstanceFile:
    path: Path = args.instance
    if not path.exists():
        raise UsageError(f"no such instance file: {path}")
    inst = parse_instance_file(path)
    if args.field:
        inst.field = FieldSpec.parse(args.field)
    if args.seed is not None:
        inst.seed = args.seed
    if args.pair_cap is not None:
        inst.pair_cap = args.pair_cap
    if args.deg_cap is not None:
        inst.deg_cap = args.deg_cap
    return inst


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_argparser()
    try:
        args = parser.parse_args(argv)
        inst = _load(args)
        if args.command == "construct":
            return cmd_construct(inst)
        if args.command == "verify":
            checks = _split_list(args.checks) if args.checks else None
            stem = args.instance.stem + "-report"
            return cmd_verify(inst, checks, args.out, stem, jobs=args.jobs)
        return cmd_export(inst, args.dialect)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceGuardError as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 2
    except PolyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
