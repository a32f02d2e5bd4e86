from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from .algebra import Algebra, ideal_from_labels, is_gorenstein, socle
from .battery import CHECKS, run_battery
from .config import current_settings, overrides
from .corpus import CORPUS_SPECS, CorpusModule, corpus_algebra, corpus_ids
from .errors import BudgetExhaustedError, FileFormatError, InputError, TatekitError, WindowError, exit_code_for
from .formats import (
    FieldSpec,
    MonomialCISpec,
    MonomialSpec,
    dump_algebra_spec,
    dump_module_spec,
    load_algebra,
    load_module,
    module_spec_of,
)
from .homalg import complete_resolution, detect_periodicity, resolution_of, tate_ext, tate_tor, verify_window
from .invariants import complexity_estimate, profile
from .linkage import even_link_chain, is_linked, linkage_datum, link_operator, restrict
from .modrep import Module, annihilator, free_module, residue_field
from .observability import Timer, configure_logging, log_event
from .theorems import EXPLORATION
from .version import get_version


def _parse_window(text: str | None) -> tuple[int, int] | None:
    if text is None:
        return None
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise WindowError(f"window must look like lo:hi, got {text!r}") from None
    if not lo <= 0 < hi:
        raise WindowError(f"window must satisfy lo <= 0 < hi, got {text}")
    return lo, hi


def _parse_ints(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _algebra_arg(value: str | None) -> Algebra:
    if value is None:
        raise InputError("--algebra is required (a file or a corpus id)")
    if value in CORPUS_SPECS and not Path(value).exists():
        return corpus_algebra(value)
    return load_algebra(value)


def _module_arg(value: str | None, a: Algebra, flag: str) -> Module:
    if value is None:
        raise InputError(f"{flag} is required")
    if not Path(value).exists():
        if value == "k":
            return residue_field(a)
        if value == "A":
            return free_module(a, 1)
        raise FileFormatError(f"{value}: no such module file (use a path, 'k' or 'A')")
    return load_module(value, a)


def _window_or_default(args: argparse.Namespace) -> tuple[int, int]:
    cfg = current_settings()
    return _parse_window(args.window) or (cfg.window_lo, cfg.window_hi)


def _emit(payload: Any) -> None:
    print(json.dumps(payload, indent=2, ensure_ascii=False, default=str))


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------


def cmd_info(args: argparse.Namespace) -> int:
    a = _algebra_arg(args.algebra)
    info = a.describe()
    if args.json:
        _emit(info)
        return 0
    print(f"algebra:    {a.name or '-'} over {a.field}")
    print(f"dimension:  {a.dim}")
    print(f"gorenstein: {'yes' if is_gorenstein(a) else 'no'} (socle dimension {a.socle_dim})")
    print(f"socle:      {', '.join(socle(a).describe())}")
    print(f"radical:    dimension {a.radical_basis.cols}")
    print(f"basis:      {' '.join(a.labels)}")
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "ci":
        powers = _parse_ints(args.powers)
        variables = args.vars.split(",") if args.vars else None
        if variables is None:
            variables = ["x", "y", "z", "w"][: len(powers)] if len(powers) <= 4 else [f"x{i + 1}" for i in range(len(powers))]
        spec: Any = MonomialCISpec(field=FieldSpec(char=args.char), vars=variables, powers=powers)
    elif args.family == "monomial":
        if not args.vars or not args.generators:
            raise InputError("--family monomial needs --vars and --generators")
        gens = [_parse_ints(g) for g in args.generators.split(";")]
        spec = MonomialSpec(field=FieldSpec(char=args.char), vars=args.vars.split(","), generators=gens)
    else:
        if args.id is None:
            print("\n".join(corpus_ids()))
            return 0
        if args.id not in CORPUS_SPECS:
            raise InputError(f"unknown corpus algebra {args.id!r}; known: {', '.join(CORPUS_SPECS)}")
        spec = CORPUS_SPECS[args.id]

    a = spec.build(name=Path(args.output).stem if args.output else "")
    if args.output:
        dump_algebra_spec(spec, args.output)
        print(f"wrote {args.output}: dim={a.dim} gorenstein={'yes' if is_gorenstein(a) else 'no'}")
    else:
        print(spec.model_dump_json())
    return 0


def cmd_resolve(args: argparse.Namespace) -> int:
    a = _algebra_arg(args.algebra)
    m = _module_arg(args.M, a, "--M")
    length = args.length if args.length is not None else current_settings().horizon
    betti = resolution_of(m).betti_numbers(length)
    payload: dict[str, Any] = {"module": m.label(), "betti": betti}
    w = complete_resolution(m, *_window_or_default(args)) if is_gorenstein(a) else None
    check = verify_window(w) if w is not None else None
    if w is not None and check is not None:
        payload["complete_resolution"] = w.to_dict()
        payload["window_check"] = {"ok": check.ok, "errors": list(check.errors)}
    if args.json:
        _emit(payload)
    else:
        print(f"betti({m.label()}): {' '.join(str(b) for b in betti)}")
        if w is not None and check is not None:
            ranks = " ".join(str(w.rank(i)) for i in range(w.first, w.last + 1))
            print(f"complete resolution ranks [{w.first}..{w.last}]: {ranks}")
            print(f"window check: {'ok' if check.ok else '; '.join(check.errors)}")
        else:
            print("complete resolution: not available (algebra is not Gorenstein)")
    return 0 if check is None or check.ok else 1


def cmd_tate(args: argparse.Namespace) -> int:
    a = _algebra_arg(args.algebra)
    m = _module_arg(args.M, a, "--M")
    n = _module_arg(args.N, a, "--N")
    lo, hi = _window_or_default(args)
    table = tate_ext(m, n, lo, hi) if args.kind == "ext" else tate_tor(m, n, lo, hi)
    period = detect_periodicity(m) or detect_periodicity(n)
    table = table.with_period(period)
    if args.json:
        _emit(table.to_dict())
    else:
        print(" ".join(str(d) for d in table.dims))
    return 0


def cmd_profile(args: argparse.Namespace) -> int:
    a = _algebra_arg(args.algebra)
    m = _module_arg(args.M, a, "--M")
    lo, hi = _window_or_default(args)
    prof = profile(m, lo, hi)
    cx = complexity_estimate(m, args.horizon)
    if args.json:
        _emit({**prof.to_dict(), "complexity": cx.to_dict()})
        return 0
    print(f"degrees:      {' '.join(str(i) for i in range(lo, hi + 1))}")
    print(f"stable betti: {' '.join(str(d) for d in prof.stable_betti.dims)}")
    print(f"stable bass:  {' '.join(str(d) for d in prof.stable_bass.dims)}")
    print(f"betti:        {' '.join(str(d) for d in prof.ordinary_betti)}")
    print(f"complexity:   {cx.label()}{' (certified)' if cx.certified else ''}")
    return 0


def cmd_link(args: argparse.Namespace) -> int:
    a = _algebra_arg(args.algebra)
    m = _module_arg(args.M, a, "--M")
    c = ideal_from_labels(a, args.ideal.split(",")) if args.ideal else None
    d = linkage_datum(a, c)
    notes = [] if c is None or c.dim == 0 else [EXPLORATION]
    payload: dict[str, Any] = {"datum": d.to_dict(), "notes": notes}

    linked = link_operator(restrict(m, d))
    payload["lambda"] = {"kdim": linked.kdim, "annihilator": annihilator(linked).describe()}
    if args.chain:
        chain = even_link_chain(m, [d] * args.chain)
        payload["chain_kdims"] = [x.kdim for x in chain]
    code = 0
    if args.N:
        n = _module_arg(args.N, a, "--N")
        result = is_linked(m, n, d)
        payload["linked"] = result.to_dict()
        undetermined = any(r is not None and r.status == "undetermined" for r in (result.forward, result.backward))
        if undetermined:
            code = exit_code_for(BudgetExhaustedError("isomorphism search budget exhausted"))
    if args.output:
        dump_module_spec(module_spec_of(linked), args.output)
        payload["wrote"] = args.output

    if args.json:
        _emit(payload)
    else:
        print(f"lambda({m.label()}): kdim={linked.kdim} annihilator=({', '.join(payload['lambda']['annihilator'])})")
        if "chain_kdims" in payload:
            print(f"chain kdims: {' '.join(str(k) for k in payload['chain_kdims'])}")
        if "linked" in payload:
            print(f"linked: {'yes' if payload['linked']['linked'] else 'no'} {payload['linked']['reason']}".rstrip())
        for note in notes:
            print(f"note: {note}")
    return code


def cmd_verify(args: argparse.Namespace) -> int:
    algebras: list[Algebra] = []
    if args.algebra:
        algebras.append(_algebra_arg(args.algebra))
    if args.corpus == "builtin":
        algebras += [corpus_algebra(i) for i in corpus_ids()]
    elif args.corpus:
        algebras.append(_algebra_arg(args.corpus))
    if not algebras:
        raise InputError("verify needs --algebra and/or --corpus")

    family = None
    if args.M:
        if len(algebras) != 1:
            raise InputError("--M/--N need exactly one algebra")
        mods = [_module_arg(v, algebras[0], flag) for v, flag in ((args.M, "--M"), (args.N, "--N")) if v]
        family = [CorpusModule(x, annihilator(x)) for x in mods]

    result = run_battery(
        algebras,
        checks=[args.check],
        window=_parse_window(args.window),
        horizon=args.horizon,
        workers=args.workers,
        family=family,
    )
    if args.json:
        _emit(result.to_dict())
    else:
        for r in result.reports:
            print(r.line())
        counts = ", ".join(f"{k}={v}" for k, v in sorted(result.counts().items()))
        print(f"{len(result.reports)} checks: {counts or 'none'}")
    return result.exit_code


_COMMANDS = {
    "info": cmd_info,
    "gen": cmd_gen,
    "resolve": cmd_resolve,
    "tate": cmd_tate,
    "profile": cmd_profile,
    "link": cmd_link,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tatekit", description="Tate (co)homology over local Gorenstein algebras.")
    parser.add_argument("--seed", default=None, help="Random seed (hex, e.g. 0xC0FFEE).")
    parser.add_argument("--log-level", default=None, help="DEBUG|INFO|WARNING|ERROR (default: LOG_LEVEL).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {get_version()}")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def algebra_flags(p: argparse.ArgumentParser, *, required: bool = True) -> None:
        p.add_argument("--algebra", required=required, help="Algebra JSON file or built-in corpus id.")
        p.add_argument("--json", action="store_true", help="Machine-readable output.")

    p_info = sub.add_parser("info", help="Describe an algebra.")
    algebra_flags(p_info)

    p_gen = sub.add_parser("gen", help="Write an algebra file.")
    p_gen.add_argument("--family", choices=["ci", "monomial", "corpus"], required=True)
    p_gen.add_argument("--char", type=int, default=2)
    p_gen.add_argument("--powers", default=None, help="ci: comma-separated powers, e.g. 2,2")
    p_gen.add_argument("--vars", default=None, help="Comma-separated variable names.")
    p_gen.add_argument("--generators", default=None, help="monomial: exponent vectors, e.g. '2,0;1,1;0,2'")
    p_gen.add_argument("--id", default=None, help="corpus: algebra id (omit to list ids).")
    p_gen.add_argument("-o", "--output", default=None)

    p_res = sub.add_parser("resolve", help="Minimal resolution and complete resolution window.")
    algebra_flags(p_res)
    p_res.add_argument("--M", required=True, help="Module file, or k / A.")
    p_res.add_argument("--length", type=int, default=None)
    p_res.add_argument("--window", default=None, help="lo:hi, inclusive.")

    p_tate = sub.add_parser("tate", help="Tate Ext or Tor table.")
    p_tate.add_argument("kind", choices=["ext", "tor"])
    algebra_flags(p_tate)
    p_tate.add_argument("--M", required=True)
    p_tate.add_argument("--N", required=True)
    p_tate.add_argument("--window", default=None)

    p_prof = sub.add_parser("profile", help="Stable Betti/Bass numbers and complexity.")
    algebra_flags(p_prof)
    p_prof.add_argument("--M", required=True)
    p_prof.add_argument("--window", default=None)
    p_prof.add_argument("--horizon", type=int, default=None)

    p_link = sub.add_parser("link", help="Linkage operator, linkage test and chains.")
    algebra_flags(p_link)
    p_link.add_argument("--M", required=True)
    p_link.add_argument("--N", default=None)
    p_link.add_argument("--ideal", default=None, help="Linking ideal as comma-separated basis labels (default 0).")
    p_link.add_argument("--chain", type=int, default=0, help="Apply the linkage operator this many times.")
    p_link.add_argument("-o", "--output", default=None, help="Write lambda(M) as a module file.")

    p_ver = sub.add_parser("verify", help="Run one check or all of them.")
    p_ver.add_argument("check", help=f"all, or one of: {', '.join(c.name for c in CHECKS)}")
    algebra_flags(p_ver, required=False)
    p_ver.add_argument("--corpus", default=None, help="builtin, or a corpus id.")
    p_ver.add_argument("--M", default=None)
    p_ver.add_argument("--N", default=None)
    p_ver.add_argument("--window", default=None)
    p_ver.add_argument("--horizon", type=int, default=None)
    p_ver.add_argument("--workers", type=int, default=None)
    return parser


def _normalize(argv: list[str]) -> list[str]:
    """Let `--window -8:8` through argparse, which otherwise reads -8:8 as a flag."""

    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--window":
            value = next(it, None)
            out.append(tok if value is None else f"--window={value}")
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None) -> int:
    args_list = _normalize(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(args_list)
    except SystemExit as e:
        return int(e.code or 0)

    configure_logging(args.log_level)
    timer = Timer()
    try:
        seed = int(args.seed, 16) if args.seed is not None else None
    except ValueError:
        print(f"error: bad-input: --seed must be hexadecimal, got {args.seed!r}", file=sys.stderr)
        return 2
    try:
        with overrides(seed=seed, horizon=getattr(args, "horizon", None), max_workers=getattr(args, "workers", None)):
            code = _COMMANDS[args.cmd](args)
    except TatekitError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        code = exit_code_for(e)
    except ValidationError as e:
        print(f"error: bad-file: {e.errors()[0].get('msg', e)}", file=sys.stderr)
        code = 2
    except Exception as e:
        log_event("cli.internal_error", severity="ERROR", command=args.cmd, error=f"{type(e).__name__}: {e}")
        print(f"error: internal: {type(e).__name__}: {e}", file=sys.stderr)
        code = exit_code_for(e)
    log_event("cli.command", command=args.cmd, exit_code=code, elapsed_ms=timer.ms())
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
