"""Command-line interface.

Subcommands: ``reproduce``, ``tangle``, ``group``, ``lie``, ``eigencheck``
and ``constants``.  Randomized paths take ``--seed``; its default comes from
the ``TRIPARTITE_SEED`` environment variable (else 0).  Exit codes: 0 success,
1 a reproduced claim failed, 2 bad input or internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import threading
from typing import Callable, Optional, Sequence

from . import gates, liealg, matgroup, qubits, reproduce
from .linalg import DimensionMismatch, matrix_from_json, matrix_to_json
from .scalar import format_scalar

SEED_ENV = "TRIPARTITE_SEED"


class InputError(Exception):
    """Unreadable or invalid input; reported with exit code 2."""


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV}={raw!r} is not an integer") from None


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _emit(obj, as_json: bool, human: Callable[[], str]) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(human())


def _progress_printer(enabled: bool):
    if not enabled:
        return None

    def report(event):
        print(json.dumps(event, sort_keys=True), file=sys.stderr, flush=True)

    return report


def _cancellable(fn: Callable, cancel: threading.Event):
    """Run ``fn`` in a worker thread; Ctrl-C sets ``cancel`` and waits for
    the worker to stop at its next checkpoint."""
    box: dict = {}

    def target():
        try:
            box["value"] = fn()
        except BaseException as exc:  # re-raised in the caller
            box["error"] = exc

    t = threading.Thread(target=target, daemon=True)
    t.start()
    try:
        while t.is_alive():
            t.join(0.1)
    except KeyboardInterrupt:
        cancel.set()
        t.join()
    if "error" in box:
        raise box["error"]
    return box.get("value")


# -- reproduce --------------------------------------------------------------------------


def cmd_reproduce(args) -> int:
    cancel = threading.Event()
    chosen = list(args.sections) + list(args.section or [])
    bad = [x for x in chosen if x not in reproduce.SECTIONS]
    if bad:
        raise InputError(f"unknown section(s) {bad}; choose from {', '.join(reproduce.SECTIONS)}")
    sections = list(dict.fromkeys(chosen)) or list(reproduce.SECTIONS)

    def tick(entry):
        if args.progress:
            print(f"{entry.status:8s} {entry.claim_id}", file=sys.stderr, flush=True)

    report = _cancellable(lambda: reproduce.run_report(sections, args.tier, cancel, tick), cancel)
    timings = not args.no_timings
    _emit(report.as_dict(timings), args.json, lambda: reproduce.format_report(report, timings))
    if cancel.is_set():
        return 2
    return report.exit_code


# -- tangle ------------------------------------------------------------------------------


def cmd_tangle(args) -> int:
    try:
        state = qubits.state_from_json(_read_json(args.state), args.state)
    except (ValueError, ArithmeticError) as exc:
        raise InputError(str(exc)) from None
    if state.n != 3:
        raise InputError(f"{args.state}: tangle needs a three-qubit state, got {state.n} qubits")
    prof = qubits.entanglement_profile(state)
    out = prof.as_dict()
    out["b_type"] = qubits.is_b_type(prof)

    def human():
        lines = [f"{k:18s} {v}" for k, v in out.items()]
        return "\n".join(lines)

    _emit(out, args.json, human)
    return 0


# -- group ---------------------------------------------------------------------------------


def _load_group(path: str) -> matgroup.MatrixGroup:
    try:
        return matgroup.load_generators(_read_json(path))
    except (ValueError, ArithmeticError) as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_group(args) -> int:
    g = _load_group(args.gens)
    seed = _default_seed() if args.seed is None else args.seed
    progress = _progress_printer(args.progress)
    cancel = threading.Event()

    if args.action == "order":
        if args.method == "enumerate":
            c = _cancellable(lambda: matgroup.enumerate_group(g, args.limit, progress, cancel), cancel)
            out = {"order": c.order, "method": "enumerate"}
        else:
            o, chain = _cancellable(
                lambda: matgroup.order_bsgs(g, seed=seed, verify=args.verify, progress=progress, cancel=cancel), cancel
            )
            out = {
                "order": o,
                "method": "bsgs",
                "verified": chain.verified,
                "seed": seed,
                "orbit_sizes": list(chain.orbit_sizes),
            }
        _emit(out, args.json, lambda: str(out["order"]) + ("" if out.get("verified", True) else " (unverified)"))
        return 0

    c = _cancellable(lambda: matgroup.enumerate_group(g, args.limit, progress, cancel), cancel)
    d = matgroup.derived_subgroup(c)
    out = {"order": c.order, "derived_order": d.order}
    if c.order <= 10**4:
        out.update(matgroup.identify_small(c).as_dict())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(matgroup.dump_generators(matgroup.MatrixGroup(d.generators)))
    _emit(out, args.json, lambda: "\n".join(f"{k:16s} {v}" for k, v in out.items()))
    return 0


# -- lie -----------------------------------------------------------------------------------


def _load_basis(path: str) -> liealg.LieAlgebraBasis:
    try:
        return liealg.load_basis(_read_json(path), path)
    except (ValueError, ArithmeticError) as exc:
        raise InputError(str(exc)) from None


def _parse_cartan(b: liealg.LieAlgebraBasis, text: Optional[str]) -> list:
    if not text:
        raise InputError("--cartan is required (comma-separated names or 0-based indices)")
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok.isdigit():
            i = int(tok)
            if i >= b.dim:
                raise InputError(f"--cartan index {i} out of range (dim {b.dim})")
            out.append(i)
        elif b.names is not None and tok in b.names:
            out.append(tok)
        else:
            raise InputError(f"--cartan: no basis element named {tok!r}")
    return out


def _mat(m) -> list:
    return [[format_scalar(x) for x in r] for r in m.tolist()]


def cmd_lie(args) -> int:
    a = args.action
    if a == "closure":
        try:
            mats, _ = liealg.load_matrices(_read_json(args.basis), args.basis)
        except (ValueError, ArithmeticError) as exc:
            raise InputError(str(exc)) from None
    else:
        b = _load_basis(args.basis)
    try:
        if a == "closure":
            c = liealg.lie_closure(mats, args.maxdim)
            out = {
                "dim": c.dim,
                "center_dim": len(liealg.center(c)),
                "derived_dim": len(liealg.derived_algebra(c)),
            }
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(liealg.dump_basis(c))
            _emit(out, args.json, lambda: "\n".join(f"{k:12s} {v}" for k, v in out.items()))
        elif a == "killing":
            K = liealg.killing_form(b)
            out = {"killing": _mat(K)}
            _emit(out, args.json, lambda: str(K))
        elif a == "signature":
            s = liealg.killing_signature(b)
            out = {"signature": list(s), "semisimple": liealg.is_semisimple(b)}
            _emit(out, args.json, lambda: f"(p, n, z) = {s}; semisimple: {out['semisimple']}")
        elif a == "roots":
            rd = liealg.roots_relative(b, _parse_cartan(b, args.cartan))
            out = rd.as_dict()
            out["type"] = liealg.root_system_type(rd)

            def human():
                ws = ", ".join("(" + ",".join(w) + ")" for w in out["roots"])
                return f"roots: {ws}\ntype: {out['type']}\ncomplete: {out['complete']}"

            _emit(out, args.json, human)
        else:  # table
            if b.names is None:
                raise InputError(f"{args.basis}: table check needs named elements x1..h2")
            cand = dict(zip(b.names, b.basis))
            try:
                r = liealg.verify_chevalley_table(cand)
            except KeyError as exc:
                raise InputError(f"{args.basis}: {exc.args[0]}") from None
            out = r.as_dict()

            def human():
                lines = [f"{len(r.checks) - len(r.mismatches)}/{len(r.checks)} pairs match"]
                lines += [f"  {m['pair']}: expected {m['expected']}, computed {m['computed']}" for m in r.mismatches]
                return "\n".join(lines)

            _emit(out, args.json, human)
            return 0 if r.ok else 1
    except (liealg.NotClosed, liealg.NotCommuting, liealg.NotDiagonalizable, liealg.NotRealSymmetric, liealg.MaxDimExceeded, DimensionMismatch) as exc:
        raise InputError(f"{type(exc).__name__}: {exc}") from None
    return 0


# -- eigencheck --------------------------------------------------------------------------------


def cmd_eigencheck(args) -> int:
    if args.gate in gates.registry():
        gate = gates.constant(args.gate)
    elif os.path.exists(args.gate):
        try:
            gate = matrix_from_json(_read_json(args.gate), args.gate)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        try:
            gates.constant(args.gate)
        except gates.UnknownConstant as exc:
            raise InputError(f"{args.gate!r} is neither a registered constant nor a file ({exc.args[0]})") from None
    triple = gates.observable_triple(args.triple)
    if gate.cols != triple[0].rows:
        raise InputError(f"gate has {gate.cols} columns but the {args.triple} triple acts on {triple[0].rows}")
    try:
        pat = gates.joint_eigensign_check(gate, triple)
    except gates.NotEigenvector as exc:
        out = {"eigenvectors": False, "row": exc.row, "observable": exc.observable}
        _emit(out, args.json, lambda: str(exc))
        return 1
    except qubits.NotNormalized as exc:
        raise InputError(str(exc)) from None
    out = {"eigenvectors": True, "signs": [list(r) for r in pat]}
    _emit(out, args.json, lambda: "\n".join(" ".join(f"{s:+d}" for s in r) for r in pat))
    return 0


# -- constants -----------------------------------------------------------------------------------


def cmd_constants(args) -> int:
    """List registered constants, or dump them as JSON: an exact name gives
    one matrix, a prefix gives a named array (a basis or generator file)."""
    if not args.dump:
        for n in gates.names(args.prefix):
            print(f"{n:24s} {gates.registry()[n].provenance}")
        return 0
    if args.prefix in gates.registry():
        print(json.dumps(matrix_to_json(gates.constant(args.prefix))))
        return 0
    keys = args.keys.split(",") if args.keys else list(gates.SL3_TABLE_NAMES)
    try:
        mats = gates.basis(args.prefix, keys)
    except gates.UnknownConstant as exc:
        children = [n[len(args.prefix) + 1:] for n in gates.names(args.prefix + ".")]
        raise InputError(f"{exc.args[0]}; children of {args.prefix!r}: {children} (choose with --keys)") from None
    print(json.dumps([{"name": k, **matrix_to_json(m)} for k, m in mats.items()]))
    return 0


# -- parser ---------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tripartite", description="Exact three-qubit entanglement, finite matrix groups and Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reproduce", help="re-derive the published claims and print a traceability report")
    # validated in cmd_reproduce: argparse rejects an empty list when nargs="*" has choices
    r.add_argument("sections", nargs="*", metavar="SECTION", help=f"subset of {', '.join(reproduce.SECTIONS)}")
    r.add_argument("--section", action="append", choices=reproduce.SECTIONS, help=argparse.SUPPRESS)
    r.add_argument("--tier", choices=reproduce.TIERS, default="fast")
    r.add_argument("--json", action="store_true")
    r.add_argument("--no-timings", action="store_true", help="report runtime_ms as 0 (byte-stable output)")
    r.add_argument("--progress", action="store_true")
    r.set_defaults(func=cmd_reproduce)

    t = sub.add_parser("tangle", help="entanglement profile of a three-qubit state file")
    t.add_argument("--state", required=True)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_tangle)

    g = sub.add_parser("group", help="order or derived subgroup of a matrix group")
    g.add_argument("action", choices=("order", "derived"))
    g.add_argument("--gens", required=True, help="JSON array of generator matrices")
    g.add_argument("--method", choices=("bsgs", "enumerate"), default="bsgs")
    g.add_argument("--limit", type=int, default=10**5, help="element cap for enumeration")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    g.add_argument("--progress", action="store_true")
    g.add_argument("--out", help="write derived-subgroup generators here")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_group)

    l = sub.add_parser("lie", help="Lie-algebra analyses of a basis file")
    l.add_argument("action", choices=("closure", "killing", "signature", "roots", "table"))
    l.add_argument("--basis", required=True, help="JSON array of matrices, optionally named")
    l.add_argument("--cartan", help="comma-separated element names or indices")
    l.add_argument("--maxdim", type=int, default=256)
    l.add_argument("--out", help="write the closure basis here")
    l.add_argument("--json", action="store_true")
    l.set_defaults(func=cmd_lie)

    e = sub.add_parser("eigencheck", help="joint eigensigns of gate rows under an observable triple")
    e.add_argument("gate", help="registered constant name or matrix file")
    e.add_argument("--triple", choices=("two_qubit", "three_qubit"), default="two_qubit")
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eigencheck)

    c = sub.add_parser("constants", help="list registered matrices or dump them as JSON")
    c.add_argument("prefix", nargs="?", default="")
    c.add_argument("--dump", action="store_true", help="print matrix JSON (a named array for a prefix)")
    c.add_argument("--keys", help="comma-separated child names for a prefix dump (default x1,...,h2)")
    c.set_defaults(func=cmd_constants)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "reproduce":
        args.section = list(dict.fromkeys((args.sections or []) + (args.section or []))) or None
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (matgroup.LimitExceeded, matgroup.NotFinite, matgroup.Cancelled) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal error
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
