"""Command-line front end: relation checks, operator application, limits.

Exit codes: 0 all checks passed, 1 a check failed, 2 configuration error.
Reports are JSON; with --no-timing they are byte-identical across runs of
the same configuration and seed.  All scalar output is exact; nothing is
ever printed as a decimal approximation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .errors import BqtError
from .induced import IndVector
from .limits import CompatSeqSpec, dim_table
from .lspaces import LVector, apply_flavored_word, flavored_word_from_json
from .polyrep import PolyVector, apply_word, validate_word, word_from_json
from .relations import (
    check_aux_identities,
    check_bqt_relations,
    check_compatibility,
    check_daha_relations,
    check_theta_eigenvalues,
    make_realization,
    run_probabilistic,
)


def parse_shape(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "0"):
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError:
        raise ValueError(f"shape must be a comma list of integers, got {text!r}")
    if any(p <= 0 for p in parts):
        raise ValueError(f"shape parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"shape parts must weakly decrease: {parts}")
    return parts


def _module_descriptor(args) -> dict:
    desc = {"module": args.module, "n": args.n}
    if args.module == "murnaghan":
        desc["shape"] = list(parse_shape(args.shape))
    if getattr(args, "demazure", "1-q") != "1-q":
        desc["demazure_coefficient"] = args.demazure
    return desc


def _default_jobs() -> int:
    env = os.environ.get("BQT_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# module-level so it can cross a process boundary
def _check_task(task: tuple) -> list[dict]:
    suite, desc, params, only = task
    M = make_realization(desc)
    if suite == "daha":
        reports = check_daha_relations(M, params["dmax"], only=only)
    elif suite == "bqt":
        reports = check_bqt_relations(M, params["kmax"], params["dmax"], only=only)
    elif suite == "aux":
        reports = check_aux_identities(M, params["dmax"], only=only)
    else:
        raise ValueError(suite)
    return [r.to_obj() for r in reports]


_DAHA_IDS = [
    "daha_quadratic",
    "daha_braid",
    "daha_T_commute",
    "daha_TXT",
    "daha_TX_commute",
    "daha_X_commute",
    "daha_TYT",
    "daha_TY_commute",
    "daha_Y_commute",
    "daha_YTX",
    "daha_Y_Xchain",
]
_BQT_IDS = [
    "bqt_quadratic",
    "bqt_braid",
    "bqt_T_commute",
    "bqt_TzT",
    "bqt_zT_commute",
    "bqt_z_commute",
    "bqt_dminus_sq",
    "bqt_dminus_T",
    "bqt_T1_dplus_sq",
    "bqt_dplus_T",
    "bqt_phi_dminus",
    "bqt_phi_dplus",
    "bqt_z_dminus",
    "bqt_dplus_z",
    "bqt_z1_commutator",
]
_AUX_IDS = [
    "aux_eps_idempotent",
    "aux_eps_product",
    "aux_eps_absorbs_T",
    "aux_eps_commutes_T",
    "aux_pi_X",
    "aux_pi_T",
    "aux_pi_sq_T",
    "aux_pitilde_Y",
    "aux_pitilde_tY",
    "aux_pitilde_T",
    "aux_pitilde_sq_T",
    "aux_jucys_murphy",
    "aux_phi_closed_form",
    "aux_dminus_closed_form",
]


def cmd_check(args) -> int:
    desc = _module_descriptor(args)
    params = {"dmax": args.dmax, "kmax": args.kmax}
    seed = args.seed

    if args.suite == "compat":
        seq = (
            CompatSeqSpec("polynomial")
            if args.module == "poly"
            else CompatSeqSpec("murnaghan", parse_shape(args.shape))
        )
        reports = check_compatibility(seq, args.n, args.dmax)
        report_objs = [r.to_obj() for r in reports]
    elif args.probabilistic:

        def suite(ring):
            M = make_realization(desc, ring)
            if args.suite == "daha":
                return check_daha_relations(M, args.dmax)
            if args.suite == "bqt":
                return check_bqt_relations(M, args.kmax, args.dmax)
            return check_aux_identities(M, args.dmax)

        reports = run_probabilistic(suite, seed=seed, points=2)
        report_objs = [r.to_obj() for r in reports]
    else:
        ids = {"daha": _DAHA_IDS, "bqt": _BQT_IDS, "aux": _AUX_IDS}[args.suite]
        tasks = [(args.suite, desc, params, rid) for rid in ids]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                chunks = list(pool.map(_check_task, tasks))
        else:
            chunks = [_check_task(t) for t in tasks]
        report_objs = [obj for chunk in chunks for obj in chunk]

    if args.suite == "aux" and args.module == "murnaghan" and not args.probabilistic:
        report_objs.append(check_theta_eigenvalues(parse_shape(args.shape), args.n).to_obj())

    if args.no_timing:
        for obj in report_objs:
            obj["millis"] = 0.0
    status = all(obj["status"] == "pass" for obj in report_objs)
    doc = {
        "command": "check",
        "suite": args.suite,
        "realization": desc,
        "params": {"n": args.n, "dmax": args.dmax, "kmax": args.kmax},
        "seed": seed,
        "mode": "probabilistic" if args.probabilistic else "exact",
        "status": "pass" if status else "fail",
        "reports": report_objs,
    }
    _emit(doc, args.out)
    for obj in report_objs:
        flavor = f" k={obj['flavor']}" if "flavor" in obj else ""
        print(
            f"{obj['status'].upper():4s} {obj['relation_id']}{flavor} "
            f"(vectors={obj['vectors_checked']})",
            file=sys.stderr,
        )
    return 0 if status else 1


def cmd_act(args) -> int:
    desc = _module_descriptor(args)
    M = make_realization(desc)
    with open(args.infile) if args.infile != "-" else sys.stdin as fh:
        payload = json.load(fh)
    word_data = json.loads(args.word)
    if isinstance(payload, dict) and "flavor" in payload:
        vec_obj = payload["vector"]
        vec = (
            PolyVector.from_obj(vec_obj)
            if desc["module"] == "poly"
            else IndVector.from_obj(vec_obj)
        )
        lv = LVector(int(payload["flavor"]), vec)
        word = flavored_word_from_json(word_data)
        out = apply_flavored_word(M, lv, word)
        result = {"flavor": out.k, "vector": out.payload.to_obj()}
    else:
        vec = (
            PolyVector.from_obj(payload)
            if desc["module"] == "poly"
            else IndVector.from_obj(payload)
        )
        word = word_from_json(word_data)
        validate_word(word, M.n)
        out_vec = apply_word(M, vec, word)
        result = out_vec.to_obj()
    _emit(result, args.out)
    return 0


def cmd_limit(args, as_text: bool = False) -> int:
    seq = (
        CompatSeqSpec("polynomial")
        if args.seq in ("pol", "polynomial")
        else CompatSeqSpec("murnaghan", parse_shape(args.shape))
    )
    table = dim_table(seq, args.kmax, args.dmax, window=args.window, n_cap=args.ncap)
    unresolved = [c for c in table["cells"] if c.get("dim") is None]
    if as_text:
        dims_by_kd = {(c["k"], c["d"]): c for c in table["cells"]}
        header = "k\\d " + " ".join(f"{d:>5d}" for d in range(args.dmax + 1))
        print(header)
        for k in range(args.kmax + 1):
            row = [f"{k:>3d} "]
            for d in range(args.dmax + 1):
                cell = dims_by_kd[(k, d)]
                row.append(f"{cell['dim'] if cell['dim'] is not None else '?':>5}")
            print(" ".join(row))
        if unresolved:
            print(f"warning: {len(unresolved)} unresolved cells", file=sys.stderr)
    else:
        _emit(table, args.out)
        if unresolved:
            print(f"warning: {len(unresolved)} unresolved cells", file=sys.stderr)
    return 0


def _emit(doc, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out_path and out_path != "-":
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bqt",
        description="Exact checker for flavored operator algebras built from "
        "polynomial and tableau modules",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_module_args(p):
        p.add_argument("--module", choices=["poly", "murnaghan"], default="poly")
        p.add_argument("--shape", default="", help="partition, e.g. 2,1 (murnaghan)")
        p.add_argument("--n", type=int, required=True, help="rank")

    p = sub.add_parser("check", help="run a relation suite")
    p.add_argument("suite", choices=["daha", "bqt", "aux", "compat"])
    add_module_args(p)
    p.add_argument("--dmax", type=int, default=2)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--probabilistic", action="store_true")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--no-timing", action="store_true")
    p.add_argument("--demazure", choices=["1-q", "q-1"], default="1-q",
                   help="divided-difference coefficient; q-1 is the broken variant")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("act", help="apply a generator word to a vector file")
    add_module_args(p)
    p.add_argument("--word", required=True, help='JSON word, e.g. [["X",1],["Tinv",2]]')
    p.add_argument("--in", dest="infile", default="-", help="vector JSON file or -")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_act)

    def add_limit_args(p):
        p.add_argument("--seq", choices=["pol", "polynomial", "mur", "murnaghan"], default="pol")
        p.add_argument("--shape", default="")
        p.add_argument("--kmax", type=int, default=2)
        p.add_argument("--dmax", type=int, default=4)
        p.add_argument("--window", type=int, default=2)
        p.add_argument("--ncap", type=int, default=8)
        p.add_argument("--out", default=None)

    p = sub.add_parser("limit", help="stable-limit dimension table as JSON")
    add_limit_args(p)
    p.set_defaults(func=lambda a: cmd_limit(a, as_text=False))

    p = sub.add_parser("dims", help="stable-limit dimension table as text")
    add_limit_args(p)
    p.set_defaults(func=lambda a: cmd_limit(a, as_text=True))

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", None) is None and args.command == "check":
        args.jobs = _default_jobs()
    try:
        return args.func(args)
    except (ValueError, BqtError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
