"""Command-line interface: manifest-driven computations and the regression gate.

Commands: validate, chains, ranks, minimality, multitype, witness, hormander,
levi, e1det, orbit, corpus, checkall.  Exit codes: 0 success, 1 verdict
failure (e.g. an invalid manifold or a failed regression item), 2 usage error.
Machine reports are JSON with sorted keys, so identical invocations produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .chains import check_reparam, default_kmax, gamma, sigma_image
from .corpus import corpus
from .errors import ParseError, SegreError, RealityViolation
from .exprs import format_series, parse_series
from .invariants import (
    hypersurface_minimality,
    rank_profile,
    segre_invariants,
    witness_point,
)
from .lie import (
    e1_determinant,
    holomorphic_nondegeneracy,
    hormander_numbers,
    levi_type,
)
from .manifests import load_manifest
from .manifold import Basepoint
from .orbit import cr_pair_system, greedy_multitype, lie_span_dimension
from .ranks import DEFAULT_TRIALS
from .scalars import format_scalar
from .series import VarSpace


def _parse_scalar(text: str):
    return parse_series(text, VarSpace([]), None).constant_term()


def _basepoint(M, spec_text: str) -> Basepoint:
    if spec_text == "origin":
        return Basepoint.origin()
    if spec_text == "generic":
        return Basepoint.symbolic()
    values = [_parse_scalar(part) for part in spec_text.split(",")]
    need = 2 * M.n
    if len(values) != need:
        raise ParseError(
            f"--base needs {need} comma-separated scalars (w, z, zeta, xi)"
        )
    m, d = M.m, M.d
    return Basepoint.numeric(
        M,
        values[:m],
        values[m : m + d],
        values[m + d : 2 * m + d],
        values[2 * m + d :],
    )


def _fmt_scalars(values):
    return [format_scalar(v) for v in values]


def _profile_payload(profile):
    return {
        "r": list(profile.r),
        "e": list(profile.e),
        "certified": profile.certified,
        "stopped_at": profile.stopped_at,
        "kmax": profile.kmax,
    }


def _invariants_payload(inv):
    return {
        "kappa": inv.kappa,
        "mu": inv.mu,
        "nu": inv.nu,
        "multitype": list(inv.multitype),
        "minimal": inv.minimal,
        "orbit_dims": {
            "complexified": inv.orbit_dim_complexified,
            "intrinsic": inv.orbit_dim_intrinsic,
            "real": inv.orbit_dim_real,
        },
        "profile": _profile_payload(inv.profile),
    }


def _hormander_payload(hd):
    return {
        "ladder": [[mu, l, dim] for mu, l, dim in hd.ladder],
        "h": hd.h,
        "minimal": hd.minimal,
        "level_dims": list(hd.level_dims),
    }


def _emit(report, args, human_lines):
    if args.format == "machine":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in human_lines:
            print(line)


def _provenance(args, order):
    return {
        "seed": args.seed,
        "trials": args.trials,
        "order": "EXACT" if order is None else order,
        "kmax": getattr(args, "kmax", None),
        "version": __version__,
    }


def _load_manifold(args):
    manifest = load_manifest(args.manifest)
    if manifest.kind != "manifold":
        raise ParseError(f"{args.manifest}: expected a manifold manifest")
    if getattr(args, "order", None):
        manifest.params["order"] = args.order
    return manifest, manifest.build_manifold()


def cmd_validate(args):
    try:
        manifest, M = _load_manifold(args)
    except RealityViolation as exc:
        report = {
            "command": "validate",
            "manifest": str(args.manifest),
            "results": {"valid": False, "reason": str(exc)},
        }
        _emit(report, args, [f"INVALID: {exc}"])
        return 1
    report = {
        "command": "validate",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d},
        "results": {"valid": True},
        "provenance": _provenance(args, M.order),
    }
    _emit(report, args, [f"valid manifold: m={M.m}, d={M.d}, "
                         f"order={'EXACT' if M.order is None else M.order}"])
    return 0


def cmd_chains(args):
    manifest, M = _load_manifold(args)
    kmax = args.kmax or min(default_kmax(M), 5)
    bp = _basepoint(M, args.base)
    items = []
    lines = []
    for k in range(1, kmax + 1):
        chain = gamma(M, k, bp, args.parity)
        comps = {
            name: format_series(s)
            for name, s in zip(M.space.names, chain.map.components)
        }
        items.append({"k": k, "parity": args.parity, "components": comps})
        lines.append(f"Gamma_{k} ({args.parity}-first):")
        for name, text in comps.items():
            lines.append(f"  {name} = {text}")
    report = {
        "command": "chains",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d, "base": args.base},
        "results": {"chains": items},
        "provenance": _provenance(args, M.order),
    }
    _emit(report, args, lines)
    return 0


def cmd_ranks(args):
    manifest, M = _load_manifold(args)
    bp = _basepoint(M, args.base)
    profile = rank_profile(
        M, bp, args.kmax, args.trials, args.seed, certify=args.certify
    )
    report = {
        "command": "ranks",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d, "base": args.base},
        "results": _profile_payload(profile),
        "provenance": _provenance(args, M.order),
    }
    lines = [
        "k    : " + "  ".join(f"{k + 1:3d}" for k in range(len(profile.r))),
        "rank : " + "  ".join(f"{r:3d}" for r in profile.r),
        f"increments e = {list(profile.e)}",
        f"certified = {profile.certified}",
    ]
    _emit(report, args, lines)
    return 0


def cmd_minimality(args):
    manifest, M = _load_manifold(args)
    bp = _basepoint(M, args.base)
    inv = segre_invariants(M, bp, args.kmax, args.trials, args.seed)
    results = {"minimal": inv.minimal, "mu": inv.mu, "kappa": inv.kappa}
    if M.d == 1:
        hm = hypersurface_minimality(M)
        results["hypersurface_test"] = hm
        results["tests_agree"] = hm == inv.minimal
    report = {
        "command": "minimality",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d, "base": args.base},
        "results": results,
        "provenance": _provenance(args, M.order),
    }
    lines = [f"minimal = {inv.minimal}   (mu = {inv.mu}, kappa = {inv.kappa})"]
    if "hypersurface_test" in results:
        lines.append(
            f"hypersurface criterion agrees: {results['tests_agree']}"
        )
    _emit(report, args, lines)
    return 0 if results.get("tests_agree", True) else 1


def cmd_multitype(args):
    manifest, M = _load_manifold(args)
    bp = _basepoint(M, args.base)
    inv = segre_invariants(M, bp, args.kmax, args.trials, args.seed)
    report = {
        "command": "multitype",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d, "base": args.base},
        "results": _invariants_payload(inv),
        "provenance": _provenance(args, M.order),
    }
    lines = [
        f"multitype = {inv.multitype}",
        f"kappa = {inv.kappa}, mu = {inv.mu}, nu = {inv.nu}",
        f"minimal = {inv.minimal}",
        f"orbit dims: complexified = {inv.orbit_dim_complexified}, "
        f"intrinsic = {inv.orbit_dim_intrinsic}",
    ]
    _emit(report, args, lines)
    return 0


def cmd_witness(args):
    manifest, M = _load_manifold(args)
    bp = _basepoint(M, args.base)
    if bp.kind == "symbolic":
        raise ParseError("witness search needs a numeric basepoint")
    inv = segre_invariants(M, bp, args.kmax, args.trials, args.seed)
    record = witness_point(M, inv, bp, seed=args.seed)
    payload = {
        "w_star": [_fmt_scalars(blk) for blk in record.w_star],
        "omega_star": [_fmt_scalars(blk) for blk in record.omega_star],
        "chain_length": record.chain_length,
        "rank_at_witness": record.rank_at_witness,
        "returns_to_basepoint": record.returns_to_basepoint,
    }
    report = {
        "command": "witness",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d, "base": args.base},
        "results": payload,
        "provenance": _provenance(args, M.order),
    }
    lines = [
        f"chain length {record.chain_length} returns to basepoint: "
        f"{record.returns_to_basepoint}",
        f"rank at witness = {record.rank_at_witness} "
        f"(expected {inv.orbit_dim_complexified})",
        f"w* = {payload['w_star']}",
        f"omega* = {payload['omega_star']}",
    ]
    _emit(report, args, lines)
    return 0


def cmd_hormander(args):
    manifest, M = _load_manifold(args)
    bp = _basepoint(M, args.base)
    hd = hormander_numbers(M, bp, args.max_length, args.trials, args.seed)
    report = {
        "command": "hormander",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d, "base": args.base},
        "results": _hormander_payload(hd),
        "provenance": _provenance(args, M.order),
    }
    lines = ["ladder (length, multiplicity, dim):"]
    for mu, l, dim in hd.ladder:
        lines.append(f"  ({mu}, {l}, {dim})")
    lines.append(f"minimal = {hd.minimal}")
    _emit(report, args, lines)
    return 0


def cmd_levi(args):
    manifest, M = _load_manifold(args)
    bp = _basepoint(M, args.base)
    ell = levi_type(M, bp, args.kmax, args.trials, args.seed)
    hn = holomorphic_nondegeneracy(M, args.kmax, args.trials, args.seed)
    results = {
        "levi_type": ell,
        "levi_type_generic": hn["levi_type_generic"],
        "holomorphically_nondegenerate": hn["nondegenerate"],
        "kmax": hn["kmax"],
    }
    report = {
        "command": "levi",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d, "base": args.base},
        "results": results,
        "provenance": _provenance(args, M.order),
    }
    lines = [
        f"Levi type at base = {ell if ell is not None else 'not finite (up to kmax)'}",
        f"generic Levi type = {hn['levi_type_generic']}",
        f"holomorphically nondegenerate = {hn['nondegenerate']}",
    ]
    _emit(report, args, lines)
    return 0


def cmd_e1det(args):
    manifest, M = _load_manifold(args)
    det, nonzero = e1_determinant(M)
    report = {
        "command": "e1det",
        "manifest": str(args.manifest),
        "inputs": {"m": M.m, "d": M.d},
        "results": {"determinant": format_series(det), "nonzero": nonzero},
        "provenance": _provenance(args, M.order),
    }
    _emit(report, args, [f"det = {format_series(det)}", f"nonzero = {nonzero}"])
    return 0


def cmd_orbit(args):
    manifest = load_manifest(args.manifest)
    if manifest.kind == "manifold":
        M = manifest.build_manifold()
        system = cr_pair_system(M)
    else:
        system = manifest.build_system()
    order = int(args.order) if args.order and args.order != "EXACT" else None
    result = greedy_multitype(
        system, kmax=args.kmax, order=order, trials=args.trials, seed=args.seed
    )
    oracle = lie_span_dimension(system)
    payload = {
        "multitype": list(result.multitype),
        "orbit_dim": result.orbit_dim,
        "word": [w + 1 for w in result.word],
        "ranks": list(result.ranks),
        "lie_span_dim": oracle,
        "certified": result.orbit_dim == oracle,
        "flows_exact": result.flows_exact,
    }
    if system.a == 2:
        other = greedy_multitype(
            system, kmax=args.kmax, order=order, trials=args.trials,
            seed=args.seed, start_order=[1, 0], witness=False,
        )
        payload["multitype_conjugate_start"] = list(other.multitype)
    report = {
        "command": "orbit",
        "manifest": str(args.manifest),
        "inputs": {"n": system.n, "m": system.m, "a": system.a},
        "results": payload,
        "provenance": _provenance(args, order),
    }
    lines = [
        f"multitype = {payload['multitype']}",
        f"orbit_dim = {payload['orbit_dim']} "
        f"(bracket-span oracle: {oracle}, agree: {payload['certified']})",
        f"greedy word = {payload['word']}",
    ]
    _emit(report, args, lines)
    return 0 if payload["certified"] else 1


def cmd_corpus(args):
    entries = corpus()
    report = {
        "command": "corpus",
        "results": {"manifests": [{"name": n, "path": str(p)} for n, p in entries]},
    }
    _emit(report, args, [f"{n}  {p}" for n, p in entries])
    return 0


# -- checkall ---------------------------------------------------------------


def _check_manifold_expectations(name, manifest, expected, args, emit):
    failures = 0
    try:
        M = manifest.build_manifold()
        emit(name, "validate", True, "")
    except RealityViolation as exc:
        emit(name, "validate", False, str(exc))
        return 1
    seed, trials = args.seed, args.trials
    inv = None
    if any(k in expected for k in ("minimal", "kappa", "mu", "nu", "multitype", "e", "r")):
        inv = segre_invariants(M, Basepoint.origin(), None, trials, seed)
        for key, actual in (
            ("minimal", inv.minimal),
            ("kappa", inv.kappa),
            ("mu", inv.mu),
            ("nu", inv.nu),
            ("multitype", list(inv.multitype)),
            ("e", list(inv.profile.e[: inv.kappa])),
            ("r", list(inv.profile.r)),
        ):
            if key in expected:
                ok = expected[key] == actual
                failures += not ok
                emit(name, key, ok, f"expected {expected[key]}, got {actual}")
    if "hypersurface_minimal" in expected:
        actual = hypersurface_minimality(M)
        ok = expected["hypersurface_minimal"] == actual
        failures += not ok
        emit(name, "hypersurface_minimal", ok, f"got {actual}")
    if "e1_generic" in expected:
        ginv = segre_invariants(M, Basepoint.symbolic(), None, trials, seed)
        actual = ginv.profile.e[0] if ginv.profile.e else 0
        ok = expected["e1_generic"] == actual
        failures += not ok
        emit(name, "e1_generic", ok, f"got {actual}")
    if "hormander_ladder" in expected:
        hd = hormander_numbers(
            M, Basepoint.origin(), expected.get("hormander_max_length"), trials, seed
        )
        actual = [[mu, l] for mu, l, _ in hd.ladder]
        ok = expected["hormander_ladder"] == actual
        failures += not ok
        emit(name, "hormander_ladder", ok, f"got {actual}")
        if inv is not None:
            agree = hd.minimal == inv.minimal and sum(hd.multiplicities()) == sum(
                inv.multitype[2:]
            )
            failures += not agree
            emit(name, "bracket_chain_crosscheck", agree, "")
    if "levi_type_origin" in expected:
        actual = levi_type(M, Basepoint.origin(), expected.get("levi_kmax"), trials, seed)
        ok = expected["levi_type_origin"] == actual
        failures += not ok
        emit(name, "levi_type_origin", ok, f"got {actual}")
    if "levi_type_generic" in expected or "holomorphically_nondegenerate" in expected:
        hn = holomorphic_nondegeneracy(M, expected.get("levi_kmax"), trials, seed)
        if "levi_type_generic" in expected:
            ok = expected["levi_type_generic"] == hn["levi_type_generic"]
            failures += not ok
            emit(name, "levi_type_generic", ok, f"got {hn['levi_type_generic']}")
        if "holomorphically_nondegenerate" in expected:
            ok = expected["holomorphically_nondegenerate"] == hn["nondegenerate"]
            failures += not ok
            emit(name, "holomorphically_nondegenerate", ok, f"got {hn['nondegenerate']}")
    if "e1_det_nonzero" in expected:
        _, nonzero = e1_determinant(M)
        ok = expected["e1_det_nonzero"] == nonzero
        failures += not ok
        emit(name, "e1_det_nonzero", ok, f"got {nonzero}")
    if "orbit_dim" in expected:
        system = cr_pair_system(M, check=False)
        dim = greedy_multitype(system, trials=trials, seed=seed, witness=False).orbit_dim
        ok = expected["orbit_dim"] == dim
        failures += not ok
        emit(name, "orbit_dim", ok, f"got {dim}")
    if "gamma_components" in expected:
        for k_text, comps in expected["gamma_components"].items():
            chain = gamma(M, int(k_text), Basepoint.origin(), "L")
            actual = [format_series(s) for s in chain.map.components]
            ok = comps == actual
            failures += not ok
            emit(name, f"gamma_{k_text}", ok, f"got {actual}")
    if "sigma_symmetry_upto" in expected:
        ok = True
        for k in range(1, expected["sigma_symmetry_upto"] + 1):
            image = sigma_image(gamma(M, k, Basepoint.origin(), "L", verify=False))
            direct = gamma(M, k, Basepoint.origin(), "Lbar", verify=False)
            ok = ok and image.map.components == direct.map.components
        failures += not ok
        emit(name, "sigma_symmetry", ok, "")
    if "reparam_upto" in expected:
        ok = all(check_reparam(M, k) for k in range(1, expected["reparam_upto"] + 1))
        failures += not ok
        emit(name, "reparametrization", ok, "")
    return failures


def cmd_checkall(args):
    if args.manifest:
        root = Path(args.manifest)
        entries = sorted((p.stem, p) for p in root.glob("*.mf"))
        if not entries:
            raise ParseError(f"no .mf manifests under {root}")
    else:
        entries = corpus()
    lines = []
    items = []
    total_failures = 0

    def emit(name, key, ok, detail):
        nonlocal total_failures
        status = "PASS" if ok else "FAIL"
        suffix = "" if ok or not detail else f"  ({detail})"
        lines.append(f"{status}  {name}.{key}{suffix}")
        items.append({"name": name, "check": key, "ok": bool(ok)})

    for name, path in entries:
        manifest = load_manifest(path)
        expected_path = path.parent / f"{name}.expected.json"
        expected = {}
        if expected_path.exists():
            expected = json.loads(expected_path.read_text(encoding="utf-8"))
        if manifest.kind == "manifold":
            total_failures += _check_manifold_expectations(
                name, manifest, expected, args, emit
            )
        else:
            system = manifest.build_system()
            if "orbit_dim" in expected:
                dim = greedy_multitype(
                    system, trials=args.trials, seed=args.seed, witness=False
                ).orbit_dim
                ok = expected["orbit_dim"] == dim
                total_failures += not ok
                emit(name, "orbit_dim", ok, f"got {dim}")
            oracle = lie_span_dimension(system)
            dim2 = greedy_multitype(
                system, trials=args.trials, seed=args.seed, witness=False
            ).orbit_dim
            ok = oracle == dim2
            total_failures += not ok
            emit(name, "orbit_oracle_agreement", ok, f"{dim2} vs {oracle}")
    report = {
        "command": "checkall",
        "results": {"items": items, "failures": total_failures},
        "provenance": {"seed": args.seed, "trials": args.trials,
                       "version": __version__},
    }
    _emit(report, args, lines + [f"failures: {total_failures}"])
    return 1 if total_failures else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="segrechains",
        description="Exact Segre-chain geometry of CR-generic manifolds",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, manifest=True, base=True):
        if manifest:
            p.add_argument("manifest", help="manifest file path")
        p.add_argument("--order", default=None,
                       help="EXACT or a truncation degree (overrides manifest)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
        p.add_argument("--kmax", type=int, default=None)
        if base:
            p.add_argument(
                "--base", default="origin",
                help="origin | generic | comma-separated w,z,zeta,xi scalars",
            )
        p.add_argument("--format", choices=("human", "machine"), default="human")

    specs = [
        ("validate", cmd_validate, {}),
        ("chains", cmd_chains, {"parity": True}),
        ("ranks", cmd_ranks, {"certify": True}),
        ("minimality", cmd_minimality, {}),
        ("multitype", cmd_multitype, {}),
        ("witness", cmd_witness, {}),
        ("hormander", cmd_hormander, {"max_length": True}),
        ("levi", cmd_levi, {}),
        ("e1det", cmd_e1det, {}),
        ("orbit", cmd_orbit, {}),
        ("corpus", cmd_corpus, {"no_manifest": True, "no_base": True}),
        ("checkall", cmd_checkall, {"optional_manifest": True, "no_base": True}),
    ]
    for name, func, opts in specs:
        p = sub.add_parser(name)
        if opts.get("no_manifest"):
            common(p, manifest=False, base=not opts.get("no_base"))
        elif opts.get("optional_manifest"):
            p.add_argument("manifest", nargs="?", default=None,
                           help="directory of manifests (default: bundled corpus)")
            common(p, manifest=False, base=not opts.get("no_base"))
        else:
            common(p, base=not opts.get("no_base"))
        if opts.get("parity"):
            p.add_argument("--parity", choices=("L", "Lbar"), default="L")
        if opts.get("certify"):
            p.add_argument("--certify", action="store_true",
                           help="expand the witnessed minor symbolically")
        if opts.get("max_length"):
            p.add_argument("--max-length", dest="max_length", type=int, default=None)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SegreError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
