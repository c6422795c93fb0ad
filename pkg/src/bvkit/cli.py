"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 budget/certification failure,
4 verification failure. One JSON document (CSV for scan tables) goes to
stdout or --out; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import _jsonfmt
from ._kernels import current_backend
from .equivar import (
    Family,
    VariationKind,
    build_certificate,
    certificate_from_json,
    certificate_to_json,
    check_certificate,
    compactness_report,
    kolmogorov_riesz_scan,
    separated_witness_search,
    uniform_lq_integrability,
)
from .errors import BudgetExceeded, BVKitError, CannotCertify, SchemaError
from .ibv import CutConfig, build_cuts, ivar
from .lqmod import omega_q, shift_profile, translation_integral
from .oracle import OracleBudget, bf_ivar, bf_jordan, bf_lambda, bf_omega_q, bf_phi
from .stepfun import Interval, restrict, step_from_json
from .waterman import (
    LambdaBudget,
    jordan_variation,
    lambda_variation,
    sequence_from_json,
    WatermanSequence,
)
from .young import PhiFunction, phi_from_json, phi_norm, phi_variation, v_phi


class VerificationFailure(Exception):
    pass


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as e:
        raise SchemaError(f"file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise SchemaError(f"not valid JSON: {path}: {e}") from e


def _load_fn(path: str):
    return step_from_json(_load_json(path))


def _parse_lambda(spec: str) -> WatermanSequence:
    if spec.startswith("@"):
        return sequence_from_json(_load_json(spec[1:]))
    if spec in ("harmonic", "constant_one"):
        return WatermanSequence(spec)
    if spec.startswith("power:"):
        return WatermanSequence("power", s=float(spec.split(":", 1)[1]))
    raise SchemaError(
        f"bad --lambda spec {spec!r} (harmonic | constant_one | power:S | @file.json)"
    )


def _parse_phi(spec: str) -> PhiFunction:
    if spec.startswith("@"):
        return phi_from_json(_load_json(spec[1:]))
    if spec == "expm1":
        return PhiFunction("expm1")
    if spec.startswith("power:"):
        return PhiFunction("power", p=float(spec.split(":", 1)[1]))
    raise SchemaError(f"bad --phi spec {spec!r} (power:P | expm1 | @file.json)")


def _interval(args, x) -> Interval:
    if args.interval is None:
        return x.domain
    return Interval(args.interval[0], args.interval[1])


def _cut_config(args) -> CutConfig:
    return CutConfig(
        k=args.refine,
        refine=not args.no_refine,
        max_cuts=args.max_cuts,
    )


def _kind_from_args(args) -> VariationKind:
    kind = args.kind
    if kind == "jordan":
        return VariationKind.jordan()
    if kind == "lambda":
        return VariationKind.waterman(_parse_lambda(args.lam))
    if kind == "phi":
        return VariationKind.young(_parse_phi(args.phi), args.tol)
    if kind == "ipq":
        return VariationKind.integral(args.p, args.q, _cut_config(args))
    raise SchemaError(f"unknown kind {kind!r}")


def _family_from_args(args) -> Family:
    if args.family_file:
        doc = _load_json(args.family_file)
        if not isinstance(doc, dict) or "members" not in doc:
            raise SchemaError("family file needs a 'members' array")
        return Family.from_members(step_from_json(m) for m in doc["members"])
    if args.family == "two-point":
        return Family.two_point()
    if args.family == "spike":
        if args.q is None:
            raise SchemaError("--family spike needs --q")
        return Family.spikes(args.q, range(2, args.n + 1))
    raise SchemaError("need --family-file or --family {two-point,spike}")


def _emit(args, doc, csv_rows=None):
    if csv_rows is not None and args.format == "csv":
        lines = [",".join(str(c) for c in row) for row in csv_rows]
        text = "\n".join(lines) + "\n"
    else:
        text = _jsonfmt.dumps(doc) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _check(label: str, main: float, reference: float, tol: float):
    if abs(main - reference) > tol * max(1.0, abs(main), abs(reference)):
        raise VerificationFailure(f"{label}: {main} vs oracle {reference}")


# ---- subcommand handlers ----------------------------------------------------

def _cmd_var(args):
    x = _load_fn(args.fn)
    J = _interval(args, x)
    value = jordan_variation(x, J)
    if args.oracle:
        y = x if (J.a, J.b) == (x.domain.a, x.domain.b) else restrict(x, J)
        ref = bf_jordan(y)
        if not (value <= ref + 1e-12 and ref - value <= 1e-12 * max(1.0, ref)):
            raise VerificationFailure(f"jordan {value} vs oracle {ref}")
    _emit(args, {"op": "var", "value": value, "interval": [J.a, J.b]})
    return 0


def _cmd_lvar(args):
    x = _load_fn(args.fn)
    seq = _parse_lambda(args.lam)
    cert = lambda_variation(x, seq, LambdaBudget(args.budget))
    if args.oracle:
        _check("lambda-variation", cert.value, bf_lambda(x, seq), 1e-12)
    _emit(
        args,
        {
            "op": "lvar",
            "value": cert.value,
            "bound": cert.bound,
            "method": cert.method,
            "witness": [it.as_pair() for it in cert.witness],
        },
    )
    return 0


def _cmd_phivar(args):
    x = _load_fn(args.fn)
    phi = _parse_phi(args.phi)
    J = _interval(args, x)
    value = phi_variation(x, phi, J)
    if args.oracle:
        y = x if (J.a, J.b) == (x.domain.a, x.domain.b) else restrict(x, J)
        _check("phi-variation", value, bf_phi(y, phi), 1e-12)
    _emit(args, {"op": "phivar", "value": value, "interval": [J.a, J.b]})
    return 0


def _cmd_phinorm(args):
    x = _load_fn(args.fn)
    phi = _parse_phi(args.phi)
    _emit(args, {"op": "phinorm", "value": phi_norm(x, phi, args.tol), "v_phi": v_phi(x, phi, args.tol)})
    return 0


def _cmd_ivar(args):
    x = _load_fn(args.fn)
    J = _interval(args, x)
    cfg = _cut_config(args)
    cert = ivar(x, args.p, args.q, J, cfg)
    if args.oracle:
        C = build_cuts(x, J, args.p, args.q, CutConfig(source="breakpoints_only", enrich=False))
        from . import _kernels

        best, _ = _kernels.ivar_dp(x.bk, x.pv, C, args.p, args.q)
        dp0 = float(best[-1]) ** (1.0 / args.p) if best[-1] > 0 else 0.0
        _check("ivar-dp", dp0, bf_ivar(x, args.p, args.q, C), 1e-12)
    _emit(
        args,
        {
            "op": "ivar",
            "value": cert.value,
            "bound": cert.bound,
            "p": args.p,
            "q": args.q,
            "interval": [J.a, J.b],
            "witness": [it.as_pair() for it in cert.witness],
        },
    )
    return 0


def _cmd_modulus(args):
    x = _load_fn(args.fn)
    J = _interval(args, x)
    value = omega_q(x, args.q, J)
    if args.oracle:
        ref = bf_omega_q(x, args.q, J, OracleBudget(h_grid=args.h_grid))
        if not (ref <= value + 1e-12 and value - ref <= 1e-3):
            raise VerificationFailure(f"omega_q {value} vs grid oracle {ref}")
    prof = shift_profile(x, args.q, J)
    _emit(
        args,
        {
            "op": "modulus",
            "value": value,
            "q": args.q,
            "interval": [J.a, J.b],
            "candidate_shifts": list(prof.candidate_shifts),
        },
    )
    return 0


def _cmd_translate(args):
    x = _load_fn(args.fn)
    J = _interval(args, x)
    value = translation_integral(x, args.q, J, args.h)
    _emit(
        args,
        {
            "op": "translate",
            "power_integral": value,
            "norm": value ** (1.0 / args.q),
            "q": args.q,
            "h": args.h,
            "interval": [J.a, J.b],
        },
    )
    return 0


def _cmd_equivar_cert(args):
    fam = _family_from_args(args)
    kind = _kind_from_args(args)
    cert = build_certificate(fam, args.epsilon, kind)
    _emit(args, certificate_to_json(cert))
    return 0


def _cmd_equivar_check(args):
    fam = _family_from_args(args)
    cert = certificate_from_json(_load_json(args.cert))
    rep = check_certificate(cert, fam)
    doc = {
        "op": "equivar-check",
        "all_ok": rep.all_ok,
        "worst_residual": rep.worst_residual,
        "members": [
            {
                "variation": c.variation,
                "seminorm": c.seminorm,
                "residual": c.residual,
                "nonoverlapping": c.nonoverlapping,
                "ok": c.ok,
            }
            for c in rep.members
        ],
    }
    _emit(args, doc)
    if not rep.all_ok:
        raise VerificationFailure("certificate check failed")
    return 0


def _cmd_kr_scan(args):
    fam = _family_from_args(args)
    rows = kolmogorov_riesz_scan(fam, args.q, args.deltas)
    csv_rows = [("delta", "value")] + [(f"{d:.17g}", f"{v:.17g}") for d, v in rows]
    _emit(args, {"op": "kr-scan", "q": args.q, "rows": [[d, v] for d, v in rows]}, csv_rows)
    return 0


def _cmd_ui_scan(args):
    fam = _family_from_args(args)
    rows = [(d, uniform_lq_integrability(fam, args.q, d)) for d in args.deltas]
    csv_rows = [("delta", "value")] + [(f"{d:.17g}", f"{v:.17g}") for d, v in rows]
    _emit(args, {"op": "ui-scan", "q": args.q, "rows": [[d, v] for d, v in rows]}, csv_rows)
    return 0


def _cmd_compactness(args):
    fam = _family_from_args(args)
    kind = _kind_from_args(args)
    base = _load_fn(args.base) if args.base else None
    rep = compactness_report(
        fam,
        kind,
        mode=args.mode,
        epsilon_list=args.epsilons,
        base_point=base,
        separation_epsilon0=args.epsilon0,
    )
    doc = {
        "op": "compactness-report",
        "members": rep.members,
        "kind": rep.kind_tag,
        "mode": rep.mode,
        "max_norm": rep.max_norm,
        "uniform_integrability": [[d, v] for d, v in rep.uniform_integrability or []],
        "kolmogorov_riesz": [[d, v] for d, v in rep.kr_rows or []],
        "certificates": [
            {
                "epsilon": a.epsilon,
                "ok": a.ok,
                "worst_residual": a.worst_residual,
                "master_size": a.master_size,
            }
            for a in rep.certificates
        ],
        "witness": list(rep.witness),
        "verdict": rep.verdict,
        "note": rep.note,
    }
    _emit(args, doc)
    return 0


def _cmd_witness(args):
    fam = _family_from_args(args)
    kind = _kind_from_args(args)
    found = separated_witness_search(fam, args.epsilon0, kind, args.max_len)
    _emit(
        args,
        {
            "op": "witness-search",
            "epsilon0": args.epsilon0,
            "kind": kind.tag,
            "indices": list(found),
        },
    )
    return 0


# ---- parser -----------------------------------------------------------------

def _add_common(sp, fn=True):
    if fn:
        sp.add_argument("--fn", required=True, help="step function JSON file")
        sp.add_argument("--interval", nargs=2, type=float, default=None, metavar=("A", "B"))
    sp.add_argument("--out", default=None, help="write the document here instead of stdout")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--oracle", action="store_true", help="cross-check against the brute-force oracle")


def _add_family(sp):
    sp.add_argument("--family", choices=("two-point", "spike"), default=None)
    sp.add_argument("--family-file", default=None, help="JSON file with a 'members' array")
    sp.add_argument("--n", type=int, default=16, help="largest spike index")


def _add_kind(sp):
    sp.add_argument("--kind", choices=("jordan", "lambda", "phi", "ipq"), required=True)
    sp.add_argument("--lambda", dest="lam", default="harmonic")
    sp.add_argument("--phi", default="power:2")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--p", type=float, default=1.0)
    sp.add_argument("--q", type=float, default=2.0)
    _add_cuts(sp)


def _add_cuts(sp):
    sp.add_argument("--refine", type=int, default=64, metavar="K", help="initial uniform cut count")
    sp.add_argument("--no-refine", action="store_true", help="skip the doubling sweep")
    sp.add_argument("--max-cuts", type=int, default=4096)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bvkit", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("var", help="Jordan variation")
    _add_common(sp)
    sp.set_defaults(handler=_cmd_var)

    sp = sub.add_parser("lvar", help="Lambda-variation")
    _add_common(sp)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--budget", type=int, default=15, help="trace cap for the exact search")
    sp.set_defaults(handler=_cmd_lvar)

    sp = sub.add_parser("phivar", help="Young phi-variation")
    _add_common(sp)
    sp.add_argument("--phi", required=True)
    sp.set_defaults(handler=_cmd_phivar)

    sp = sub.add_parser("phinorm", help="PhiBV norm |x(0)| + V_phi(x)")
    _add_common(sp)
    sp.add_argument("--phi", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.set_defaults(handler=_cmd_phinorm)

    sp = sub.add_parser("ivar", help="q-integral p-variation")
    _add_common(sp)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--q", type=float, required=True)
    _add_cuts(sp)
    sp.set_defaults(handler=_cmd_ivar)

    sp = sub.add_parser("modulus", help="L^q modulus of continuity")
    _add_common(sp)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--h-grid", type=int, default=10**4, help="oracle grid density")
    sp.set_defaults(handler=_cmd_modulus)

    sp = sub.add_parser("translate", help="translation power integral")
    _add_common(sp)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--h", type=float, required=True)
    sp.set_defaults(handler=_cmd_translate)

    sp = sub.add_parser("equivar-cert", help="build an equivariation certificate")
    _add_common(sp, fn=False)
    _add_family(sp)
    _add_kind(sp)
    sp.add_argument("--epsilon", type=float, required=True)
    sp.set_defaults(handler=_cmd_equivar_cert)

    sp = sub.add_parser("equivar-check", help="verify a certificate against a family")
    _add_common(sp, fn=False)
    _add_family(sp)
    sp.add_argument("--q", type=float, default=2.0, help="exponent for --family spike")
    sp.add_argument("--cert", required=True)
    sp.set_defaults(handler=_cmd_equivar_check)

    sp = sub.add_parser("kr-scan", help="Kolmogorov-Riesz translation scan")
    _add_common(sp, fn=False)
    _add_family(sp)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--deltas", type=float, nargs="+", default=[0.5, 0.25, 0.125])
    sp.set_defaults(handler=_cmd_kr_scan, format="csv")

    sp = sub.add_parser("ui-scan", help="uniform L^q integrability scan")
    _add_common(sp, fn=False)
    _add_family(sp)
    sp.add_argument("--q", type=float, required=True)
    sp.add_argument("--deltas", type=float, nargs="+", default=[0.5, 0.25, 0.125])
    sp.set_defaults(handler=_cmd_ui_scan, format="csv")

    sp = sub.add_parser("compactness-report", help="family-level compactness diagnostics")
    _add_common(sp, fn=False)
    _add_family(sp)
    _add_kind(sp)
    sp.add_argument("--mode", choices=("A_minus_A", "A_minus_x"), default="A_minus_A")
    sp.add_argument("--base", default=None, help="step function file for A_minus_x")
    sp.add_argument("--epsilons", type=float, nargs="+", default=[0.5, 0.1])
    sp.add_argument("--epsilon0", type=float, default=0.5)
    sp.set_defaults(handler=_cmd_compactness)

    sp = sub.add_parser("witness-search", help="separated-sequence witness search")
    _add_common(sp, fn=False)
    _add_family(sp)
    _add_kind(sp)
    sp.add_argument("--epsilon0", type=float, default=0.5)
    sp.add_argument("--max-len", type=int, default=16)
    sp.set_defaults(handler=_cmd_witness)

    return ap


def _cap_threads():
    raw = os.environ.get("BVKIT_THREADS")
    if not raw or current_backend() != "numba":
        return
    try:
        import numba

        numba.set_num_threads(max(1, min(int(raw), numba.config.NUMBA_NUM_THREADS)))
    except (ImportError, ValueError):
        pass


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    _cap_threads()
    try:
        return args.handler(args)
    except (CannotCertify, BudgetExceeded) as e:
        print(f"bvkit: {e}", file=sys.stderr)
        return 3
    except VerificationFailure as e:
        print(f"bvkit: verification failure: {e}", file=sys.stderr)
        return 4
    except BVKitError as e:
        print(f"bvkit: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"bvkit: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
