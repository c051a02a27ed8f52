"""Command-line front end: classify, solve, construct, certify, verify.

Inputs and outputs are JSON. Angle files look like

    {"n": 2,
     "angles": [{"theta": {"pi_num": 1, "pi_den": 2}, "phi": {"rad": 0.0}},
                {"theta": {"pi_num": 1, "pi_den": 2}, "phi": {"rad": 0.0}}],
     "tol": 1e-9, "mode": "exact"}

Exit codes: 0 success, 2 malformed input, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .angles import Angle, DirectionList
from .certify import CertificationConfig, run_certification
from .classify import ClassificationReport, classify
from .construct import GHZSpec, stabilizing_pair_for
from .errors import GhzstabError, InternalConsistencyError
from .linalg import StateVector, subspace_distance
from .observables import product_observable, sigma_z_product
from .solve import (
    brute_force_eigenspace,
    character_sum_check,
    purity_security_check,
    sector_dimensions,
    solve_common_eigenspace,
    trig_parity_identity_residuals,
)

AMPLITUDE_CUTOFF = 1e-12


class InputError(Exception):
    """Malformed or invalid JSON input."""


def _parse_angle(obj, what: str) -> Angle:
    if not isinstance(obj, dict):
        raise InputError(f"{what} must be an object, got {type(obj).__name__}")
    if "pi_num" in obj or "pi_den" in obj:
        num, den = obj.get("pi_num"), obj.get("pi_den", 1)
        if not isinstance(num, int) or not isinstance(den, int):
            raise InputError(f"{what}: pi_num and pi_den must be integers")
        if den <= 0:
            raise InputError(f"{what}: pi_den must be positive, got {den}")
        return Angle.exact(num, den)
    if "rad" in obj:
        if not isinstance(obj["rad"], (int, float)):
            raise InputError(f"{what}: rad must be a number")
        return Angle.radians(float(obj["rad"]))
    raise InputError(f"{what} needs either pi_num/pi_den or rad")


def parse_angle_file(data) -> tuple[DirectionList, float, str | None]:
    if not isinstance(data, dict):
        raise InputError("top-level JSON must be an object")
    n = data.get("n")
    angles = data.get("angles")
    if not isinstance(n, int) or n < 1:
        raise InputError(f"n must be a positive integer, got {n!r}")
    if not isinstance(angles, list) or len(angles) != n:
        raise InputError(f"angles must be a list of length n={n}")
    thetas, phis = [], []
    for k, rec in enumerate(angles):
        if not isinstance(rec, dict):
            raise InputError(f"angles[{k}] must be an object")
        thetas.append(_parse_angle(rec.get("theta"), f"angles[{k}].theta"))
        phis.append(_parse_angle(rec.get("phi", {"rad": 0.0}), f"angles[{k}].phi"))
    tol = data.get("tol", 1e-9)
    if not isinstance(tol, (int, float)) or tol <= 0:
        raise InputError(f"tol must be positive, got {tol!r}")
    mode = data.get("mode")
    if mode not in (None, "exact", "approx"):
        raise InputError(f"mode must be exact or approx, got {mode!r}")
    return DirectionList.of(thetas, phis), float(tol), mode


def parse_state_file(data) -> StateVector:
    if not isinstance(data, dict):
        raise InputError("state file must be a JSON object")
    n = data.get("n")
    amps = data.get("amplitudes")
    if not isinstance(n, int) or n < 1:
        raise InputError(f"state n must be a positive integer, got {n!r}")
    if not isinstance(amps, list) or not amps:
        raise InputError("state amplitudes must be a non-empty list")
    vec = np.zeros(1 << n, dtype=np.complex128)
    for k, rec in enumerate(amps):
        if not isinstance(rec, dict) or "index" not in rec:
            raise InputError(f"amplitudes[{k}] must be an object with index")
        idx = rec["index"]
        if not isinstance(idx, int) or not 0 <= idx < (1 << n):
            raise InputError(f"amplitudes[{k}].index out of range")
        vec[idx] = complex(rec.get("re", 0.0), rec.get("im", 0.0))
    norm = np.linalg.norm(vec)
    if norm < 1e-12:
        raise InputError("state vector has zero norm")
    return StateVector(n, vec / norm)


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}")


def sparse_amplitudes(amps: np.ndarray, n: int) -> list[dict]:
    out = []
    for idx in np.nonzero(np.abs(amps) > AMPLITUDE_CUTOFF)[0]:
        out.append(
            {
                "index": int(idx),
                "label": format(int(idx), f"0{n}b"),
                "re": float(amps[idx].real),
                "im": float(amps[idx].imag),
            }
        )
    return out


def classification_fields(report: ClassificationReport) -> dict:
    return {
        "case": report.case.value,
        "m_set": [str(m) for m in report.patterns.members],
        "mode": report.mode,
        "tol": report.tol,
        "warnings": list(report.warnings),
    }


def angle_schema(d: DirectionList) -> dict:
    angles = []
    for t, p in zip(d.thetas, d.phis):
        rec = {}
        for key, a in (("theta", t), ("phi", p)):
            if a.is_exact:
                rec[key] = {"pi_num": a.numerator, "pi_den": a.denominator}
            else:
                rec[key] = {"rad": a.to_radians()}
        angles.append(rec)
    return {"n": d.n_parties, "angles": angles}


def observable_angles(obs) -> DirectionList:
    """Recover (theta, phi) per party from the Bloch vector of each local
    factor."""
    thetas, phis = [], []
    for op in obs.locals:
        m = op.entries
        vz = float(m[0, 0].real)
        vx = float(m[1, 0].real)
        vy = float(m[1, 0].imag)
        theta = float(np.arctan2(np.hypot(vx, vy), vz))
        phi = float(np.arctan2(vy, vx)) if np.hypot(vx, vy) > 1e-14 else 0.0
        thetas.append(Angle.radians(theta))
        phis.append(Angle.radians(phi))
    return DirectionList.of(thetas, phis)


def _emit(obj, pretty: bool) -> None:
    if pretty:
        json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    else:
        json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def cmd_classify(args) -> dict:
    d, tol, mode = parse_angle_file(_load_json(args.input))
    tol = args.tol if args.tol is not None else tol
    mode = args.mode if args.mode is not None else mode
    return classification_fields(classify(d, tol, mode))


def cmd_solve(args) -> dict:
    d, tol, mode = parse_angle_file(_load_json(args.input))
    tol = args.tol if args.tol is not None else tol
    mode = args.mode if args.mode is not None else mode
    if mode == "exact" and not d.all_exact:
        raise InputError("exact mode requires all thetas rational multiples of pi")
    if mode == "approx" and d.all_exact:
        d = DirectionList.of(
            [Angle.radians(t.to_radians()) for t in d.thetas], d.phis
        )
    report = solve_common_eigenspace(d, tol)
    out = classification_fields(report.classification)
    out["dimension"] = report.dimension
    out["states"] = [
        sparse_amplitudes(report.basis.matrix[:, k], d.n_parties)
        for k in range(report.dimension)
    ]
    out["residuals"] = report.residual
    out["sector_dims"] = list(sector_dimensions(d, tol))
    return out


def cmd_construct(args) -> dict:
    n = args.n
    if args.unitaries is not None:
        data = _load_json(args.unitaries)
        if not isinstance(data, dict) or "unitaries" not in data:
            raise InputError("unitaries file must be {n, unitaries: [...]}")
        mats = []
        for k, rows in enumerate(data["unitaries"]):
            try:
                mats.append(
                    np.array(
                        [[complex(c[0], c[1]) for c in row] for row in rows],
                        dtype=np.complex128,
                    )
                )
            except (TypeError, IndexError, ValueError):
                raise InputError(
                    f"unitaries[{k}] must be a 2x2 matrix of [re, im] pairs"
                )
        try:
            spec = GHZSpec.from_matrices(mats)
        except GhzstabError as exc:
            raise InputError(str(exc))
        if spec.n != n:
            raise InputError(f"unitaries count {spec.n} != n {n}")
    else:
        spec = GHZSpec.identity(n)
    pair = stabilizing_pair_for(spec)
    return {
        "case": "UniqueGHZ",
        "n": n,
        "pair": {
            "a": angle_schema(observable_angles(pair.a)),
            "b": angle_schema(observable_angles(pair.b)),
        },
        "canonical_angles": angle_schema(pair.directions),
        "target_state": sparse_amplitudes(pair.target.amplitudes, n),
        "residuals": pair.residual,
        "warnings": [],
    }


def cmd_certify(args) -> dict:
    d, _, _ = parse_angle_file(_load_json(args.input))
    state = parse_state_file(_load_json(args.state))
    cfg = CertificationConfig(
        shots=args.shots,
        a_fraction=args.a_fraction,
        seed=args.seed,
        pass_threshold=args.threshold,
    )
    rep = run_certification(state, d, cfg)
    return {
        "mean_a": rep.mean_a,
        "mean_b": rep.mean_b,
        "count_a": rep.count_a,
        "count_b": rep.count_b,
        "stderr_a": rep.stderr_a,
        "stderr_b": rep.stderr_b,
        "pass": rep.passed,
        "threshold": rep.threshold,
        "shots": rep.shots,
        "seed": rep.seed,
    }


def cmd_verify(args) -> dict:
    d, tol, _ = parse_angle_file(_load_json(args.input))
    tol = args.tol if args.tol is not None else tol
    report = solve_common_eigenspace(d, tol)
    oracle = brute_force_eigenspace(
        product_observable(d), sigma_z_product(d.n_parties), tol
    )
    if oracle.count != report.dimension:
        raise InternalConsistencyError(
            f"oracle dim {oracle.count} != solver dim {report.dimension}"
        )
    odd_res, even_res = trig_parity_identity_residuals(d)
    purity = purity_security_check(
        d, env_dim=max(args.env_dim, report.dimension), trials=args.trials,
        seed=args.seed, tol=tol,
    )
    return {
        "case": report.classification.case.value,
        "solver_dimension": report.dimension,
        "oracle_dimension": oracle.count,
        "subspace_distance": subspace_distance(report.basis, oracle),
        "sector_dims": list(sector_dimensions(d, tol)),
        "identity_residuals": {"odd": odd_res, "even": even_res},
        "character_sum_deviation": character_sum_check(
            min(d.n_parties, 12), seed=args.seed
        ),
        "purity": {
            "projector_dim": purity.projector_dim,
            "empty": purity.empty,
            "max_entropy": purity.max_entropy,
            "reduced_state_fidelity": purity.reduced_state_fidelity,
        },
    }


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ghzstab",
        description="Two-observable stabilization of N-qubit GHZ states.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, with_mode=True):
        p.add_argument(
            "input", nargs="?", default="-",
            help="angle JSON file ('-' for stdin, the default)",
        )
        p.add_argument("--tol", type=float, default=None)
        if with_mode:
            p.add_argument("--mode", choices=["exact", "approx"], default=None)
        p.add_argument("--pretty", action="store_true")

    p = sub.add_parser("classify", help="classify the direction list")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("solve", help="solve for the common +1 eigenspace")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "construct", help="build a uniquely-stabilizing pair for a GHZ state"
    )
    p.add_argument("n", type=int)
    p.add_argument(
        "--unitaries", default=None,
        help="optional JSON file of per-party 2x2 unitaries",
    )
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="simulate the two-setting certification")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--state", required=True, help="state JSON file")
    p.add_argument("--shots", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=0.999)
    p.add_argument("--a-fraction", type=float, default=0.5)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser(
        "verify", help="cross-check solver, oracle, identities, and purity"
    )
    common(p, with_mode=False)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--env-dim", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return 3
    except GhzstabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(result, args.pretty)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
