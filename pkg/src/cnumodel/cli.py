"""Batch front end: fixture generation, operator ingestion, verification
suites, kernel grids, and machine-readable reports.

Operator files are JSON objects ``{"dim": n, "re": [[...]], "im": [[...]]}``
(row-major) or CSV with one matrix row per line and re/im entries
interleaved.  All numeric output uses 17 significant digits so binary64
values round-trip losslessly.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import coincidence as _coincidence
from . import crosscheck
from .contraction import is_cnu, validate
from .decomposition import empirical_arc_chord, in_omega, make_context
from .errors import BadParam, ParseError, ShapeError, ToolkitError
from .rkhs import kernel
from .verify import VerifyConfig, disc_grid, run_verify


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def load_operator(path, fmt: str | None = None) -> np.ndarray:
    """Materialize an operator matrix exactly from its decimal literals."""
    path = Path(path)
    fmt = fmt or ("csv" if path.suffix.lower() == ".csv" else "json")
    try:
        if fmt == "json":
            data = json.loads(path.read_text())
            dim = data["dim"]
            re = np.array(data["re"], dtype=np.float64)
            im = np.array(data["im"], dtype=np.float64)
        elif fmt == "csv":
            rows = [line.split(",") for line in path.read_text().strip().splitlines()]
            dim = len(rows)
            flat = np.array([[float(v) for v in row] for row in rows], dtype=np.float64)
            if flat.shape[1] != 2 * dim:
                raise ShapeError(f"csv row length {flat.shape[1]} != 2*dim = {2 * dim}")
            re, im = flat[:, 0::2], flat[:, 1::2]
        else:
            raise BadParam(f"unknown format {fmt!r}")
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"cannot parse {path}: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ShapeError(f"shapes {re.shape}/{im.shape} do not match dim {dim}")
    return re + 1j * im


def save_operator(matrix: np.ndarray, path) -> None:
    m = np.asarray(matrix, dtype=np.complex128)
    payload = {
        "dim": m.shape[0],
        "re": [[float(v) for v in row] for row in m.real],
        "im": [[float(v) for v in row] for row in m.imag],
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True) + "\n")


def generate_fixture(kind: str, dim: int, seed: int = 0, r: float = 0.9) -> np.ndarray:
    """Deterministic cnu fixtures: zero, nilpotent Jordan, scaled unitary,
    or a random diagonal with moduli at most ``r``."""
    if dim < 1:
        raise BadParam("dim must be at least 1")
    if kind == "zero":
        return np.zeros((dim, dim), dtype=np.complex128)
    if kind == "jordan":
        return np.diag(np.ones(dim - 1, dtype=np.complex128), 1)
    rng = np.random.default_rng(seed)
    if kind == "scaled_unitary":
        if not 0.0 < r < 1.0:
            raise BadParam("scaled_unitary needs r in (0, 1)")
        g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        q, rr = np.linalg.qr(g)
        # fix the QR gauge so the unitary factor is seed-deterministic
        dphase = np.diag(rr).copy()
        dphase[np.abs(dphase) == 0] = 1.0
        q = q * (dphase / np.abs(dphase))
        return r * q
    if kind == "diagonal":
        if not 0.0 < r < 1.0:
            raise BadParam("diagonal needs r in (0, 1)")
        moduli = r * rng.uniform(0.0, 1.0, size=dim)
        phases = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=dim))
        return np.diag(moduli * phases)
    raise BadParam(f"unknown fixture kind {kind!r}")


def kernel_grid(t_matrix, pairs, out_stream) -> None:
    """Stream kernel values over (z, w) pairs as plot-ready CSV.

    Each row holds the pair coordinates, an ``ok`` flag, then the kernel
    entries row-major with re/im interleaved; rows outside the admissible
    set keep the flag at 0 and carry no entries.
    """
    c = validate(t_matrix)
    ctx = make_context(c)
    n = c.n
    header = ["z_re", "z_im", "w_re", "w_im", "ok"]
    for i in range(n):
        for j in range(n):
            header += [f"k_{i}{j}_re", f"k_{i}{j}_im"]
    out_stream.write(",".join(header) + "\n")
    for z, w in pairs:
        row = [_fmt(z.real), _fmt(z.imag), _fmt(w.real), _fmt(w.imag)]
        if not (in_omega(ctx, z) and in_omega(ctx, w)):
            out_stream.write(",".join(row + ["0"]) + "\n")
            continue
        k = kernel(ctx, z, w).k
        row.append("1")
        for val in k.reshape(-1):
            row += [_fmt(val.real), _fmt(val.imag)]
        out_stream.write(",".join(row) + "\n")


def _default_pairs() -> list:
    pts = disc_grid(4, 8, r_max=0.8)
    return [(z, w) for z in pts for w in pts]


def _load_pairs(path) -> list:
    pairs = []
    for line in Path(path).read_text().strip().splitlines():
        vals = [float(v) for v in line.split(",")]
        if len(vals) != 4:
            raise ParseError("points file rows must be z_re,z_im,w_re,w_im")
        pairs.append((complex(vals[0], vals[1]), complex(vals[2], vals[3])))
    return pairs


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise BadParam(f"cannot parse complex value {text!r}")


def _cmd_analyze(args) -> int:
    t = load_operator(args.file)
    c = validate(t)
    report = is_cnu(c)
    out = {
        "dim": c.n,
        "op_norm": float(np.linalg.norm(c.t, 2)),
        "is_cnu": report.is_cnu,
        "unimodular_eigenvalues": [[ev.real, ev.imag] for ev, _ in report.unitary_eigenpairs],
        "defect_rank": c.defect_t.dim,
        "defect_rank_adjoint": c.defect_tstar.dim,
        "spectrum": [[v.real, v.imag] for v in sorted(np.linalg.eigvals(c.t),
                                                      key=lambda u: (u.real, u.imag))],
    }
    if report.is_cnu:
        ctx = make_context(c, args.a)
        out["a"] = [ctx.a.real, ctx.a.imag]
        out["c_a"] = ctx.c_a
        out["epsilon"] = ctx.epsilon
        out["empirical_arc_chord"] = empirical_arc_chord(ctx)
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def _cmd_verify(args) -> int:
    t = load_operator(args.file)
    cfg = VerifyConfig(a=args.a, beta=args.beta, disc_angles=args.grid,
                       tol=args.tol, seed=args.seed)
    report = run_verify(t, cfg, fixture_id=Path(args.file).name)
    text = report.to_json() + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def _cmd_kernel(args) -> int:
    t = load_operator(args.file)
    pairs = _default_pairs() if args.points == "grid" else _load_pairs(args.points)
    with open(args.out, "w") as fh:
        kernel_grid(t, pairs, fh)
    return 0


def _cmd_coincide(args) -> int:
    t = load_operator(args.file)
    c = validate(t)
    ctx = make_context(c, args.a)
    cc = _coincidence.build(ctx)
    rows = []
    for z in disc_grid(max(1, args.samples // 16), min(16, args.samples)):
        measured = max(_coincidence.coincidence_residual(cc, z, col).residual
                       for col in np.eye(c.n).T)
        oracle = max(crosscheck.coincidence_residual(c.t, ctx.a, z, col)
                     for col in np.eye(c.n).T)
        paper = _coincidence.split_residuals(cc, "paper", z, np.eye(c.n)[:, 0])
        oblique = _coincidence.split_residuals(cc, "oblique", z, np.eye(c.n)[:, 0])
        rows.append({
            "z": [z.real, z.imag],
            "coincidence_residual": measured,
            "oracle": oracle,
            "split_paper": list(paper),
            "split_oblique": list(oblique),
        })
    print(json.dumps({"dim": c.n, "a": [ctx.a.real, ctx.a.imag], "samples": rows},
                     indent=2, sort_keys=True))
    return 0


def _cmd_fixture(args) -> int:
    m = generate_fixture(args.kind, args.dim, seed=args.seed, r=args.r)
    save_operator(m, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cnumodel",
                                description="Functional-model toolkit for cnu contractions")
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="basic operator diagnostics")
    pa.add_argument("file")
    pa.add_argument("--a", type=_parse_complex, default=None)
    pa.set_defaults(func=_cmd_analyze)

    pv = sub.add_parser("verify", help="run every invariant suite")
    pv.add_argument("file")
    pv.add_argument("--a", type=_parse_complex, default=None)
    pv.add_argument("--beta", type=_parse_complex, default=None)
    pv.add_argument("--grid", type=int, default=16)
    pv.add_argument("--tol", type=float, default=1e-9)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--out", default=None)
    pv.set_defaults(func=_cmd_verify)

    pk = sub.add_parser("kernel", help="export kernel values as CSV")
    pk.add_argument("file")
    pk.add_argument("--points", required=True,
                    help="points file (z_re,z_im,w_re,w_im per line) or 'grid'")
    pk.add_argument("--out", required=True)
    pk.set_defaults(func=_cmd_kernel)

    pc = sub.add_parser("coincide", help="coincidence residual scan")
    pc.add_argument("file")
    pc.add_argument("--samples", type=int, default=64)
    pc.add_argument("--a", type=_parse_complex, default=None)
    pc.set_defaults(func=_cmd_coincide)

    pf = sub.add_parser("fixture", help="write a deterministic test operator")
    pf.add_argument("--kind", required=True,
                    choices=["zero", "jordan", "scaled_unitary", "diagonal"])
    pf.add_argument("--dim", type=int, required=True)
    pf.add_argument("--seed", type=int, default=0)
    pf.add_argument("--r", type=float, default=0.9)
    pf.add_argument("--out", required=True)
    pf.set_defaults(func=_cmd_fixture)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
