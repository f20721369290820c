"""Command-line front end: figure reproduction sweeps, test protocols, netlists.

Exit codes: 0 success, 2 precondition/parse failure (one-line `error E_...`
message on stderr).  FERRO_THREADS caps sweep parallelism.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import circuits, clifford, convolution, io, measures, states, testing


class CliError(Exception):
    def __init__(self, code: str, detail: str = ""):
        self.code = code
        super().__init__(f"{code}: {detail}" if detail else code)


def _threads() -> int:
    raw = os.environ.get("FERRO_THREADS", "")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise CliError("E_BAD_THREADS", raw) from None
    return min(8, os.cpu_count() or 1)


def _phi_grid(points: int) -> np.ndarray:
    if points < 2:
        raise CliError("E_BAD_GRID", str(points))
    return np.linspace(0.0, 2.0 * math.pi, points)


def _sweep(fn, grid):
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        return list(ex.map(fn, grid))


def cmd_fig2(args) -> int:
    kmax = args.kmax
    if not 1 <= kmax <= 4:
        raise CliError("E_KMAX_RANGE", str(kmax))
    grid = _phi_grid(args.grid)

    def row(phi: float):
        psi = states.magic_state(phi)
        vals = [measures.ng_entropy(psi, k=k) for k in range(1, kmax + 1)]
        vals.append(measures.ng_relative_entropy(psi, check=False))
        return [float(phi)] + [float(v) for v in vals]

    header = ["phi"] + [f"NG_k{k}" for k in range(1, kmax + 1)] + ["NG_inf"]
    io.write_csv(args.out, header, _sweep(row, grid))
    return 0


def cmd_weights(args) -> int:
    grid = _phi_grid(args.grid)

    def row(phi: float):
        psi = states.magic_state(phi)
        _, k_g, k_m, k_total = measures.cumulant_weights(psi)
        return [float(phi), k_g, k_m, k_total]

    io.write_csv(args.out, ["phi", "K_G", "K_M", "K"], _sweep(row, grid))
    return 0


def cmd_renyi(args) -> int:
    kmax = args.kmax
    if not 1 <= kmax <= 4:
        raise CliError("E_KMAX_RANGE", str(kmax))
    grid = _phi_grid(args.grid)

    def row(phi: float):
        psi = states.magic_state(phi)
        vals = [measures.ng_entropy(psi, k=k, alpha=args.alpha) for k in range(1, kmax + 1)]
        return [float(phi)] + [float(v) for v in vals]

    header = ["phi"] + [f"NG_a{io.fmt(args.alpha)}_k{k}" for k in range(1, kmax + 1)]
    io.write_csv(args.out, header, _sweep(row, grid))
    return 0


def _load(path: str):
    try:
        with open(path) as f:
            text = f.read()
    except OSError as e:
        raise CliError("E_FILE", str(e)) from None
    try:
        return io.parse_array(text)
    except io.FormatError as e:
        raise CliError(e.code, "") from None


def cmd_test_state(args) -> int:
    arr, kind = _load(args.statefile)
    if kind == "vector":
        arr = arr / np.linalg.norm(arr)
        rho = np.outer(arr, arr.conj())
    else:
        rho = arr
    try:
        clifford.assert_state(rho)
    except ValueError as e:
        raise CliError("E_NOT_A_STATE", str(e)) from None
    even = testing.even_state_test(rho)
    if not even:
        print("even: no")
        print("verdict: non-gaussian")
        print("csv,even=0,p_accept=,gaussian=0,reason=not-even")
        return 0
    res = testing.gaussian_state_test(rho)
    print("even: yes")
    print(f"p_accept: {io.fmt(res.p_accept)}")
    print(f"verdict: {'gaussian' if res.is_gaussian else 'non-gaussian'}")
    print(f"csv,even=1,p_accept={io.fmt(res.p_accept)},gaussian={int(res.is_gaussian)},reason=")
    return 0


def cmd_test_unitary(args) -> int:
    arr, kind = _load(args.unitaryfile)
    if kind != "matrix":
        raise CliError("E_EXPECTED_MATRIX", args.unitaryfile)
    try:
        clifford.assert_unitary(arr)
    except ValueError as e:
        raise CliError("E_NOT_UNITARY", str(e)) from None
    res = testing.gaussian_unitary_test(arr, engine=args.engine)
    print(f"engine: {res.engine}")
    print(f"verdict: {'gaussian' if res.is_gaussian else 'non-gaussian'}")
    if res.reason:
        print(f"reason: {res.reason}")
    print(f"csv,gaussian={int(res.is_gaussian)},reason={res.reason},engine={res.engine}")
    return 0


def cmd_clt(args) -> int:
    arr, kind = _load(args.statefile)
    if kind == "vector":
        arr = arr / np.linalg.norm(arr)
        rho = np.outer(arr, arr.conj())
    else:
        rho = arr
    try:
        clifford.assert_state(rho)
        if not clifford.is_even(rho):
            raise ValueError("state is not even")
    except ValueError as e:
        raise CliError("E_NOT_EVEN_STATE", str(e)) from None
    kmax = args.kmax
    limit = 6 if args.engine == "cumulant" else 4
    if not 0 <= kmax <= limit:
        raise CliError("E_KMAX_RANGE", f"{kmax} (engine {args.engine} allows <= {limit})")
    from . import gaussian, grassmann

    rows = []
    if args.engine == "dense":
        g = gaussian.gaussification(rho, check=False)
        cur = rho
        for k in range(kmax + 1):
            dist = clifford.l2_norm(cur - g)
            rows.append([k, dist, measures.clt_bound(rho, k, check=False)])
            if k < kmax:
                cur = convolution.convolve(cur, cur, check=False)
    else:
        # distances via moment-domain Parseval: ||rho - g||_2 = 2^-n sqrt(sum |diff|^2)
        n = clifford.num_qubits(rho)
        g_mom = grassmann.g_exp(convolution.iterate_conv(rho, 60, mode="cumulant", check=False))
        for k in range(kmax + 1):
            mom_k = grassmann.g_exp(convolution.iterate_conv(rho, k, mode="cumulant", check=False))
            dist = grassmann.l2_norm(mom_k - g_mom) / (1 << n)
            rows.append([k, dist, measures.clt_bound(rho, k, check=False)])
    io.write_csv(args.out, ["k", "distance", "bound"], rows)
    return 0


def cmd_decompose(args) -> int:
    if args.modes < 1:
        raise CliError("E_BAD_MODES", str(args.modes))
    gl = circuits.decompose_conv_unitary(args.theta, args.modes)
    text = circuits.emit_netlist(gl)
    if args.out:
        with open(args.out, "w", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ferro")
    sub = p.add_subparsers(dest="command", required=True)

    f2 = sub.add_parser("fig2", help="non-Gaussian entropy sweep over the 4-qubit family")
    f2.add_argument("--kmax", type=int, default=3)
    f2.add_argument("--grid", type=int, default=65)
    f2.add_argument("--out", required=True)
    f2.set_defaults(fn=cmd_fig2)

    w = sub.add_parser("weights", help="cumulant weight sweep")
    w.add_argument("--grid", type=int, default=65)
    w.add_argument("--out", required=True)
    w.set_defaults(fn=cmd_weights)

    r = sub.add_parser("renyi", help="Renyi non-Gaussian entropy sweep")
    r.add_argument("--alpha", type=float, default=2.0)
    r.add_argument("--kmax", type=int, default=3)
    r.add_argument("--grid", type=int, default=65)
    r.add_argument("--out", required=True)
    r.set_defaults(fn=cmd_renyi)

    ts = sub.add_parser("test-state", help="Gaussianity test for a state file")
    ts.add_argument("statefile")
    ts.set_defaults(fn=cmd_test_state)

    tu = sub.add_parser("test-unitary", help="Gaussianity test for a unitary file")
    tu.add_argument("unitaryfile")
    tu.add_argument("--engine", choices=("auto", "dense", "cumulant"), default="auto")
    tu.set_defaults(fn=cmd_test_unitary)

    c = sub.add_parser("clt", help="convergence distances and bounds")
    c.add_argument("statefile")
    c.add_argument("--kmax", type=int, default=4)
    c.add_argument("--engine", choices=("dense", "cumulant"), default="dense")
    c.add_argument("--out", required=True)
    c.set_defaults(fn=cmd_clt)

    d = sub.add_parser("decompose", help="emit a netlist for the convolution unitary")
    d.add_argument("--theta", type=float, default=math.pi / 4)
    d.add_argument("--modes", type=int, default=1)
    d.add_argument("--out", default="")
    d.set_defaults(fn=cmd_decompose)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as e:
        print(f"error {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error E_IO: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
