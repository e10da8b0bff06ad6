"""Command-line entry point ``kdcoh``.

Exit codes: 0 success, 1 usage or input error, 2 counterexample found,
3 no coherence witness found, 4 inconclusive (optimizer lower-bound regime).
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io
from ._search import OptimizerConfig
from .coherence import c_kd_all_bases, c_kd_hat, c_l1
from .core import computational_basis, random_density, random_pure_state, pure_density
from .exceptions import KDError
from .figures import figure2_grid, sigma_line, to_csv
from .geometry import TOL_HULL, in_projector_hull, is_incoherent
from .kd import TOL_CLASSICAL, is_kd_classical, kd_distribution
from .mub import standard_mubs
from .pio import PioChannel, apply_channel
from .verify import TARGETS, run_target
from .weak_values import TOL_WITNESS, weak_value, witness_coherence

DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(args, text):
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cfg(args, n_starts=None):
    return OptimizerConfig(n_starts=n_starts or getattr(args, "starts", None) or 32, seed=args.seed)


def cmd_gen_mubs(args):
    fam = standard_mubs(args.d)
    _emit(args, io.dump_json(io.family_to_json(fam)))
    return 0


def cmd_random_state(args):
    if args.pure:
        rho = pure_density(random_pure_state(args.d, args.seed))
    else:
        rho = random_density(args.d, args.rank, args.seed)
    _emit(args, io.dump_json(io.state_to_json(rho)))
    return 0


def cmd_kd(args):
    rho = io.state_from_json(io.load_json(args.state))
    A = io.basis_from_json(io.load_json(args.basis_a))
    B = io.basis_from_json(io.load_json(args.basis_b))
    kd = kd_distribution(rho, A, B)
    classical = is_kd_classical(kd, args.tol_classical)
    if args.csv or args.format == "csv":
        rows = [(m, n, kd.Q[m, n].real, kd.Q[m, n].imag) for m in range(kd.dim) for n in range(kd.dim)]
        _emit(args, to_csv(["m", "n", "re", "im"], rows))
    else:
        _emit(args, io.dump_json({"Q": io._pairs(kd.Q), "kd_classical": classical,
                                  "basis_a": kd.basis_a_ref, "basis_b": kd.basis_b_ref}))
    return 0


def cmd_classify(args):
    rho = io.state_from_json(io.load_json(args.state))
    fam = standard_mubs(args.d)
    try:
        j, k = (int(x) for x in args.pair.split(","))
    except ValueError as exc:
        raise UsageError(f"--pair expects 'j,k', got {args.pair!r}") from exc
    kd_flags, hull_flags = {}, {}
    for r in (j, k):
        B = fam.B(r)
        kd_flags[B.name] = is_kd_classical(kd_distribution(rho, fam.A, B), args.tol_classical)
        hull_flags[B.name] = in_projector_hull(rho, fam.A, B, args.tol_hull).member
    out = {"kd_classical_per_pair": kd_flags, "hull_member_per_pair": hull_flags,
           "incoherent": is_incoherent(rho, fam.A, args.tol_classical)}
    _emit(args, io.dump_json(out))
    return 0


def cmd_coherence(args):
    rho = io.state_from_json(io.load_json(args.state))
    if rho.shape[0] != args.d:
        raise UsageError(f"state has dimension {rho.shape[0]}, --d is {args.d}")
    A = computational_basis(args.d)
    if args.measure == "l1":
        out = {"value": c_l1(rho, A), "guarantee": "exact_closed_form", "measure": "l1"}
    else:
        fn = c_kd_hat if args.measure == "lhat" else c_kd_all_bases
        out = dict(fn(rho, A, _cfg(args)).to_dict(), measure=args.measure)
    _emit(args, io.dump_json(out))
    return 0


def cmd_channel_apply(args):
    spec = io.spec_from_json(io.load_json(args.spec))
    rho = io.state_from_json(io.load_json(args.state))
    out = apply_channel(PioChannel.single(spec), rho)
    _emit(args, io.dump_json(io.state_to_json(out)))
    return 0


def cmd_weak_value(args):
    O = io.matrix_from_json(io.load_json(args.obs))
    pre = io.state_from_json(io.load_json(args.pre))
    post = io.state_from_json(io.load_json(args.post))
    _emit(args, io.dump_json(weak_value(O, pre, post).to_dict()))
    return 0


def cmd_witness(args):
    rho = io.state_from_json(io.load_json(args.state))
    if rho.shape[0] != args.d:
        raise UsageError(f"state has dimension {rho.shape[0]}, --d is {args.d}")
    report = witness_coherence(rho, computational_basis(args.d), tol_witness=args.tol_witness)
    _emit(args, io.dump_json(report.to_dict()))
    return 0 if report.found else 3


def cmd_verify(args):
    code, report = run_target(args.target, args.d, args.samples, args.seed,
                              _cfg(args) if args.starts else None)
    _emit(args, io.dump_json(dict(report.to_dict(), exit_code=code)))
    return code


def cmd_figure2(args):
    rows = figure2_grid(args.resolution, _cfg(args))
    _emit(args, to_csv(["lambda0", "lambda1", "c_kd_hat", "c_l1"], rows))
    return 0


def cmd_sigma_line(args):
    if args.mu:
        mus = [float(x) for x in args.mu.split(",")]
    else:
        mus = list(np.round(np.linspace(0, 0.5, 11), 12))
    rows = sigma_line(mus, _cfg(args))
    _emit(args, to_csv(["mu", "c_kd_hat", "reference", "abs_error"], rows))
    return 0


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--tol-classical", type=float, default=TOL_CLASSICAL)
    common.add_argument("--tol-hull", type=float, default=TOL_HULL)
    common.add_argument("--tol-witness", type=float, default=TOL_WITNESS)

    p = _Parser(prog="kdcoh", description="KD quasiprobabilities, coherence and weak values")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen-mubs", parents=[common])
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_gen_mubs)

    s = sub.add_parser("random-state", parents=[common])
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--rank", type=int, default=None)
    s.add_argument("--pure", action="store_true")
    s.set_defaults(func=cmd_random_state)

    s = sub.add_parser("kd", parents=[common])
    s.add_argument("--state", required=True)
    s.add_argument("--basis-a", required=True)
    s.add_argument("--basis-b", required=True)
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_kd)

    s = sub.add_parser("classify", parents=[common])
    s.add_argument("--state", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--pair", default="1,2")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("coherence", parents=[common])
    s.add_argument("--state", required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--measure", choices=("lhat", "l1", "ckd"), default="lhat")
    s.add_argument("--starts", type=int, default=32)
    s.set_defaults(func=cmd_coherence)

    s = sub.add_parser("channel", parents=[common])
    chan = s.add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = chan.add_parser("apply", parents=[common])
    a.add_argument("--spec", required=True)
    a.add_argument("--state", required=True)
    a.set_defaults(func=cmd_channel_apply)

    s = sub.add_parser("weak-value", parents=[common])
    s.add_argument("--obs", required=True)
    s.add_argument("--pre", required=True)
    s.add_argument("--post", required=True)
    s.set_defaults(func=cmd_weak_value)

    s = sub.add_parser("witness", parents=[common])
    s.add_argument("--state", required=True)
    s.add_argument("--d", type=int, required=True)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("target", choices=sorted(TARGETS))
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--starts", type=int, default=None)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("figure2", parents=[common])
    s.add_argument("--resolution", type=int, default=41)
    s.add_argument("--starts", type=int, default=32)
    s.set_defaults(func=cmd_figure2)

    s = sub.add_parser("sigma-line", parents=[common])
    s.add_argument("--mu", default=None, help="comma-separated mu values in [0, 1/2]")
    s.add_argument("--starts", type=int, default=32)
    s.set_defaults(func=cmd_sigma_line)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (KDError, UsageError, ValueError, OSError, KeyError) as exc:
        sys.stderr.write(f"kdcoh: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
