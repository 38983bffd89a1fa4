"""Benchmark instance generators, the benchmark runner, and its CLI.

Instances
---------
``lad-case1`` / ``lad-case2``
    Sparse regression with an l1 data-fit: ``min f(x) + ||Ax - d||_1``
    split as ``g(y) = ||y - d||_1`` with the coupling ``Ax - y = 0``.
    Case 1 uses ``f = 2 ||x||_1``; case 2 adds a strongly convex ridge,
    ``f = 2 ||x||_1 + 0.05 ||x||^2`` (modulus 0.1).
``svm-l1`` / ``svm-elastic``
    Regularized hinge-loss classification ``min f(x) + (1/m) sum_j
    max(0, 1 - c_j (w_j^T x - b_j))`` split through ``y = Wx - b``.
``quadratic-synthetic``
    Random strongly convex quadratics on both blocks with the saddle point
    planted through the first-order optimality system, giving an exact
    reference optimum.

Outputs
-------
Per-method trace CSVs (the standard diagnostics schema) plus a summary
JSON holding relative errors at logarithmically spaced checkpoints.  The
benchmark zeroes out wall-clock columns so identical configs produce
byte-identical files.
"""

import argparse
import json
import os
from dataclasses import dataclass, field, asdict

import numpy as np

from . import baselines, driver
from .diagnostics import sparsity
from .linops import DenseOperator, ScaledIdentity, negated_identity
from .oracles import QuadraticSmooth, SaddlePoint, SeparableProblem
from .params import Scheme
from .prox import ElasticNet, L1Norm, QuadraticProx, ShiftedL1, HingeSum, ZeroFun
from .subprob import SolverOptions

__all__ = [
    "RunConfig",
    "ProblemBundle",
    "generate_lad",
    "generate_svm",
    "generate_quadratic",
    "generate_problem",
    "checkpoint_indices",
    "run_benchmark",
    "main",
    "METHOD_TAGS",
]

PROBLEM_KINDS = ("lad-case1", "lad-case2", "svm-l1", "svm-elastic",
                 "quadratic-synthetic")
SCHEME_TAGS = tuple(s.value for s in Scheme)
BASELINE_TAGS = ("ladmm", "pdhg")
METHOD_TAGS = SCHEME_TAGS + BASELINE_TAGS


@dataclass
class RunConfig:
    """Everything that determines a benchmark run."""

    problem: str = "lad-case1"
    m: int = 50
    n: int = 200
    seed: int = 0
    sparsity_fraction: float = 0.1
    noise_variance: float = 0.01
    flip_fraction: float = 0.1
    methods: tuple = ("f1-semiA",)
    iters: int = 2000
    out: str = "bench-out"

    def validate(self):
        if self.problem not in PROBLEM_KINDS:
            raise ValueError(f"unknown problem kind {self.problem!r}; "
                             f"choose from {PROBLEM_KINDS}")
        for tag in self.methods:
            if tag not in METHOD_TAGS:
                raise ValueError(f"unknown method {tag!r}; choose from {METHOD_TAGS}")
        if self.iters < 0:
            raise ValueError("iters must be nonnegative")
        if not (0.0 < self.sparsity_fraction <= 1.0):
            raise ValueError("sparsity fraction must lie in (0, 1]")


@dataclass
class ProblemBundle:
    """One generated instance in the two oracle layouts the solvers need.

    ``prox_form`` folds the whole f-block into a single prox oracle (the
    implicit schemes and baselines); ``split_form`` exposes the smooth
    part separately (the gradient-based schemes).  Either may be None if
    that layout does not apply.
    """

    prox_form: SeparableProblem
    split_form: SeparableProblem = None
    ground_truth: np.ndarray = None
    composite: bool = False      # True when P(x) = f(x) + g(Ax) is meaningful
    f_star: float = None         # exact optimum when a KKT oracle exists
    meta: dict = field(default_factory=dict)


def generate_lad(m, n, seed, case=1, sparsity_fraction=0.1, noise_variance=0.01):
    """Sparse-regression instance with an l1 data-fit term.

    The design has i.i.d. standard normal entries, the planted signal has
    ``round(sparsity_fraction * n)`` seeded nonzeros, and the response is
    ``d = A x^# + e`` with centered Gaussian noise of the given variance.
    """
    if m >= n:
        raise ValueError("this instance family is underdetermined: need m < n")
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((m, n))
    nnz = int(round(sparsity_fraction * n))
    support = rng.choice(n, size=nnz, replace=False)
    x_sharp = np.zeros(n)
    x_sharp[support] = rng.standard_normal(nnz)
    e = np.sqrt(noise_variance) * rng.standard_normal(m) if noise_variance > 0 else np.zeros(m)
    d = A @ x_sharp + e

    lam_l1 = 2.0
    mu = 0.1 if case == 2 else 0.0
    A_op = DenseOperator(A)
    g = ShiftedL1(d)
    B = negated_identity(m)
    rhs = np.zeros(m)

    if case == 2:
        f_prox = ElasticNet(lam_l1, mu)
        smooth = QuadraticSmooth(mu * np.eye(n))
    else:
        f_prox = L1Norm(lam_l1)
        smooth = QuadraticSmooth(np.zeros((n, n)))

    prox_form = SeparableProblem(f_prox, g, A_op, B, rhs)
    split_form = SeparableProblem((smooth, L1Norm(lam_l1)), g, A_op, B, rhs)
    split_form.A.set_norm(prox_form.A.norm())
    return ProblemBundle(prox_form=prox_form, split_form=split_form,
                         ground_truth=x_sharp, composite=True,
                         meta={"kind": f"lad-case{case}", "m": m, "n": n,
                               "seed": seed, "nnz": nnz})


def generate_svm(m, n, seed, elastic=False, flip_fraction=0.1):
    """Hinge-loss classification instance with seeded synthetic data.

    Rows of the data matrix, the true separator, and the per-sample biases
    are standard normal; labels come from the true separator with the
    given fraction flipped.  A zero flip fraction leaves the data exactly
    separable.
    """
    rng = np.random.default_rng(seed)
    W = rng.standard_normal((m, n))
    x_true = rng.standard_normal(n)
    bias = rng.standard_normal(m)
    margins = W @ x_true - bias
    labels = np.where(margins >= 0, 1.0, -1.0)
    n_flip = int(round(flip_fraction * m))
    if n_flip > 0:
        flip = rng.choice(m, size=n_flip, replace=False)
        labels[flip] *= -1.0

    A_op = DenseOperator(W)
    B = negated_identity(m)
    g = HingeSum(labels, 1.0 / m)

    if elastic:
        lam_l1, mu = 0.5, 0.05
        f_prox = ElasticNet(lam_l1, mu)
        smooth = QuadraticSmooth(mu * np.eye(n))
        split_f = (smooth, L1Norm(lam_l1))
    else:
        lam_l1 = 0.2
        f_prox = L1Norm(lam_l1)
        split_f = (QuadraticSmooth(np.zeros((n, n))), L1Norm(lam_l1))

    prox_form = SeparableProblem(f_prox, g, A_op, B, bias)
    split_form = SeparableProblem(split_f, g, A_op, B, bias)
    split_form.A.set_norm(prox_form.A.norm())
    return ProblemBundle(prox_form=prox_form, split_form=split_form,
                         ground_truth=x_true, composite=False,
                         meta={"kind": "svm-elastic" if elastic else "svm-l1",
                               "m": m, "n": n, "seed": seed})


def generate_quadratic(m, n, seed, mu_f=1.0, mu_g=1.0):
    """Strongly convex quadratic blocks with a planted saddle point.

    The linear terms and the right-hand side are chosen so a drawn triple
    satisfies the first-order optimality system exactly, which provides an
    exact optimal value.
    """
    rng = np.random.default_rng(seed)
    ny = n

    def spd(dim, mu):
        M = rng.standard_normal((dim, dim))
        return M.T @ M / dim + mu * np.eye(dim)

    P = spd(n, mu_f)
    Q = spd(ny, mu_g)
    A = rng.standard_normal((m, n))
    Bm = rng.standard_normal((m, ny))

    x_star = rng.standard_normal(n)
    y_star = rng.standard_normal(ny)
    lam_star = rng.standard_normal(m)
    p = -(P @ x_star + A.T @ lam_star)
    q = -(Q @ y_star + Bm.T @ lam_star)
    rhs = A @ x_star + Bm @ y_star

    saddle = SaddlePoint(x_star, y_star, lam_star)
    f_prox = QuadraticProx(P, p)
    g = QuadraticProx(Q, q)
    prox_form = SeparableProblem(f_prox, g, DenseOperator(A), DenseOperator(Bm),
                                 rhs, saddle=saddle)
    split_form = SeparableProblem((QuadraticSmooth(P, p), ZeroFun()), g,
                                  DenseOperator(A), DenseOperator(Bm), rhs,
                                  saddle=saddle)
    split_form.A.set_norm(prox_form.A.norm())
    split_form.B.set_norm(prox_form.B.norm())
    f_star = prox_form.objective(x_star, y_star)
    return ProblemBundle(prox_form=prox_form, split_form=split_form,
                         ground_truth=x_star, composite=False, f_star=f_star,
                         meta={"kind": "quadratic-synthetic", "m": m, "n": n,
                               "seed": seed})


def generate_problem(config):
    config.validate()
    kind = config.problem
    if kind == "lad-case1":
        return generate_lad(config.m, config.n, config.seed, case=1,
                            sparsity_fraction=config.sparsity_fraction,
                            noise_variance=config.noise_variance)
    if kind == "lad-case2":
        return generate_lad(config.m, config.n, config.seed, case=2,
                            sparsity_fraction=config.sparsity_fraction,
                            noise_variance=config.noise_variance)
    if kind == "svm-l1":
        return generate_svm(config.m, config.n, config.seed, elastic=False,
                            flip_fraction=config.flip_fraction)
    if kind == "svm-elastic":
        return generate_svm(config.m, config.n, config.seed, elastic=True,
                            flip_fraction=config.flip_fraction)
    return generate_quadratic(config.m, config.n, config.seed)


def checkpoint_indices(iters):
    """Logarithmically spaced indices 0, 1, 2, 5, 10, ... plus the last."""
    ks = {0, iters}
    base = 1
    while base <= iters:
        for mult in (1, 2, 5):
            if mult * base <= iters:
                ks.add(mult * base)
        base *= 10
    return sorted(ks)


def _composite_value(bundle, x):
    problem = bundle.prox_form
    return problem.f_value(x) + problem.g_value(problem.A.apply(x))


def _run_method(bundle, tag, iters):
    """Dispatch one method tag; returns (trace, final x)."""
    if tag in BASELINE_TAGS:
        if tag == "ladmm":
            trace, state = baselines.ladmm_run(bundle.prox_form, iters)
        else:
            trace, state = baselines.pdhg_run(bundle.prox_form, iters)
        return trace, state.x
    scheme = Scheme(tag)
    problem = bundle.prox_form if scheme.family == 1 else bundle.split_form
    if problem is None:
        raise ValueError(f"instance has no oracle layout for {tag}")
    options = SolverOptions(inner_enabled=True)
    # without strong convexity the decay constant is (||A|| + sqrt(g0))/sqrt(g0);
    # matching g0 to the operator norm keeps it moderate (same for the B side)
    gamma0 = None if problem.mu_f > 0 else max(problem.A.norm(), 1.0)
    beta0 = None if problem.mu_g > 0 else max(problem.B.norm(), 1.0)
    result = driver.run(problem, scheme, iters, options=options,
                        gamma0=gamma0, beta0=beta0)
    return result.trace, result.state.x


def _relative_series(values, f_star=None):
    """Self-normalized series: each entry divided by the k=0 magnitude."""
    if f_star is not None:
        values = [None if v is None else abs(v - f_star) for v in values]
    base = values[0]
    if base is None or base == 0.0:
        base = 1.0
    return [None if v is None else v / base for v in values]


def run_benchmark(config):
    """Generate the instance, run every requested method, write outputs.

    Returns the summary dict (also written as ``summary.json``).  A method
    failure is recorded in the summary without aborting the others.
    """
    config.validate()
    bundle = generate_problem(config)

    if bundle.f_star is not None:
        f_star, f_star_unc = bundle.f_star, 0.0
    else:
        ref_iters = max(4 * config.iters, 2000)
        est = baselines.approximate_optimum(bundle.prox_form, iters=ref_iters)
        f_star, f_star_unc = est.value, est.uncertainty

    if bundle.composite:
        x_ref = (est.x if bundle.f_star is None else bundle.ground_truth)
        p_star = _composite_value(bundle, x_ref)
    else:
        p_star = None

    os.makedirs(config.out, exist_ok=True)
    ks = checkpoint_indices(config.iters)
    summary = {
        "config": asdict(config),
        "fstar": f_star,
        "fstar_uncertainty": f_star_unc,
        "methods": {},
    }

    for tag in config.methods:
        entry = {}
        try:
            trace, x_final = _run_method(bundle, tag, config.iters)
        except Exception as exc:  # noqa: BLE001 - recorded per method
            summary["methods"][tag] = {"error": f"{type(exc).__name__}: {exc}"}
            continue

        # wall-clock varies between runs; blank it for reproducible files
        for row in trace.rows:
            row.seconds = None
        path = os.path.join(config.out, f"trace_{tag}.csv")
        try:
            trace.to_csv(path)
        except OSError as exc:
            raise OSError(f"failed writing trace file {path}: {exc}") from exc

        by_k = {r.k: r for r in trace.rows}
        obj = [by_k[k].obj if k in by_k else None for k in ks]
        feas = [by_k[k].feas if k in by_k else None for k in ks]
        obj_rel = _relative_series(obj, f_star=f_star)
        feas_rel = _relative_series(feas)

        checkpoints = []
        for i, k in enumerate(ks):
            if k not in by_k:
                continue
            cp = {"k": k, "obj": obj[i], "feas": feas[i],
                  "obj_rel": obj_rel[i], "feas_rel": feas_rel[i]}
            checkpoints.append(cp)
        if p_star is not None:
            # composite objective needs the x iterate, which the trace does
            # not keep; report it at the final iterate only
            p_final = _composite_value(bundle, x_final)
            p0 = _composite_value(bundle, np.zeros(bundle.prox_form.dim_x))
            denom = abs(p0 - p_star) or 1.0
            entry["composite_rel_final"] = (p_final - p_star) / denom
            entry["composite_final"] = p_final
            entry["composite_star"] = p_star
        entry["checkpoints"] = checkpoints
        entry["final_sparsity"] = sparsity(x_final)
        entry["fstar_uncertainty"] = f_star_unc
        entry["trace"] = os.path.basename(path)
        summary["methods"][tag] = entry

    spath = os.path.join(config.out, "summary.json")
    try:
        with open(spath, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"failed writing summary file {spath}: {exc}") from exc
    return summary


def _config_from_sources(args):
    cfg = RunConfig()
    if args.config:
        with open(args.config) as fh:
            file_vals = json.load(fh)
        for key, val in file_vals.items():
            norm = key.replace("-", "_")
            if not hasattr(cfg, norm):
                raise ValueError(f"unknown config key {key!r}")
            if norm == "methods" and isinstance(val, str):
                val = tuple(v.strip() for v in val.split(","))
            elif norm == "methods":
                val = tuple(val)
            setattr(cfg, norm, val)
    if args.method:
        cfg.methods = tuple(v.strip() for v in args.method.split(","))
    if args.iters is not None:
        cfg.iters = args.iters
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out is not None:
        cfg.out = args.out
    return cfg


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="pdsplit-bench",
        description="Run splitting-method benchmarks and write trace/summary files.")
    parser.add_argument("--config", help="JSON config file (flat object); flags override")
    parser.add_argument("--method", help="comma-separated method tags, e.g. f1-semiA,ladmm")
    parser.add_argument("--iters", type=int, help="iteration budget")
    parser.add_argument("--seed", type=int, help="data generation seed")
    parser.add_argument("--out", help="output directory")
    args = parser.parse_args(argv)

    config = _config_from_sources(args)
    summary = run_benchmark(config)
    n_ok = sum(1 for v in summary["methods"].values() if "error" not in v)
    n_err = len(summary["methods"]) - n_ok
    print(f"wrote {config.out}/summary.json ({n_ok} methods ok, {n_err} failed)")
    return 0 if n_err == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
