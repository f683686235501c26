"""Command-line interface: analyze, construct, exponent-set, oracle-check,
scan-open-problem.

Exit codes: 0 success (a "not primitive" verdict is a success), 1 input or
usage error (missing file, parse error, out-of-range parameter, cap), 2
internal verification failure (a construction or cross-check disagreed with
itself).

Output is deterministic for fixed inputs, flags, and seed: wall-clock timing
goes to stderr so stdout can be compared byte for byte. ``--format
json-lines`` emits one JSON object per line carrying exactly the values the
text mode prints.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .bitsets import SupportFamily
from .dense import (
    DenseTensor,
    apply_to_basis,
    densify,
    general_product,
    majorization_of,
    majorization_recursion,
    power_patterns,
    support_of,
)
from .digraphs import matrix_gamma, wielandt_matrix
from .errors import VerificationError
from .families import degree_witness, exponent_set, small_exponent_matrix, wielandt_frontier_tensor, wielandt_tensor
from .formats import parse_document, render_document, save_document
from .patterns import (
    Cycled,
    PatternTensor,
    Reached,
    analyze,
    check_necessary_conditions,
    column_states,
    default_bound,
    majorization_pattern,
)

SCAN_DIM_GUARD = 12


# ---------------------------------------------------------------------------
# reporting


@dataclass
class RunReport:
    """Accumulated result records; both emitters read the same dicts, so the
    text table and the json-lines stream cannot disagree."""

    records: list[dict] = field(default_factory=list)

    def add(self, **record) -> dict:
        self.records.append(record)
        return record

    def emit(self, fmt: str, out=None) -> None:
        out = sys.stdout if out is None else out
        if fmt == "json-lines":
            for r in self.records:
                out.write(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n")
        else:
            for r in self.records:
                out.write(_text_line(r) + "\n")


def _text_line(r: dict) -> str:
    kind = r["record"]
    if kind == "meta":
        parts = [f"command: {r['command']}"]
        if "input" in r:
            parts.append(f"input: {r['input']}")
        parts.append(f"sha256: {r['sha256']}")
        return "\n".join(parts)
    if kind == "document":
        return f"document: {r['kind']} order={r['order']} dim={r['dim']}"
    if kind == "conditions":
        if not r["violations"]:
            return "conditions: ok"
        lines = [
            f"conditions: violation {v['code']}"
            + (f" vertex={v['vertex']}" if v["vertex"] is not None else "")
            + f" ({v['detail']})"
            for v in r["violations"]
        ]
        return "\n".join(lines)
    if kind == "analysis":
        g = "-" if r["gamma"] is None else str(r["gamma"])
        return f"primitive: {'yes' if r['primitive'] else 'no'}\ngamma: {g}"
    if kind == "column":
        g = "-" if r["gamma_j"] is None else str(r["gamma_j"])
        head = f"column {r['j']}: gamma_j={g} {r['outcome']}"
        if r["outcome"] == "reached":
            return f"{head} step={r['step']}"
        if r["outcome"] == "cycled":
            return f"{head} first_repeat_at={r['first_repeat_at']} period={r['period']}"
        return f"{head} bound={r['bound']}"
    if kind == "degree":
        head = f"t={r['t']} kind={r['kind']}"
        if r.get("k") is not None:
            head += f" k={r['k']}"
        if r["status"] == "ok":
            return f"{head} gamma={r['gamma']} ok"
        return f"{head} FAILED ({r['message']})"
    if kind == "degree-summary":
        if r["complete"]:
            return f"achieved == expected (1..{r['expected_max']})"
        missing = ",".join(str(t) for t in r["missing"])
        return f"MISMATCH: missing degrees [{missing}] of 1..{r['expected_max']}"
    if kind == "oracle-summary":
        return f"{r['agreements']}/{r['trials']} agree"
    if kind == "oracle-mismatch":
        return f"mismatch trial={r['trial']}: {r['detail']}"
    if kind == "scan-header":
        return (
            f"NON-EXHAUSTIVE random sample: order={r['order']} dim={r['dim']} "
            f"budget={r['budget']} seed={r['seed']}"
        )
    if kind == "histogram":
        return f"gamma={r['gamma']} count={r['count']}"
    if kind == "scan-summary":
        return (
            f"primitive {r['primitive']}/{r['samples']} sampled; "
            "absence of a degree here is not evidence of a gap"
        )
    if kind == "gamma":
        return f"gamma={r['gamma']}"
    raise ValueError(f"unknown record kind {kind!r}")


def _digest_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def _digest_params(params: dict) -> str:
    return _digest_bytes(json.dumps(params, sort_keys=True).encode())


# ---------------------------------------------------------------------------
# random tensors for oracle runs (documented so runs are reproducible)


def random_pattern(rng: random.Random, order: int, dim: int) -> PatternTensor:
    """Seeded random pattern tensor: every row receives between 1 and 3 support
    sets, each drawn uniformly among the nonempty subsets of [dim] with at most
    order-1 members (duplicates and dominated draws are absorbed by the
    antichain). Enumeration of the subset pool caps dim at 16."""
    if dim > 16:
        raise ValueError(f"random_pattern enumerates subsets; dim {dim} > 16")
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    limit = order - 1
    pool = [m for m in range(1, 1 << dim) if bin(m).count("1") <= limit]
    rows = []
    for _ in range(dim):
        count = rng.randint(1, 3)
        rows.append(SupportFamily.from_masks(dim, [rng.choice(pool) for _ in range(count)]))
    return PatternTensor(order, dim, tuple(rows))


def _random_dense(rng: random.Random, order: int, dim: int) -> DenseTensor:
    vals = np.array(
        [rng.randint(0, 3) for _ in range(dim**order)], dtype=float
    ).reshape((dim,) * order)
    return DenseTensor(order, dim, vals)


@dataclass
class OracleCheckResult:
    order: int
    dim: int
    trials: int
    agreements: int
    mismatches: list[tuple[int, str]]
    associativity_triples: int
    explicit_power_trials: int


def run_oracle_check(
    order: int, dim: int, trials: int, seed: int, max_k: int
) -> OracleCheckResult:
    """Cross-check the pattern trace engine against the dense oracles.

    Per trial: a seeded random pattern is densified, and for every column j and
    step k <= max_k the trace state S_k must equal the support of the k-th
    basis iterate and the j-th column of the k-th majorization recursion
    pattern. Order-2 trials additionally compare matrix_gamma with analyze;
    order-3 trials at dim <= 3 rebuild the explicit powers and compare their
    majorization columns; order-3 trials at dim 2 also check associativity of
    the real product on a random integer triple.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if max_k < 1:
        raise ValueError(f"max-k must be >= 1, got {max_k}")
    rng = random.Random(seed)
    mismatches: list[tuple[int, str]] = []
    assoc = 0
    explicit = 0
    for trial in range(trials):
        problems: list[str] = []
        tensor = random_pattern(rng, order, dim)
        states = {j: column_states(tensor, j, max_k) for j in range(1, dim + 1)}
        d = densify(tensor)
        for j in range(1, dim + 1):
            iterates = apply_to_basis(d, j, max_k)
            for k in range(1, max_k + 1):
                if support_of(iterates[k - 1]) != states[j][k - 1]:
                    problems.append(f"basis iterate support differs at j={j} k={k}")
        recursion = majorization_recursion(d, max_k)
        for k in range(1, max_k + 1):
            for j in range(1, dim + 1):
                if recursion[k - 1].column(j) != states[j][k - 1]:
                    problems.append(f"majorization recursion differs at j={j} k={k}")
        if order == 2:
            g_matrix = matrix_gamma(majorization_pattern(tensor))
            g_tensor = analyze(tensor).gamma
            if g_matrix != g_tensor:
                problems.append(f"matrix_gamma {g_matrix} != analyze gamma {g_tensor}")
        if order == 3 and dim <= 3:
            explicit += 1
            powers = power_patterns(d, min(max_k, 3))
            for k, p in enumerate(powers, start=1):
                cols = majorization_of(p).columns()
                for j in range(1, dim + 1):
                    if cols[j - 1] != states[j][k - 1]:
                        problems.append(f"explicit power pattern differs at j={j} k={k}")
        if order == 3 and dim == 2:
            assoc += 1
            a = _random_dense(rng, 3, 2)
            b = _random_dense(rng, 3, 2)
            c = _random_dense(rng, 3, 2)
            left = general_product(general_product(a, b), c)
            right = general_product(a, general_product(b, c))
            if left.values.shape != right.values.shape or (left.values != right.values).any():
                problems.append("associativity failed on random triple")
        if problems:
            mismatches.extend((trial, p) for p in problems)
    return OracleCheckResult(
        order=order,
        dim=dim,
        trials=trials,
        agreements=trials - len({t for t, _ in mismatches}),
        mismatches=mismatches,
        associativity_triples=assoc,
        explicit_power_trials=explicit,
    )


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args: argparse.Namespace) -> int:
    with open(args.path, "rb") as fh:
        data = fh.read()
    doc = parse_document(data.decode("utf-8"))
    tensor = doc.as_pattern_tensor()
    report = RunReport()
    report.add(record="meta", command="analyze", input=args.path, sha256=_digest_bytes(data))
    report.add(record="document", kind=doc.kind, order=tensor.order, dim=tensor.dim)
    violations = check_necessary_conditions(tensor)
    report.add(
        record="conditions",
        violations=[{"code": v.code, "vertex": v.vertex, "detail": v.detail} for v in violations],
    )
    result = analyze(tensor, max_steps=args.max_k)
    report.add(
        record="analysis",
        primitive=result.primitive,
        gamma=result.gamma,
        bound=result.bound,
        max_steps=result.max_steps,
    )
    if args.per_column:
        for trace in result.traces:
            rec: dict = {
                "record": "column",
                "j": trace.column,
                "gamma_j": result.gamma_by_column[trace.column - 1],
            }
            o = trace.outcome
            if isinstance(o, Reached):
                rec.update(outcome="reached", step=o.step)
            elif isinstance(o, Cycled):
                rec.update(outcome="cycled", first_repeat_at=o.first_repeat_at, period=o.period)
            else:
                rec.update(outcome="exhausted", bound=o.bound)
            report.add(**rec)
    report.emit(args.format)
    return 0


def cmd_construct(args: argparse.Namespace) -> int:
    def need(name: str):
        value = getattr(args, name)
        if value is None:
            raise ValueError(f"kind {args.kind!r} requires --{name}")
        return value

    n = need("n")
    if args.kind == "wielandt":
        payload = wielandt_matrix(n)
        gamma = matrix_gamma(payload)
    elif args.kind == "small-matrix":
        payload = small_exponent_matrix(n, need("t"))
        gamma = matrix_gamma(payload)
    elif args.kind == "a0":
        payload = wielandt_tensor(need("m"), n)
        gamma = analyze(payload).gamma
    elif args.kind == "ak":
        payload = wielandt_frontier_tensor(need("m"), n, need("k"))
        gamma = analyze(payload).gamma
    else:  # bt
        payload, _spec = degree_witness(need("m"), n, need("t"))
        gamma = analyze(payload).gamma
    text = render_document(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"gamma={'-' if gamma is None else gamma}")
    else:
        sys.stdout.write(text)
        print(f"gamma={'-' if gamma is None else gamma}", file=sys.stderr)
    return 0


def cmd_exponent_set(args: argparse.Namespace) -> int:
    if args.n > args.max_n:
        raise ValueError(
            f"dim {args.n} exceeds the desk-scale guard {args.max_n} (raise with --max-n)"
        )
    result = exponent_set(args.m, args.n)
    report = RunReport()
    params = {"order": args.m, "dim": args.n}
    report.add(record="meta", command="exponent-set", sha256=_digest_params(params), **params)
    for w in result.witnesses:
        report.add(
            record="degree",
            t=w.degree,
            kind=w.spec.kind,
            k=w.spec.k,
            gamma=w.verified_gamma,
            status="ok",
        )
        if args.emit_witnesses:
            import os

            os.makedirs(args.emit_witnesses, exist_ok=True)
            save_document(
                os.path.join(args.emit_witnesses, f"witness-t{w.degree:03d}.txt"), w.tensor
            )
    for t, message in result.failures:
        report.add(record="degree", t=t, kind="-", k=None, status="fail", message=message)
    missing = sorted(result.expected - result.achieved)
    report.add(
        record="degree-summary",
        complete=result.complete,
        expected_max=default_bound(args.n),
        missing=missing,
    )
    report.emit(args.format)
    return 0 if result.complete else 2


def cmd_oracle_check(args: argparse.Namespace) -> int:
    result = run_oracle_check(args.m, args.n, args.trials, args.seed, args.max_k)
    report = RunReport()
    params = {
        "order": args.m,
        "dim": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "max_k": args.max_k,
    }
    report.add(record="meta", command="oracle-check", sha256=_digest_params(params), **params)
    for trial, detail in result.mismatches:
        report.add(record="oracle-mismatch", trial=trial, detail=detail)
    report.add(
        record="oracle-summary",
        trials=result.trials,
        agreements=result.agreements,
        associativity_triples=result.associativity_triples,
        explicit_power_trials=result.explicit_power_trials,
    )
    report.emit(args.format)
    return 0 if not result.mismatches else 2


def cmd_scan_open_problem(args: argparse.Namespace) -> int:
    if not 3 <= args.m < args.n:
        raise ValueError(f"requires 3 <= order < dim, got order {args.m}, dim {args.n}")
    if args.n > SCAN_DIM_GUARD:
        raise ValueError(f"dim {args.n} exceeds the desk-scale guard {SCAN_DIM_GUARD}")
    if args.budget < 1:
        raise ValueError(f"budget must be >= 1, got {args.budget}")
    rng = random.Random(args.seed)
    counts: dict[int, int] = {}
    primitive = 0
    for _ in range(args.budget):
        tensor = random_pattern(rng, args.m, args.n)
        gamma = analyze(tensor).gamma
        if gamma is not None:
            primitive += 1
            counts[gamma] = counts.get(gamma, 0) + 1
    report = RunReport()
    params = {"order": args.m, "dim": args.n, "budget": args.budget, "seed": args.seed}
    report.add(record="meta", command="scan-open-problem", sha256=_digest_params(params), **params)
    report.add(record="scan-header", **params)
    for gamma in sorted(counts):
        report.add(record="histogram", gamma=gamma, count=counts[gamma])
    report.add(record="scan-summary", primitive=primitive, samples=args.budget)
    report.emit(args.format)
    return 0


# ---------------------------------------------------------------------------
# parser / entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="primdeg",
        description="Primitivity and primitive degrees of nonnegative tensors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide primitivity of a tensor document")
    p.add_argument("path")
    p.add_argument("--max-k", type=int, default=None, help="step budget override")
    p.add_argument("--per-column", action="store_true", help="emit the per-column table")
    p.add_argument("--format", choices=["text", "json-lines"], default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", help="write a canonical document for a known family")
    p.add_argument("kind", choices=["wielandt", "a0", "ak", "bt", "small-matrix"])
    p.add_argument("--n", type=int, required=True, help="dimension")
    p.add_argument("--m", type=int, help="order (tensor kinds)")
    p.add_argument("--k", type=int, help="frontier index (kind ak)")
    p.add_argument("--t", type=int, help="target degree (kinds bt, small-matrix)")
    p.add_argument("--out", help="output path (default: document to stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("exponent-set", help="witness every degree 1..(n-1)^2+1")
    p.add_argument("--m", type=int, required=True, help="order")
    p.add_argument("--n", type=int, required=True, help="dimension")
    p.add_argument("--emit-witnesses", metavar="DIR", help="write witness documents here")
    p.add_argument("--max-n", type=int, default=12, help="desk-scale dimension guard")
    p.add_argument("--format", choices=["text", "json-lines"], default="text")
    p.set_defaults(func=cmd_exponent_set)

    p = sub.add_parser("oracle-check", help="cross-check trace engine vs dense oracles")
    p.add_argument("--m", type=int, required=True, help="order")
    p.add_argument("--n", type=int, required=True, help="dimension")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-k", type=int, default=5)
    p.add_argument("--format", choices=["text", "json-lines"], default="text")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser(
        "scan-open-problem",
        help="sample degrees for order < dim (NON-EXHAUSTIVE)",
    )
    p.add_argument("--m", type=int, required=True, help="order (>= 3)")
    p.add_argument("--n", type=int, required=True, help="dimension (> order)")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["text", "json-lines"], default="text")
    p.set_defaults(func=cmd_scan_open_problem)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; that slot is reserved for
        # verification failures, so usage problems become input errors.
        return 0 if e.code in (0, None) else 1
    start = time.perf_counter()
    try:
        code = args.func(args)
    except VerificationError as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    finally:
        elapsed = time.perf_counter() - start
        print(f"elapsed: {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
