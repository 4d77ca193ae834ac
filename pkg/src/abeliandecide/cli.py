"""Command-line front end.

Exit codes: 0 free, 1 contains, 2 precondition failed, 3 usage/parse/internal error.

Morphism files look like::

    # Dekking
    alphabet: 3
    1 -> 1 1 2 3
    2 -> 1 3 3
    3 -> 2 2 3
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, fields

from .decider import DecideConfig, Status, Verdict, check_preconditions, decide
from .exactlinalg import frequency_matrix
from .oracle import find_abelian_power
from .templates import ancestor_closure, delta
from .words import Morphism, factor_set, fixed_point_prefix, word_str

EXIT_ERROR = 3


class MorphismParseError(ValueError):
    pass


def parse_morphism_file(text: str) -> Morphism:
    m = None
    rules: dict[int, tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def fail(msg):
            raise MorphismParseError(f"line {lineno}: {msg}: {raw.strip()!r}")

        if m is None:
            key, sep, val = line.partition(":")
            if not sep or key.strip() != "alphabet":
                fail("expected header 'alphabet: m'")
            try:
                m = int(val)
            except ValueError:
                fail("alphabet size must be an integer")
            if m < 1:
                fail("alphabet size must be >= 1")
            continue
        lhs, sep, rhs = line.partition("->")
        if not sep:
            fail("expected rule 'i -> j1 j2 ...'")
        try:
            a = int(lhs)
            img = tuple(int(x) for x in rhs.split())
        except ValueError:
            fail("letters must be integers")
        if not 1 <= a <= m:
            fail(f"letter {a} out of range 1..{m}")
        if a in rules:
            fail(f"duplicate rule for letter {a}")
        if not img:
            fail(f"empty image for letter {a}")
        bad = [x for x in img if not 1 <= x <= m]
        if bad:
            fail(f"letter {bad[0]} out of range 1..{m}")
        rules[a] = img
    if m is None:
        raise MorphismParseError("missing header 'alphabet: m'")
    missing = [a for a in range(1, m + 1) if a not in rules]
    if missing:
        raise MorphismParseError(f"missing rule for letter(s) {', '.join(map(str, missing))}")
    return Morphism(tuple(rules[a] for a in range(1, m + 1)))


def format_morphism(mu: Morphism) -> str:
    lines = [f"alphabet: {mu.m}"]
    lines += [f"{a} -> {' '.join(map(str, img))}" for a, img in enumerate(mu.images, 1)]
    return "\n".join(lines) + "\n"


@dataclass
class RunReport:
    """One flat record per run; the JSON and text renderings carry the same fields."""

    morphism: str
    k: int
    status: str
    exit_code: int
    reasons: list
    witness_position: int | None = None
    witness_block_length: int | None = None
    witness_blocks: list | None = None
    instance: str | None = None
    instance_template: str | None = None
    ancestor_count: int | None = None
    generation_sizes: list | None = None
    delta: int | None = None
    scan_bound: int | None = None
    derived_bound: int | None = None
    short_bound: int | None = None
    factors_scanned: int | None = None
    norm_estimate: float | None = None
    det: int | None = None
    sylvester_minors: list | None = None
    N: int | None = None
    elapsed: float | None = None

    @classmethod
    def from_verdict(cls, mu: Morphism, k: int, v: Verdict, elapsed: float) -> "RunReport":
        s = v.stats
        r = cls(
            morphism=str(mu), k=k, status=v.status.value, exit_code=v.status.exit_code,
            reasons=list(v.reasons), ancestor_count=s.ancestor_count,
            generation_sizes=None if s.generation_sizes is None else list(s.generation_sizes),
            delta=s.delta, scan_bound=s.scan_bound, derived_bound=s.derived_bound,
            short_bound=s.short_bound, factors_scanned=s.factors_scanned,
            norm_estimate=s.norm_estimate, det=s.det,
            sylvester_minors=None if s.sylvester_minors is None else list(s.sylvester_minors),
            N=s.N, elapsed=round(elapsed, 6),
        )
        if v.witness is not None:
            r.witness_position = v.witness.position
            r.witness_block_length = v.witness.block_length
            r.witness_blocks = [word_str(b) for b in v.witness.blocks(v.witness_word)]
        if v.instance is not None:
            r.instance = v.instance.render(v.instance_factor)
            r.instance_template = str(v.instance.template)
        return r

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RunReport":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    def to_text(self) -> str:
        return "\n".join(f"{k}: {json.dumps(v)}" for k, v in self.to_dict().items())

    @classmethod
    def from_text(cls, text: str) -> "RunReport":
        d = {}
        for line in text.splitlines():
            key, _, val = line.partition(": ")
            d[key] = json.loads(val)
        return cls.from_dict(d)


def _load(path: str) -> Morphism:
    if path == "-":
        return parse_morphism_file(sys.stdin.read())
    with open(path) as fh:
        return parse_morphism_file(fh.read())


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        print(json.dumps(payload), file=out)
    else:
        for key, val in payload.items():
            print(f"{key}: {json.dumps(val)}", file=out)


def cmd_decide(args, out) -> int:
    mu = _load(args.file)
    cfg = DecideConfig(max_closure=args.max_closure, bound=args.bound)
    t0 = time.perf_counter()
    v = decide(mu, args.k, cfg)
    report = RunReport.from_verdict(mu, args.k, v, time.perf_counter() - t0)
    print(report.to_json() if args.format == "json" else report.to_text(), file=out)
    return report.exit_code


def cmd_conditions(args, out) -> int:
    from .decider import Stats
    from .words import validate

    mu = _load(args.file)
    stats = Stats()
    reasons = check_preconditions(mu, stats)
    rep = validate(mu)
    payload = {
        "morphism": str(mu),
        "letters_in_range": rep.letters_in_range,
        "prolongable": rep.prolongable,
        "images_expand": rep.images_expand,
        "frequency_matrix": [list(r) for r in frequency_matrix(mu)] if rep.letters_in_range else None,
        "det": stats.det,
        "nonsingular": None if stats.det is None else stats.det != 0,
        "sylvester_minors": None if stats.sylvester_minors is None else list(stats.sylvester_minors),
        "inverse_norm_lt_one": None if stats.sylvester_minors is None
        else all(x > 0 for x in stats.sylvester_minors),
        "norm_estimate": stats.norm_estimate,
        "N": stats.N,
        "reasons": reasons,
    }
    _emit(payload, args.format, out)
    return Status.PRECONDITION_FAILED.exit_code if reasons else 0


def cmd_ancestors(args, out) -> int:
    mu = _load(args.file)
    reasons = check_preconditions(mu)
    if reasons:
        _emit({"status": Status.PRECONDITION_FAILED.value, "reasons": reasons}, args.format, out)
        return Status.PRECONDITION_FAILED.exit_code
    closure = ancestor_closure(mu, args.k, args.max_closure, empty_borders=args.empty_borders)
    ts = closure.templates
    payload = {
        "ancestor_count": len(ts),
        "generation_sizes": [len(g) for g in closure.generations],
        "delta": delta(ts),
    }
    if args.dump:
        payload["templates"] = [str(t) for t in ts]
    _emit(payload, args.format, out)
    return 0


def cmd_factors(args, out) -> int:
    mu = _load(args.file)
    for u in sorted(factor_set(mu, args.L), key=lambda u: (len(u), u)):
        print(word_str(u), file=out)
    return 0


def cmd_oracle(args, out) -> int:
    mu = _load(args.file)
    w = fixed_point_prefix(mu, args.n)
    occ = find_abelian_power(w, args.k)
    payload = {"prefix_length": args.n, "k": args.k, "found": occ is not None}
    if occ is not None:
        payload.update(position=occ.position, block_length=occ.block_length,
                       blocks=[word_str(b) for b in occ.blocks(w)])
    _emit(payload, args.format, out)
    return Status.CONTAINS.exit_code if occ else Status.FREE.exit_code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="abeliandecide", description="Decide Abelian k-power freeness of morphic fixed points.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, with_k=False):
        sp.add_argument("-f", "--file", required=True, help="morphism file, '-' for stdin")
        if with_k:
            sp.add_argument("-k", type=int, required=True)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    d = sub.add_parser("decide", help="run the full decision procedure")
    common(d, True)
    d.add_argument("--max-closure", type=int, default=10**6)
    d.add_argument("--bound", choices=("derived", "short"), default="derived")
    d.set_defaults(func=cmd_decide)

    c = sub.add_parser("conditions", help="report preconditions with exact certificates")
    common(c)
    c.set_defaults(func=cmd_conditions)

    a = sub.add_parser("ancestors", help="compute the ancestor closure of the power template")
    common(a, True)
    a.add_argument("--dump", action="store_true")
    a.add_argument("--max-closure", type=int, default=10**6)
    a.add_argument("--empty-borders", action="store_true",
                   help="also allow empty parent borders (larger closure; not used by decide)")
    a.set_defaults(func=cmd_ancestors)

    f = sub.add_parser("factors", help="print all factors of length <= L")
    f.add_argument("-f", "--file", required=True)
    f.add_argument("-L", type=int, required=True)
    f.set_defaults(func=cmd_factors)

    o = sub.add_parser("oracle", help="brute-force scan a prefix for an Abelian k-power")
    common(o, True)
    o.add_argument("-n", type=int, required=True, help="prefix length")
    o.set_defaults(func=cmd_oracle)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "k", 2) < 2:
            raise ValueError("k must be >= 2")
        return args.func(args, out)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
