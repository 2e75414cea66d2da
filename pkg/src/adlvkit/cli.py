"""Command line front end.

One verb per artifact: classify an element, emit a reduction tree, print
the endpoint-class table, scan a length range, or run the invariant
suites. All randomness is seed-derived; identical configurations produce
byte-identical JSON. Results can be cached in content-addressed files
keyed by a hash of the full request plus the package version, so
interrupted scans resume for free.

Exit codes: 0 ok, 1 usage, 2 resource cap, 3 invariant failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__, bg_poset, checks, classifier, conjugacy
from .affine_weyl import format_element, length, parse_element
from .classifier import REPORT_SCHEMA, classify, report_to_dict
from .errors import (
    AdlvkitError,
    CapExceededError,
    InternalInvariantError,
    UsageError,
)
from .reduction_tree import build_tree, export_tree
from .root_datum import build_root_datum

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CAP = 2
EXIT_INVARIANT = 3

_VERIFY_FRACTION = 100  # re-verify roughly 1 in this many cache hits


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _stable_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


class ResultCache:
    """Content-addressed JSON files; atomic writes, last writer wins."""

    def __init__(self, root):
        self.root = root
        os.makedirs(root, exist_ok=True)

    @staticmethod
    def key(payload: dict) -> str:
        blob = _stable_json({"version": __version__, **payload})
        return hashlib.sha256(blob.encode()).hexdigest()

    def path(self, key):
        return os.path.join(self.root, key + ".json")

    def read(self, key):
        try:
            with open(self.path(key)) as fh:
                return json.load(fh)
        except (OSError, ValueError):
            return None

    def write(self, key, data):
        tmp = self.path(key) + f".tmp.{os.getpid()}"
        with open(tmp, "w") as fh:
            fh.write(_stable_json(data))
        os.replace(tmp, self.path(key))

    @staticmethod
    def should_reverify(key) -> bool:
        # deterministic sampling, no wall clock or OS entropy
        return int(key[:8], 16) % _VERIFY_FRACTION == 0


def _build_parser():
    parser = _Parser(prog="adlvkit", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeds=True):
        p.add_argument("--datum", required=True, help="datum string, e.g. A5:gl or 2A4:sc")
        if seeds:
            p.add_argument(
                "--seeds",
                default="0,1,2,3,4,5,6,7,8,9",
                help="comma separated strategy seeds (distinct, nonempty)",
            )
        p.add_argument("--cap-bfs", type=int, default=conjugacy.DEFAULT_BFS_CAP)
        p.add_argument("--cap-enum", type=int, default=bg_poset.DEFAULT_ENUM_BUDGET)
        p.add_argument("--cache", default=None, help="cache directory (or ADLVKIT_CACHE)")

    p = sub.add_parser("classify", help="full report for one element")
    common(p)
    p.add_argument("element")
    p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("tree", help="emit one reduction tree")
    common(p, seeds=False)
    p.add_argument("element")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "dot"), default="json")

    p = sub.add_parser("bgw", help="endpoint classes with path counts")
    common(p)
    p.add_argument("element")
    p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("scan", help="classify every element up to a length bound")
    common(p)
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument(
        "--filter",
        default=None,
        help="comma separated subset of straight,minlen,mincox,geocox,smo",
    )
    p.add_argument("--coset", default=None, help="restrict to the coset of tauK, e.g. tau1")
    p.add_argument(
        "--left-minimal",
        default=None,
        help="comma separated finite indices; keep only elements of minimal "
        "length in their coset under the corresponding parabolic",
    )
    p.add_argument("--format", choices=("jsonl", "table"), default="jsonl")
    p.add_argument("--jobs", type=int, default=0, help="0 = available parallelism")

    p = sub.add_parser("check", help="run the invariant suites over a scan corpus")
    common(p)
    p.add_argument("--max-length", type=int, required=True)

    return parser


def _parse_seeds(text):
    try:
        seeds = tuple(int(s) for s in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad seed list {text!r}") from exc
    if not seeds or len(set(seeds)) != len(seeds):
        raise UsageError("seeds must be nonempty and distinct")
    return seeds


def _cache_from(args):
    root = args.cache or os.environ.get("ADLVKIT_CACHE")
    return ResultCache(root) if root else None


def _classify_payload(datum, text, seeds, cap):
    w = parse_element(datum, text)
    return report_to_dict(classify(w, seeds=seeds, cap=cap))


def _classified(datum, text, seeds, cap, cache):
    if cache is None:
        return _classify_payload(datum, text, seeds, cap)
    key = cache.key(
        {
            "command": "classify",
            "datum": datum.spec.datum_string(),
            "element": text,
            "seeds": list(seeds),
            "cap": cap,
        }
    )
    hit = cache.read(key)
    if hit is not None:
        if cache.should_reverify(key):
            fresh = _classify_payload(datum, text, seeds, cap)
            if fresh != hit:
                raise InternalInvariantError(
                    f"cache entry {key} disagrees with a fresh run"
                )
        return hit
    data = _classify_payload(datum, text, seeds, cap)
    cache.write(key, data)
    return data


def _report_table(data) -> str:
    lines = [
        f"element   {data['element']}   (datum {data['datum']}, length {data['length']})",
        f"min-len {data['min_len']}   straight {data['straight']}   "
        f"smo {data['smo']}   geo-cox {data['geo_cox']}",
        f"slack {data['mct']['slack']}   newton ({','.join(data['newton'])})   "
        f"kottwitz ({','.join(str(k) for k in data['kottwitz'])})",
    ]
    if data["min_cox"]:
        wit = data["min_cox"]
        lines.append(
            f"witness  K={{{','.join(str(i) for i in wit['K'])}}}  x = {wit['x']}  c = {wit['c']}"
        )
    lines.append("classes:")
    for row in data["bgw"]:
        lines.append(
            f"  nu=({','.join(row['newton'])}) kappa=({','.join(str(k) for k in row['kottwitz'])})"
            f"  paths={row['num_paths']}  ell1={row['ell1']} ell2={row['ell2']} dim={row['dim']}"
            + (f"  {row['shape']}" if row["shape"] else "")
        )
    lines.append(
        f"saturated {data['purity']['saturated']}"
        + ("" if not data["purity"]["interval_diff"] else "  (interval differs!)")
    )
    return "\n".join(lines)


# -- scan worker (module level so process pools can pickle it) ----------------


_WORKER_STATE = {}


def _scan_worker_init(datum_string, seeds, cap):
    _WORKER_STATE["datum"] = build_root_datum(datum_string)
    _WORKER_STATE["seeds"] = seeds
    _WORKER_STATE["cap"] = cap


def _scan_worker(text):
    datum = _WORKER_STATE["datum"]
    return _classify_payload(datum, text, _WORKER_STATE["seeds"], _WORKER_STATE["cap"])


_FILTERS = {
    "straight": lambda d: d["straight"],
    "minlen": lambda d: d["min_len"],
    "mincox": lambda d: d["min_cox"] is not None,
    "geocox": lambda d: d["geo_cox"],
    "smo": lambda d: d["smo"],
}


def _cmd_scan(args, out):
    datum = build_root_datum(args.datum)
    seeds = _parse_seeds(args.seeds)
    cache = _cache_from(args)
    filters = []
    if args.filter:
        for name in args.filter.split(","):
            if name not in _FILTERS:
                raise UsageError(f"unknown filter {name!r}")
            filters.append(_FILTERS[name])

    elements = checks.corpus(datum, args.max_length, budget=args.cap_enum)
    if args.coset:
        if not args.coset.startswith("tau"):
            raise UsageError("--coset expects tauK")
        from .affine_weyl import omega_element

        target = datum.omega_quotient.key(
            omega_element(datum, int(args.coset[3:])).translation
        )
        elements = [
            x for x in elements if datum.omega_quotient.key(x.translation) == target
        ]
    if args.left_minimal:
        from .affine_weyl import multiply, simple_reflection

        try:
            indices = [int(i) for i in args.left_minimal.split(",")]
        except ValueError as exc:
            raise UsageError(f"bad index list {args.left_minimal!r}") from exc
        if any(not 1 <= i <= datum.rank for i in indices):
            raise UsageError("--left-minimal expects finite simple indices")
        elements = [
            x
            for x in elements
            if all(
                length(multiply(simple_reflection(datum, i), x)) > length(x)
                for i in indices
            )
        ]
    texts = [format_element(x) for x in elements]

    jobs = args.jobs if args.jobs > 0 else (os.cpu_count() or 1)

    def row_stream():
        if jobs > 1 and cache is None and len(texts) > 1:
            try:
                with ProcessPoolExecutor(
                    max_workers=jobs,
                    initializer=_scan_worker_init,
                    initargs=(args.datum, seeds, args.cap_bfs),
                ) as pool:
                    yield from pool.map(_scan_worker, texts, chunksize=8)
                    return
            except (OSError, PermissionError):
                pass  # no worker pool available here; fall through
        for text in texts:
            yield _classified(datum, text, seeds, args.cap_bfs, cache)

    emitted = 0
    truncated = None
    stream = row_stream()
    while True:
        try:
            data = next(stream)
        except StopIteration:
            break
        except CapExceededError as exc:
            truncated = str(exc)
            break
        if any(not f(data) for f in filters):
            continue
        emitted += 1
        if args.format == "jsonl":
            out.write(_stable_json(data) + "\n")
        else:
            out.write(
                f"{data['element']:40s} len={data['length']:2d} "
                f"minlen={int(data['min_len'])} straight={int(data['straight'])} "
                f"smo={int(data['smo'])} geocox={int(data['geo_cox'])} "
                f"classes={len(data['bgw'])}\n"
            )
    if truncated is not None:
        # partial results stay flushed; the marker records the cut
        if args.format == "jsonl":
            out.write(_stable_json({"truncated": True, "reason": truncated}) + "\n")
        else:
            out.write(f"# truncated: {truncated}\n")
        return EXIT_CAP
    if args.format == "table":
        out.write(f"# {emitted} of {len(texts)} elements shown\n")
    return EXIT_OK


def _cmd_check(args, out):
    datum = build_root_datum(args.datum)
    seeds = _parse_seeds(args.seeds)
    report = checks.audit(
        datum,
        args.max_length,
        seeds=seeds,
        bfs_cap=args.cap_bfs,
        enum_budget=args.cap_enum,
    )
    for line in report.lines():
        out.write(line + "\n")
    for result in report.results.values():
        for finding in result.findings:
            out.write(f"FINDING {result.name}: {_stable_json(finding)}\n")
        for violation in result.violations[:20]:
            out.write(f"VIOLATION {result.name}: {_stable_json(violation)}\n")
    out.write(
        f"# corpus {report.corpus_size} elements, {report.geo_cox_count} geometric "
        f"Coxeter type, {report.elapsed:.1f}s\n"
    )
    return EXIT_OK if report.passed else EXIT_INVARIANT


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "classify":
            datum = build_root_datum(args.datum)
            seeds = _parse_seeds(args.seeds)
            data = _classified(
                datum, args.element, seeds, args.cap_bfs, _cache_from(args)
            )
            if args.format == "json":
                out.write(_stable_json(data) + "\n")
            else:
                out.write(_report_table(data) + "\n")
            return EXIT_OK
        if args.command == "tree":
            datum = build_root_datum(args.datum)
            w = parse_element(datum, args.element)
            tree = build_tree(w, seed=args.seed, cap=args.cap_bfs)
            text = export_tree(tree, format=args.format)
            out.write(text if text.endswith("\n") else text + "\n")
            return EXIT_OK
        if args.command == "bgw":
            datum = build_root_datum(args.datum)
            seeds = _parse_seeds(args.seeds)
            data = _classified(
                datum, args.element, seeds, args.cap_bfs, _cache_from(args)
            )
            table = {
                "schema": REPORT_SCHEMA,
                "datum": data["datum"],
                "element": data["element"],
                "bgw": data["bgw"],
            }
            if args.format == "json":
                out.write(_stable_json(table) + "\n")
            else:
                for row in data["bgw"]:
                    out.write(
                        f"nu=({','.join(row['newton'])}) "
                        f"kappa=({','.join(str(k) for k in row['kottwitz'])}) "
                        f"paths={row['num_paths']} ell1={row['ell1']} "
                        f"ell2={row['ell2']} dim={row['dim']}\n"
                    )
            return EXIT_OK
        if args.command == "scan":
            return _cmd_scan(args, out)
        if args.command == "check":
            return _cmd_check(args, out)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InternalInvariantError as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except AdlvkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
