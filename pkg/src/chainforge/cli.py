"""Command line front end.

Runs the engines in-process by default; with --server it forwards the same
request to a running HTTP service instead. Exit codes: 0 ok, 1 parse error,
2 not covered, 3 cap exceeded, 4 internal inconsistency.
"""
from __future__ import annotations

import json
import sys
import time

import click

from . import records
from .catalog import GroupIdError, UnsupportedFamily, parse_group_id
from .depth import InternalInconsistency
from .length import NotCovered
from .oracle.perm import CapExceeded

EXIT_OK, EXIT_PARSE, EXIT_NOT_COVERED, EXIT_CAP, EXIT_INCONSISTENT = 0, 1, 2, 3, 4
HTTP_EXIT = {400: EXIT_PARSE, 404: EXIT_NOT_COVERED, 413: EXIT_CAP, 500: EXIT_INCONSISTENT}

FORMAT = click.option("--format", "fmt", type=click.Choice(["json", "csv", "text"]), default="json",
                      show_default=True)
WHY = click.option("--why", is_flag=True, help="Attach a description of every rule applied.")
SERVER = click.option("--server", metavar="URL", default=None,
                      help="Send the request to a running service instead of computing locally.")


class Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _run(fn):
    """Map engine exceptions to exit codes; nothing is printed to stdout on failure."""
    try:
        return fn()
    except GroupIdError as exc:
        raise Failure(EXIT_PARSE, f"parse error: {exc}")
    except (NotCovered, UnsupportedFamily) as exc:
        raise Failure(EXIT_NOT_COVERED, f"not covered: {exc}")
    except CapExceeded as exc:
        raise Failure(EXIT_CAP, f"cap exceeded: {exc}")
    except InternalInconsistency as exc:
        raise Failure(EXIT_INCONSISTENT, f"internal inconsistency: {exc}")


def _emit(rec: dict, fmt: str, why: bool) -> None:
    if why:
        rec["why"] = records.why(rec["provenance"])
    if fmt == "json":
        out = json.dumps(rec, indent=2) + "\n"
    elif fmt == "csv":
        out = records.to_csv(rec)
    else:
        out = records.to_text(rec)
    click.echo(out, nl=False)


def _remote(server: str, path: str, body: dict) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + path, json=body, timeout=600)
    if resp.status_code != 200:
        detail = resp.json().get("detail", resp.text)
        raise Failure(HTTP_EXIT.get(resp.status_code, EXIT_PARSE), f"server: {detail}")
    return resp.json()


def _finish(build, fmt: str, why: bool) -> None:
    try:
        rec = _run(build)
    except Failure as exc:
        click.echo(str(exc), err=True)
        sys.exit(exc.code)
    _emit(rec, fmt, why)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(package_name="artifact")
def main():
    """Length, depth and chain difference of finite groups."""


@main.command()
@click.argument("group")
@FORMAT
@WHY
@SERVER
def report(group, fmt, why, server):
    """Length, depth, cd and cr of GROUP, e.g. "L(2,7)" or "A(5)xC(2)"."""

    def build():
        if server:
            return _remote(server, "/report", {"group": group})
        res, prov = records.report_result(parse_group_id(group))
        return records.record("report", {"group": group}, res, prov)

    _finish(build, fmt, why)


@main.command()
@click.argument("tag")
@click.option("--q-max", "--limit", "q_max", default=None, help="Largest field size scanned.")
@click.option("--n-max", default=None, help="Largest alternating degree scanned.")
@click.option("--max-order", default=None, help="Skip groups above this order (accepts 10^6).")
@click.option("--family", default=None, help="Restrict to one family: A, L2, L, U, Sz, R, Spor.")
@click.option("--l", "l_value", default=None, help="Only members of this length (length<=9 only).")
@FORMAT
@WHY
@SERVER
def classify(tag, q_max, n_max, max_order, family, l_value, fmt, why, server):
    """Enumerate the members of a classification TAG within the scan bounds."""
    tag = records.TAG_ALIASES.get(tag, tag)
    if tag not in records.CLASSIFY_TAGS:
        click.echo(f"unknown tag {tag!r}; known: {', '.join(records.CLASSIFY_TAGS)}", err=True)
        sys.exit(EXIT_PARSE)
    ints = {k: (records.parse_count(v) if v is not None else None)
            for k, v in dict(q_max=q_max, n_max=n_max, max_order=max_order, l=l_value).items()}
    query = {"tag": tag, **{k: (str(v) if v is not None else None) for k, v in ints.items()},
             "family": family}

    def build():
        if server:
            body = {"tag": tag, "family": family, **ints}
            return _remote(server, "/classify", body)
        members = records.classify_members(tag, ints["q_max"], ints["n_max"], ints["max_order"], family,
                                           ints["l"])
        return records.record("classify", query, {"tag": tag, "members": members}, [f"classify:{tag}"])

    _finish(build, fmt, why)


@main.command()
@click.argument("family")
@click.option("--limit", required=True, help="Search bound, e.g. 2000 or 10^6.")
@click.option("--jobs", default=1, show_default=True, type=int, help="Worker processes.")
@click.option("--shards", default=None, type=int, help="Number of ranges (defaults to --jobs).")
@FORMAT
@WHY
@SERVER
def primes(family, limit, jobs, shards, fmt, why, server):
    """Primes up to --limit in a named FAMILY (table5-row1, appendix, u3-l9, ...)."""
    from . import primes as P

    if family not in P.CONDITIONS:
        click.echo(f"unknown family {family!r}; known: {', '.join(P.CONDITIONS)}", err=True)
        sys.exit(EXIT_PARSE)
    n = records.parse_count(limit)
    if n < 2:
        click.echo("limit must be at least 2", err=True)
        sys.exit(EXIT_PARSE)

    def build():
        if server:
            return _remote(server, "/primes", {"family": family, "limit": n, "jobs": jobs, "shards": shards})
        res = records.primes_result(family, n, jobs=jobs, shards=shards)
        return records.record("primes", {"family": family, "limit": str(n)}, res, [f"primes:{family}"])

    _finish(build, fmt, why)


@main.command()
@click.argument("group")
@click.option("--verify/--no-verify", default=True, show_default=True,
              help="Compare the lattice values with the engines.")
@click.option("--export-lattice", "export", default=None, metavar="PATH",
              help="Write the subgroup lattice as JSON, or DOT if PATH ends in .dot.")
@FORMAT
@WHY
@SERVER
def oracle(group, verify, export, fmt, why, server):
    """Brute-force subgroup lattice of a small GROUP."""

    def build():
        if server:
            if export:
                raise Failure(EXIT_PARSE, "--export-lattice writes a local file; drop --server")
            return _remote(server, "/oracle", {"group": group, "verify": verify})
        res = records.oracle_result(parse_group_id(group), verify=verify, export=export)
        return records.record("oracle", {"group": group}, res, ["oracle:subgroup-lattice"])

    _finish(build, fmt, why)


SELFTEST_CASES = [
    ("L(2,7)", "5", "3"), ("L(2,8)", "5", "3"), ("A(5)", "4", "3"), ("A(6)", "5", "4"),
    ("C(12)", "3", "3"), ("J1", "6", "4"), ("U(3,4)", "9", None), ("Sz(8)", "8", None),
]


@main.command()
@FORMAT
def selftest(fmt):
    """Quick end-to-end check of the engines against known values."""
    from . import primes as P
    from .oracle import oracle_report

    checks = []
    for text, l_exp, d_exp in SELFTEST_CASES:
        res, _ = records.report_result(parse_group_id(text))
        ok = res["l"] == l_exp and (d_exp is None or res["lambda"] == d_exp)
        checks.append({"check": f"report {text}", "ok": ok})
    t = time.perf_counter()
    ten = P.search("table5-row1", 2000)
    checks.append({"check": "table5-row1 below 2000",
                   "ok": ten == [13, 43, 67, 173, 283, 317, 653, 787, 907, 1867]})
    rep, _ = oracle_report(parse_group_id("A(5)"))
    checks.append({"check": "oracle A(5)", "ok": (rep.l, rep.lam) == (4, 3)})
    passed = all(c["ok"] for c in checks)
    res = {"passed": passed, "checks": checks, "seconds": f"{time.perf_counter() - t:.2f}"}
    _emit(records.record("selftest", {}, res, []), fmt, False)
    sys.exit(EXIT_OK if passed else 1)


if __name__ == "__main__":
    main()
