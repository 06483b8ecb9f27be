"""The example-pair corpus: cached graphs, their defining predicates and expected verdicts.

Pairs whose adjacency data is printed or given by a standard construction are
built directly.  The others are stored as graph6 strings produced by the
recovery searches in :mod:`.search`; loading re-checks every stored pair
against its exact predicates, and ``recover=True`` reruns the searches and
requires the result to be isomorphic to the stored pair.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import CorpusMismatch, FormatError, RecoveryFailure
from ..equivalence.invariants import (complement, cospectral, cospectral_comain, cospectral_with_complements,
                                      laplacian_invariants, same_walks, spanning_trees)
from ..graph import Graph
from ..linalg import ExactMatrix, mat_mul
from ..partitions import common_equitable_partition, wl2_equivalent
from . import search
from .families import disjoint_union, family_graph, srg_parameters
from .graph6 import parse_graph6
from .iso import are_isomorphic, nonisomorphism_reason

DEFAULT_PATH = "paper_corpus.json"


@dataclass
class CorpusEntry:
    name: str
    g: Graph
    h: Graph
    origin: str  # printed | construction | search
    expected: dict
    oracle: str
    values: dict = field(default_factory=dict)
    search: str | None = None

    @property
    def stand_in(self) -> bool:
        """Search results stand in for pairs shown only as figures."""
        return self.origin == "search"


def _load_json(path=None) -> dict:
    if path is None:
        text = resources.files("matlang.corpus").joinpath(DEFAULT_PATH).read_text()
    else:
        text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusMismatch("<file>", f"corpus file is not valid JSON: {exc}") from None


def printed_matrices(path=None) -> dict:
    """The printed conjugacy example as exact matrices: A_G3, A_H3 and Q."""
    data = _load_json(path)["printed"]["conjugacy_example"]
    return {k: ExactMatrix([[Fraction(x) for x in row] for row in v]) for k, v in data.items()}


def _build(desc: dict, data: dict, built: dict) -> Graph:
    name = desc.get("name")
    if "graph6" in desc:
        g = parse_graph6(desc["graph6"], name)
    elif "spec" in desc:
        g = family_graph(desc["spec"])
    elif "adjacency" in desc:
        a = data["printed"]["conjugacy_example"][desc["adjacency"]]
        g = Graph.from_adjacency(np.array(a, dtype=np.int64))
    elif "union" in desc:
        parts = [built[p] for p in desc["union"]]
        g = parts[0]
        for p in parts[1:]:
            g = disjoint_union(g, p)
    else:
        raise CorpusMismatch(name or "?", f"graph description {desc!r} has no known form")
    g.name = name
    return g


def load_paper_corpus(path=None, verify: bool = True) -> list:
    """Corpus entries in file order; ``verify`` checks every entry's defining predicates."""
    data = _load_json(path)
    built = {}
    entries = []
    for e in data["entries"]:
        try:
            g = _build(e["g"], data, built)
            h = _build(e["h"], data, built)
        except (ValueError, KeyError, FormatError) as exc:
            raise CorpusMismatch(e.get("name", "?"), f"cannot build graphs: {exc}") from None
        built[g.name], built[h.name] = g, h
        entry = CorpusEntry(e["name"], g, h, e["origin"], dict(e["expected"]), e["oracle"],
                            {k: tuple(v) for k, v in e.get("values", {}).items()}, e.get("search"))
        entries.append(entry)
    if verify:
        printed = data["printed"]["conjugacy_example"]
        for entry in entries:
            failed = [name for name, ok in oracle_checks(entry, printed) if not ok]
            if failed:
                raise CorpusMismatch(entry.name, "failed checks: " + ", ".join(failed))
    return entries


def corpus_graphs(path=None) -> dict:
    """Lower-case graph names (g1, h1, ..., rook, shrikhande) to graphs."""
    out = {}
    for entry in load_paper_corpus(path, verify=False):
        for g in (entry.g, entry.h):
            out[g.name.lower()] = g
    return out


# --------------------------------------------------------------------------
# defining predicates


def _isolated(g: Graph) -> bool:
    return bool((g.degrees() == 0).any())


def _printed_checks(entry, printed):
    a = ExactMatrix([[Fraction(x) for x in r] for r in printed["A_G3"]])
    b = ExactMatrix([[Fraction(x) for x in r] for r in printed["A_H3"]])
    q = ExactMatrix([[Fraction(x) for x in r] for r in printed["Q"]])
    ones = ExactMatrix.ones(a.rows, 1)
    return [
        ("G3 is the printed matrix", entry.g.exact_adjacency() == a),
        ("printed Q conjugates", mat_mul(a, q) == mat_mul(q, b)),
        ("printed Q doubly quasi-stochastic", mat_mul(q, ones) == ones and mat_mul(q.transpose(), ones) == ones),
        ("H3 is 2C3", entry.h.n == 6 and entry.h.m == 6 and all(d == 2 for d in entry.h.degrees())
         and not _connected(entry.h)),
        ("same walks", same_walks(entry.g, entry.h)),
        ("common equitable partition", common_equitable_partition(entry.g, entry.h) is not None),
        ("not cospectral", not cospectral(entry.g, entry.h)),
    ]


def _connected(g: Graph) -> bool:
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in g.neighbors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def oracle_checks(entry: CorpusEntry, printed: dict) -> list:
    """(check name, passed) pairs for the entry's defining predicates."""
    g, h = entry.g, entry.h
    checks = [("same order", g.n == h.n)]
    if g.n != h.n:
        return checks
    name = entry.name
    if name == "G1/H1":
        checks += [("cospectral", cospectral(g, h)), ("order 5", g.n == 5),
                   ("G1 has an isolated vertex", _isolated(g)), ("not isomorphic", not are_isomorphic(g, h))]
    elif name == "G3/H3":
        checks += _printed_checks(entry, printed)
    elif name == "G4/H4":
        comain = cospectral_comain(g, h)
        checks += [("cospectral and co-main", comain),
                   ("complements cospectral (second route)", cospectral_with_complements(g, h) == comain),
                   ("isolated vertex in G4 only", _isolated(g) and not _isolated(h)),
                   ("not isomorphic", not are_isomorphic(g, h))]
    elif name == "G2/H2":
        checks += [("same walks", same_walks(g, h)), ("not cospectral", not cospectral(g, h)),
                   ("no common equitable partition", common_equitable_partition(g, h) is None),
                   ("isolated vertex in G2 only", _isolated(g) and not _isolated(h))]
    elif name == "G5/H5":
        checks += [("cospectral", cospectral(g, h)), ("regular", g.is_regular() and h.is_regular()),
                   ("2WL distinguishes", not wl2_equivalent(g, h))]
    elif name == "G6/H6":
        checks += [("cospectral", cospectral(g, h)),
                   ("common equitable partition", common_equitable_partition(g, h) is not None),
                   ("spanning trees differ", spanning_trees(g) != spanning_trees(h))]
    elif name == "rook/Shrikhande":
        checks += [("srg(16,6,2,2)", srg_parameters(g) == (16, 6, 2, 2) and srg_parameters(h) == (16, 6, 2, 2)),
                   ("not isomorphic", nonisomorphism_reason(g, h) is not None or not are_isomorphic(g, h)),
                   ("2WL-equivalent", wl2_equivalent(g, h)),
                   ("complements cospectral", cospectral(complement(g), complement(h)))]
    else:
        checks.append(("known entry", False))
    return checks


def entry_values(entry: CorpusEntry) -> dict:
    """Recomputed numeric values for the keys stored with the entry."""
    from ..lang.evaluate import evaluate_scalar
    from ..lang.library import cwalk, three_degr, walk

    g, h = entry.g, entry.h
    out = {}
    for key in entry.values:
        if key == "walk_2":
            out[key] = tuple(int(evaluate_scalar(walk(2), x).re) for x in (g, h))
        elif key == "cwalk_3":
            out[key] = tuple(int(evaluate_scalar(cwalk(3), x).re) for x in (g, h))
        elif key == "three_degr":
            out[key] = tuple(int(evaluate_scalar(three_degr(), x).re) for x in (g, h))
        elif key == "delta_paths_2":
            out[key] = tuple(search.triangle_paths_value(x, 2) for x in (g, h))
        elif key == "spanning_trees":
            out[key] = tuple(spanning_trees(x) for x in (g, h))
        elif key == "e_L_4":
            out[key] = tuple(laplacian_invariants(x)[0][3] for x in (g, h))
    return out


# --------------------------------------------------------------------------
# recovery and full verification

_SEARCHES = {
    "cospectral_complements": search.search_cospectral_complements,
    "cospectral_regular": search.search_cospectral_regular,
    "fractional_cospectral": search.search_fractional_cospectral,
}


def recover_entry(entry: CorpusEntry, budget: int | None = None, seed: int = 0):
    """Rerun the entry's search; the result must match the stored pair up to isomorphism."""
    fn = _SEARCHES[entry.search]
    kwargs = {} if entry.search == "cospectral_complements" else {"seed": seed}
    found = fn(budget=budget, **kwargs)
    if found is None:
        raise RecoveryFailure(entry.name, f"search {entry.search} found no pair within budget {budget}")
    g, h = found
    if not (are_isomorphic(g, entry.g) and are_isomorphic(h, entry.h)):
        raise CorpusMismatch(entry.name, "search result is not isomorphic to the stored pair")
    return g, h


@dataclass
class EntryReport:
    name: str
    origin: str
    checks_ok: bool
    values_ok: bool
    rows_ok: bool
    recovered: str  # "yes", "skipped", "failed", "n/a"
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.checks_ok and self.values_ok and self.rows_ok and self.recovered in ("yes", "skipped", "n/a")


def verify_corpus(path=None, recover: bool = False, budget: int | None = None, config=None,
                  strict: bool = False) -> list:
    """Check predicates, stored values and expected verdict rows of every entry.

    Returns one EntryReport per entry.  With ``strict`` the first recovery
    failure raises RecoveryFailure and the first other failure raises
    CorpusMismatch.
    """
    from ..equivalence.classify import ClassifyConfig, classify

    config = config or ClassifyConfig()
    data = _load_json(path)
    entries = load_paper_corpus(path, verify=False)
    printed = data["printed"]["conjugacy_example"]
    reports = []
    for entry in entries:
        t0 = time.perf_counter()
        failed = [n for n, ok in oracle_checks(entry, printed) if not ok]
        vals = entry_values(entry)
        bad_vals = [k for k in entry.values if vals.get(k) != entry.values[k]]
        rows = classify(entry.g, entry.h, config).rows()
        bad_rows = [f for f in entry.expected if rows.get(f) != entry.expected[f]]
        detail = []
        if failed:
            detail.append("failed checks: " + ", ".join(failed))
        if bad_vals:
            detail.append("values differ: " + ", ".join(f"{k}={vals.get(k)}" for k in bad_vals))
        if bad_rows:
            detail.append("rows differ: " + ", ".join(f"{f}={rows.get(f)}" for f in bad_rows))
        recovered = "n/a"
        if entry.search is not None:
            recovered = "skipped"
            if recover:
                try:
                    recover_entry(entry, budget)
                    recovered = "yes"
                except (RecoveryFailure, CorpusMismatch) as exc:
                    recovered = "failed" if isinstance(exc, RecoveryFailure) else "mismatch"
                    detail.append(str(exc))
        reports.append(EntryReport(entry.name, entry.origin, not failed, not bad_vals, not bad_rows, recovered,
                                   "; ".join(detail), time.perf_counter() - t0))
    if strict:
        for rep in reports:
            if rep.recovered == "failed":
                raise RecoveryFailure(rep.name, rep.detail)
        for rep in reports:
            if not rep.ok:
                raise CorpusMismatch(rep.name, rep.detail)
    return reports
