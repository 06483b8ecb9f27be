"""Fragment-by-fragment classification of a graph pair.

Each fragment has an exact decider built from the characterisation results:

    ML(.,tr)               co-spectrality
    ML(.,*,1)              equal walk counts (co-main)
    ML(.,tr,*,1)           both of the above
    ML(.,*,1,diag)         common equitable partition (fractional isomorphism)
    ML(.,tr,*,1,vprod)     co-spectral with a common equitable partition
    ML(.,tr,*,1,diag)      2WL-equivalent => Equivalent; not co-spectral+CEP => Distinguished;
                           co-spectral with a one-part CEP => Equivalent (compatibility is vacuous);
                           otherwise the bounded trace-identity search decides or reports Undecided
    full MATLANG           2WL equivalence

Every Distinguished verdict carries a sentence of the fragment whose exact
values on the two graphs differ.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ..errors import EigenvaluePairingFailure, NotDistinguishable, OrderMismatch
from ..lang import ast
from ..lang.ast import X, ConjTranspose, Diag, Mul, Ones
from ..lang.evaluate import evaluate
from ..lang.generate import ExprGenerator
from ..lang.library import cwalk, degree_count, laplacian_trace, triangle_paths, walk
from ..lang.sorts import FULL, Fragment, Sort, fragment_report, sort_map
from ..partitions import common_equitable_partition, wl2_report
from .invariants import cospectral, same_walks
from .specht import specht_semidecider, word_to_string
from .synth import eqpart_checking_sentences, stabcol_checking_sentences, synthesize_eqpart_exprs
from .witness import fractional_isomorphism_witness, orthogonal_partition_witness


class FragmentId(enum.Enum):
    MulTr = "mul-tr"
    MulConjOnes = "mul-conj-ones"
    MulTrConjOnes = "mul-tr-conj-ones"
    MulConjOnesDiag = "mul-conj-ones-diag"
    MulTrConjOnesVprod = "mul-tr-conj-ones-vprod"
    MulTrConjOnesDiag = "mul-tr-conj-ones-diag"
    FullMatlang = "full"

    @classmethod
    def from_name(cls, name: str) -> "FragmentId":
        for f in cls:
            if name in (f.value, f.name):
                return f
        raise ValueError(f"unknown fragment {name!r}")

    @property
    def fragment(self) -> Fragment:
        return FRAGMENTS[self]

    @property
    def label(self) -> str:
        return _LABELS[self]

    def __le__(self, other: "FragmentId") -> bool:
        return other in _UP[self]

    def __lt__(self, other: "FragmentId") -> bool:
        return self is not other and self <= other


FRAGMENTS = {
    FragmentId.MulTr: Fragment.of("tr", name="mul-tr"),
    FragmentId.MulConjOnes: Fragment.of("conj", "ones", name="mul-conj-ones"),
    FragmentId.MulTrConjOnes: Fragment.of("tr", "conj", "ones", name="mul-tr-conj-ones"),
    FragmentId.MulConjOnesDiag: Fragment.of("conj", "ones", "diag", name="mul-conj-ones-diag"),
    FragmentId.MulTrConjOnesVprod: Fragment.of("tr", "conj", "ones", "vprod", name="mul-tr-conj-ones-vprod"),
    FragmentId.MulTrConjOnesDiag: Fragment.of("tr", "conj", "ones", "diag", name="mul-tr-conj-ones-diag"),
    FragmentId.FullMatlang: FULL,
}

_LABELS = {
    FragmentId.MulTr: "ML(·,tr)",
    FragmentId.MulConjOnes: "ML(·,*,1)",
    FragmentId.MulTrConjOnes: "ML(·,tr,*,1)",
    FragmentId.MulConjOnesDiag: "ML(·,*,1,diag)",
    FragmentId.MulTrConjOnesVprod: "ML(·,tr,*,1,⊙v)",
    FragmentId.MulTrConjOnesDiag: "ML(·,tr,*,1,diag)",
    FragmentId.FullMatlang: "MATLANG",
}

# covering relation of the distinguishing-power order
_COVERS = {
    FragmentId.MulTr: [FragmentId.MulTrConjOnes],
    FragmentId.MulConjOnes: [FragmentId.MulTrConjOnes, FragmentId.MulConjOnesDiag],
    FragmentId.MulTrConjOnes: [FragmentId.MulTrConjOnesVprod],
    FragmentId.MulConjOnesDiag: [FragmentId.MulTrConjOnesVprod],
    FragmentId.MulTrConjOnesVprod: [FragmentId.MulTrConjOnesDiag],
    FragmentId.MulTrConjOnesDiag: [FragmentId.FullMatlang],
    FragmentId.FullMatlang: [],
}


def _upsets():
    up = {}
    for f in reversed(list(FragmentId)):
        s = {f}
        for g in _COVERS[f]:
            s |= up[g]
        up[f] = frozenset(s)
    return up


_UP = _upsets()


EQUIVALENT, DISTINGUISHED, UNDECIDED = "Equivalent", "Distinguished", "Undecided"


@dataclass
class Verdict:
    status: str
    reason: str = ""
    sentence: ast.Expr | None = None
    sentence_name: str | None = None
    values: tuple | None = None  # exact scalar values on (g, h)
    bound: int | None = None

    @property
    def label(self) -> str:
        if self.status == UNDECIDED:
            return f"Undecided({self.bound})"
        return self.status


@dataclass
class ClassifyConfig:
    word_bound: int = 6
    random_samples: int = 10_000
    max_word_length: int = 12
    random_sentences: int = 200
    sentence_depth: int = 5
    tol: float = 1e-8
    seed: int = 0
    witnesses: bool = True


@dataclass
class EquivalenceProfile:
    verdicts: dict
    facts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def __getitem__(self, f) -> Verdict:
        return self.verdicts[f if isinstance(f, FragmentId) else FragmentId.from_name(f)]

    def rows(self) -> dict:
        """fragment cli name -> status."""
        return {f.value: self.verdicts[f].status for f in FragmentId}

    def check_monotone(self) -> list:
        """Pairs (weaker, stronger) violating the order; empty when consistent."""
        bad = []
        for f in FragmentId:
            for g in FragmentId:
                if f < g and self.verdicts[g].status == EQUIVALENT and self.verdicts[f].status != EQUIVALENT:
                    bad.append((f, g))
        return bad


# --------------------------------------------------------------------------
# sentence search


def to_diag_style(e: ast.Expr) -> ast.Expr:
    """Rewrite pointwise vector products with diag: v .* w = diag(v) w."""
    sorts = sort_map(e)
    memo = {}
    for node in ast.iter_nodes(e):
        kids = [memo[c._id] for c in node.children]
        if node.kind == "VProd":
            a, b = kids
            s = sorts[node._id]
            if s is Sort.COL:
                memo[node._id] = Mul(Diag(a), b)
            elif s is Sort.ROW:
                memo[node._id] = ConjTranspose(Mul(Diag(ConjTranspose(a)), ConjTranspose(b)))
            else:
                memo[node._id] = Mul(a, b)
        else:
            memo[node._id] = ast.rebuild(node, kids) if node.kind != "Var" else node
    return memo[e._id]


class _SentenceSearch:
    """Shared state for the per-fragment search: cached exact values and lazily built libraries."""

    def __init__(self, g, h, config: ClassifyConfig, facts: dict):
        self.g, self.h, self.config, self.facts = g, h, config, facts
        self.values = {}
        self.tried = 0

    def value_pair(self, e):
        key = e._id
        if key not in self.values:
            self.tried += 1
            vg = evaluate(e, self.g, check=False).scalar_value()
            vh = evaluate(e, self.h, check=False).scalar_value()
            self.values[key] = (vg, vh)
        return self.values[key]

    def library(self):
        g, h = self.g, self.h
        n = g.n
        for k in range(1, n + 1):
            yield f"cwalk_{k}", cwalk(k)
        for k in range(0, 2 * n):
            yield f"walk_{k}", walk(k)
        maxdeg = int(max(g.degrees().max(initial=0), h.degrees().max(initial=0)))
        for style in ("diag", "vprod"):
            for d in range(maxdeg + 1):
                yield f"degree_count_{d}_{style}", degree_count(d, maxdeg, style)
        for k in range(1, n + 1):
            yield f"e_L_{k}", laplacian_trace(k)
        for style in ("diag", "vprod"):
            for who, gr in (("g", g), ("h", h)):
                for name, e in eqpart_checking_sentences(gr, style):
                    yield f"eqpart_{style}_{who}_{name}", e
        for k in range(1, n + 1):
            yield f"delta_paths_{k}", triangle_paths(k)
        yield from self.specht_sentences()
        for who, gr in (("g", g), ("h", h)):
            for name, e in stabcol_checking_sentences(gr):
                yield f"stabcol_{who}_{name}", e

    def specht_sentences(self):
        res = self.facts.get("specht")
        cep = self.facts.get("cep")
        if res is None or not res.distinguished or res.word is None or cep is None:
            return
        exprs = synthesize_eqpart_exprs(self.g, "diag", verify=False)
        # order the synthesized selectors by the shared colour index of the common partition
        vals = [evaluate(e, self.g, check=False) for e in exprs]
        pg = cep.g.partition
        order = []
        for i in range(pg.size):
            ind = pg.indicator(i)
            order.append(next(e for e, v in zip(exprs, vals) if v == ind))
        alphabet = [X, Mul(Ones(X), ConjTranspose(Ones(X)))] + [Diag(e) for e in order]
        word = res.word
        yield f"specht_word[{word_to_string(word)}]", ast.Trace(ast.product([alphabet[i] for i in word]))

    def random(self, fid: FragmentId):
        cfg = self.config
        rng = np.random.default_rng([cfg.seed, list(FragmentId).index(fid)])
        gen = ExprGenerator(fid.fragment, rng)
        for i in range(cfg.random_sentences):
            yield f"random_{i}", gen.sentence(cfg.sentence_depth)

    def find(self, fid: FragmentId):
        frag = fid.fragment
        for source in (self.library(), self.random(fid)):
            for name, e in source:
                if not fragment_report(e, frag).accepted:
                    continue
                vg, vh = self.value_pair(e)
                if vg != vh:
                    return name, e, (vg, vh)
        return None


# --------------------------------------------------------------------------
# deciders


def _facts(g, h, config: ClassifyConfig) -> dict:
    cep = common_equitable_partition(g, h)
    cosp = cospectral(g, h)
    facts = {
        "cospectral": cosp,
        "same_walks": same_walks(g, h),
        "cep": cep,
        "common_equitable_partition": cep is not None,
    }
    rep = wl2_report(g, h)
    facts["wl2"] = rep.equivalent
    facts["wl2_report"] = rep
    facts["specht"] = None
    if not rep.equivalent and cosp and cep is not None and len(cep.sizes) > 1:
        facts["specht"] = specht_semidecider(
            g, h, config.word_bound, config.random_samples, config.max_word_length, config.seed, cep=cep)
    return facts


def _decide(fid: FragmentId, facts: dict, config: ClassifyConfig) -> tuple:
    """(status, reason) from the exact deciders."""
    cosp, walks, cep, wl2 = facts["cospectral"], facts["same_walks"], facts["common_equitable_partition"], facts["wl2"]
    if fid is FragmentId.MulTr:
        return (EQUIVALENT if cosp else DISTINGUISHED), "cospectral"
    if fid is FragmentId.MulConjOnes:
        return (EQUIVALENT if walks else DISTINGUISHED), "same_walks"
    if fid is FragmentId.MulTrConjOnes:
        return (EQUIVALENT if cosp and walks else DISTINGUISHED), "cospectral and same_walks"
    if fid is FragmentId.MulConjOnesDiag:
        return (EQUIVALENT if cep else DISTINGUISHED), "common equitable partition"
    if fid is FragmentId.MulTrConjOnesVprod:
        return (EQUIVALENT if cosp and cep else DISTINGUISHED), "cospectral and common equitable partition"
    if fid is FragmentId.MulTrConjOnesDiag:
        if wl2:
            return EQUIVALENT, "2WL-equivalent"
        if not (cosp and cep):
            return DISTINGUISHED, "not cospectral with a common equitable partition"
        if len(facts["cep"].sizes) == 1:
            return EQUIVALENT, "cospectral regular graphs: the orthogonal witness is trivially compatible"
        res = facts["specht"]
        if res.distinguished:
            return DISTINGUISHED, f"trace identity fails ({res.reason})"
        return UNDECIDED, f"trace identities hold for all words up to length {res.word_bound} and {res.samples} random words"
    return (EQUIVALENT if wl2 else DISTINGUISHED), "2WL equivalence"


def _witnesses(g, h, facts, config) -> dict:
    out = {}
    if facts["cep"] is not None:
        out["fractional_isomorphism"] = fractional_isomorphism_witness(g, h)
        if facts["cospectral"]:
            try:
                out["orthogonal_partition"] = orthogonal_partition_witness(g, h, config.tol)
            except EigenvaluePairingFailure as exc:  # pragma: no cover - numerical trouble only
                out["orthogonal_partition_error"] = str(exc)
    return out


def classify(g, h, config: ClassifyConfig | None = None, fragments=None) -> EquivalenceProfile:
    """Verdicts for every fragment (or the requested ones plus everything they depend on)."""
    config = config or ClassifyConfig()
    if g.n != h.n:
        raise OrderMismatch(g.n, h.n)
    facts = _facts(g, h, config)
    search = _SentenceSearch(g, h, config, facts)
    verdicts = {}
    for fid in FragmentId:
        status, reason = _decide(fid, facts, config)
        v = Verdict(status, reason)
        if status == UNDECIDED:
            v.bound = config.word_bound
        verdicts[fid] = v
    _enforce_monotone(verdicts)
    wanted = set(FragmentId) if fragments is None else {FragmentId.from_name(f) if isinstance(f, str) else f for f in fragments}
    for fid in FragmentId:
        v = verdicts[fid]
        if v.status != DISTINGUISHED or fid not in wanted:
            continue
        hit = search.find(fid)
        if hit is None:
            hit = _borrow(fid, verdicts, search)
        if hit is None:
            raise AssertionError(f"no distinguishing sentence found at {fid.value}")
        v.sentence_name, v.sentence, v.values = hit
    facts["sentences_evaluated"] = search.tried
    wit = _witnesses(g, h, facts, config) if config.witnesses else {}
    return EquivalenceProfile(verdicts, facts, wit)


def _borrow(fid, verdicts, search):
    """Reuse a weaker fragment's sentence, rewritten into this fragment's operations."""
    for lower in FragmentId:
        v = verdicts[lower]
        if lower < fid and v.sentence is not None:
            e = to_diag_style(v.sentence) if "vprod" not in fid.fragment else v.sentence
            if fragment_report(e, fid.fragment).accepted:
                vals = search.value_pair(e)
                if vals[0] != vals[1]:
                    return v.sentence_name, e, vals
    return None


def _enforce_monotone(verdicts):
    """Distinguished at a weaker fragment forces Distinguished above it."""
    for f in FragmentId:
        if verdicts[f].status != DISTINGUISHED:
            continue
        for g in FragmentId:
            if f < g:
                if verdicts[g].status == EQUIVALENT:
                    raise AssertionError(f"deciders contradict the fragment order: {f.value} vs {g.value}")
                if verdicts[g].status == UNDECIDED:
                    verdicts[g] = Verdict(DISTINGUISHED, f"distinguished at weaker fragment {f.value}")


def distinguishing_sentence(g, h, f, config: ClassifyConfig | None = None):
    """A sentence of fragment f separating g and h, or None when the verdict is Undecided."""
    fid = FragmentId.from_name(f) if isinstance(f, str) else f
    prof = classify(g, h, config, fragments=[fid])
    v = prof[fid]
    if v.status == EQUIVALENT:
        raise NotDistinguishable(f"{fid.value}: graphs are equivalent ({v.reason})")
    return v.sentence
