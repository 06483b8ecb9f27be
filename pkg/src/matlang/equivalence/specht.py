"""Bounded search for trace-identity violations over the alphabet {A, J, diag(1_Vi)}.

With matched coarsest equitable partitions V of G and W of H, G and H are
ML(·,tr,*,1,diag)-equivalent exactly when tr(w(A_G, J, D_1..D_l)) equals
tr(w(A_H, J, D'_1..D'_l)) for every word w.  We check all words up to a
length bound and a sample of longer random words; a mismatch is a
distinguishing word, otherwise the verdict is undecided up to the bound.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import OrderMismatch
from ..partitions import common_equitable_partition


@dataclass
class SpechtResult:
    distinguished: bool
    word: tuple | None  # letters: 0 = A, 1 = J, 2 + i = diag(1_Vi)
    values: tuple | None
    word_bound: int
    samples: int
    words_checked: int
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "Distinguished" if self.distinguished else f"EquivalentUpToBound({self.word_bound})"


def letter_name(i: int) -> str:
    return {0: "A", 1: "J"}.get(i, f"D{i - 2}")


def _alphabet(adj, part):
    n = adj.shape[0]
    mats = [np.asarray(adj, dtype=np.int64), np.ones((n, n), dtype=np.int64)]
    for c in range(part.size):
        d = np.zeros((n, n), dtype=np.int64)
        idx = [v for v in range(n) if part.colours[v] == c]
        d[idx, idx] = 1
        mats.append(d)
    return np.stack(mats)


def _redundant(prev: int, nxt: int) -> bool:
    """Adjacent letter pairs whose product is zero or reduces to a shorter word."""
    if prev >= 2 and nxt >= 2:
        return True  # D_i D_j = 0 for i != j and D_i D_i = D_i
    return prev == 1 and nxt == 1  # J J = n J


def _safe_dtype(n: int, length: int):
    # entries of a product of `length` letters are bounded by n^(length - 1) * n
    return np.int64 if n ** length < 2 ** 62 else object


def _enumerate(la, lb, bound):
    """Iterative deepening over reduced words, so the shortest mismatching word is found first.

    Returns (word, (tr_a, tr_b), words checked) or (None, None, words checked).
    """
    n = la.shape[1]
    p = la.shape[0]
    checked = 0
    dtype = _safe_dtype(n, bound)
    la = la.astype(dtype)
    lb = lb.astype(dtype)
    for length in range(1, bound + 1):
        stack = [((i,), la[i], lb[i]) for i in reversed(range(p))]
        while stack:
            word, pa, pb = stack.pop()
            if len(word) == length:
                checked += 1
                ta, tb = np.trace(pa), np.trace(pb)
                if ta != tb:
                    return word, (int(ta), int(tb)), checked
                continue
            nxt = [i for i in range(p) if not _redundant(word[-1], i)]
            if dtype is np.int64:
                ea, eb = np.matmul(pa, la[nxt]), np.matmul(pb, lb[nxt])
            else:
                ea, eb = [pa.dot(la[i]) for i in nxt], [pb.dot(lb[i]) for i in nxt]
            for j in reversed(range(len(nxt))):
                stack.append((word + (nxt[j],), ea[j], eb[j]))
    return None, None, checked


def _random_words(la, lb, rng, samples, min_len, max_len):
    n, p = la.shape[1], la.shape[0]
    dtype = _safe_dtype(n, max_len)
    la = la.astype(dtype)
    lb = lb.astype(dtype)
    for _ in range(samples):
        length = int(rng.integers(min_len, max_len + 1))
        word = [int(rng.integers(p))]
        while len(word) < length:
            c = int(rng.integers(p))
            if not _redundant(word[-1], c):
                word.append(c)
        pa, pb = la[word[0]], lb[word[0]]
        for c in word[1:]:
            pa = pa.dot(la[c])
            pb = pb.dot(lb[c])
        ta, tb = np.trace(pa), np.trace(pb)
        if ta != tb:
            return tuple(word), (int(ta), int(tb))
    return None, None


def specht_semidecider(g, h, word_bound: int = 6, samples: int = 10_000, max_length: int = 12, seed: int = 0,
                       cep=None) -> SpechtResult:
    if g.n != h.n:
        raise OrderMismatch(g.n, h.n)
    if cep is None:
        cep = common_equitable_partition(g, h)
    if cep is None:
        return SpechtResult(True, None, None, word_bound, samples, 0, "no common equitable partition")
    la = _alphabet(g.adjacency, cep.g.partition)
    lb = _alphabet(h.adjacency, cep.h.partition)
    word, vals, checked = _enumerate(la, lb, word_bound)
    if word is not None:
        return SpechtResult(True, word, vals, word_bound, samples, checked, "exhaustive")
    rng = np.random.default_rng(seed)
    if samples > 0 and max_length > word_bound:
        word, vals = _random_words(la, lb, rng, samples, word_bound + 1, max_length)
        if word is not None:
            return SpechtResult(True, word, vals, word_bound, samples, checked + samples, "random")
    return SpechtResult(False, None, None, word_bound, samples, checked + samples)


def word_to_string(word) -> str:
    return " ".join(letter_name(i) for i in word)
