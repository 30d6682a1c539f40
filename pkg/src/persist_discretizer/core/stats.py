from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .types import SymbolSequence, SymbolStats


@dataclass(frozen=True, slots=True)
class TransitionCounts:
    """Per-symbol occurrence bookkeeping that can be pooled across series.

    `nonterminal[s]` counts occurrences of `s` that have a successor within the same
    series; `self_pairs[s]` counts those whose successor is `s` again.
    """

    counts: npt.NDArray[np.int64]
    nonterminal: npt.NDArray[np.int64]
    self_pairs: npt.NDArray[np.int64]

    @property
    def alphabet_size(self) -> int:
        return int(self.counts.shape[0])

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def __add__(self, other: TransitionCounts) -> TransitionCounts:
        if other.alphabet_size != self.alphabet_size:
            raise ValueError(
                f"cannot pool counts over alphabets {self.alphabet_size} and {other.alphabet_size}"
            )
        return TransitionCounts(
            counts=self.counts + other.counts,
            nonterminal=self.nonterminal + other.nonterminal,
            self_pairs=self.self_pairs + other.self_pairs,
        )

    def probabilities(self) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
        """Return `(p_appear, p_repeat)`; undefined repetition probabilities are NaN."""

        p_appear = self.counts / self.total
        p_repeat = np.full(self.alphabet_size, np.nan)
        defined = self.nonterminal > 0
        p_repeat[defined] = self.self_pairs[defined] / self.nonterminal[defined]
        return p_appear, p_repeat

    def to_stats(self) -> list[SymbolStats]:
        p_appear, p_repeat = self.probabilities()
        return [
            SymbolStats(
                symbol=symbol,
                p_appear=float(p_appear[symbol]),
                p_repeat=None if np.isnan(p_repeat[symbol]) else float(p_repeat[symbol]),
                count=int(self.counts[symbol]),
                nonterminal=int(self.nonterminal[symbol]),
            )
            for symbol in range(self.alphabet_size)
        ]


def count_transitions(symbols: npt.ArrayLike, alphabet_size: int) -> TransitionCounts:
    array = np.asarray(symbols, dtype=np.int64)
    if array.size == 0:
        raise ValueError("cannot count transitions of an empty sequence")
    head = array[:-1]
    repeats = head[head == array[1:]]
    return TransitionCounts(
        counts=np.bincount(array, minlength=alphabet_size),
        nonterminal=np.bincount(head, minlength=alphabet_size),
        self_pairs=np.bincount(repeats, minlength=alphabet_size),
    )


def estimate_stats(seq: SymbolSequence) -> list[SymbolStats]:
    """Per-symbol P(s) and P_r(s) for one sequence, one entry per alphabet symbol."""

    return count_transitions(seq.array, seq.alphabet_size).to_stats()


def pooled_stats(seqs: Iterable[SymbolSequence]) -> list[SymbolStats]:
    """Statistics pooled over several sequences; no transition spans two sequences."""

    pooled: TransitionCounts | None = None
    for seq in seqs:
        counts = count_transitions(seq.array, seq.alphabet_size)
        pooled = counts if pooled is None else pooled + counts
    if pooled is None:
        raise ValueError("cannot pool statistics over zero sequences")
    return pooled.to_stats()
