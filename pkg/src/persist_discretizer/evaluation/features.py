from __future__ import annotations

import numpy as np
import numpy.typing as npt

from ..core.types import SymbolSequence


def _l1(counts: npt.NDArray[np.int64]) -> npt.NDArray[np.float64]:
    total = counts.sum()
    if total == 0:
        return np.zeros(counts.shape[0], dtype=float)
    return counts / total


def symbol_features(seq: SymbolSequence) -> npt.NDArray[np.float64]:
    """Unigram histogram (length k) followed by the bigram histogram (length k*k).

    Bigram `(a, b)` sits at index `a*k + b`; both parts are L1-normalized.
    """

    k = seq.alphabet_size
    symbols = seq.array
    unigram = np.bincount(symbols, minlength=k)
    bigram = np.bincount(symbols[:-1] * k + symbols[1:], minlength=k * k)
    return np.concatenate((_l1(unigram), _l1(bigram)))


def feature_matrix(seqs: list[SymbolSequence]) -> npt.NDArray[np.float64]:
    return np.vstack([symbol_features(seq) for seq in seqs])
