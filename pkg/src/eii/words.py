"""Symbol words: fixed-length sequences of field symbols with an erasure mask.

Text format (used by the CLI): whitespace-separated integers 0..q-1, with
``?`` marking an erased position.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SymbolWord:
    symbols: tuple
    erased: tuple

    def __post_init__(self):
        if len(self.symbols) != len(self.erased):
            raise ValueError("erasure mask length does not match symbol count")
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "erased", tuple(bool(e) for e in self.erased))

    def __len__(self):
        return len(self.symbols)

    @property
    def erasure_count(self) -> int:
        return sum(self.erased)

    @classmethod
    def known(cls, symbols) -> "SymbolWord":
        symbols = tuple(symbols)
        return cls(symbols, (False,) * len(symbols))

    def with_erasures(self, positions) -> "SymbolWord":
        """Copy with the given zero-based positions marked erased (additionally)."""
        erased = list(self.erased)
        for p in positions:
            if not 0 <= p < len(erased):
                raise ValueError(f"erasure index {p} out of range")
            erased[p] = True
        return SymbolWord(self.symbols, tuple(erased))


def word_to_text(word: SymbolWord) -> str:
    return " ".join("?" if e else str(s) for s, e in zip(word.symbols, word.erased))


def word_from_text(text: str) -> SymbolWord:
    symbols, erased = [], []
    for token in text.split():
        if token == "?":
            symbols.append(0)
            erased.append(True)
        else:
            symbols.append(int(token))
            erased.append(False)
    return SymbolWord(tuple(symbols), tuple(erased))
