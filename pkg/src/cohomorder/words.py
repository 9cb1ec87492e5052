"""Binary words under the prefix preorder, antichain families, and the encoding
of finite preorders into families.

Words are plain ``str`` over ``"0"``/``"1"``; the empty word is ``""``.
``v <=_W w`` means ``w`` is a prefix of ``v`` (longer words sit lower).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

Word = str


def check_word(w: str) -> Word:
    if not isinstance(w, str) or any(c not in "01" for c in w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def word_leq(v: Word, w: Word) -> bool:
    return v.startswith(w)


def shortlex_key(w: Word) -> tuple[int, str]:
    return (len(w), w)


def shortlex_cmp(v: Word, w: Word) -> int:
    """-1, 0 or 1: shorter words first, then lexicographic with 0 < 1."""
    a, b = shortlex_key(v), shortlex_key(w)
    return (a > b) - (a < b)


def words_up_to(depth: int) -> Iterator[Word]:
    """All words of length <= ``depth`` in shortlex order."""
    for k in range(depth + 1):
        for bits in product("01", repeat=k):
            yield "".join(bits)


@dataclass(frozen=True)
class AntichainFamily:
    words: tuple[Word, ...]

    def __init__(self, words: Iterable[Word]):
        ws = sorted({check_word(w) for w in words}, key=shortlex_key)
        for i, v in enumerate(ws):
            for w in ws[i + 1:]:
                if word_leq(v, w) or word_leq(w, v):
                    raise ValueError(f"not an antichain: {v!r} and {w!r} are comparable")
        object.__setattr__(self, "words", tuple(ws))

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def to_json_obj(self) -> dict:
        return {"words": list(self.words)}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "AntichainFamily":
        try:
            return cls(obj["words"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed family JSON: {exc}") from exc


def is_antichain(words: Iterable[Word]) -> bool:
    ws = list(words)
    return all(
        not word_leq(ws[i], ws[j]) for i in range(len(ws)) for j in range(len(ws)) if i != j
    ) and len(set(ws)) == len(ws)


def family_leq(a: AntichainFamily | Iterable[Word], b: AntichainFamily | Iterable[Word]) -> bool:
    bs = list(b)
    return all(any(word_leq(x, y) for y in bs) for x in a)


def witness_word(a: AntichainFamily, b: AntichainFamily) -> Word | None:
    """Shortlex-least word of ``a`` lying below no word of ``b`` (None if ``a <= b``)."""
    bs = list(b)
    for x in sorted(a, key=shortlex_key):
        if not any(word_leq(x, y) for y in bs):
            return x
    return None


@dataclass(frozen=True)
class FinitePreorder:
    """Finite preorder; ``leq`` holds the reflexive-transitive closure as index pairs."""

    elements: tuple[str, ...]
    leq: frozenset[tuple[int, int]]

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[Sequence[str]]) -> "FinitePreorder":
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise ValueError("duplicate element names")
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        rel = [[i == j for j in range(n)] for i in range(n)]
        for pair in pairs:
            if len(pair) != 2:
                raise ValueError(f"relation entry must be a pair: {pair!r}")
            x, y = pair
            if x not in idx or y not in idx:
                raise ValueError(f"unknown element in relation pair {pair!r}")
            rel[idx[x]][idx[y]] = True
        for k in range(n):
            for i in range(n):
                if rel[i][k]:
                    row_k = rel[k]
                    row_i = rel[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        leq = frozenset((i, j) for i in range(n) for j in range(n) if rel[i][j])
        return cls(elements, leq)

    def __len__(self):
        return len(self.elements)

    def le(self, x: int | str, y: int | str) -> bool:
        i = self.elements.index(x) if isinstance(x, str) else x
        j = self.elements.index(y) if isinstance(y, str) else y
        return (i, j) in self.leq

    def down_set(self, i: int) -> list[int]:
        return [j for j in range(len(self.elements)) if (j, i) in self.leq]

    def to_json_obj(self) -> dict:
        pairs = sorted(p for p in self.leq if p[0] != p[1])
        return {
            "elements": list(self.elements),
            "leq": [[self.elements[i], self.elements[j]] for i, j in pairs],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "FinitePreorder":
        if not isinstance(obj, dict) or "elements" not in obj:
            raise ValueError("preorder JSON needs an 'elements' list")
        elements = obj["elements"]
        if not isinstance(elements, list):
            raise ValueError("'elements' must be a list")
        return cls.from_relation(elements, obj.get("leq", []))

    @classmethod
    def from_json(cls, text: str) -> "FinitePreorder":
        return cls.from_json_obj(json.loads(text))


def binary_code(i: int, width: int) -> Word:
    return format(i, "b").zfill(width) if width else ""


def encode_finite_preorder(p: FinitePreorder, width: int | None = None) -> dict[str, AntichainFamily]:
    """Map each element to the codes of its down-set.

    Element ``i`` is coded by ``bin(i)`` padded to ``width`` bits (default: the
    element count). Distinct equal-length words are prefix-incomparable, so
    every image is an antichain and ``x <= y`` iff ``down(x) ⊆ down(y)`` iff
    ``enc(x) <=_W enc(y)``.
    """
    n = len(p)
    if width is None:
        width = n
    if n and (1 << width) < n:
        raise ValueError(f"width {width} cannot code {n} elements")
    return {
        p.elements[i]: AntichainFamily(binary_code(j, width) for j in p.down_set(i))
        for i in range(n)
    }


def inclusion_order(k: int) -> FinitePreorder:
    """Subsets of ``{1..k}`` under inclusion, named like ``"{}"``, ``"{1,3}"``."""
    subsets = []
    for mask in range(1 << k):
        subsets.append(frozenset(i + 1 for i in range(k) if mask >> i & 1))
    subsets.sort(key=lambda s: (len(s), sorted(s)))
    names = ["{" + ",".join(str(x) for x in sorted(s)) + "}" for s in subsets]
    pairs = [
        (names[i], names[j]) for i in range(len(subsets)) for j in range(len(subsets)) if subsets[i] <= subsets[j]
    ]
    return FinitePreorder.from_relation(names, pairs)


def chain(n: int) -> FinitePreorder:
    names = [f"c{i}" for i in range(n)]
    return FinitePreorder.from_relation(names, [(names[i], names[i + 1]) for i in range(n - 1)])
