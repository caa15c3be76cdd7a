"""Length-lex reducing string rewriting systems.

Words are tuples of letter indices into the alphabet.  Normalization repeatedly
rewrites the redex that ends first (leftmost-innermost); ties between rules go
to the first rule in declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NonTerminationError, ValidationError

Word = tuple[int, ...]

STEP_BUDGET = 10**6


def shortlex_less(u: Word, v: Word) -> bool:
    return (len(u), u) < (len(v), v)


def parse_word(text, alphabet: Sequence[str]) -> Word:
    """Turn a string or a list of labels into a word of letter indices.

    Strings are tokenized greedily (longest label first), so multi-character
    labels work as long as the tokenization is unambiguous.  ``""`` and ``"1"``
    (when "1" is not itself a letter) denote the empty word.
    """
    index = {a: i for i, a in enumerate(alphabet)}
    if isinstance(text, (list, tuple)):
        try:
            return tuple(index[a] for a in text)
        except KeyError as exc:
            raise ValidationError(f"unknown letter {exc.args[0]!r}") from None
    if text == "" or (text == "1" and "1" not in index):
        return ()
    labels = sorted(alphabet, key=len, reverse=True)
    out = []
    pos = 0
    while pos < len(text):
        for a in labels:
            if a and text.startswith(a, pos):
                out.append(index[a])
                pos += len(a)
                break
        else:
            raise ValidationError(f"cannot tokenize {text!r} at position {pos}")
    return tuple(out)


def format_word(word: Word, alphabet: Sequence[str], empty: str = "1") -> str:
    if not word:
        return empty
    return "".join(alphabet[i] for i in word)


@dataclass(frozen=True)
class RewriteSystem:
    alphabet: tuple[str, ...]
    rules: tuple[tuple[Word, Word], ...]
    step_budget: int = STEP_BUDGET

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValidationError("alphabet labels must be distinct")
        for lhs, rhs in self.rules:
            if not lhs:
                raise ValidationError("rule with empty left-hand side")
            for w in (lhs, rhs):
                if any(not 0 <= i < len(self.alphabet) for i in w):
                    raise ValidationError("rule uses a letter outside the alphabet")
            if not shortlex_less(rhs, lhs):
                raise ValidationError(
                    f"rule {self.show(lhs)} -> {self.show(rhs)} is not length-lex reducing",
                    witness=(lhs, rhs),
                )

    @classmethod
    def from_strings(cls, alphabet: Sequence[str], rules, step_budget: int = STEP_BUDGET):
        alphabet = tuple(alphabet)
        parsed = tuple((parse_word(l, alphabet), parse_word(r, alphabet)) for l, r in rules)
        return cls(alphabet, parsed, step_budget)

    def show(self, word: Word) -> str:
        return format_word(word, self.alphabet)

    def _find_redex(self, word: Word):
        for end in range(1, len(word) + 1):
            for lhs, rhs in self.rules:
                start = end - len(lhs)
                if start >= 0 and word[start:end] == lhs:
                    return start, end, rhs
        return None

    def normalize(self, word: Sequence[int]) -> Word:
        word = tuple(word)
        for _ in range(self.step_budget):
            redex = self._find_redex(word)
            if redex is None:
                return word
            start, end, rhs = redex
            word = word[:start] + rhs + word[end:]
        raise NonTerminationError(f"no normal form within {self.step_budget} steps")

    def is_normal(self, word: Word) -> bool:
        return self._find_redex(word) is None

    def reversed(self) -> "RewriteSystem":
        """Rules with every word reversed, re-oriented to stay length-lex reducing."""
        rules = []
        for lhs, rhs in self.rules:
            l, r = lhs[::-1], rhs[::-1]
            if shortlex_less(l, r):
                l, r = r, l
            if l != r:
                rules.append((l, r))
        return RewriteSystem(self.alphabet, tuple(rules), self.step_budget)

    def critical_pairs(self) -> list[tuple[Word, Word, Word]]:
        """Overlap and inclusion ambiguities as ``(overlap word, reduct1, reduct2)``."""
        pairs = []
        for i, (l1, r1) in enumerate(self.rules):
            for j, (l2, r2) in enumerate(self.rules):
                # proper overlap: suffix of l1 equals prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        w = l1 + l2[k:]
                        pairs.append((w, r1 + l2[k:], l1[:-k] + r2))
                # l2 occurs strictly inside l1
                if i != j and len(l2) <= len(l1):
                    for s in range(len(l1) - len(l2) + 1):
                        if l1[s:s + len(l2)] == l2:
                            pairs.append((l1, r1, l1[:s] + r2 + l1[s + len(l2):]))
        return pairs

    def confluence_violations(self) -> list[tuple[Word, Word, Word]]:
        """Critical pairs whose two reducts have different normal forms."""
        bad = []
        for w, a, b in self.critical_pairs():
            na, nb = self.normalize(a), self.normalize(b)
            if na != nb:
                bad.append((w, na, nb))
        return bad
