"""
Word Core
Words over indexed letters, letter statistics, Green-Rees prefixes and suffixes, blocks and occurrences
"""

import re
from collections import Counter
from enum import Enum
from functools import lru_cache
from itertools import groupby, product
from typing import (
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from errors import ArgumentError, DomainError, LetterLookupError, WordParseError

# A letter is a name such as "x", "y1" or "z12"; a word is an immutable tuple of letters.
Letter = str
Word = Tuple[Letter, ...]

EMPTY: Word = ()

LETTER_PATTERN = re.compile(r"[a-z][0-9]*")
IDENTITY_SEPARATORS = ("~", "≈")


def letter(name: str) -> Letter:
    """Validate a letter name"""
    if not isinstance(name, str) or LETTER_PATTERN.fullmatch(name) is None:
        raise WordParseError(f"invalid letter name {name!r}")
    return name


# =============================================================================
# Parsing and formatting
# =============================================================================


def parse_word(text: str, offset: int = 0) -> Word:
    """
    Parse a word such as "xtx", "x y1^2 y2^2 x" or "1" (the empty word).

    Tokens are read greedily: a lowercase letter, the digits of its name,
    then an optional ^k exponent. Columns in errors are 1-based and shifted
    by offset when the word is part of a longer text.
    """
    if text.strip() == "1":
        return EMPTY
    if not text.strip():
        raise WordParseError("empty text, write the empty word as 1", column=offset + 1)

    letters: List[Letter] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if not ("a" <= ch <= "z"):
            raise WordParseError(f"unexpected character {ch!r}", column=offset + i + 1)

        j = i + 1
        while j < n and "0" <= text[j] <= "9":
            j += 1
        name = text[i:j]
        count = 1

        if j < n and text[j] == "^":
            k = j + 1
            while k < n and "0" <= text[k] <= "9":
                k += 1
            if k == j + 1:
                raise WordParseError("missing exponent after '^'", column=offset + j + 1)
            count = int(text[j + 1 : k])
            if count == 0:
                raise WordParseError("zero exponent", column=offset + j + 2)
            j = k

        letters.extend([name] * count)
        i = j

    return tuple(letters)


def format_word(w: Sequence[Letter]) -> str:
    """Inverse of parse_word with ^k compression of maximal runs"""
    if not w:
        return "1"
    tokens = []
    for name, run in groupby(w):
        k = sum(1 for _ in run)
        tokens.append(name if k == 1 else f"{name}^{k}")
    separator = "" if all(len(x) == 1 for x in w) else " "
    return separator.join(tokens)


class Identity(NamedTuple):
    """A word identity lhs ≈ rhs"""

    lhs: Word
    rhs: Word

    def reversed(self) -> "Identity":
        return Identity(reverse(self.lhs), reverse(self.rhs))

    def swapped(self) -> "Identity":
        return Identity(self.rhs, self.lhs)

    @property
    def is_trivial(self) -> bool:
        return self.lhs == self.rhs

    def letters(self) -> Tuple[Letter, ...]:
        """Letters of both sides, sorted by name"""
        return tuple(sorted(set(self.lhs) | set(self.rhs)))

    def __str__(self) -> str:
        return format_identity(self)


def parse_identity(text: str) -> Identity:
    """Parse "u ~ v" (the separator may also be ≈)"""
    positions = [i for i, ch in enumerate(text) if ch in IDENTITY_SEPARATORS]
    if len(positions) != 1:
        column = positions[1] + 1 if len(positions) > 1 else len(text) + 1
        raise WordParseError("an identity needs exactly one '~'", column=column)
    cut = positions[0]
    return Identity(
        parse_word(text[:cut]),
        parse_word(text[cut + 1 :], offset=cut + 1),
    )


def format_identity(identity: Identity) -> str:
    return f"{format_word(identity.lhs)} ~ {format_word(identity.rhs)}"


# =============================================================================
# Letter statistics
# =============================================================================


def content(w: Sequence[Letter]) -> FrozenSet[Letter]:
    return frozenset(w)


def simple_letters(w: Sequence[Letter]) -> FrozenSet[Letter]:
    return frozenset(x for x, k in Counter(w).items() if k == 1)


def multiple_letters(w: Sequence[Letter]) -> FrozenSet[Letter]:
    return frozenset(x for x, k in Counter(w).items() if k > 1)


def ini(w: Word) -> Word:
    """First occurrences of each letter, in order"""
    return tuple(dict.fromkeys(w))


def fin(w: Word) -> Word:
    """Last occurrences of each letter, in order"""
    return tuple(reversed(tuple(dict.fromkeys(reversed(w)))))


def ell(w: Word) -> Word:
    """Longest prefix missing exactly one letter of w"""
    firsts = ini(w)
    if not firsts:
        raise DomainError("ell is undefined on the empty word")
    return w[: w.index(firsts[-1])]


def r_suffix(w: Word) -> Word:
    """Longest suffix missing exactly one letter of w"""
    lasts = fin(w)
    if not lasts:
        raise DomainError("r_suffix is undefined on the empty word")
    return w[len(w) - w[::-1].index(lasts[0]) :]


def restrict(w: Word, letters: Iterable[Letter]) -> Word:
    keep = set(letters)
    return tuple(x for x in w if x in keep)


def reverse(w: Word) -> Word:
    return tuple(w[::-1])


# =============================================================================
# Blocks
# =============================================================================


class BlockDecomposition(NamedTuple):
    """u = a0 t1 a1 ... tm am with t1..tm the simple letters of u"""

    head: Word
    tail: Tuple[Tuple[Letter, Word], ...]

    @property
    def blocks(self) -> Tuple[Word, ...]:
        return (self.head,) + tuple(block for _, block in self.tail)

    @property
    def simple_letters(self) -> Tuple[Letter, ...]:
        return tuple(t for t, _ in self.tail)

    def concat(self) -> Word:
        out = list(self.head)
        for t, block in self.tail:
            out.append(t)
            out.extend(block)
        return tuple(out)


@lru_cache(maxsize=1 << 16)
def block_decompose(w: Word) -> BlockDecomposition:
    simple = simple_letters(w)
    blocks: List[List[Letter]] = [[]]
    separators: List[Letter] = []
    for x in w:
        if x in simple:
            separators.append(x)
            blocks.append([])
        else:
            blocks[-1].append(x)
    return BlockDecomposition(
        tuple(blocks[0]),
        tuple((t, tuple(block)) for t, block in zip(separators, blocks[1:])),
    )


def block_spans(w: Word) -> List[Tuple[int, Word]]:
    """(1-based position of the block's first slot, block) for every block of w"""
    decomposition = block_decompose(w)
    spans = []
    position = 1
    for i, block in enumerate(decomposition.blocks):
        if i > 0:
            position += 1  # the simple letter before this block
        spans.append((position, block))
        position += len(block)
    return spans


# =============================================================================
# Occurrences
# =============================================================================


class Occurrence(NamedTuple):
    letter: Letter
    index: int
    position: int


def occ(w: Word, x: Letter, i: int = 1) -> Occurrence:
    """The i-th occurrence of x from the left"""
    if i < 1:
        raise LetterLookupError(f"occurrence index must be positive, got {i}")
    seen = 0
    for position, y in enumerate(w, start=1):
        if y == x:
            seen += 1
            if seen == i:
                return Occurrence(x, i, position)
    if seen == 0:
        raise LetterLookupError(f"letter {x} does not occur in {format_word(w)}")
    raise LetterLookupError(f"letter {x} occurs {seen} times in {format_word(w)}, not {i}")


def last_occ(w: Word, x: Letter) -> Occurrence:
    count = w.count(x)
    if count == 0:
        raise LetterLookupError(f"letter {x} does not occur in {format_word(w)}")
    return Occurrence(x, count, len(w) - w[::-1].index(x))


def first_after(w: Word, anchor: Occurrence, y: Letter) -> Optional[Occurrence]:
    """Earliest occurrence of y strictly after the anchor, or None"""
    before = w[: anchor.position].count(y)
    for position in range(anchor.position + 1, len(w) + 1):
        if w[position - 1] == y:
            return Occurrence(y, before + 1, position)
    return None


def occurrence_at(w: Word, position: int) -> Occurrence:
    x = w[position - 1]
    return Occurrence(x, w[:position].count(x), position)


def has_property_P(w: Word, x: Letter, y_first: Letter, y_last: Letter) -> bool:
    """No x strictly between the last y_first and the first y_last"""
    if x not in w:
        raise LetterLookupError(f"letter {x} does not occur in {format_word(w)}")
    lo = last_occ(w, y_first).position
    hi = occ(w, y_last, 1).position
    return all(w[p - 1] != x for p in range(lo + 1, hi))


# =============================================================================
# Fixed patterns
# =============================================================================


class FixedPattern(str, Enum):
    AABB = "aabb"
    BETA_ATBBA = "beta_atbba"


_PATTERN_LANGUAGES = {
    FixedPattern.AABB: re.compile(r"aa+bb+"),
    FixedPattern.BETA_ATBBA: re.compile(r"a+tbb+a[ab]*|a+tb+a+b[ab]*"),
}


def pattern_member(pattern: FixedPattern, w: Word) -> bool:
    if any(x not in ("a", "b", "t") for x in w):
        return False
    return _PATTERN_LANGUAGES[FixedPattern(pattern)].fullmatch("".join(w)) is not None


# =============================================================================
# Enumeration
# =============================================================================


def shortlex_key(w: Word) -> Tuple[int, Word]:
    return (len(w), w)


def enumerate_words(alphabet: Sequence[Letter], max_len: int) -> Iterator[Word]:
    """All words over the alphabet up to max_len, shortlex in the alphabet's order"""
    for n in range(max_len + 1):
        yield from product(alphabet, repeat=n)


def _first_occurrence_words(length: int, pool: Sequence[Letter], used: int) -> Iterator[Word]:
    if length == 0:
        yield EMPTY
        return
    for i in range(min(used + 1, len(pool))):
        for rest in _first_occurrence_words(length - 1, pool, max(used, i + 1)):
            yield (pool[i],) + rest


def canonical_words(max_len: int, pool: Sequence[Letter], used: int = 0) -> Iterator[Word]:
    """
    Words whose new letters appear in pool order (x before y before z ...).

    used counts the pool letters already introduced by an earlier word, so
    canonical_words(n, pool, used=k) enumerates the right-hand sides that
    keep an identity canonical after a left-hand side on k letters.
    """
    for n in range(max_len + 1):
        yield from _first_occurrence_words(n, pool, used)


def canonical_pairs(max_len: int, pool: Sequence[Letter]) -> Iterator[Identity]:
    """Identity pairs with letters renamed by first occurrence across lhs then rhs"""
    for u in canonical_words(max_len, pool):
        for v in canonical_words(max_len, pool, used=len(set(u))):
            yield Identity(u, v)


def canonical_identity(identity: Identity, pool: Sequence[Letter]) -> Identity:
    """Rename letters onto the pool by first occurrence across lhs then rhs"""
    order = ini(identity.lhs + identity.rhs)
    if len(order) > len(pool):
        raise ArgumentError(f"{len(order)} letters do not fit a pool of {len(pool)}")
    renaming = dict(zip(order, pool))
    return Identity(
        tuple(renaming[x] for x in identity.lhs),
        tuple(renaming[x] for x in identity.rhs),
    )


def canonical_form(w: Word, pool: Sequence[Letter]) -> Word:
    return canonical_identity(Identity(w, EMPTY), pool).lhs


def factors(w: Word, include_empty: bool = True) -> Set[Word]:
    """Distinct contiguous subwords of w"""
    found = {w[i:j] for i in range(len(w)) for j in range(i + 1, len(w) + 1)}
    if include_empty:
        found.add(EMPTY)
    return found
