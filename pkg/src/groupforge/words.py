"""Exact algebra of freely reduced words over a finite alphabet.

Words are stored in a run-compressed syllable form so that products of
powers with very large exponents (the identity words and relators built
elsewhere in this package) stay small in memory while every operation
remains exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

MAX_EXPONENT = 2**31 - 1

GENERATOR = "generator"
VARIABLE = "variable"

_TOKEN = re.compile(r"([axyu])(\d*)(?:\^([+-]?\d+))?\Z")


class Alphabet:
    """A fixed, ordered set of symbol names, either generators or variables."""

    __slots__ = ("kind", "symbols", "_index")

    def __init__(self, kind, symbols):
        symbols = tuple(symbols)
        if kind not in (GENERATOR, VARIABLE):
            raise ValueError("kind must be %r or %r" % (GENERATOR, VARIABLE))
        if not symbols:
            raise ValueError("alphabet must have at least one symbol")
        if len(set(symbols)) != len(symbols):
            raise ValueError("alphabet symbols must be unique")
        self.kind = kind
        self.symbols = symbols
        self._index = {name: i + 1 for i, name in enumerate(symbols)}

    @classmethod
    def generators(cls, m):
        """The generator alphabet a1, ..., am."""
        if m < 1:
            raise ValueError("need at least one generator")
        return cls(GENERATOR, ["a%d" % (i + 1) for i in range(m)])

    @classmethod
    def variables(cls, extra=0):
        """The variable alphabet x, y, u1, ..., u<extra>."""
        names = ["x", "y"] + ["u%d" % (i + 1) for i in range(extra)]
        return cls(VARIABLE, names)

    @property
    def size(self):
        return len(self.symbols)

    def index(self, name):
        """1-based index of a symbol name."""
        try:
            return self._index[name]
        except KeyError:
            raise ValueError("unknown symbol %r" % name) from None

    def name(self, index):
        return self.symbols[index - 1]

    def __eq__(self, other):
        return (isinstance(other, Alphabet)
                and self.kind == other.kind and self.symbols == other.symbols)

    def __hash__(self):
        return hash((self.kind, self.symbols))

    def __repr__(self):
        return "Alphabet(%s: %s)" % (self.kind, " ".join(self.symbols))


# ---------------------------------------------------------------------------
# Internal storage.
#
# A word is a tuple of items (block, count) with block a tuple of syllables
# (symbol, exponent), symbol a 1-based alphabet index, exponent a nonzero int,
# and count >= 1.  The letter expansion of the items, in order, is freely
# reduced.  Adjacent syllables with the same symbol and the same sign may
# occur across item or block-repetition boundaries; the canonical syllable
# stream below merges them.
# ---------------------------------------------------------------------------


def _block_inverse(block):
    return tuple((s, -e) for s, e in reversed(block))


def _block_letter_count(block):
    return sum(abs(e) for _, e in block)


class _Builder:
    """Accumulates a freely reduced word from syllables, blocks and words."""

    def __init__(self):
        self.done = []      # sealed items
        self.buf = []       # working tail, list of syllables, no mergeable pair
        self.letters = 0

    def _refill(self):
        # move the last sealed item (one repetition of it) into the buffer
        if not self.done:
            return False
        block, count = self.done.pop()
        if count > 1:
            self.done.append((block, count - 1))
        self.buf.extend(block)
        return True

    def _flush(self):
        if self.buf:
            self.done.append((tuple(self.buf), 1))
            self.buf = []

    def push_syllable(self, sym, exp):
        """Append one syllable, cancelling/merging against the tail.

        Returns True when the syllable was appended without touching
        existing content (the junction was already reduced).
        """
        plain = True
        while exp:
            if not self.buf and not self._refill():
                self.buf.append((sym, exp))
                self.letters += abs(exp)
                return plain
            ts, te = self.buf[-1]
            if ts != sym:
                self.buf.append((sym, exp))
                self.letters += abs(exp)
                return plain
            plain = False
            self.buf.pop()
            self.letters -= abs(te)
            exp = te + exp
        return False

    def push_syllables(self, syllables):
        # once a syllable lands untouched, the rest of a reduced sequence
        # can be appended verbatim
        it = iter(syllables)
        for sym, exp in it:
            if self.push_syllable(sym, exp):
                rest = list(it)
                self.buf.extend(rest)
                self.letters += _block_letter_count(rest)
                return

    def push_block(self, block, count):
        if count < 1:
            return
        blen = _block_letter_count(block)
        while count:
            # aligned telescope: whole repetitions annihilate in one step
            if not self.buf and self.done:
                tb, tc = self.done[-1]
                if tb == _block_inverse(block):
                    k = min(tc, count)
                    if tc > k:
                        self.done[-1] = (tb, tc - k)
                    else:
                        self.done.pop()
                    self.letters -= k * blen
                    count -= k
                    continue
            before = self.letters
            self.push_syllables(block)
            count -= 1
            if count and self.letters > before:
                # part of that copy survived, so the junction against the
                # next copy is the block's own (reduced) self-junction
                self._flush()
                self.done.append((block, count))
                self.letters += count * blen
                return

    def push_word(self, word):
        for block, count in word._items:
            if count == 1:
                self.push_syllables(block)
            else:
                self.push_block(block, count)

    def result(self, alphabet):
        self._flush()
        return Word._from_items(alphabet, tuple(self.done), self.letters)


def _reduce_syllables(pairs):
    """Fold (symbol, exponent) pairs into a reduced syllable list."""
    out = []
    for sym, exp in pairs:
        if not exp:
            continue
        while out and out[-1][0] == sym:
            exp += out.pop()[1]
            if not exp:
                break
        if exp:
            out.append((sym, exp))
    return out


class Word:
    """An immutable, freely reduced word over a fixed alphabet.

    Supports ``*`` (reduced product), ``**`` (integer powers) and
    ``.inverse()``.  Equality is equality of reduced letter sequences over
    the same alphabet.  The empty word prints as ``1``.
    """

    __slots__ = ("alphabet", "_items", "_letters", "_digest")

    def __init__(self, source, alphabet):
        if isinstance(source, str):
            w = parse_word(source, alphabet)
        else:
            w = from_letters(source, alphabet)
        self.alphabet = alphabet
        self._items = w._items
        self._letters = w._letters
        self._digest = None

    @classmethod
    def _from_items(cls, alphabet, items, letters):
        w = object.__new__(cls)
        w.alphabet = alphabet
        w._items = items
        w._letters = letters
        w._digest = None
        return w

    @classmethod
    def identity(cls, alphabet):
        return cls._from_items(alphabet, (), 0)

    @classmethod
    def _from_syllables(cls, alphabet, pairs):
        syl = _reduce_syllables(pairs)
        if not syl:
            return cls.identity(alphabet)
        return cls._from_items(alphabet, ((tuple(syl), 1),),
                               sum(abs(e) for _, e in syl))

    # -- canonical syllable stream -------------------------------------

    def _raw_stream(self):
        for block, count in self._items:
            if len(block) == 1:
                sym, exp = block[0]
                yield sym, exp * count
                continue
            for _ in range(count):
                yield from block

    def syllable_stream(self):
        """Canonical maximal syllables (symbol, exponent), lazily."""
        pending = None
        for sym, exp in self._raw_stream():
            if pending is None:
                pending = (sym, exp)
            elif pending[0] == sym:
                pending = (sym, pending[1] + exp)
            else:
                yield pending
                pending = (sym, exp)
        if pending is not None:
            yield pending

    def syllables(self):
        return tuple(self.syllable_stream())

    def _reversed_syllable_stream(self):
        pending = None
        for block, count in reversed(self._items):
            if len(block) == 1:
                gen = iter(((block[0][0], block[0][1] * count),))
            else:
                gen = (s for _ in range(count) for s in reversed(block))
            for sym, exp in gen:
                if pending is None:
                    pending = (sym, exp)
                elif pending[0] == sym:
                    pending = (sym, pending[1] + exp)
                else:
                    yield pending
                    pending = (sym, exp)
        if pending is not None:
            yield pending

    def letters(self):
        """The reduced letter sequence as signed 1-based symbol indices."""
        out = []
        for sym, exp in self.syllable_stream():
            out.extend([sym if exp > 0 else -sym] * abs(exp))
        return tuple(out)

    # -- basic protocol --------------------------------------------------

    def __len__(self):
        return self._letters

    def __bool__(self):
        return self._letters != 0

    def is_identity(self):
        return self._letters == 0

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if self.alphabet != other.alphabet or self._letters != other._letters:
            return False
        if self._items == other._items:
            return True
        return all(a == b for a, b in itertools.zip_longest(
            self.syllable_stream(), other.syllable_stream()))

    def __hash__(self):
        if self._digest is None:
            head = tuple(itertools.islice(self.syllable_stream(), 8))
            tail = tuple(itertools.islice(self._reversed_syllable_stream(), 8))
            self._digest = hash((self.alphabet, self._letters, head, tail))
        return self._digest

    def __mul__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        b = _Builder()
        b.push_word(self)
        b.push_word(other)
        return b.result(self.alphabet)

    def inverse(self):
        items = tuple((_block_inverse(block), count)
                      for block, count in reversed(self._items))
        return Word._from_items(self.alphabet, items, self._letters)

    def __pow__(self, exp):
        if exp == 0:
            return Word.identity(self.alphabet)
        if exp < 0:
            return self.inverse() ** (-exp)
        if exp == 1 or self.is_identity():
            return self
        core, conj = cyclic_reduce(self)
        syl = core.syllables()
        if len(syl) == 1:
            sym, e = syl[0]
            powered = Word._from_syllables(self.alphabet, [(sym, e * exp)])
        else:
            powered = Word._from_items(self.alphabet, ((syl, exp),),
                                       exp * len(core))
        if conj.is_identity():
            return powered
        return conj * powered * conj.inverse()

    def __str__(self):
        parts = []
        for sym, exp in self.syllable_stream():
            name = self.alphabet.name(sym)
            parts.append(name if exp == 1 else "%s^%d" % (name, exp))
        return " ".join(parts) if parts else "1"

    __repr__ = __str__

    def _first_syllable(self):
        for s in self.syllable_stream():
            return s
        return None

    def _last_syllable(self):
        for s in self._reversed_syllable_stream():
            return s
        return None


# ---------------------------------------------------------------------------
# Parsing and formatting
# ---------------------------------------------------------------------------


def parse_word(text, alphabet):
    """Parse the word grammar: "1" or space-separated terms like a1^-3."""
    text = text.strip()
    if not text:
        raise ValueError("empty input is not a word; use \"1\"")
    tokens = text.split()
    if tokens == ["1"]:
        return Word.identity(alphabet)
    pairs = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if m is None:
            raise ValueError("malformed term %r" % tok)
        name = m.group(1) + m.group(2)
        sym = alphabet.index(name)
        exp = 1
        if m.group(3) is not None:
            exp = int(m.group(3))
            if abs(exp) > MAX_EXPONENT:
                raise ValueError("exponent overflow in %r" % tok)
        pairs.append((sym, exp))
    return Word._from_syllables(alphabet, pairs)


def from_letters(seq, alphabet):
    """Build a reduced word from signed 1-based symbol indices."""
    pairs = []
    for letter in seq:
        if letter == 0 or abs(letter) > alphabet.size:
            raise ValueError("letter %r out of range" % (letter,))
        pairs.append((abs(letter), 1 if letter > 0 else -1))
    return Word._from_syllables(alphabet, pairs)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def reduce_product(u, v):
    """Freely reduced concatenation u*v."""
    return u * v


def word_product(factors, alphabet=None):
    """Reduced product of an iterable of words, built in one pass."""
    b = _Builder()
    for w in factors:
        if alphabet is None:
            alphabet = w.alphabet
        elif w.alphabet != alphabet:
            raise ValueError("alphabet mismatch")
        b.push_word(w)
    if alphabet is None:
        raise ValueError("empty product needs an explicit alphabet")
    return b.result(alphabet)


def invert(w):
    return w.inverse()


def cyclic_reduce(w):
    """Split w = conjugator * core * conjugator^-1 with core cyclically reduced."""
    empty = Word.identity(w.alphabet)
    first = w._first_syllable()
    if first is None:
        return w, empty
    last = w._last_syllable()
    if first[0] != last[0] or (first[1] > 0) == (last[1] > 0):
        return w, empty
    syl = list(w.syllables())
    prefix = []
    while len(syl) > 1:
        fs, fe = syl[0]
        ls, le = syl[-1]
        if fs != ls or (fe > 0) == (le > 0):
            break
        k = min(abs(fe), abs(le))
        step = k if fe > 0 else -k
        prefix.append((fs, step))
        if abs(fe) == k:
            syl.pop(0)
        else:
            syl[0] = (fs, fe - step)
        if abs(le) == k:
            syl.pop()
        else:
            syl[-1] = (ls, le + step)
    core = Word._from_syllables(w.alphabet, syl)
    conj = Word._from_syllables(w.alphabet, prefix)
    return core, conj


@dataclass(frozen=True)
class AbelianStats:
    """Per-generator exponent sums plus total positive/negative letter counts."""

    exponent_vector: tuple
    positive_sum: int
    negative_sum: int


def abelian_stats(w):
    vec = [0] * w.alphabet.size
    pos = neg = 0
    for block, count in w._items:
        for sym, exp in block:
            vec[sym - 1] += exp * count
            if exp > 0:
                pos += exp * count
            else:
                neg -= exp * count
    return AbelianStats(tuple(vec), pos, neg)


def is_positive(w):
    """True when no letter is an inverse generator."""
    return all(exp > 0 for block, _ in w._items for _, exp in block)


def is_regular(w):
    """True when w or its inverse contains a positive subword of length 3."""
    pos_run = neg_run = 0
    for _, exp in w.syllable_stream():
        if exp > 0:
            pos_run += exp
            neg_run = 0
        else:
            neg_run -= exp
            pos_run = 0
        if pos_run >= 3 or neg_run >= 3:
            return True
    return False


def substitute(template, bindings):
    """Image of a template word under the homomorphism sending each
    template symbol to its bound word."""
    values = {}
    target = None
    for name, image in bindings.items():
        values[template.alphabet.index(name)] = image
        if target is None:
            target = image.alphabet
        elif image.alphabet != target:
            raise ValueError("alphabet mismatch among bound words")
    if target is None:
        if template.is_identity():
            return template
        raise ValueError("no bindings given")
    for block, _ in template._items:
        for sym, _exp in block:
            if sym not in values:
                raise ValueError(
                    "unbound variable %r" % template.alphabet.name(sym))
    b = _Builder()
    for block, count in template._items:
        if count == 1:
            for sym, exp in block:
                b.push_word(values[sym] ** exp)
        else:
            image = Word.identity(target)
            for sym, exp in block:
                image = image * (values[sym] ** exp)
            b.push_word(image ** count)
    return b.result(target)


def letter_key(letter):
    """Sort key realising the letter order a1 < a1^-1 < a2 < a2^-1 < ..."""
    return (abs(letter), 0 if letter > 0 else 1)


def word_key(w):
    """Shortlex sort key for words under the fixed letter order."""
    return (len(w), tuple(letter_key(l) for l in w.letters()))
