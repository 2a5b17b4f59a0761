"""Rank-0 decision procedures: conjugacy with minimal witnesses, primitive
roots, simplicity, length-1 period sets, and the free-subgroup probe."""

from __future__ import annotations

from dataclasses import dataclass

from .words import (Alphabet, Word, cyclic_reduce, from_letters, is_regular,
                    word_key, word_product)


@dataclass(frozen=True)
class PrimitiveRoot:
    root: Word
    exponent: int


@dataclass(frozen=True)
class ConjugacyWitness:
    """witness * target * witness^-1 reduces to source; witness is the
    shortest such word, ties broken lexicographically."""

    witness: Word
    source: Word
    target: Word


@dataclass(frozen=True)
class PeriodSet:
    rank: int
    periods: tuple

    def as_dict(self):
        return {"rank": self.rank, "periods": [str(p) for p in self.periods]}


@dataclass(frozen=True)
class ProbeReport:
    depth: int
    free_up_to_depth: bool
    all_images_nonregular: bool
    trivial_counterexample: Word | None = None
    regular_counterexample: Word | None = None
    regular_image: Word | None = None

    @property
    def counterexample(self):
        """First witness against either property, freeness first."""
        if self.trivial_counterexample is not None:
            return self.trivial_counterexample
        return self.regular_counterexample

    def as_dict(self):
        opt = lambda w: None if w is None else str(w)
        return {
            "depth": self.depth,
            "free_up_to_depth": self.free_up_to_depth,
            "all_images_nonregular": self.all_images_nonregular,
            "counterexample": opt(self.counterexample),
            "trivial_counterexample": opt(self.trivial_counterexample),
            "regular_counterexample": opt(self.regular_counterexample),
            "regular_image": opt(self.regular_image),
        }


def primitive_root(w):
    """Minimal root of the cyclic core: the shortest p with core = p^k."""
    if w.is_identity():
        raise ValueError("the empty word has no primitive root")
    core, _ = cyclic_reduce(w)
    letters = core.letters()
    n = len(letters)
    for span in range(1, n + 1):
        if n % span == 0 and letters[:span] * (n // span) == letters:
            return PrimitiveRoot(from_letters(letters[:span], w.alphabet),
                                 n // span)
    raise AssertionError("unreachable")


def _rotations_matching(target_letters, source_letters):
    """Offsets r with source == target[r:] + target[:r]."""
    n = len(target_letters)
    doubled = target_letters + target_letters
    hits = []
    for r in range(n):
        if doubled[r:r + n] == source_letters:
            hits.append(r)
    return hits


def conjugacy_witness(source, target):
    """Decide conjugacy of two words and return the minimal witness.

    Two reduced words are conjugate exactly when their cyclic cores are
    rotations of each other.  The full witness set is one coset of the
    centraliser of the target, so the minimum is found by scanning the
    powers of the target's primitive root over a bounded range.
    """
    if source.alphabet != target.alphabet:
        raise ValueError("alphabet mismatch")
    core_s, ps = cyclic_reduce(source)
    core_t, pt = cyclic_reduce(target)
    if len(core_s) != len(core_t):
        return None
    alphabet = source.alphabet
    if core_s.is_identity():
        return ConjugacyWitness(Word.identity(alphabet), source, target)
    ls, lt = list(core_s.letters()), list(core_t.letters())
    hits = _rotations_matching(lt, ls)
    if not hits:
        return None
    prefix = from_letters(lt[:hits[0]], alphabet)
    root = primitive_root(core_t).root
    left = ps * prefix.inverse()
    qinv = pt.inverse()
    span = max(1, len(root))
    reach = 2 * (len(left) + len(qinv)) // span + 2
    best = None
    best_key = None
    for power in range(-reach, reach + 1):
        cand = word_product((left, root ** power, qinv), alphabet)
        key = word_key(cand)
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return ConjugacyWitness(best, source, target)


def is_conjugate(u, v):
    return conjugacy_witness(u, v) is not None


def is_simple_rank0(w):
    """True when w is its own cyclic core and is not a proper power, i.e.
    w is not conjugate to any power of a shorter word."""
    if w.is_identity():
        raise ValueError("the empty word is not eligible")
    core, conj = cyclic_reduce(w)
    return conj.is_identity() and primitive_root(w).exponent == 1


def periods_rank1(alphabet):
    """The maximal set of length-1 periods: all the generators."""
    periods = tuple(from_letters([i + 1], alphabet)
                    for i in range(alphabet.size))
    return PeriodSet(1, periods)


def verify_period_set(period_set, alphabet):
    """Re-check the defining properties of a period set of rank 1:
    correct lengths, no period conjugate to a power of a shorter word,
    pairwise non-conjugate (also after inversion), and maximality among
    all length-1 words.  Returns (ok, reason)."""
    rank = period_set.rank
    periods = period_set.periods
    for p in periods:
        if len(p) != rank:
            return False, "period %s does not have length %d" % (p, rank)
        core, conj = cyclic_reduce(p)
        if not conj.is_identity() or primitive_root(p).exponent != 1:
            return False, "period %s is conjugate to a power of a shorter word" % p
    for i, p in enumerate(periods):
        for q in periods[i + 1:]:
            if is_conjugate(p, q) or is_conjugate(p, q.inverse()):
                return False, "%s and %s violate pairwise non-conjugacy" % (p, q)
    if rank == 1:
        for letter in range(1, alphabet.size + 1):
            for sign in (1, -1):
                w = from_letters([sign * letter], alphabet)
                if not any(is_conjugate(w, p) or is_conjugate(w, p.inverse())
                           for p in periods):
                    return False, "maximality fails: %s is uncovered" % w
    return True, None


def free_subgroup_probe(gen1, gen2, depth, depth_cap=12):
    """Exhaustively map the reduced words of length <= depth over two
    formal symbols into the group, substituting gen1 and gen2.

    Reports whether every image is nontrivial (no relation up to the
    given depth) and whether every image has a nonregular cyclic core.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if depth > depth_cap:
        raise ValueError(
            "depth %d exceeds the cap %d; pass depth_cap explicitly "
            "to go deeper" % (depth, depth_cap))
    if gen1.alphabet != gen2.alphabet:
        raise ValueError("alphabet mismatch")
    alphabet = gen1.alphabet
    symbols = Alphabet.variables(2)
    images = {1: gen1, -1: gen1.inverse(), 2: gen2, -2: gen2.inverse()}
    # symbol letters u1, u2 live at indices 3 and 4 of the variable alphabet
    offset = 2

    free_ok = True
    nonregular_ok = True
    first = None
    first_kind = None
    first_image = None

    # breadth first, so the recorded counterexample is a shortest one
    level = [((letter,), images[letter]) for letter in (1, -1, 2, -2)]
    for _ in range(depth):
        nxt_level = []
        for path, image in level:
            if image.is_identity():
                free_ok = False
                if first is None:
                    first, first_kind, first_image = path, "trivial_image", image
            else:
                core, _ = cyclic_reduce(image)
                if is_regular(core):
                    nonregular_ok = False
                    if first is None:
                        first, first_kind, first_image = path, "regular_image", image
            if len(path) < depth:
                last = path[-1]
                for step in (1, -1, 2, -2):
                    if step != -last:
                        nxt_level.append((path + (step,), image * images[step]))
        level = nxt_level
    witness = None
    if first is not None:
        witness = from_letters(
            [l + offset if l > 0 else l - offset for l in first], symbols)
    return ProbeReport(depth, free_ok, nonregular_ok, witness, first_kind,
                       first_image)
