"""CMU pronouncing dictionary parsing, phoneme vocabularies and data splits."""

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

GRAPHEMES = tuple("abcdefghijklmnopqrstuvwxyz'-")
GRAPHEME_SET = frozenset(GRAPHEMES)
GRAPHEME_IDS = {g: i for i, g in enumerate(GRAPHEMES)}

# ARPAbet inventory of the CMU dictionary, alphabetical.
VOWELS = (
    "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY",
    "IH", "IY", "OW", "OY", "UH", "UW",
)
CONSONANTS = (
    "B", "CH", "D", "DH", "F", "G", "HH", "JH", "K", "L", "M", "N",
    "NG", "P", "R", "S", "SH", "T", "TH", "V", "W", "Y", "Z", "ZH",
)
BASE_PHONEMES = tuple(sorted(VOWELS + CONSONANTS))

BLANK = "<blank>"
SIL = "<sil>"
BOUNDARY = "-"
STRESS_DIGITS = "012"

_STRESSED_RE = re.compile(r"^([A-Z]+)([012])$")
_VARIANT_RE = re.compile(r"^(.*)\((\d+)\)$")


class LexiconError(ValueError):
    pass


class CmuParseError(LexiconError):
    """Malformed CMU dictionary line; carries the 1-based line number."""

    def __init__(self, line_number, message):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class VocabMode(Enum):
    BASE = "base"
    STRESSED = "stressed"


class MarkLevel(Enum):
    NONE = "none"
    STRESS = "stress"
    STRESS_AND_BOUNDARY = "stress_and_boundary"


@dataclass(frozen=True)
class LexiconEntry:
    spelling: str
    pronunciation: tuple
    variant_index: int = 1


@dataclass
class ParseStats:
    dropped_spellings: int = 0
    malformed: list = field(default_factory=list)  # (line_number, line) pairs


@dataclass
class DataSplit:
    train: list
    dev: list
    test: list
    seed: int


def _is_valid_token(token):
    if token in BASE_PHONEMES or token == BOUNDARY or token == SIL:
        return True
    m = _STRESSED_RE.match(token)
    return bool(m and m.group(1) in VOWELS)


def parse_cmu(source, stats=None, strict=True):
    """Parse CMU dictionary text into entries.

    ``source`` is a string, an open text file, or an iterable of lines.
    Comment lines start with ``;;;``.  Alternate pronunciations carry a
    ``WORD(2)`` suffix.  Spellings with characters outside the 28-grapheme
    set are dropped (counted in ``stats``).  Malformed lines raise
    ``CmuParseError`` when ``strict``, otherwise they are recorded in
    ``stats`` and skipped.
    """
    if isinstance(source, str):
        lines = source.splitlines()
    else:
        lines = source
    if stats is None:
        stats = ParseStats()

    entries = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith(";;;"):
            continue
        parts = line.split()
        if len(parts) < 2:
            err = CmuParseError(lineno, f"no word/pronunciation separator in {line!r}")
            if strict:
                raise err
            stats.malformed.append((lineno, line))
            continue
        word, tokens = parts[0], parts[1:]
        variant = 1
        m = _VARIANT_RE.match(word)
        if m:
            word, variant = m.group(1), int(m.group(2))
            if variant < 1:
                err = CmuParseError(lineno, f"variant index must be >= 1 in {parts[0]!r}")
                if strict:
                    raise err
                stats.malformed.append((lineno, line))
                continue
        spelling = word.lower()
        if not spelling or any(c not in GRAPHEME_SET for c in spelling):
            stats.dropped_spellings += 1
            continue
        bad = [t for t in tokens if not _is_valid_token(t)]
        if bad:
            err = CmuParseError(lineno, f"unknown phoneme token {bad[0]!r}")
            if strict:
                raise err
            stats.malformed.append((lineno, line))
            continue
        entries.append(LexiconEntry(spelling, tuple(tokens), variant))
    return entries


def serialize_entries(entries):
    """CMU-format text for ``entries``; inverse of :func:`parse_cmu`."""
    lines = []
    for e in entries:
        word = e.spelling.upper()
        if e.variant_index > 1:
            word = f"{word}({e.variant_index})"
        lines.append(f"{word}  {' '.join(e.pronunciation)}")
    return "\n".join(lines) + "\n"


def filter_primary(entries):
    """Keep only primary pronunciations (variant 1), sorted by spelling."""
    kept = [e for e in entries if e.variant_index == 1]
    return sorted(kept, key=lambda e: e.spelling)


def make_split(entries, test_size, dev_size, seed):
    """Seeded shuffle, then carve off test and dev; the rest is train."""
    if test_size < 0 or dev_size < 0:
        raise LexiconError("split sizes must be non-negative")
    if test_size + dev_size >= len(entries):
        raise LexiconError(
            f"test ({test_size}) + dev ({dev_size}) must be smaller than the corpus ({len(entries)})"
        )
    order = np.random.default_rng(seed).permutation(len(entries))
    shuffled = [entries[i] for i in order]
    test = shuffled[:test_size]
    dev = shuffled[test_size : test_size + dev_size]
    train = shuffled[test_size + dev_size :]
    return DataSplit(train=train, dev=dev, test=test, seed=seed)


def write_split_manifest(split, out_dir):
    """One spelling per line per split part, for reproducibility."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in ("train", "dev", "test"):
        part = getattr(split, name)
        path = out_dir / f"{name}.txt"
        path.write_text("".join(e.spelling + "\n" for e in part), encoding="utf-8")


def strip_marks(pron, level):
    """Strip syllable boundaries and/or stress digits from a pronunciation."""
    if level is MarkLevel.STRESS_AND_BOUNDARY:
        return tuple(pron)
    out = []
    for tok in pron:
        if tok == BOUNDARY:
            continue
        if level is MarkLevel.NONE:
            m = _STRESSED_RE.match(tok)
            if m and m.group(1) in VOWELS:
                tok = m.group(1)
        out.append(tok)
    return tuple(out)


class PhonemeVocabulary:
    """Token/id bijection over the phoneme inventory of one mode.

    BASE holds the 39 ARPAbet phonemes without stress; STRESSED holds every
    vowel in four forms (bare and stress 0/1/2) next to the consonants, 84
    phoneme tokens in all.  Both modes reserve id 0 for the CTC blank and
    carry the syllable-boundary and silence tokens at the end.
    """

    def __init__(self, mode, tokens):
        self.mode = mode
        self.tokens = tuple(tokens)
        self.blank_id = 0
        self._ids = {t: i for i, t in enumerate(self.tokens)}
        if len(self._ids) != len(self.tokens):
            raise LexiconError("vocabulary tokens must be unique")
        if self.tokens[0] != BLANK:
            raise LexiconError("token 0 must be the blank")

    @classmethod
    def build(cls, mode):
        if isinstance(mode, str):
            mode = VocabMode(mode.lower())
        toks = [BLANK]
        if mode is VocabMode.BASE:
            toks.extend(BASE_PHONEMES)
        else:
            for p in BASE_PHONEMES:
                toks.append(p)
                if p in VOWELS:
                    toks.extend(p + d for d in STRESS_DIGITS)
        toks.extend([BOUNDARY, SIL])
        return cls(mode, toks)

    def __len__(self):
        return len(self.tokens)

    def __contains__(self, token):
        return token in self._ids

    def id_of(self, token):
        try:
            return self._ids[token]
        except KeyError:
            raise LexiconError(f"token {token!r} not in {self.mode.value} vocabulary") from None

    def token_of(self, idx):
        return self.tokens[idx]

    def encode(self, pron):
        """Phoneme ids for a pronunciation, adapted to this vocabulary's mode."""
        level = MarkLevel.NONE if self.mode is VocabMode.BASE else MarkLevel.STRESS_AND_BOUNDARY
        return [self.id_of(t) for t in strip_marks(pron, level)]

    def decode(self, ids):
        return tuple(self.tokens[i] for i in ids)

    def expand_stress(self, token):
        """All vocabulary forms a mask entry covers: vowels fan out to stress variants."""
        if self.mode is VocabMode.STRESSED and token in VOWELS:
            return [token] + [token + d for d in STRESS_DIGITS]
        return [token]
