"""Pitch-class arithmetic, scales, diatonic triads, and key labels.

Everything here is exact integer arithmetic on residues mod 12. Scales
are seven ordered pitch classes generated from a tonic by a fixed
interval template; triads are unordered three-note sets classified by
interval shape. All values are immutable, so they are safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

SEMITONES = 12

# Flat-preferred spellings for the five black keys; the parsers accept
# sharp spellings as well (A# and Bb land on the same residue).
PITCH_NAMES = ("C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B")

_LETTER_VALUES = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_ACCIDENTAL_VALUES = {"": 0, "#": 1, "b": -1}


class PitchError(ValueError):
    """Malformed note, key, or triad text."""


def transpose(pc: int, k: int) -> int:
    """Shift a pitch class up by k semitones, wrapping mod 12."""
    return (pc + k) % SEMITONES


def pitch_name(pc: int) -> str:
    """Canonical (flat-preferred) spelling of a pitch class."""
    return PITCH_NAMES[pc % SEMITONES]


def parse_pitch(text: str) -> int:
    """Parse a note name like ``G``, ``Eb`` or ``f#`` to its pitch class.

    Case-insensitive; raises :class:`PitchError` naming the offending
    token on anything that is not a letter A-G plus an optional # or b.
    """
    if not text:
        raise PitchError("empty note name")
    letter = text[0].upper()
    if letter not in _LETTER_VALUES:
        raise PitchError(f"unknown note letter {text[0]!r}")
    accidental = text[1:].lower()
    if accidental not in _ACCIDENTAL_VALUES:
        raise PitchError(f"unknown accidental {text[1:]!r}")
    return (_LETTER_VALUES[letter] + _ACCIDENTAL_VALUES[accidental]) % SEMITONES


class ScaleKind(Enum):
    """The five scale templates the modulation graphs are built from."""

    MAJOR = "major"
    MIXOLYDIAN = "mixolydian"
    NATURAL_MINOR = "natural_minor"
    HARMONIC_MINOR = "harmonic_minor"
    MELODIC_MINOR = "melodic_minor"

    @property
    def template(self) -> tuple[int, ...]:
        """Semitone offsets of the seven degrees above the tonic."""
        return _TEMPLATES[self]


_TEMPLATES: dict[ScaleKind, tuple[int, ...]] = {
    ScaleKind.MAJOR: (0, 2, 4, 5, 7, 9, 11),
    ScaleKind.MIXOLYDIAN: (0, 2, 4, 5, 7, 9, 10),
    ScaleKind.NATURAL_MINOR: (0, 2, 3, 5, 7, 8, 10),
    ScaleKind.HARMONIC_MINOR: (0, 2, 3, 5, 7, 8, 11),
    ScaleKind.MELODIC_MINOR: (0, 2, 3, 5, 7, 9, 11),
}


@dataclass(frozen=True)
class Scale:
    """A seven-note scale: a tonic plus the degrees its kind generates."""

    tonic: int
    kind: ScaleKind
    degrees: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        tonic = self.tonic % SEMITONES
        object.__setattr__(self, "tonic", tonic)
        degrees = tuple((tonic + step) % SEMITONES for step in self.kind.template)
        object.__setattr__(self, "degrees", degrees)

    @property
    def pitch_classes(self) -> frozenset[int]:
        return frozenset(self.degrees)

    def __str__(self) -> str:
        return f"{pitch_name(self.tonic)} {self.kind.value.replace('_', ' ')}"


def build_scale(tonic: int, kind: ScaleKind) -> Scale:
    """Construct the scale of the given kind on the given tonic."""
    return Scale(tonic, kind)


class TriadQuality(Enum):
    """Interval shape of a triad (offsets above its root)."""

    MAJOR = "maj"
    MINOR = "min"
    DIMINISHED = "dim"
    AUGMENTED = "aug"

    @property
    def shape(self) -> tuple[int, ...]:
        return _QUALITY_SHAPES[self]


_QUALITY_SHAPES: dict[TriadQuality, tuple[int, ...]] = {
    TriadQuality.MAJOR: (0, 4, 7),
    TriadQuality.MINOR: (0, 3, 7),
    TriadQuality.DIMINISHED: (0, 3, 6),
    TriadQuality.AUGMENTED: (0, 4, 8),
}


@dataclass(frozen=True, eq=False)
class Triad:
    """Three pitch classes with a root and quality annotation.

    Two triads are equal exactly when their pitch-class sets are equal;
    the root and quality are derived annotations. (The augmented shape
    admits three valid roots, so the same set may carry different roots
    depending on the scale degree it was built on.)
    """

    pcs: frozenset[int]
    root: int
    quality: TriadQuality

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Triad):
            return NotImplemented
        return self.pcs == other.pcs

    def __hash__(self) -> int:
        return hash(self.pcs)

    def transposed(self, k: int) -> "Triad":
        return Triad(
            frozenset(transpose(pc, k) for pc in self.pcs),
            transpose(self.root, k),
            self.quality,
        )

    def __str__(self) -> str:
        return format_triad(self)


def make_triad(root: int, quality: TriadQuality) -> Triad:
    """Build the triad of the given quality rooted on the given pitch."""
    root = root % SEMITONES
    pcs = frozenset(transpose(root, step) for step in quality.shape)
    return Triad(pcs, root, quality)


def classify_triad(pcs: Iterable[int]) -> Optional[Triad]:
    """Match a 3-set of pitch classes against the four triad shapes.

    Returns the triad with its canonical root (the lowest pitch class
    that works as a root, which disambiguates the symmetric augmented
    shape) or ``None`` when no shape fits.
    """
    pcset = frozenset(pc % SEMITONES for pc in pcs)
    if len(pcset) != 3:
        raise ValueError(f"a triad needs exactly 3 distinct pitch classes, got {sorted(pcset)}")
    for root in sorted(pcset):
        for quality in TriadQuality:
            if pcset == frozenset(transpose(root, s) for s in quality.shape):
                return Triad(pcset, root, quality)
    return None


def diatonic_triads(scale: Scale) -> frozenset[Triad]:
    """The seven stacked-third triads of a scale, rooted on its degrees."""
    degrees = scale.degrees
    triads = []
    for k in range(7):
        root = degrees[k]
        pcs = frozenset((root, degrees[(k + 2) % 7], degrees[(k + 4) % 7]))
        quality = _quality_at_root(pcs, root)
        if quality is None:
            raise RuntimeError(f"degree {k} of {scale} stacks to no triad shape: {sorted(pcs)}")
        triads.append(Triad(pcs, root, quality))
    return frozenset(triads)


def _quality_at_root(pcs: frozenset[int], root: int) -> Optional[TriadQuality]:
    for quality in TriadQuality:
        if pcs == frozenset(transpose(root, s) for s in quality.shape):
            return quality
    return None


class KeyFamily(Enum):
    """Whether a key groups the major-side or minor-side scales."""

    MAJOR = "maj"
    MINOR = "min"


@dataclass(frozen=True)
class KeyLabel:
    """A key named by tonic and family, e.g. G major or A minor."""

    tonic: int
    family: KeyFamily

    def __post_init__(self) -> None:
        object.__setattr__(self, "tonic", self.tonic % SEMITONES)

    @property
    def display(self) -> str:
        """Note spelling: uppercase for major keys, lowercase for minor."""
        name = pitch_name(self.tonic)
        return name if self.family is KeyFamily.MAJOR else name.lower()

    def transposed(self, k: int) -> "KeyLabel":
        return KeyLabel(transpose(self.tonic, k), self.family)

    def __str__(self) -> str:
        return format_key(self)


def parse_key(text: str) -> KeyLabel:
    """Parse key text of the form ``<Letter[#|b]>:<maj|min>``.

    Case-insensitive, so ``Bb:min``, ``bb:min`` and ``A#:MIN`` all give
    the same key. Raises :class:`PitchError` naming the bad token.
    """
    note, sep, family = text.partition(":")
    if not sep:
        raise PitchError(f"key {text!r} is missing the ':' separator")
    tonic = parse_pitch(note)
    suffix = family.lower()
    if suffix == "maj":
        return KeyLabel(tonic, KeyFamily.MAJOR)
    if suffix == "min":
        return KeyLabel(tonic, KeyFamily.MINOR)
    raise PitchError(f"unknown key family {family!r} (expected maj or min)")


def format_key(key: KeyLabel) -> str:
    return f"{key.display}:{key.family.value}"


def parse_triad(text: str) -> Triad:
    """Parse triad text of the form ``<Note>:<maj|min|dim|aug>``."""
    note, sep, quality = text.partition(":")
    if not sep:
        raise PitchError(f"triad {text!r} is missing the ':' separator")
    root = parse_pitch(note)
    try:
        return make_triad(root, TriadQuality(quality.lower()))
    except ValueError:
        raise PitchError(f"unknown triad quality {quality!r}") from None


def format_triad(triad: Triad) -> str:
    """Canonical triad text; augmented triads display their lowest root."""
    canonical = classify_triad(triad.pcs)
    if canonical is None:  # only reachable for hand-built invalid shapes
        return "{" + ",".join(pitch_name(pc) for pc in sorted(triad.pcs)) + "}"
    return f"{pitch_name(canonical.root)}:{canonical.quality.value}"


def triad_sort_key(triad: Triad) -> tuple[int, str]:
    """Deterministic ordering for triad listings (by canonical root)."""
    canonical = classify_triad(triad.pcs)
    if canonical is None:
        return (min(triad.pcs), "?")
    return (canonical.root, canonical.quality.value)


def format_triads(triads: Iterable[Triad]) -> list[str]:
    """Sorted canonical text for a collection of triads."""
    return [format_triad(t) for t in sorted(triads, key=triad_sort_key)]
