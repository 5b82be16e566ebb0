"""Cubic hexagonal lattice arithmetic.

Cells are integer triples ``(q, r, s)`` with ``q + r + s == 0`` on a flat-top
lattice.  Directions are measured clockwise, starting from the "top" ring-1
cell ``(0, 1, -1)``; the six wedges are numbered 0..5 clockwise from there.

Any cell other than the origin has a ring encoding ``(RI, Wi, Rws)``: its ring
index (hop distance), the wedge whose ring segment it lies on, and its
clockwise spot inside that segment (``0 <= Rws < RI``).  Angles come in two
resolutions: ring-local (``6 * RI`` steps per turn) and global
(``6 * Q`` steps per turn, ``Q = 2**bits``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ._kernels import active as _k
from ._kernels import _pykernels

DEFAULT_BITS = 6
MAX_BITS = 30


class HexError(ValueError):
    """Base class for lattice errors."""


class ZeroSumViolation(HexError):
    pass


class InvalidRingPosition(HexError):
    pass


class UndefinedAtOrigin(HexError):
    pass


class InvalidScale(HexError):
    pass


class InvalidAngle(HexError):
    pass


@dataclass(frozen=True, order=True)
class HexCoord:
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.q + self.r + self.s != 0:
            raise ZeroSumViolation(
                f"q + r + s must be 0, got {self.q}+{self.r}+{self.s}"
            )

    def __iter__(self) -> Iterator[int]:
        yield self.q
        yield self.r
        yield self.s

    def __add__(self, other: HexCoord) -> HexCoord:
        return HexCoord(self.q + other.q, self.r + other.r, self.s + other.s)

    def __sub__(self, other: HexCoord) -> HexCoord:
        return HexCoord(self.q - other.q, self.r - other.r, self.s - other.s)

    def __neg__(self) -> HexCoord:
        return HexCoord(-self.q, -self.r, -self.s)

    def __str__(self) -> str:
        return f"{self.q},{self.r},{self.s}"

    def to_list(self) -> list[int]:
        return [self.q, self.r, self.s]


ORIGIN = HexCoord(0, 0, 0)
DIRECTIONS = tuple(HexCoord(*d) for d in _pykernels.DIRECTIONS)


def make_coord(q: int, r: int, s: int) -> HexCoord:
    return HexCoord(int(q), int(r), int(s))


def parse_coord(text: str) -> HexCoord:
    """Parse the ``"q,r,s"`` literal form."""
    parts = text.split(",")
    if len(parts) != 3:
        raise HexError(f"expected 'q,r,s', got {text!r}")
    try:
        q, r, s = (int(p) for p in parts)
    except ValueError:
        raise HexError(f"expected integers in {text!r}") from None
    return make_coord(q, r, s)


def _cell(t) -> HexCoord:
    # kernel outputs already satisfy the zero-sum invariant
    c = object.__new__(HexCoord)
    object.__setattr__(c, "q", int(t[0]))
    object.__setattr__(c, "r", int(t[1]))
    object.__setattr__(c, "s", int(t[2]))
    return c


def _check_bits(bits: int) -> None:
    if not 0 <= bits <= MAX_BITS:
        raise InvalidAngle(f"quantization bits must be in [0, {MAX_BITS}], got {bits}")


@dataclass(frozen=True)
class RingPosition:
    ring_index: int
    wedge_index: int = 0
    wedge_ring_spot: int = 0

    def __post_init__(self):
        ri, w, j = self.ring_index, self.wedge_index, self.wedge_ring_spot
        if ri < 0:
            raise InvalidRingPosition(f"negative ring index {ri}")
        if ri == 0:
            if w or j:
                raise InvalidRingPosition("the origin is encoded as (0, 0, 0)")
            return
        if not 0 <= w <= 5:
            raise InvalidRingPosition(f"wedge index {w} outside 0..5")
        if not 0 <= j < ri:
            raise InvalidRingPosition(f"ring spot {j} outside [0, {ri})")


@dataclass(frozen=True)
class RingLocalAngle:
    phi: int
    ring_index: int

    def __post_init__(self):
        if self.ring_index < 1:
            raise UndefinedAtOrigin("ring-local angles need ring_index >= 1")
        if not 0 <= self.phi < 6 * self.ring_index:
            raise InvalidAngle(f"phi {self.phi} outside [0, {6 * self.ring_index})")


@dataclass(frozen=True, order=True)
class QuantizedAngle:
    """Global clockwise angle; the top 3 bits select the wedge."""

    value: int
    bits: int = DEFAULT_BITS

    def __post_init__(self):
        _check_bits(self.bits)
        if not 0 <= self.value < 6 << self.bits:
            raise InvalidAngle(
                f"angle {self.value} outside [0, {6 << self.bits}) for bits={self.bits}"
            )

    @classmethod
    def from_parts(cls, wedge: int, local: int, bits: int = DEFAULT_BITS) -> QuantizedAngle:
        if not 0 <= local < 1 << bits:
            raise InvalidAngle(f"local part {local} outside [0, {1 << bits})")
        return cls((wedge << bits) | local, bits)

    @property
    def levels(self) -> int:
        return 1 << self.bits

    @property
    def wedge(self) -> int:
        return self.value >> self.bits

    @property
    def local(self) -> int:
        return self.value & ((1 << self.bits) - 1)

    def __add__(self, other: QuantizedAngle) -> QuantizedAngle:
        if other.bits != self.bits:
            raise InvalidAngle("cannot add angles of different quantization")
        return QuantizedAngle((self.value + other.value) % (6 << self.bits), self.bits)

    def degrees(self) -> float:
        return self.value * 60.0 / (1 << self.bits)


@dataclass(frozen=True)
class SignPattern:
    """Decoding rule for one wedge: component source and sign for q, r, s.

    Sources index into ``(RI, Rws, RI - Rws)``.
    """

    sources: tuple[int, int, int]
    signs: tuple[int, int, int]

    def apply(self, ri: int, spot: int) -> HexCoord:
        comps = (ri, spot, ri - spot)
        return HexCoord(*(sg * comps[src] for src, sg in zip(self.sources, self.signs)))


SIGN_PATTERNS = tuple(
    SignPattern(tuple(src for src, _ in row), tuple(sg for _, sg in row))
    for row in _pykernels.SIGN_PATTERNS
)


def distance(a: HexCoord, b: HexCoord) -> int:
    return _k.distance(a.q, a.r, a.s, b.q, b.r, b.s)


def radial_distance(p: HexCoord) -> int:
    return _k.radial(p.q, p.r, p.s)


def neighbors(p: HexCoord) -> list[HexCoord]:
    """The six adjacent cells in clockwise order from the top."""
    return [p + d for d in DIRECTIONS]


def encode_ring(p: HexCoord) -> RingPosition:
    ri, w, j = _k.encode_ring(p.q, p.r, p.s)
    return RingPosition(ri, w, j)


def decode_ring(rp: RingPosition) -> HexCoord:
    return _cell(_k.decode_ring(rp.ring_index, rp.wedge_index, rp.wedge_ring_spot))


def polar_angle(p: HexCoord) -> RingLocalAngle:
    ri, w, j = _k.encode_ring(p.q, p.r, p.s)
    if ri == 0:
        raise UndefinedAtOrigin("polar angle is undefined at the origin")
    return RingLocalAngle(j + w * ri, ri)


def normalize_angle(phi: RingLocalAngle, bits: int = DEFAULT_BITS) -> QuantizedAngle:
    """Rescale a ring-local angle to the global resolution (floor)."""
    _check_bits(bits)
    ri = phi.ring_index
    w, j = divmod(phi.phi, ri)
    return QuantizedAngle(_k.normalize(ri, w, j, bits), bits)


def denormalize_angle(a: QuantizedAngle, ring_index: int) -> RingLocalAngle:
    """Rescale a global angle to ring ``ring_index`` (floor)."""
    if ring_index < 1:
        raise UndefinedAtOrigin("ring_index must be >= 1")
    w, j = _k.denormalize(a.value, ring_index, a.bits)
    return RingLocalAngle(w * ring_index + j, ring_index)


def angle_of(p: HexCoord, bits: int = DEFAULT_BITS) -> QuantizedAngle:
    """Global quantized direction of ``p`` seen from the origin."""
    if p.q == 0 and p.r == 0:
        raise UndefinedAtOrigin("direction is undefined at the origin")
    return QuantizedAngle(_k.quantized_angle(p.q, p.r, p.s, bits), bits)


def direction(src: HexCoord, dst: HexCoord, bits: int = DEFAULT_BITS) -> QuantizedAngle:
    return angle_of(dst - src, bits)


def translate(p: HexCoord, delta: HexCoord) -> HexCoord:
    """Re-express ``p`` relative to ``delta`` as the new origin."""
    return _cell((p.q - delta.q, p.r - delta.r, p.s - delta.s))


def from_polar(magnitude: int, angle: QuantizedAngle) -> HexCoord:
    """Cell on ring ``magnitude`` in direction ``angle``."""
    if magnitude < 0:
        raise HexError(f"negative magnitude {magnitude}")
    return _cell(_k.from_polar(magnitude, angle.value, angle.bits))


def rotate_point(p: HexCoord, rot: QuantizedAngle, pivot: HexCoord = ORIGIN) -> HexCoord:
    """Rotate ``p`` clockwise about ``pivot``.

    Exact for multiples of 60 degrees (``rot.value`` a multiple of Q); other
    angles are quantized to the resolution of the cell's ring.
    """
    if pivot == ORIGIN:
        return _cell(_k.rotate(p.q, p.r, p.s, rot.value, rot.bits))
    q, r, s = _k.rotate(p.q - pivot.q, p.r - pivot.r, p.s - pivot.s, rot.value, rot.bits)
    return _cell((q + pivot.q, r + pivot.r, s + pivot.s))


def _scale_shift(k: int) -> int:
    if k < 2 or k & (k - 1):
        raise InvalidScale(f"scale must be a power of two >= 2, got {k}")
    return k.bit_length() - 1


def coarsen(p: HexCoord, k: int) -> HexCoord:
    """Index of the ``k``-times coarser tile that contains ``p``."""
    return _cell(_k.coarsen(p.q, p.r, p.s, _scale_shift(k)))


def refine(p: HexCoord, k: int) -> HexCoord:
    """Center of coarse tile ``p`` on the ``k``-times finer lattice."""
    m = _scale_shift(k)
    return _cell((p.q << m, p.r << m, p.s << m))


def ring_cells(ri: int) -> list[HexCoord]:
    """Cells of ring ``ri`` in clockwise order, by walking neighbor steps."""
    if ri < 0:
        raise HexError(f"negative ring index {ri}")
    if ri == 0:
        return [ORIGIN]
    d0 = DIRECTIONS[0]
    cell = HexCoord(d0.q * ri, d0.r * ri, d0.s * ri)
    out = []
    for side in range(6):
        step = DIRECTIONS[(side + 2) % 6]
        for _ in range(ri):
            out.append(cell)
            cell = cell + step
    return out


def disc_cells(center: HexCoord, radius: int) -> list[HexCoord]:
    if radius < 0:
        raise HexError(f"negative radius {radius}")
    return [_cell(row) for row in _k.disc(tuple(center), radius).tolist()]
