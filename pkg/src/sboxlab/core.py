"""S-box lookup tables, derivatives and difference-based uniformity measures.

Vectors of F_2^m are encoded as integers: bit i of x is coordinate i, and
vector addition is bitwise XOR. All functions here accept arbitrary lookup
tables (bijectivity is not required by the definitions); predicates that do
need a permutation check for one explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

MIN_DIM = 2
MAX_DIM = 8

#: table length -> dimension m, for every supported m
_DIM_BY_SIZE = {1 << m: m for m in range(MIN_DIM, MAX_DIM + 1)}


@dataclass(frozen=True)
class SBox:
    """Lookup table of a function f: F_2^m -> F_2^m."""

    m: int
    table: tuple[int, ...]

    def __post_init__(self):
        if not MIN_DIM <= self.m <= MAX_DIM:
            raise ValueError(f"dimension m={self.m} outside supported range "
                             f"[{MIN_DIM}, {MAX_DIM}]")
        size = 1 << self.m
        if len(self.table) != size:
            raise ValueError(f"table has {len(self.table)} entries, "
                             f"expected {size} for m={self.m}")
        for pos, value in enumerate(self.table):
            if not isinstance(value, int) or not 0 <= value < size:
                raise ValueError(f"entry {value!r} at position {pos} is outside "
                                 f"[0, {size})")

    @classmethod
    def from_table(cls, values) -> "SBox":
        """Build an SBox from any integer sequence, inferring m from its length."""
        values = tuple(values)
        m = _DIM_BY_SIZE.get(len(values))
        if m is None:
            raise ValueError(f"length {len(values)} is not a power-of-two table "
                             f"of supported dimension (m in [{MIN_DIM}, {MAX_DIM}])")
        return cls(m, values)

    @property
    def size(self) -> int:
        return 1 << self.m

    @property
    def bijective(self) -> bool:
        return len(set(self.table)) == self.size

    @property
    def normalized(self) -> bool:
        return self.table[0] == 0

    def __call__(self, x: int) -> int:
        return self.table[x]


@dataclass(frozen=True)
class DDT:
    """Difference distribution table: counts[u][v] = |{x : f(x^u) ^ f(x) = v}|."""

    m: int
    counts: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return 1 << self.m

    def max_entry(self) -> int:
        """Largest count over nonzero input differences (the differential uniformity)."""
        return max(max(row) for row in self.counts[1:])

    def row_image_size(self, u: int) -> int:
        """Number of distinct derivative values |Im(f_u)| = nonzero entries of row u."""
        return sum(1 for c in self.counts[u] if c)


@dataclass(frozen=True)
class DerivativeImage:
    """Image size of one derivative direction."""

    u: int
    size: int


def parse_sbox(text: str) -> SBox:
    """Parse an S-box from decimal CSV (any supported m) or 16 hex digits (m=4).

    Bijectivity and normalization are not required; callers check those.
    """
    text = text.strip()
    if "," in text:
        tokens = [t.strip() for t in text.split(",")]
        values = []
        for pos, tok in enumerate(tokens):
            try:
                values.append(int(tok, 10))
            except ValueError:
                raise ValueError(f"token {tok!r} at position {pos} is not a "
                                 f"decimal integer") from None
        m = _DIM_BY_SIZE.get(len(values))
        if m is None:
            raise ValueError(f"length {len(values)} is not a power-of-two table "
                             f"of supported dimension (m in [{MIN_DIM}, {MAX_DIM}])")
        for pos, value in enumerate(values):
            if value >= (1 << m):
                raise ValueError(f"entry {value} at position {pos} is outside "
                                 f"[0, {1 << m}) for m={m}")
        return SBox(m, tuple(values))
    if len(text) != 16:
        raise ValueError(f"hex form must be exactly 16 digits (one per input of "
                         f"a 4-bit S-box), got {len(text)}")
    values = []
    for pos, ch in enumerate(text):
        try:
            values.append(int(ch, 16))
        except ValueError:
            raise ValueError(f"character {ch!r} at position {pos} is not a "
                             f"hex digit") from None
    return SBox(4, tuple(values))


def format_sbox(f: SBox) -> str:
    """Decimal CSV form, the inverse of parse_sbox for that format."""
    return ",".join(str(v) for v in f.table)


def _check_direction(f: SBox, u: int) -> None:
    if not 0 < u < f.size:
        raise ValueError(f"difference u={u} must satisfy 0 < u < {f.size}")


def derivative(f: SBox, u: int) -> tuple[int, ...]:
    """Truth table of the derivative x -> f(x^u) ^ f(x) in direction u != 0."""
    _check_direction(f, u)
    t = f.table
    return tuple(t[x ^ u] ^ t[x] for x in range(f.size))


def ddt(f: SBox) -> DDT:
    """Difference distribution table of f."""
    n = f.size
    t = f.table
    counts = []
    for u in range(n):
        row = [0] * n
        for x in range(n):
            row[t[x ^ u] ^ t[x]] += 1
        counts.append(tuple(row))
    return DDT(f.m, tuple(counts))


def differential_uniformity(f: SBox) -> int:
    """Smallest delta such that f is delta-differentially uniform."""
    return ddt(f).max_entry()


def derivative_image_size(f: SBox, u: int) -> int:
    """|Im(f_u)| for a nonzero direction u."""
    _check_direction(f, u)
    t = f.table
    return len({t[x ^ u] ^ t[x] for x in range(f.size)})


def is_weakly_delta_uniform(f: SBox, delta: int) -> bool:
    """True iff every derivative image has more than 2^(m-1)/delta values.

    The comparison is exact rational arithmetic, so non-power-of-two delta
    behaves correctly.
    """
    if delta < 1:
        raise ValueError(f"delta must be >= 1, got {delta}")
    bound = Fraction(1 << (f.m - 1), delta)
    return all(derivative_image_size(f, u) > bound for u in range(1, f.size))


def is_weakly_apn(f: SBox) -> bool:
    """Weak almost-perfect nonlinearity: weakly 2-differentially uniform."""
    return is_weakly_delta_uniform(f, 2)


def diff1(f: SBox) -> int:
    """Largest DDT count over input and output differences of Hamming weight 1."""
    table = ddt(f).counts
    singles = [1 << i for i in range(f.m)]
    return max(table[a][b] for a in singles for b in singles)


def normalize(f: SBox) -> SBox:
    """Translate outputs so that f(0) = 0; all difference and Walsh-magnitude
    measures are unchanged."""
    c = f.table[0]
    if c == 0:
        return f
    return SBox(f.m, tuple(v ^ c for v in f.table))
