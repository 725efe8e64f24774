"""
Candidate generator lifts (T, R) parameterized by ten numbers.

Every lift of t = [[1,1],[0,1]] and r = [[1,0],[-1,1]] into
SL(2, Z_2N) x| Z_N^2 has the form T = (A, (u, v)), R = (B, (u', v'))
where A, B are fixed by six bits (see algebra.sdproduct.generator_lift).
Fields a1, b1, c1, u1, v1 stand for a', b', c', u', v'.
"""
import logging
from dataclasses import asdict, dataclass
from itertools import product
from typing import Dict, Iterator, Tuple

from algebra.modmat import Vec2
from algebra.sdproduct import SdElement, Side, check_even_dim, generator_lift

logger = logging.getLogger(__name__)

BIT_NAMES = ("a", "b", "c", "a1", "b1", "c1")
RESIDUE_NAMES = ("u", "v", "u1", "v1")


@dataclass(frozen=True, order=True, slots=True)
class GenParams:
    """
    One candidate tuple. Ordering is lexicographic in (a, b, c, a1, b1, c1,
    u, v, u1, v1) for tuples of the same dimension.
    """
    dim: int
    a: int = 0
    b: int = 0
    c: int = 0
    a1: int = 0
    b1: int = 0
    c1: int = 0
    u: int = 0
    v: int = 0
    u1: int = 0
    v1: int = 0

    def __post_init__(self):
        check_even_dim(self.dim)
        for name in BIT_NAMES:
            if getattr(self, name) not in (0, 1):
                raise ValueError(f"bit {name} must be 0 or 1, got {getattr(self, name)}")
        for name in RESIDUE_NAMES:
            if not 0 <= getattr(self, name) < self.dim:
                raise ValueError(f"residue {name} must lie in [0, {self.dim}), got {getattr(self, name)}")

    @property
    def bits(self) -> Tuple[int, int, int, int, int, int]:
        return self.a, self.b, self.c, self.a1, self.b1, self.c1

    def key(self) -> Tuple[int, ...]:
        return self.bits + (self.u, self.v, self.u1, self.v1)

    def as_dict(self) -> Dict[str, int]:
        values = asdict(self)
        values.pop("dim")
        return values

    @classmethod
    def standard_witness(cls, dim: int) -> "GenParams":
        """a = b = a' = c' = 0, c = b' = 1, zero vectors."""
        return cls(dim, c=1, b1=1)

    @classmethod
    def from_index(cls, dim: int, index: int) -> "GenParams":
        """Decode a flat index into the lexicographic enumeration of all 64 N^4 tuples."""
        index, v1 = divmod(index, dim)
        index, u1 = divmod(index, dim)
        index, v = divmod(index, dim)
        bit_code, u = divmod(index, dim)
        if not 0 <= bit_code < 64:
            raise ValueError(f"index out of range for dimension {dim}")
        bits = [(bit_code >> shift) & 1 for shift in range(5, -1, -1)]
        return cls(dim, *bits, u, v, u1, v1)


def candidate_count(dim: int) -> int:
    return 64 * dim ** 4


def iter_params(dim: int) -> Iterator[GenParams]:
    """All candidates in lexicographic order."""
    check_even_dim(dim)
    residues = range(dim)
    for bits in product((0, 1), repeat=6):
        for u, v, u1, v1 in product(residues, repeat=4):
            yield GenParams(dim, *bits, u, v, u1, v1)


def build_generators(p: GenParams) -> Tuple[SdElement, SdElement]:
    """T = (A, (u, v)) and R = (B, (u', v'))."""
    n = p.dim
    t_lift = SdElement(n, generator_lift(Side.T_SIDE, p.bits, n), Vec2(n, p.u, p.v))
    r_lift = SdElement(n, generator_lift(Side.R_SIDE, p.bits, n), Vec2(n, p.u1, p.v1))
    return t_lift, r_lift
