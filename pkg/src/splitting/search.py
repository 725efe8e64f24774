"""
Witness search over the 64 N^4 candidate lifts, and the closed-form verdict.

The candidate space is cut into 64 N prefixes (six bits and u), each covering
N^3 tuples in lexicographic order. Chunks of prefixes are scanned
independently and merged by a commutative reduction (any-found, min-lex
witness, summed counts), so results do not depend on the worker count.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from enum import Enum
from itertools import product
from typing import Dict, List, Optional, Tuple

from algebra.sdproduct import OddDimensionError, check_even_dim
from config.settings import settings
from splitting.conditions import passes_direct
from splitting.criteria import passes_criteria
from splitting.params import GenParams, candidate_count

logger = logging.getLogger(__name__)

ODD_DIMENSION_NOTE = (
    "for odd N both C(N) and its projective quotient are semidirect products "
    "SL(2, Z_N) x| Z_N^2; only even N is treated here"
)
NO_SPLIT_NOTE = (
    "no splitting for N = 0 mod 4: C(N) does not split either, since a section of "
    "C(N) would induce one of the projective group"
)
OPEN_NOTE = "whether C(N) itself splits for N = 2 mod 4 is left open"


class DimensionBoundError(ValueError):
    """Raised when a dimension exceeds the configured bound for an operation."""


class SearchMode(Enum):
    CLOSED_FORM = "closed_form"
    DIRECT = "direct"
    EXHAUSTIVE = "exhaustive"


@dataclass
class SplitVerdict:
    dim: int
    splits: bool
    mode: SearchMode
    witness: Optional[GenParams] = None
    witness_count: Optional[int] = None
    candidates_checked: int = 0
    millis: int = 0
    notes: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class ChunkResult:
    """Partial outcome of scanning a run of prefixes."""
    found: int = 0
    witness: Optional[GenParams] = None
    checked: int = 0

    def merge(self, other: "ChunkResult") -> "ChunkResult":
        candidates = [w for w in (self.witness, other.witness) if w is not None]
        return ChunkResult(
            found=self.found + other.found,
            witness=min(candidates) if candidates else None,
            checked=self.checked + other.checked,
        )


def _bits_of(code: int) -> Tuple[int, ...]:
    return tuple((code >> shift) & 1 for shift in range(5, -1, -1))


def scan_prefixes(dim: int, start: int, stop: int, exhaustive: bool, count: bool) -> ChunkResult:
    """
    Scan prefixes [start, stop). Without count the scan stops at its first
    witness, which is the lexicographically smallest one in the run.

    The fast path prunes with the closed-form criteria, which read only the six
    bits together with v and u', and confirms every survivor directly.
    """
    residues = range(dim)
    found = 0
    witness = None
    checked = 0
    core_cache: Dict[Tuple[int, int, int], bool] = {}
    for prefix in range(start, stop):
        bit_code, u = divmod(prefix, dim)
        bits = _bits_of(bit_code)
        for v, u1, v1 in product(residues, repeat=3):
            checked += 1
            if not exhaustive:
                core = (bit_code, v, u1)
                admissible = core_cache.get(core)
                if admissible is None:
                    admissible = passes_criteria(GenParams(dim, *bits, 0, v, u1, 0))
                    core_cache[core] = admissible
                if not admissible:
                    continue
            candidate = GenParams(dim, *bits, u, v, u1, v1)
            if not passes_direct(candidate):
                if not exhaustive:
                    logger.warning("Candidate %s passed the criteria but failed direct evaluation", candidate)
                continue
            found += 1
            if witness is None:
                witness = candidate
            if not count:
                return ChunkResult(found, witness, checked)
    return ChunkResult(found, witness, checked)


def _chunks(dim: int, jobs: int) -> List[Tuple[int, int]]:
    total = 64 * dim
    pieces = min(total, max(1, jobs * 4))
    bounds = [total * i // pieces for i in range(pieces + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(pieces) if bounds[i] < bounds[i + 1]]


def search_witness(
    dim: int,
    exhaustive: bool = False,
    count: bool = False,
    jobs: Optional[int] = None,
    max_dim: Optional[int] = None,
) -> SplitVerdict:
    """
    Search for a candidate passing conditions (i)-(v).

    Args:
        dim: even dimension N
        exhaustive: evaluate every candidate literally, no closed-form pruning
        count: keep going and count every witness
        jobs: worker processes (settings.JOBS when None)
        max_dim: bound on N (settings.MAX_SEARCH_DIM when None)

    Returns:
        SplitVerdict carrying the min-lex witness, or none
    """
    check_even_dim(dim)
    bound = settings.MAX_SEARCH_DIM if max_dim is None else max_dim
    if dim > bound:
        raise DimensionBoundError(f"search dimension {dim} exceeds bound {bound}")
    workers = settings.JOBS if jobs is None else jobs
    if workers < 1:
        raise ValueError(f"jobs must be >= 1, got {workers}")
    logger.info("search_witness called: dim=%d exhaustive=%s count=%s jobs=%d", dim, exhaustive, count, workers)

    started = time.perf_counter()
    chunks = _chunks(dim, workers)
    result = ChunkResult()
    if workers == 1:
        for start, stop in chunks:
            result = result.merge(scan_prefixes(dim, start, stop, exhaustive, count))
            if result.witness is not None and not count:
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [
                executor.submit(scan_prefixes, dim, start, stop, exhaustive, count)
                for start, stop in chunks
            ]
            for future in as_completed(futures):
                result = result.merge(future.result())

    elapsed = int((time.perf_counter() - started) * 1000)
    verdict = SplitVerdict(
        dim=dim,
        splits=result.witness is not None,
        mode=SearchMode.EXHAUSTIVE if exhaustive else SearchMode.DIRECT,
        witness=result.witness,
        witness_count=result.found if count else None,
        candidates_checked=result.checked,
        millis=elapsed,
    )
    logger.info(
        "search_witness completed: dim=%d splits=%s checked=%d of %d",
        dim, verdict.splits, verdict.candidates_checked, candidate_count(dim),
    )
    return verdict


def verdict(dim: int, max_dim: Optional[int] = None) -> SplitVerdict:
    """
    Closed-form answer: the projective Clifford group splits iff N = 2 (mod 4).
    A positive answer carries the standard witness, confirmed directly.
    """
    if dim >= 1 and dim % 2 == 1:
        raise OddDimensionError(ODD_DIMENSION_NOTE)
    check_even_dim(dim)
    bound = settings.MAX_DIM if max_dim is None else max_dim
    if dim > bound:
        raise DimensionBoundError(f"dimension {dim} exceeds bound {bound}")
    logger.info("verdict called with dim=%d", dim)

    started = time.perf_counter()
    if dim % 4 == 0:
        result = SplitVerdict(dim=dim, splits=False, mode=SearchMode.CLOSED_FORM, notes=[NO_SPLIT_NOTE])
    else:
        witness = GenParams.standard_witness(dim)
        if not passes_direct(witness):
            logger.error("Standard witness failed direct evaluation for dim=%d", dim)
            raise RuntimeError(f"standard witness does not satisfy the conditions for N={dim}")
        result = SplitVerdict(
            dim=dim,
            splits=True,
            mode=SearchMode.CLOSED_FORM,
            witness=witness,
            candidates_checked=1,
            notes=[OPEN_NOTE],
        )
    result.millis = int((time.perf_counter() - started) * 1000)
    logger.info("verdict completed: dim=%d splits=%s", dim, result.splits)
    return result
