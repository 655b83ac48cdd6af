"""
Minimal reductions J = (x_1..x_d) of a filtration
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from app.config.settings import settings
from app.services.filtration import Filtration
from app.services.ideal_ops import INFINITE
from app.services.local_ring import RingIdeal, local_colength, locally_equal
from app.services.polynomial import Polynomial
from app.utils.exceptions import NoReductionFound, NotAReduction, NotNested

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reduction:
    """J with J*I_n = I_(n+1) verified for verified_at <= n <= verified_at + window"""

    gens: Tuple[Polynomial, ...]
    verified_at: int
    window: int

    def ideal(self, F: Filtration) -> RingIdeal:
        return F.ring.ideal(self.gens)

    def labels(self) -> List[str]:
        return [str(g) for g in self.gens]


def is_reduction(F: Filtration, J: RingIdeal, N: int, window: Optional[int] = None) -> Optional[int]:
    """
    Least n0 <= N with J*I_n = I_(n+1) (after localizing) for n0 <= n <= n0 + window;
    None when no such n0 exists
    """
    window = settings.reduction_window if window is None else window
    if not F.term(1).contains_ideal(J):
        raise NotNested(f"{J} is not contained in I_1 = {F.term(1)}")
    if len(J.generators()) < F.dim or local_colength(J) == INFINITE:
        # a reduction of an m-primary filtration is m-primary
        return None

    verdicts: Dict[int, bool] = {}

    def holds(n: int) -> bool:
        if n not in verdicts:
            verdicts[n] = locally_equal(F.term(n + 1), J * F.term(n))
        return verdicts[n]

    run_start = 1
    for n in range(1, N + window + 1):
        if not holds(n):
            run_start = n + 1
            if run_start > N:
                return None
            continue
        if n - run_start >= window:
            logger.debug(f"[REDUCTION] {J} reduces {F} from n0 = {run_start}")
            return run_start
    return None


def _random_combination(rng: random.Random, gens: Sequence[Polynomial], modulus: int) -> Polynomial:
    result = gens[0].ring.zero()
    for g in gens:
        result = result + g.scale(rng.randrange(1, modulus))
    return result


def find_minimal_reduction(F: Filtration, seed: Optional[int] = None, N: Optional[int] = None) -> Reduction:
    """
    d random combinations of the generators of I_1, resampled until they form a
    reduction; deterministic for a given seed
    """
    d = F.dim
    N = N or settings.max_n
    window = settings.reduction_window
    gens = F.term(1).generators()
    modulus = F.ring.ambient.modulus

    if len(gens) <= d:
        n0 = is_reduction(F, F.ring.ideal(gens), N)
        if n0 is not None:
            return Reduction(tuple(gens), n0, window)

    rng = random.Random(seed if seed is not None else 0)
    attempts = settings.reduction_attempts
    for attempt in range(1, attempts + 1):
        candidate = tuple(_random_combination(rng, gens, modulus) for _ in range(d))
        n0 = is_reduction(F, F.ring.ideal(candidate), N)
        if n0 is not None:
            logger.info(f"[REDUCTION] found reduction on attempt {attempt}: {[str(g) for g in candidate]}")
            return Reduction(candidate, n0, window)
        logger.warning(f"[REDUCTION] attempt {attempt}/{attempts} is not a reduction; resampling")
    raise NoReductionFound(
        f"no reduction of {F} among {attempts} random choices",
        details={"seed": seed, "attempts": attempts},
    )


def verify_reduction(F: Filtration, gens: Sequence[Polynomial], N: Optional[int] = None) -> Reduction:
    """Certify user-supplied generators; NotAReduction when the window check fails"""
    N = N or settings.max_n
    n0 = is_reduction(F, F.ring.ideal(gens), N)
    if n0 is None:
        raise NotAReduction(
            f"({', '.join(str(g) for g in gens)}) is not a reduction of {F} for n <= {N}",
            details={"generators": [str(g) for g in gens]},
        )
    return Reduction(tuple(gens), n0, settings.reduction_window)


__all__ = [
    "Reduction",
    "find_minimal_reduction",
    "is_reduction",
    "verify_reduction",
]
