# vcm/utils/combinatorics.py
"""
Guarded committee enumeration and lexicographic argmax
"""
import itertools
import logging
import math
from typing import Callable, Iterator, Optional, Tuple, TypeVar

from vcm.config import get_settings
from vcm.exceptions import GuardExceededError, RangeError
from vcm.models.profile import Committee

logger = logging.getLogger(__name__)

T = TypeVar("T")


def check_committee_size(k: int, n_candidates: int) -> None:
    if not 1 <= k <= n_candidates:
        raise RangeError(f"committee size {k} must lie in 1..{n_candidates}")


def iter_committees(n_candidates: int, k: int, guard: Optional[int] = None) -> Iterator[Committee]:
    """All K-subsets in lexicographic order of their sorted members"""
    check_committee_size(k, n_candidates)
    guard = get_settings().enumeration_guard if guard is None else guard
    count = math.comb(n_candidates, k)
    if count > guard:
        raise GuardExceededError(f"C({n_candidates},{k}) committees", count, guard)
    logger.debug("Enumerating %d committees of size %d", count, k)
    for members in itertools.combinations(range(n_candidates), k):
        yield Committee(members=members)


def lexicographic_argmax(
    items: Iterator[T],
    score: Callable[[T], float],
    tolerance: Optional[float] = None,
) -> Tuple[T, float]:
    """First item (in iteration order) whose score beats all earlier ones by more than tolerance"""
    tolerance = get_settings().tie_tolerance if tolerance is None else tolerance
    best_item, best_score = None, -math.inf
    for item in items:
        value = score(item)
        if value > best_score + tolerance:
            best_item, best_score = item, value
    if best_item is None:
        raise RangeError("nothing to maximise over")
    return best_item, best_score
