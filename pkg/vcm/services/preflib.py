# vcm/services/preflib.py
"""
PrefLib strict-order files: parsing, filtering, Kendall-tau and issue distances, Borda scores
"""
import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from vcm.config import get_settings
from vcm.exceptions import DimensionError, PreflibParseError
from vcm.models.profile import ProfileKind, ScoreProfile
from vcm.models.rankings import RankProfile
from vcm.utils.file_handler import FileHandler
from vcm.utils.regex_patterns import PreflibPatterns

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class PreflibParser:
    """Reads and writes `count: c_a,c_b,...` files with 1-based candidate ids"""

    def __init__(self):
        self.patterns = PreflibPatterns()

    def parse(self, text: str) -> RankProfile:
        declared: Optional[int] = None
        names: Dict[int, str] = {}
        orders: List[Tuple[int, List[int]]] = []

        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                name = self.patterns.ALTERNATIVE_NAME.match(line)
                if name:
                    names[int(name.group(1))] = name.group(2).strip()
                    continue
                meta = self.patterns.METADATA.match(line)
                if meta and meta.group(1) == "NUMBER ALTERNATIVES":
                    try:
                        declared = int(meta.group(2))
                    except ValueError as e:
                        raise PreflibParseError(f"bad alternative count '{meta.group(2)}'", number) from e
                continue

            if self.patterns.TIE_GROUP.search(line):
                raise PreflibParseError("tied groups are not supported; only strict complete orders", number)
            order = self.patterns.ORDER_LINE.match(line)
            if not order:
                raise PreflibParseError(f"expected 'count: c1,c2,...', got '{line}'", number)
            count = int(order.group(1))
            if count < 1:
                raise PreflibParseError("multiplicity must be at least 1", number)
            ids = []
            for token in order.group(2).split(","):
                token = token.strip()
                if not self.patterns.CANDIDATE_ID.match(token):
                    raise PreflibParseError(f"invalid candidate id '{token}'", number)
                ids.append(int(token))
            orders.append((number, [count] + ids))

        if not orders:
            raise PreflibParseError("no rankings found")

        if declared is not None:
            universe = list(range(1, declared + 1))
        else:
            # no metadata: the first ranking defines the candidate set
            universe = sorted(set(orders[0][1][1:]))
        index = {cid: i for i, cid in enumerate(universe)}

        rankings, multiplicities = [], []
        for number, (count, *ids) in orders:
            unknown = [cid for cid in ids if cid not in index]
            if unknown:
                raise PreflibParseError(f"unknown candidate id {unknown[0]}", number)
            if len(ids) != len(set(ids)):
                raise PreflibParseError("candidate listed twice in one ranking", number)
            if len(ids) != len(universe):
                raise PreflibParseError(
                    f"incomplete ranking: {len(ids)} of {len(universe)} candidates", number
                )
            rankings.append(tuple(index[cid] for cid in ids))
            multiplicities.append(count)

        candidate_names = None
        if names:
            candidate_names = tuple(names.get(cid, str(cid)) for cid in universe)

        profile = RankProfile(
            n_candidates=len(universe),
            rankings=tuple(rankings),
            multiplicities=tuple(multiplicities),
            candidate_names=candidate_names,
        )
        logger.debug(
            "Parsed %d voters over %d candidates (%d unique orders)",
            profile.n_voters,
            profile.n_candidates,
            len(rankings),
        )
        return profile

    def serialize(self, profile: RankProfile) -> str:
        lines = [
            f"# NUMBER ALTERNATIVES: {profile.n_candidates}",
            f"# NUMBER VOTERS: {profile.n_voters}",
            f"# NUMBER UNIQUE ORDERS: {len(profile.rankings)}",
        ]
        if profile.candidate_names is not None:
            for i, name in enumerate(profile.candidate_names, start=1):
                lines.append(f"# ALTERNATIVE NAME {i}: {name}")
        for ranking, count in zip(profile.rankings, profile.multiplicities):
            lines.append(f"{count}: " + ",".join(str(c + 1) for c in ranking))
        return "\n".join(lines) + "\n"

    def read(self, path: PathLike) -> RankProfile:
        return self.parse(FileHandler.read_text_file(path))


def parse_preflib(text: str) -> RankProfile:
    return PreflibParser().parse(text)


def serialize_preflib(profile: RankProfile) -> str:
    return PreflibParser().serialize(profile)


def filter_dataset(
    profile: RankProfile, min_voters: Optional[int] = None, min_candidates: Optional[int] = None
) -> bool:
    settings = get_settings()
    min_voters = settings.min_dataset_voters if min_voters is None else min_voters
    min_candidates = settings.min_dataset_candidates if min_candidates is None else min_candidates
    return profile.n_voters >= min_voters and profile.n_candidates >= min_candidates


def _merge_count(values: List[int]) -> Tuple[List[int], int]:
    """Sorted copy of `values` and its number of inversions"""
    if len(values) <= 1:
        return values, 0
    mid = len(values) // 2
    left, left_count = _merge_count(values[:mid])
    right, right_count = _merge_count(values[mid:])

    merged: List[int] = []
    count = left_count + right_count
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            # every remaining left element is larger
            count += len(left) - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, count


def kendall_tau(rank_a: Sequence[int], rank_b: Sequence[int]) -> int:
    """Number of candidate pairs the two rankings order differently"""
    if len(rank_a) != len(rank_b) or set(rank_a) != set(rank_b):
        raise DimensionError("Kendall-tau needs two rankings of the same candidates")
    if len(set(rank_a)) != len(rank_a):
        raise DimensionError("a ranking lists every candidate exactly once")
    position_in_b = {c: pos for pos, c in enumerate(rank_b)}
    _, inversions = _merge_count([position_in_b[c] for c in rank_a])
    return inversions


def positions(profile: RankProfile) -> np.ndarray:
    """pos[r, c] = 0-based rank of candidate c in unique order r"""
    orders = profile.unique_orders()
    pos = np.empty_like(orders)
    rows = np.arange(orders.shape[0])[:, None]
    pos[rows, orders] = np.arange(profile.n_candidates)[None, :]
    return pos


def _scale_rows(matrix: np.ndarray) -> np.ndarray:
    """Rescale each row to mean 1/2; all-zero rows are left as they are"""
    means = matrix.mean(axis=1, keepdims=True)
    scale = np.divide(0.5, means, out=np.zeros_like(means), where=means > 0)
    return matrix * scale


def issue_distances(profile: RankProfile) -> Tuple[np.ndarray, np.ndarray]:
    """(voter_issue_dist n x n, cand_issue_dist n x m); issue i_v sits at voter v's ranking"""
    orders = profile.unique_orders()
    n_unique = orders.shape[0]

    tau = np.zeros((n_unique, n_unique))
    for a in range(n_unique):
        for b in range(a + 1, n_unique):
            tau[a, b] = tau[b, a] = kendall_tau(orders[a].tolist(), orders[b].tolist())

    voter_order = profile.order_of_voter()
    voter_dist = _scale_rows(tau[np.ix_(voter_order, voter_order)])
    cand_dist = _scale_rows(positions(profile).astype(float))[voter_order]
    return voter_dist, cand_dist


def borda_scores(profile: RankProfile) -> ScoreProfile:
    """Rank-r candidate (0-based) scores (m-1-r)/(m-1); a lone candidate scores 1"""
    m = profile.n_candidates
    pos = positions(profile)[profile.order_of_voter()]
    if m == 1:
        scores = np.ones(pos.shape)
    else:
        scores = (m - 1 - pos) / (m - 1)
    return ScoreProfile(scores=scores, kind=ProfileKind.BORDA)


def load_dataset_dir(path: PathLike, pattern: str = "*.soc") -> List[Tuple[str, RankProfile]]:
    """Every strict-order file of a directory, sorted by file name"""
    directory = Path(path)
    if not directory.is_dir():
        raise NotADirectoryError(f"{directory} is not a directory")
    parser = PreflibParser()
    datasets = []
    for file in sorted(directory.glob(pattern)):
        try:
            datasets.append((file.name, parser.read(file)))
        except PreflibParseError as e:
            raise PreflibParseError(f"{file.name}: {e}") from e
    logger.info("Loaded %d datasets from %s", len(datasets), directory)
    return datasets
