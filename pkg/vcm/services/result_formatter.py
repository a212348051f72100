# vcm/services/result_formatter.py
"""
Result formatter - one output convention for experiment CSVs and single-line CLI results
"""
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import pandas as pd

from vcm.config import get_settings
from vcm.models.experiment import TrialRecord
from vcm.models.profile import Committee
from vcm.models.reports import EvalReport, FullRuleOutcome
from vcm.utils.text_utils import TextProcessor

logger = logging.getLogger(__name__)

CSV_COLUMNS = ["x", "rule", "decision", "satisfaction"]


class ResultFormatter:
    """Formats results with fixed decimals, rounded half-to-even"""

    def __init__(self, decimals: Optional[int] = None):
        self.decimals = get_settings().decimals if decimals is None else decimals

    def real(self, value: float) -> str:
        return TextProcessor.format_real(value, self.decimals)

    def records_to_frame(self, records: Sequence[TrialRecord]) -> pd.DataFrame:
        """Row order is the order of `records`; reals already formatted as text"""
        rows = [
            {
                "x": self.real(r.x),
                "rule": r.rule.value,
                "decision": r.decision.value,
                "satisfaction": self.real(r.satisfaction),
            }
            for r in records
        ]
        return pd.DataFrame(rows, columns=CSV_COLUMNS)

    def to_csv_text(self, records: Sequence[TrialRecord]) -> str:
        return self.records_to_frame(records).to_csv(index=False, lineterminator="\n")

    def emit_csv(self, records: Sequence[TrialRecord], path: Union[str, Path]) -> Path:
        path = Path(path)
        # newline="" keeps "\n" line endings on every platform
        with path.open("w", encoding="utf-8", newline="") as handle:
            handle.write(self.to_csv_text(records))
        logger.info("Wrote %d rows to %s", len(records), path)
        return path

    def committee_line(self, committee: Committee, total: float) -> str:
        return f"{committee.label()},{self.real(total)}"

    def outcome_line(self, outcome: FullRuleOutcome) -> str:
        return f"{outcome.committee.label()},{outcome.decision.name},{self.real(outcome.total)}"

    def report_lines(self, report: EvalReport) -> List[str]:
        """voter,satisfaction CSV with 1-based voters"""
        lines = ["voter,satisfaction"]
        lines.extend(f"{i},{self.real(s)}" for i, s in enumerate(report.per_voter, start=1))
        return lines


def emit_csv(records: Sequence[TrialRecord], path: Union[str, Path]) -> Path:
    return ResultFormatter().emit_csv(records, path)
