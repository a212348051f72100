from decimal import ROUND_HALF_EVEN, Decimal
from typing import List

from vcm.exceptions import RangeError
from vcm.models.profile import Committee


class TextProcessor:
    """Formatting of numbers and parsing of command-line lists"""

    @staticmethod
    def format_real(value: float, decimals: int = 6) -> str:
        """Fixed-point text, rounded half-to-even on the shortest decimal repr"""
        quantum = Decimal(1).scaleb(-decimals)
        text = str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_EVEN))
        if text.startswith("-") and Decimal(text) == 0:
            text = text[1:]
        return text

    @staticmethod
    def parse_index_list(text: str) -> List[int]:
        """'1,2,3' (1-based) -> [0, 1, 2]"""
        tokens = [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]
        if not tokens:
            raise RangeError("empty candidate list")
        indices = []
        for token in tokens:
            token = token.lower().lstrip("c")
            if not token.isdigit() or int(token) < 1:
                raise RangeError(f"candidate ids are 1-based integers, got '{token}'")
            indices.append(int(token) - 1)
        return indices

    @classmethod
    def parse_committee(cls, text: str) -> Committee:
        return Committee(members=cls.parse_index_list(text))
