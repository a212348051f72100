import re


class PreflibPatterns:
    """Compiled patterns for PrefLib strict-order files"""

    # "# NUMBER ALTERNATIVES: 25"
    METADATA = re.compile(r"^#\s*([A-Z][A-Z ]*?)\s*:\s*(.*)$")

    # "# ALTERNATIVE NAME 3: Candidate C"
    ALTERNATIVE_NAME = re.compile(r"^#\s*ALTERNATIVE NAME\s+(\d+)\s*:\s*(.*)$")

    # "2: 3,1,2"
    ORDER_LINE = re.compile(r"^(\d+)\s*:\s*(.+)$")

    # tied groups "{2,3}" mark weak orders
    TIE_GROUP = re.compile(r"[{}]")

    CANDIDATE_ID = re.compile(r"^\d+$")
