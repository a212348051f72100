# vcm/utils/file_handler.py
"""
Reading and writing the plain-text profile format

    n m kind
    <n rows of m space-separated scores>
    [one row of n A/R tokens]          (deterministic instances only)
"""
import logging
from pathlib import Path
from typing import List, Optional, Union

import numpy as np
from pydantic import ValidationError

from vcm.exceptions import ProfileFormatError
from vcm.models.profile import Alternative, DeterministicInstance, ProfileKind, ScoreProfile

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class FileHandler:
    """Parses and serializes score profiles and deterministic instances"""

    ENCODINGS = ("utf-8", "latin-1", "cp1252")

    @staticmethod
    def read_text_file(path: PathLike) -> str:
        content = Path(path).read_bytes()
        for encoding in FileHandler.ENCODINGS:
            try:
                return content.decode(encoding)
            except UnicodeDecodeError:
                continue
        raise ProfileFormatError(f"unable to decode {path}")

    @staticmethod
    def _content_lines(text: str) -> List[tuple]:
        """(line number, stripped line) for every non-blank, non-comment line"""
        lines = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                lines.append((number, line))
        return lines

    @classmethod
    def _parse(cls, text: str):
        lines = cls._content_lines(text)
        if not lines:
            raise ProfileFormatError("empty profile")

        number, header = lines[0]
        parts = header.split()
        if len(parts) != 3:
            raise ProfileFormatError("header must read 'n m kind'", number)
        try:
            n, m = int(parts[0]), int(parts[1])
            kind = ProfileKind(parts[2].lower())
        except ValueError as e:
            raise ProfileFormatError(f"bad header '{header}'", number) from e
        if n < 1 or m < 1:
            raise ProfileFormatError("profile must have at least one voter and one candidate", number)

        body = lines[1:]
        if len(body) < n:
            raise ProfileFormatError(f"expected {n} score rows, found {len(body)}")

        rows = []
        for number, line in body[:n]:
            tokens = line.split()
            if len(tokens) != m:
                raise ProfileFormatError(f"expected {m} scores, found {len(tokens)}", number)
            try:
                rows.append([float(t) for t in tokens])
            except ValueError as e:
                raise ProfileFormatError(f"non-numeric score in '{line}'", number) from e

        try:
            profile = ScoreProfile(scores=np.asarray(rows, dtype=float), kind=kind)
        except ValidationError as e:
            raise ProfileFormatError(e.errors()[0]["msg"]) from e

        preferred = None
        extra = body[n:]
        if len(extra) > 1:
            raise ProfileFormatError("unexpected trailing rows", extra[1][0])
        if extra:
            number, line = extra[0]
            tokens = line.split()
            if len(tokens) != n:
                raise ProfileFormatError(f"expected {n} A/R tokens, found {len(tokens)}", number)
            try:
                preferred = tuple(Alternative(t.upper()) for t in tokens)
            except ValueError as e:
                raise ProfileFormatError(f"preferred alternatives must be A or R: '{line}'", number) from e
        return profile, preferred

    @classmethod
    def parse_profile(cls, text: str) -> ScoreProfile:
        profile, _ = cls._parse(text)
        return profile

    @classmethod
    def parse_instance(cls, text: str) -> DeterministicInstance:
        """Approval profile plus A/R row; a missing row means every voter prefers Accept"""
        profile, preferred = cls._parse(text)
        if profile.kind is not ProfileKind.APPROVAL:
            raise ProfileFormatError("deterministic instances need an approval profile")
        if preferred is None:
            logger.debug("No preferred-alternative row, defaulting every voter to Accept")
            return DeterministicInstance.acceptance_oriented(profile)
        return DeterministicInstance(approvals=profile, preferred=preferred)

    @classmethod
    def parse_source(cls, text: str) -> Union[ScoreProfile, DeterministicInstance]:
        """Instance when the A/R row is present, plain profile otherwise"""
        profile, preferred = cls._parse(text)
        if preferred is None:
            return profile
        if profile.kind is not ProfileKind.APPROVAL:
            raise ProfileFormatError("an A/R row is only allowed after an approval profile")
        return DeterministicInstance(approvals=profile, preferred=preferred)

    @classmethod
    def read_source(cls, path: PathLike) -> Union[ScoreProfile, DeterministicInstance]:
        return cls.parse_source(cls.read_text_file(path))

    @classmethod
    def read_profile(cls, path: PathLike) -> ScoreProfile:
        return cls.parse_profile(cls.read_text_file(path))

    @classmethod
    def read_instance(cls, path: PathLike) -> DeterministicInstance:
        return cls.parse_instance(cls.read_text_file(path))

    @staticmethod
    def _format_score(value: float, kind: ProfileKind) -> str:
        if kind is ProfileKind.APPROVAL:
            return str(int(value))
        return f"{value:.12g}"

    @classmethod
    def serialize_profile(cls, profile: ScoreProfile, preferred: Optional[tuple] = None) -> str:
        lines = [f"{profile.n_voters} {profile.n_candidates} {profile.kind.value}"]
        for row in profile.scores:
            lines.append(" ".join(cls._format_score(v, profile.kind) for v in row))
        if preferred is not None:
            lines.append(" ".join(alt.value for alt in preferred))
        return "\n".join(lines) + "\n"

    @classmethod
    def serialize_instance(cls, instance: DeterministicInstance) -> str:
        return cls.serialize_profile(instance.approvals, instance.preferred)

    @classmethod
    def write_profile(cls, profile: ScoreProfile, path: PathLike) -> None:
        Path(path).write_text(cls.serialize_profile(profile), encoding="utf-8")
