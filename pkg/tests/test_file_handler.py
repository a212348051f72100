import numpy as np
import pytest

from vcm.exceptions import ProfileFormatError, RangeError
from vcm.models.profile import Alternative, DeterministicInstance, ProfileKind, ScoreProfile
from vcm.utils.file_handler import FileHandler
from vcm.utils.text_utils import TextProcessor


class TestProfileParsing:
    def test_table1a(self, table1a):
        assert table1a.approvals.n_voters == 6
        assert table1a.approvals.n_candidates == 8
        assert table1a.approvals.scores[0].tolist() == [1, 1, 0, 0, 1, 0, 0, 1]
        assert set(table1a.preferred) == {Alternative.ACCEPT}

    def test_general_profile(self, spatial):
        assert spatial.kind is ProfileKind.GENERAL
        assert spatial.scores[1].tolist() == [0.5, 1, 1, 1, 0.5]

    def test_comments_and_blank_lines_are_skipped(self):
        profile = FileHandler.parse_profile("# note\n\n2 2 approval\n1 0\n\n0 1\n")
        assert profile.scores.tolist() == [[1, 0], [0, 1]]

    def test_empty_file(self, fixtures_dir):
        with pytest.raises(ProfileFormatError, match="empty"):
            FileHandler.read_profile(fixtures_dir / "empty.csv")

    @pytest.mark.parametrize("header", ["2 2", "2 two approval", "2 2 ordinal", "0 2 approval"])
    def test_bad_header(self, header):
        with pytest.raises(ProfileFormatError) as info:
            FileHandler.parse_profile(f"{header}\n1 0\n0 1\n")
        assert info.value.line_number == 1

    def test_short_row_reports_its_line(self):
        with pytest.raises(ProfileFormatError) as info:
            FileHandler.parse_profile("# comment\n2 3 approval\n1 0 1\n1 0\n")
        assert info.value.line_number == 4

    def test_non_numeric_score(self):
        with pytest.raises(ProfileFormatError) as info:
            FileHandler.parse_profile("1 2 general\n0.5 high\n")
        assert info.value.line_number == 2

    def test_missing_rows(self):
        with pytest.raises(ProfileFormatError, match="expected 3 score rows"):
            FileHandler.parse_profile("3 2 approval\n1 0\n0 1\n")

    def test_approval_entries_must_be_binary(self):
        with pytest.raises(ProfileFormatError, match="0 or 1"):
            FileHandler.parse_profile("1 2 approval\n0.5 1\n")

    def test_scores_must_be_probabilities(self):
        with pytest.raises(ProfileFormatError):
            FileHandler.parse_profile("1 2 general\n1.5 0\n")


class TestInstances:
    def test_preferred_row(self):
        instance = FileHandler.parse_instance("2 2 approval\n1 0\n0 1\nA r\n")
        assert instance.preferred == (Alternative.ACCEPT, Alternative.REJECT)

    def test_bad_preferred_token(self):
        with pytest.raises(ProfileFormatError) as info:
            FileHandler.parse_instance("2 2 approval\n1 0\n0 1\nA X\n")
        assert info.value.line_number == 4

    def test_preferred_row_length(self):
        with pytest.raises(ProfileFormatError, match="A/R tokens"):
            FileHandler.parse_instance("2 2 approval\n1 0\n0 1\nA\n")

    def test_trailing_rows(self):
        with pytest.raises(ProfileFormatError, match="trailing"):
            FileHandler.parse_instance("1 2 approval\n1 0\nA\nR\n")

    def test_instance_needs_approvals(self, fixtures_dir):
        with pytest.raises(ProfileFormatError):
            FileHandler.read_instance(fixtures_dir / "spatial.csv")

    def test_source_kind_follows_the_file(self, data_dir, fixtures_dir):
        assert isinstance(FileHandler.read_source(data_dir / "table1a.csv"), ScoreProfile)
        rejecting = FileHandler.read_source(fixtures_dir / "table1b_rejecting.csv")
        assert isinstance(rejecting, DeterministicInstance)
        assert set(rejecting.preferred) == {Alternative.REJECT}

    def test_preferred_row_after_scores_is_rejected(self):
        with pytest.raises(ProfileFormatError):
            FileHandler.parse_source("1 2 general\n0.5 0.5\nA\n")


class TestSerialization:
    def test_instance_round_trip(self, fixtures_dir):
        instance = FileHandler.read_instance(fixtures_dir / "table1b_rejecting.csv")
        again = FileHandler.parse_instance(FileHandler.serialize_instance(instance))
        assert np.array_equal(again.approvals.scores, instance.approvals.scores)
        assert again.preferred == instance.preferred

    def test_general_scores_keep_their_precision(self, tmp_path):
        profile = ScoreProfile.from_rows([[1 / 3, 0.25], [0.0, 1.0]])
        path = tmp_path / "profile.csv"
        FileHandler.write_profile(profile, path)
        assert path.read_text().splitlines()[0] == "2 2 general"
        assert np.allclose(FileHandler.read_profile(path).scores, profile.scores, atol=1e-12)

    def test_latin1_file(self, tmp_path):
        path = tmp_path / "latin.csv"
        path.write_bytes("# \xe9lecteurs\n1 1 approval\n1\n".encode("latin-1"))
        assert FileHandler.read_profile(path).scores.tolist() == [[1.0]]


class TestTextProcessor:
    def test_committee_ids_are_one_based(self):
        assert TextProcessor.parse_committee("1, 3,c5").members == (0, 2, 4)

    @pytest.mark.parametrize("text", ["", "0,1", "1,x"])
    def test_bad_committee_lists(self, text):
        with pytest.raises(RangeError):
            TextProcessor.parse_committee(text)

    @pytest.mark.parametrize(
        "value, text",
        [(2 / 3, "0.666667"), (0.1234565, "0.123456"), (0.1234575, "0.123458"), (5, "5.000000")],
    )
    def test_format_real(self, value, text):
        assert TextProcessor.format_real(value) == text
