import pytest

from general.enum import TaggedEnum
from general.utils import INT64_MAX, ValidationReport, ValueOverflowError, bit_members, checked_sum, \
    ensure_folder_exist


class Shade(TaggedEnum):
    DARK = 'd', 0
    LIGHT = 'l', 1


class TestTaggedEnum:
    def test_tag(self):
        assert Shade.DARK.tag == 'd'
        assert Shade.tags() == ['d', 'l']

    def test_from_tag(self):
        assert Shade.from_tag('l') is Shade.LIGHT

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            Shade.from_tag('x')

    def test_str_is_name(self):
        assert str(Shade.DARK) == 'DARK'
        assert Shade.DARK.__getstate__() == 'DARK'


class TestCheckedSum:
    def test_sum(self):
        assert checked_sum([1, 2, 3]) == 6
        assert checked_sum([]) == 0

    def test_at_limit(self):
        assert checked_sum([INT64_MAX - 1, 1]) == INT64_MAX

    def test_overflow(self):
        with pytest.raises(ValueOverflowError, match='weight exceeds'):
            checked_sum([INT64_MAX, 1], 'weight')

    def test_overflow_is_overflow_error(self):
        with pytest.raises(OverflowError):
            checked_sum([INT64_MAX, INT64_MAX])


class TestValidationReport:
    def test_empty_is_ok(self):
        report = ValidationReport()
        assert report.ok
        assert bool(report)
        assert str(report) == 'ok'

    def test_violations(self):
        report = ValidationReport()
        report.add('vertex 3 uncovered')
        report.add('edge {0,1} uncovered')
        assert not report.ok
        assert 'vertex 3 uncovered' in report
        assert str(report) == 'vertex 3 uncovered; edge {0,1} uncovered'


class TestHelpers:
    @pytest.mark.parametrize('mask, members', [(0, []), (1, [0]), (0b1011, [0, 1, 3]), (1 << 40, [40])])
    def test_bit_members(self, mask, members):
        assert bit_members(mask) == members

    def test_ensure_folder_exist(self, tmp_path):
        target = tmp_path / 'a' / 'b' / 'file.txt'
        ensure_folder_exist(str(target))
        assert target.parent.is_dir()
        ensure_folder_exist(str(target))
