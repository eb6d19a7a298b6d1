import json
from fractions import Fraction as F

import pytest

from nexfuz.numerics import EMPTY, Interval, UNIT
from nexfuz.sequents import Sequent, SequentError
from nexfuz.syntax import Atom, parse

A = Atom("a")
B = Atom("b")


def iv(lo, hi, lo_open=False, hi_open=False):
    return Interval.make(F(lo), F(hi), lo_open, hi_open)


class TestInsert:
    def test_merges_by_intersection(self):
        s = Sequent([(A, iv(0, "1/2"))]).insert(A, iv("1/2", 1))
        assert s[A] == iv("1/2", "1/2")

    def test_merge_to_empty_is_kept(self):
        s = Sequent([(A, iv("1/2", 1))]).insert(A, iv(0, "2/5", hi_open=True))
        assert s[A] == EMPTY
        assert A in s

    def test_fresh_label(self):
        s = Sequent().insert(B, UNIT)
        assert s[B] == UNIT and len(s) == 1

    def test_constructor_merges(self):
        s = Sequent([(A, iv(0, "1/2")), (A, iv("1/4", 1))])
        assert s[A] == iv("1/4", "1/2")


class TestSubsequent:
    def test_point_in_unit(self):
        narrow = Sequent([(A, iv("1/2", "1/2"))])
        wide = Sequent([(A, UNIT)])
        assert narrow.is_subsequent(wide)
        assert not wide.is_subsequent(narrow)

    def test_empty_in_anything(self):
        assert Sequent([(A, EMPTY)]).is_subsequent(Sequent([(A, iv(0, 0))]))

    def test_label_mismatch_is_an_error(self):
        with pytest.raises(SequentError):
            Sequent([(A, UNIT)]).is_subsequent(Sequent([(B, UNIT)]))

    def test_partial_order(self):
        s = Sequent([(A, iv("1/4", "3/4")), (B, iv(0, "1/2"))])
        t = Sequent([(A, iv(0, 1)), (B, iv(0, "1/2"))])
        assert s.is_subsequent(s)
        assert s.is_subsequent(t) and not t.is_subsequent(s)


class TestCombinedSize:
    def test_zero_literal(self):
        s = Sequent([(parse("0"), UNIT)])
        assert s.combined_size() == 8  # 1 + (1+1)+(1+1) + 3

    def test_empty_sequent(self):
        assert Sequent().combined_size() == 0

    def test_additive(self):
        s1 = Sequent([(A, iv("1/2", 1))])
        s2 = Sequent([(B, iv(0, "3/4"))])
        both = Sequent(list(s1.items()) + list(s2.items()))
        assert both.combined_size() == s1.combined_size() + s2.combined_size()


class TestEquality:
    def test_order_insensitive(self):
        s = Sequent([(A, UNIT), (B, iv(0, 0))])
        t = Sequent([(B, iv(0, 0)), (A, UNIT)])
        assert s == t and hash(s) == hash(t)

    def test_exactness(self):
        s = Sequent([(A, UNIT)])
        assert s.is_exact_over([A])
        assert not s.is_exact_over([A, B])


class TestJson:
    def test_round_trip(self):
        s = Sequent([(parse("dia a & ~b"), iv("1/3", 1, lo_open=True)), (B, EMPTY)])
        assert Sequent.from_json(json.loads(s.dumps())) == s

    def test_shape(self):
        s = Sequent([(A, iv("1/2", 1))])
        assert s.to_json() == {"literals": [{"formula": "a", "interval": "[1/2,1]"}]}

    def test_bad_payload(self):
        with pytest.raises(SequentError):
            Sequent.from_json({"nope": []})
