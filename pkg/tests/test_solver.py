import random
from fractions import Fraction as F

import pytest

from helpers import rand_formula, rand_metric_space, rand_model, rand_sequent

from nexfuz.lp import CapExceeded
from nexfuz.logics import get_logic
from nexfuz.models import check_sequent, eval_formula
from nexfuz.numerics import Comp, Interval
from nexfuz.onestep import OneStepLogic
from nexfuz.sequents import Sequent
from nexfuz.solver import SolveStats, SolverCaps, sat, sat_threshold
from nexfuz.syntax import modal_depth, parse


def iv(lo, hi, lo_open=False, hi_open=False):
    return Interval.make(F(lo), F(hi), lo_open, hi_open)


ALC = get_logic("alc")


class TestBasics:
    def test_zero_point_sat(self):
        assert sat(Sequent([(parse("0"), iv(0, 0))]), ALC).sat

    def test_zero_positive_unsat(self):
        assert not sat(Sequent([(parse("0"), iv(0, 1, lo_open=True))]), ALC).sat

    def test_min_negation_ceiling(self):
        assert not sat(Sequent([(parse("a & ~a"), iv("1/2", 1, lo_open=True))]), ALC).sat

    def test_worked_diamond_example(self):
        seq = Sequent([(parse("dia a & ~(dia a)"), iv("1/2", 1))])
        verdict = sat(seq, ALC)
        assert verdict.sat
        assert check_sequent(verdict.model, verdict.state, seq)
        # the root transition structure is forced to degree exactly 1/2
        row = verdict.model.successors(verdict.state)
        assert F(1, 2) in row.values()

    def test_threshold_wrappers(self):
        assert sat_threshold(parse("a"), Comp.GE, F(0), ALC).sat
        assert not sat_threshold(parse("0"), Comp.GT, F(0), ALC).sat
        v = sat_threshold(parse("G a"), Comp.GE, F(1, 2), get_logic("lgen"))
        assert v.sat
        assert eval_formula(v.model, v.state, parse("G a")) >= F(1, 2)

    def test_unknown_modality_rejected(self):
        with pytest.raises(ValueError):
            sat_threshold(parse("G a"), Comp.GE, F(1, 2), ALC)

    def test_cap_exceeded_is_not_unsat(self):
        caps = SolverCaps(max_layer_literals=1)
        seq = Sequent([(parse("dia a & dia b"), iv(0, 1))])
        with pytest.raises(CapExceeded):
            sat(seq, ALC, caps=caps)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("NEXFUZ_MAX_LITERALS", "1")
        assert SolverCaps.from_env().max_layer_literals == 1
        seq = Sequent([(parse("dia a & dia b"), iv(0, 1))])
        with pytest.raises(CapExceeded):
            sat(seq, ALC)

    def test_expectation_modality_rejected(self):
        with pytest.raises(ValueError, match="arithmetically entangled"):
            get_logic("probably")
        with pytest.raises(ValueError, match="unknown logic"):
            get_logic("nope")


class TestWitnesses:
    def test_every_sat_witness_checks(self):
        rng = random.Random(71)
        for logic_name in ("alc", "lgen", "mp"):
            logic = get_logic(logic_name)
            done = 0
            while done < 25:
                seq = rand_sequent(rng, logic_name, depth=2, max_den=8)
                done += 1
                verdict = sat(seq, logic)
                if verdict.sat:
                    assert check_sequent(verdict.model, verdict.state, seq)

    def test_metric_witnesses(self):
        rng = random.Random(72)
        done = 0
        while done < 20:
            space = rand_metric_space(rng)
            crisp = rng.random() < 0.5
            name = "metric-crisp" if crisp else "metric-fuzzy"
            logic = get_logic(name, space)
            seq = rand_sequent(rng, name, depth=2, space=space, max_den=8)
            done += 1
            verdict = sat(seq, logic)
            if verdict.sat:
                assert check_sequent(verdict.model, verdict.state, seq)
                verdict.model.validate()

    def test_deterministic(self):
        seq = Sequent([(parse("dia (a - 1/4) & ~dia b"), iv("1/4", "3/4"))])
        a = sat(seq, ALC)
        b = sat(seq, ALC)
        assert a.sat == b.sat
        assert a.model.to_json() == b.model.to_json()


class TestModelFirstCompleteness:
    def _run(self, logic_name, seed, cases=30):
        rng = random.Random(seed)
        space = None
        kind = {"alc": "fuzzyrel", "lgen": "prob", "mp": "prob"}.get(logic_name)
        done = 0
        while done < cases:
            if kind is None:
                space = rand_metric_space(rng)
                model_kind = "metric-crisp" if logic_name == "metric-crisp" else "metric"
                model = rand_model(rng, model_kind, rng.randint(1, 4), space=space, max_den=8)
            else:
                model = rand_model(rng, kind, rng.randint(1, 4), max_den=8)
            logic = get_logic(logic_name, space)
            f = rand_formula(rng, logic_name, depth=2, space=space, max_den=8)
            x = model.states[0]
            value = eval_formula(model, x, f)
            done += 1
            seq = Sequent([(f, Interval.point(value))])
            verdict = sat(seq, logic)
            assert verdict.sat, f"point sequent for {f} = {value} reported UNSAT"
            assert check_sequent(verdict.model, verdict.state, seq)

    def test_alc(self):
        self._run("alc", 81)

    def test_lgen(self):
        self._run("lgen", 82)

    def test_mp(self):
        self._run("mp", 83)

    def test_metric(self):
        self._run("metric-fuzzy", 84, cases=20)

    def test_metric_crisp(self):
        self._run("metric-crisp", 85, cases=20)


class NaiveWrapper(OneStepLogic):
    """Hides an instance's `search` override so the default conclusion
    enumeration runs; used to check the fast paths stay equivalent."""

    def __init__(self, inner):
        self.inner = inner
        self.name = inner.name
        self.kind = inner.kind
        self.space = getattr(inner, "space", None)

    def supports(self, op):
        return self.inner.supports(op)

    def conclusions(self, gamma):
        return self.inner.conclusions(gamma)

    def realize(self, gamma, conclusion, tau):
        return self.inner.realize(gamma, conclusion, tau)


class TestSearchParity:
    def test_fast_paths_match_naive_enumeration(self):
        for name in ("lgen", "mp", "metric-fuzzy", "metric-crisp"):
            rng = random.Random(999)
            done = 0
            while done < 25:
                space = rand_metric_space(rng) if name.startswith("metric") else None
                seq = rand_sequent(rng, name, depth=2, space=space, max_den=8,
                                   layer_budget=2)
                done += 1
                fast = sat(seq, get_logic(name, space), verify=False)
                slow = sat(seq, NaiveWrapper(get_logic(name, space)), verify=False)
                assert fast.sat == slow.sat, (name, seq)
                for verdict in (fast, slow):
                    if verdict.sat:
                        assert check_sequent(verdict.model, verdict.state, seq)


class TestRecursionShape:
    def test_depth_bounded_by_modal_depth(self):
        rng = random.Random(91)
        for _ in range(30):
            seq = rand_sequent(rng, "alc", depth=3, max_den=8)
            depth = max((modal_depth(f) for f, _ in seq.items()), default=0)
            stats = SolveStats()
            sat(seq, ALC, stats=stats)
            assert stats.max_depth <= depth

    def test_atoms_transparency(self):
        rng = random.Random(92)
        for _ in range(20):
            seq = rand_sequent(rng, "lgen", depth=2, max_den=8)
            base = sat(seq, get_logic("lgen")).sat
            again = sat(seq, get_logic("lgen")).sat  # fresh instance, extra atoms unused
            assert base == again
