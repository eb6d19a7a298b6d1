import random
from fractions import Fraction as F

from helpers import onestep_modal_value, rand_interval, rand_rational

from nexfuz.liftings import diamond_value
from nexfuz.logics import get_logic
from nexfuz.numerics import EMPTY, Interval, UNIT
from nexfuz.sequents import Sequent
from nexfuz.syntax import Diamond, Modal, Var


def iv(lo, hi, lo_open=False, hi_open=False):
    return Interval.make(F(lo), F(hi), lo_open, hi_open)


def lit(i):
    return Modal(Diamond(), Var(f"v{i}"))


def gamma_of(*intervals):
    return Sequent((lit(i + 1), interval) for i, interval in enumerate(intervals))


LOGIC = get_logic("alc")


class TestConclusions:
    def test_disjoint_pair_triggers_upper_bound(self):
        gamma = gamma_of(iv("3/5", 1), iv(0, "2/5"))
        (c,) = LOGIC.conclusions(gamma)
        q1, q2 = c.sequents
        assert q1[Var("v1")] == iv("3/5", 1)
        assert q1[Var("v2")] == iv(0, "2/5")
        assert q2[Var("v1")] == UNIT
        assert q2[Var("v2")] == UNIT

    def test_touching_endpoints_do_not_trigger(self):
        gamma = gamma_of(iv("1/2", 1), iv(0, "1/2"))
        (c,) = LOGIC.conclusions(gamma)
        q1, q2 = c.sequents
        assert q1[Var("v1")] == iv("1/2", 1)
        assert q1[Var("v2")] == UNIT
        assert q2[Var("v1")] == UNIT
        assert q2[Var("v2")] == UNIT

    def test_empty_literal_no_conclusions(self):
        assert list(LOGIC.conclusions(gamma_of(EMPTY))) == []

    def test_empty_gamma_single_empty_conclusion(self):
        (c,) = LOGIC.conclusions(Sequent())
        assert c.sequents == ()


class TestRealize:
    def _tau_mid(self, conclusion):
        return lambda j, v: conclusion.sequents[j][v].pick()

    def test_forced_degree_at_touching_endpoints(self):
        gamma = gamma_of(iv("1/2", 1), iv(0, "1/2"))
        (c,) = LOGIC.conclusions(gamma)
        witness = LOGIC.realize(gamma, c, self._tau_mid(c))
        assert witness.edges[0] == F(1, 2)

    def test_midpoint_for_slack(self):
        gamma = gamma_of(iv("3/5", 1), iv(0, "2/5"))
        (c,) = LOGIC.conclusions(gamma)
        witness = LOGIC.realize(gamma, c, self._tau_mid(c))
        assert witness.edges[0] == F(4, 5)

    def test_unconstrained_single_literal(self):
        gamma = gamma_of(UNIT)
        (c,) = LOGIC.conclusions(gamma)
        witness = LOGIC.realize(gamma, c, self._tau_mid(c))
        assert witness.edges[0] == F(1, 2)


class TestRoundTrip:
    """Any successor values inside the conclusion's intervals, together with
    the realized degrees, evaluate every literal back into its interval."""

    def test_randomized(self):
        rng = random.Random(201)
        trials = 0
        while trials < 400:
            n = rng.randint(1, 4)
            gamma = gamma_of(*(rand_interval(rng) for _ in range(n)))
            if any(i.is_empty for _, i in gamma.items()):
                continue
            trials += 1
            (c,) = LOGIC.conclusions(gamma)
            tau = {
                (j, v): _pick_random(rng, c.sequents[j][v])
                for j in range(n)
                for v in c.sequents[j]
            }
            witness = LOGIC.realize(gamma, c, lambda j, v: tau[(j, v)])
            for op, var, interval in _literals(gamma):
                value = onestep_modal_value(
                    op, [tau[(j, var)] for j in range(n)], list(witness.edges)
                )
                assert interval.contains(value)


class TestSoundness:
    """Random one-step models satisfying gamma realize the conclusion."""

    def test_sampled_models(self):
        rng = random.Random(202)
        hits = 0
        for _ in range(4000):
            n = rng.randint(1, 3)
            states = rng.randint(1, 3)
            degrees = [rand_rational(rng, 8) for _ in range(states)]
            tau = {
                (x, f"v{i+1}"): rand_rational(rng, 8)
                for x in range(states)
                for i in range(n)
            }
            values = {}
            for i in range(n):
                values[i] = diamond_value(
                    [(degrees[x], tau[(x, f"v{i+1}")]) for x in range(states)]
                )
            intervals = [_interval_around(rng, values[i]) for i in range(n)]
            gamma = gamma_of(*intervals)
            hits += 1
            (c,) = LOGIC.conclusions(gamma)
            for q in c.sequents:
                assert any(
                    all(q[Var(f"v{i+1}")].contains(tau[(x, f"v{i+1}")]) for i in range(n))
                    for x in range(states)
                ), f"unrealized sequent {q} for gamma {gamma}"
        assert hits > 0


def _literals(gamma):
    out = []
    for label, interval in gamma.items():
        out.append((label.op, label.arg, interval))
    return out


def _pick_random(rng, interval):
    if interval.is_point:
        return interval.lo
    # A rational strictly inside, or an allowed endpoint.
    candidates = [interval.lo + (interval.hi - interval.lo) * F(k, 8) for k in range(9)]
    candidates = [q for q in candidates if interval.contains(q)]
    return rng.choice(candidates)


def _interval_around(rng, value):
    lo = value - rand_rational(rng, 8) / 4
    hi = value + rand_rational(rng, 8) / 4
    lo = max(F(0), lo)
    hi = min(F(1), hi)
    return Interval.make(lo, hi)
