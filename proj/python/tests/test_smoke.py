import json
from fractions import Fraction

import pytest

import erldp


def test_law_of_three_vertices():
    law = dict((tuple(sorted(c.items())), q) for c, q in erldp.cluster_law_exact(3, "1/2"))
    assert law[((3, 1),)] == Fraction(1, 2)
    assert law[((1, 1), (2, 1))] == Fraction(3, 8)
    assert law[((1, 3),)] == Fraction(1, 8)
    assert sum(law.values()) == 1


def test_exact_values_accept_fractions():
    assert erldp.connected_probability_exact(2, Fraction(1, 3)) == Fraction(1, 3)
    assert erldp.connected_count(5, 4) == 125


def test_regime_and_errors():
    r = erldp.Regime.from_gamma(10**6, 0.4, 0.0)
    assert r.p == pytest.approx(1e-6)
    with pytest.raises(erldp.Error):
        erldp.Regime(4, 10.0, 5.0)


def test_rate_and_metric():
    assert erldp.rate_function([], 1.0) == 1.0 / 6.0
    assert erldp.rate_function([1.0], 1.0) == 0.125
    assert erldp.vague_distance([0.5], [0.6]) == pytest.approx(0.05)


def test_simulator_is_deterministic():
    r = erldp.Regime(50, 1.0, 0.0)
    a = erldp.estimate_event(r, "below:10", 2000, seed=3, workers=1, p=0.02)
    b = erldp.estimate_event(r, "below:10", 2000, seed=3, workers=4, p=0.02)
    assert a == b
    counts = erldp.sample_er(100, 0.01, 7)
    assert sum(k * v for k, v in counts.items()) == 100


def test_cli_roundtrip():
    rc, out, err = erldp.dispatch(["ldp", "rate", "--atoms", "", "--theta", "1"])
    assert rc == 0 and err == ""
    assert json.loads(out)["rate"] == pytest.approx(1 / 6)
    rc, _, err = erldp.dispatch(["oracle", "conn", "--K", "0", "--p", "1/2"])
    assert rc == 2 and err.startswith("error:")
