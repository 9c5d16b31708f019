import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import fields, forms
from foliage import fixtures as fx
from foliage.foliation import FoliationQ, omega_from_1d
from foliage.serialization import (
    check_format,
    dumps,
    field_from_json,
    field_to_json,
    foliation_from_json,
    foliation_to_json,
    form_from_json,
    form_to_json,
    map_from_json,
    map_to_json,
    point_from_json,
    point_to_json,
    rational_from_json,
)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.data())
def test_form_json_round_trip(q, data):
    a = data.draw(forms(3, q))
    obj = json.loads(dumps(form_to_json(a)))
    assert form_from_json(obj) == a


@settings(max_examples=30, deadline=None)
@given(fields(3))
def test_field_json_round_trip(X):
    assert field_from_json(json.loads(dumps(field_to_json(X)))) == X


def test_form_json_normalizes_index_order():
    obj = {"nvars": 3, "formdeg": 2, "comps": [{"idx": [1, 0], "poly": "x2"}]}
    a = form_from_json(obj)
    assert form_to_json(a)["comps"] == [{"idx": [0, 1], "poly": "-x2"}]
    with pytest.raises(ValueError):
        form_from_json({"nvars": 3, "formdeg": 2, "comps": [{"idx": [0], "poly": "1"}]})


def test_map_and_foliation_round_trip():
    f = fx.binomial_map(3)
    g = map_from_json(map_to_json(f))
    assert g.comps == f.comps and (g.n, g.m, g.nu) == (3, 2, 3)
    G = fx.acceptance_foliation(2)
    assert foliation_from_json(foliation_to_json(G)) == G
    Q = FoliationQ(omega_from_1d(G))
    assert foliation_from_json(foliation_to_json(Q)).eta == Q.eta


def test_points_and_rationals():
    assert point_from_json("1:1:1:1/2") == (1, 1, 1, Fraction(1, 2))
    assert point_from_json(["1", 2, "-3/4"]) == (1, 2, Fraction(-3, 4))
    assert point_to_json((1, Fraction(1, 2))) == ["1", "1/2"]
    with pytest.raises(ValueError):
        rational_from_json(0.5)
    with pytest.raises(ValueError):
        point_from_json([])


def test_format_version():
    check_format({"format": 1})
    with pytest.raises(ValueError):
        check_format({"format": 2})


def test_dumps_is_deterministic():
    a = dumps({"b": 1, "a": [1, 2]})
    assert a == dumps({"a": [1, 2], "b": 1}) and a.endswith("\n")
