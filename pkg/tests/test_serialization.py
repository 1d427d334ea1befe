"""JSON model specifications."""

import json
from fractions import Fraction

import pytest

from gemdist.errors import DomainError, EvenFunctionViolation
from gemdist.model import GemModel
from gemdist.serialization import load_spec, model_from_dict, model_to_dict, parse_spec
from gemdist.transforms import Linear, Power, TransformedDistribution


class TestRoundTrip:
    @pytest.mark.parametrize("mdl", [
        GemModel("II", 1.5, 0.7, 1.3),
        GemModel("I", Fraction(2, 3), Fraction(4, 5), 0.9),
        GemModel("III", 0, 2, 0.5, a=1.0, b=2.0),
        GemModel("IV", -0.4, 2.2, 0.6, a=-1.0, b=0.5),
        GemModel("III", 0, 1, 2.0, a=0.0, b=1.0, abs_form=True),
    ])
    def test_model(self, mdl):
        back = model_from_dict(json.loads(json.dumps(model_to_dict(mdl))))
        assert back == mdl

    def test_exact_exponents_survive(self):
        d = model_to_dict(GemModel("I", Fraction(2, 3), 2, 1.0))
        assert d["m"] == {"p": 2, "q": 3} and d["n"] == {"p": 2, "q": 1}


class TestParse:
    def test_exponent_forms_agree(self):
        a = parse_spec({"variant": "I", "m": "2/3", "n": 2, "beta": 1})
        b = parse_spec({"variant": "I", "m": {"p": 2, "q": 3}, "n": {"p": 2}, "beta": 1})
        assert a == b

    def test_named(self):
        mdl = parse_spec({"named": "gamma", "params": {"p": 3, "lambda": 2}})
        assert mdl.variant == "II" and mdl.beta == 2.0

    def test_transform_list(self):
        td = parse_spec({"named": "gamma", "params": {"p": 3, "lambda": 2},
                         "transform": [{"kind": "linear", "a": 1, "b": 2}, {"kind": "power", "c": 0.5}]})
        assert isinstance(td, TransformedDistribution)
        assert td.specs == (Linear(1.0, 2.0), Power(0.5))

    @pytest.mark.parametrize("obj", [
        {"variant": "II", "m": 1, "n": 1, "beta": 1, "scale": 2},
        {"variant": "II", "m": 1, "n": 1},
        {"named": "gamma", "params": {"p": 3, "lambda": 2}, "extra": 1},
        {"named": "gamma", "params": [3, 2]},
        {"variant": "II", "m": {"p": 1, "q": 0}, "n": 1, "beta": 1},
        {"variant": "II", "m": {"p": 1.5}, "n": 1, "beta": 1},
        {"variant": "II", "m": "one", "n": 1, "beta": 1},
        {"variant": "II", "m": True, "n": 1, "beta": 1},
        [1, 2],
    ])
    def test_rejected(self, obj):
        with pytest.raises(DomainError):
            parse_spec(obj)

    def test_parity_enforced(self):
        with pytest.raises(EvenFunctionViolation):
            parse_spec({"variant": "III", "m": 1, "n": 2, "beta": 1, "a": 0, "b": 1})

    def test_bad_json(self):
        with pytest.raises(DomainError):
            load_spec("{")
