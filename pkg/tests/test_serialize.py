import json
from fractions import Fraction

import pytest

from conftest import catalog
from seqchain.errors import ParseError
from seqchain.sequences import FiniteRational, combine, restrict, spread
from seqchain.serialize import canonical_json, sequence_from_spec
from seqchain.supports import Arith, PowersOfTwo

F = Fraction


def roundtrip(seq):
    return sequence_from_spec(seq.spec())


@pytest.mark.parametrize("name", sorted(catalog()), ids=str)
def test_catalog_specs_roundtrip_pointwise(name):
    seq = catalog()[name]
    again = roundtrip(seq)
    for n in range(40):
        assert seq.term(n, 30) == again.term(n, 30)


def test_composite_spec_roundtrip():
    base = FiniteRational({0: (F(1), F(-2)), 3: F(5, 7)})
    built = combine(
        [(F(1, 2), F(1))],
        [spread(restrict(catalog()["gap-lp-cap-1"], Arith(0, 2)), PowersOfTwo())],
    )
    for seq in (base, built):
        again = roundtrip(seq)
        for n in range(25):
            assert seq.term(n, 30) == again.term(n, 30)


def test_spec_accepts_json_text():
    seq = sequence_from_spec('{"kind":"finite","entries":[[2,"-1/3","0/1"]]}')
    assert seq.entries == {2: (F(-1, 3), F(0))}


def test_bad_specs_raise_parse_errors():
    with pytest.raises(ParseError):
        sequence_from_spec("{oops")
    with pytest.raises(ParseError):
        sequence_from_spec({"kind": "mystery"})
    with pytest.raises(ParseError):
        sequence_from_spec({"kind": "family", "name": "nope"})
    with pytest.raises(ParseError):
        sequence_from_spec({"kind": "family", "name": "rem29", "params": {}})
    with pytest.raises(ParseError):
        sequence_from_spec({"kind": "finite", "entries": [[0, "1/0", "0/1"]]})


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as err:
        sequence_from_spec("{not json")
    assert err.value.position is not None


def test_canonical_json_is_stable():
    payload = {"b": [1, 2], "a": {"y": "1/2", "x": 3}}
    once = canonical_json(payload)
    assert once == canonical_json(json.loads(once))
    assert once.endswith("\n")
