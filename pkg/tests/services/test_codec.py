"""
JSON 문서 코덱 테스트

목표:
- 인라인 JSON / @경로 입력과 오류 위치 정보
- 체 원소 좌표 표기, 격자 정규화, 도표 크기 검증
"""
import json

import pytest

from app.algebra.coweight import Coweight
from app.lattice.lattice import Lattice
from app.models.schemas import DiagramDoc, LatticeDoc, TowerDoc
from app.services import codec
from app.utils.errors import InvalidInputError


def test_load_inline_and_file(tmp_path):
    path = tmp_path / "doc.json"
    path.write_text('{"p": 3}', encoding="utf-8")
    assert codec.load_json('{"p": 2}') == {"p": 2}
    assert codec.load_json(f"@{path}") == {"p": 3}


def test_malformed_json_reports_position():
    with pytest.raises(InvalidInputError) as e:
        codec.load_json('{"p": 2,\n "e": }')
    assert e.value.detail["source"] == "<inline>"
    assert e.value.detail["line"] == 2


def test_missing_file_is_invalid_input(tmp_path):
    with pytest.raises(InvalidInputError) as e:
        codec.load_json(f"@{tmp_path / 'nope.json'}")
    assert e.value.detail["path"].endswith("nope.json")


def test_schema_violation_lists_errors():
    with pytest.raises(InvalidInputError) as e:
        codec.validate_doc(TowerDoc, {"p": 1, "m": 0})
    assert len(e.value.detail["errors"]) == 2


def test_coweight_parsing():
    assert codec.parse_coweight("1/2, 1/2") == Coweight.of(["1/2", "1/2"])
    assert codec.parse_coweight("[1, 0]") == Coweight.of([1, 0])
    assert codec.parse_graded_coweight("1,0;1,0") == [Coweight.of([1, 0])] * 2
    with pytest.raises(InvalidInputError):
        codec.parse_coweight("1/0,1")
    with pytest.raises(InvalidInputError):
        codec.parse_coweight("a,b")


def test_int_list_parsing():
    assert codec.parse_ints(None) is None
    assert codec.parse_ints("0, 1") == [0, 1]
    assert codec.parse_ints("0;2") == [0, 2]
    with pytest.raises(InvalidInputError):
        codec.parse_ints("0,x")


def test_coefficients_are_prime_field_coordinates(tower_f4):
    # 정수는 k mod p, 짧은 좌표 리스트는 0 으로 채운다
    assert codec.coeff_from_doc(tower_f4, 3) == 1
    assert codec.coeff_from_doc(tower_f4, [0, 1]) == 2
    assert codec.coeff_from_doc(tower_f4, [1]) == 1
    assert codec.coeff_to_doc(tower_f4, 2) == [0, 1]
    with pytest.raises(InvalidInputError):
        codec.coeff_from_doc(tower_f4, [1, 0, 1])


def test_lattice_is_normalized_on_input(tower_f2):
    # 열 (1, 0), (1, 1) 은 Λ_0 을 생성한다
    doc = LatticeDoc.model_validate({
        "base": {"p": 2},
        "basis": [[[[0, 1]], [[0, 1]]], [[], [[0, 1]]]],
    })
    M = codec.lattice_from_doc(doc)
    assert M == Lattice.standard(M.tower, 2)
    again = codec.lattice_from_doc(LatticeDoc.model_validate(codec.lattice_to_doc(M).model_dump()))
    assert again == M


def test_singular_basis_is_rejected():
    doc = LatticeDoc.model_validate({"base": {"p": 2}, "basis": [[[[0, 1]], [[0, 1]]], [[[0, 1]], [[0, 1]]]]})
    with pytest.raises(InvalidInputError):
        codec.lattice_from_doc(doc)


def test_diagram_maps_must_be_square():
    doc = DiagramDoc.model_validate({
        "base": {"p": 2, "m": 2},
        "f": 1,
        "m": 2,
        "maps": [{"phi": [[0, 1]], "sigma": 1, "psi": [[0, 1], [0, 0]], "tau": -1}],
    })
    with pytest.raises(InvalidInputError) as e:
        codec.diagram_from_doc(doc)
    assert e.value.detail == {"index": 0}


def test_dump_json_sorts_keys_and_keeps_unicode():
    assert codec.dump_json({"b": 1, "a": "μ"}) == '{"a": "μ", "b": 1}'
    assert json.loads(codec.dump_json(TowerDoc(p=2))) == {"p": 2, "e": 1, "m": 1}
