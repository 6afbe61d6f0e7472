"""
Adm(μ), 파라호릭 사영, μ-허용 집합과 사슬 쌍 이중잉여류 테스트
"""
import warnings
from pathlib import Path

import pytest

import app.weyl.admissible as admissible_module
from app.lattice.chain import standard_chain
from app.utils.errors import InvalidInputError
from app.weyl.admissible import (
    adm_set,
    chain_inv_admissible,
    chain_pair_label,
    double_coset_rep,
    monomial_chain,
    perm_set,
    realised_double_cosets,
    subspaces,
)
from app.weyl.affine import identity, translation


@pytest.mark.parametrize(
    "mu, group, expected",
    [
        ([1, 0], "gl", 3),
        ([1, 0, 0], "gl", 7),
        ([1, 1, 0, 0], "gsp", 13),
        ([1, 1, 0, 0], "gl", 33),
    ],
)
def test_iwahori_admissible_set_sizes(mu, group, expected):
    assert len(adm_set(mu, group)) == expected


def test_gsp_minuscule_matches_gl_intersection():
    adm = adm_set([1, 1, 0, 0], "gsp")
    assert "intersection rule verified" in adm.notes
    assert not adm.flagged
    assert all(x.group == "gsp" for x in adm.elements)


def test_non_minuscule_gsp_is_flagged():
    adm = adm_set([2, 0], "gsp")
    assert adm.flagged
    assert translation([2, 0], "gsp") in adm


def test_hyperspecial_projection_collapses_minuscule_adm():
    assert len(adm_set([1, 0], "gl", [0])) == 1
    assert len(adm_set([1, 0, 0], "gl", [0])) == 1


def test_double_coset_rep_is_idempotent():
    x = translation([0, 1, 0])
    rep = double_coset_rep(x, [0])
    assert double_coset_rep(rep, [0]) == rep
    assert rep.length <= x.length


def test_type_must_be_symmetric_for_gsp():
    with pytest.raises(InvalidInputError):
        adm_set([1, 1, 0, 0], "gsp", [0, 1])


def test_permissible_equals_admissible_for_gl2(tower_f2):
    assert perm_set([1, 0], "gl", [0, 1], tower_f2) == adm_set([1, 0], "gl", [0, 1]).elements


def test_permissible_equals_admissible_for_gl3_hyperspecial(tower_f2):
    assert perm_set([1, 0, 0], "gl", [0], tower_f2) == adm_set([1, 0, 0], "gl", [0]).elements


def test_realised_double_cosets_for_gl2(tower_f2):
    assert realised_double_cosets([1, 0], "gl", [0, 1], tower_f2) == adm_set([1, 0], "gl", [0, 1]).elements


def test_monomial_chain_pair_label_roundtrip(tower_f2):
    types = [0, 1]
    base = standard_chain(tower_f2, 2, types)
    for x in adm_set([1, 0], "gl", types).elements:
        other = monomial_chain(x, tower_f2, types)
        assert chain_pair_label(base, other) == x
        assert chain_inv_admissible(base, other, [1, 0])


def test_identity_pair_is_not_admissible_for_omega(tower_f2):
    base = standard_chain(tower_f2, 2, [0, 1])
    assert chain_pair_label(base, base) == identity(2)
    assert not chain_inv_admissible(base, base, [1, 0])


def test_subspace_count_over_f2(tower_f2):
    assert len(list(subspaces(tower_f2.field, 3, 1))) == 7
    assert len(list(subspaces(tower_f2.field, 3, 2))) == 7


def test_chain_pair_label_of_identical_hyperspecial_chains(tower_f2):
    base = standard_chain(tower_f2, 2, [0])
    assert chain_pair_label(base, base) == identity(2)


def test_chain_pair_label_of_translated_iwahori_chain(tower_f2):
    types = [0, 1]
    base = standard_chain(tower_f2, 2, types)
    x = double_coset_rep(translation([1, 0]), types)
    assert chain_pair_label(base, monomial_chain(x, tower_f2, types)) == x


@pytest.mark.parametrize(
    "mu, types",
    [
        ([1, 0], [0]),
        ([1, 0], [0, 1]),
        ([1, 0, 0], [0]),
        ([1, 0, 0], [0, 1]),
        ([1, 0, 0], [0, 1, 2]),
        ([1, 1, 0], [0]),
        ([1, 1, 0], [0, 2]),
        ([1, 1, 0], [0, 1, 2]),
    ],
)
def test_admissible_permissible_and_realised_agree_for_gl(tower_f2, mu, types):
    adm = adm_set(mu, "gl", types).elements
    assert perm_set(mu, "gl", types, tower_f2) == adm
    assert realised_double_cosets(mu, "gl", types, tower_f2) == adm


@pytest.mark.parametrize("types", [[0], [0, 2]])
def test_admissible_permissible_and_realised_agree_for_gsp4(tower_f2, types):
    adm = adm_set([1, 1, 0, 0], "gsp", types).elements
    assert perm_set([1, 1, 0, 0], "gsp", types, tower_f2) == adm
    assert realised_double_cosets([1, 1, 0, 0], "gsp", types, tower_f2) == adm


def test_weyl_sources_compile_without_warnings():
    for path in sorted(Path(admissible_module.__file__).parent.glob("*.py")):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            compile(path.read_text(encoding="utf-8"), str(path), "exec")
