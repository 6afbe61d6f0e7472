"""
주기 격자 사슬과 잉여 몫공간 테스트
"""
import pytest

from app.algebra import matrix as mx
from app.algebra.arith import LaurentPoly
from app.lattice.chain import LatticeChain, chain_validate, standard_chain
from app.lattice.lattice import Lattice, SymplecticForm, colength
from app.lattice.quotient import ResidueQuotient, induced_map
from app.utils.errors import InvalidInputError


def test_standard_chain_is_periodic_and_valid(tower_f2):
    chain = standard_chain(tower_f2, 3, [0, 1, 2])
    assert chain.type == (0, 1, 2)
    assert chain.member(3) == chain.member(0).scale(-1)
    assert chain.member(-1) == chain.member(2).scale(1)
    assert chain_validate(chain).valid


def test_periodicity_conflict_is_rejected(tower_f2):
    L0 = Lattice.standard(tower_f2, 2)
    with pytest.raises(InvalidInputError):
        LatticeChain.from_members({0: L0, 2: L0})


def test_missing_step_breaks_colength(tower_f2):
    bad = LatticeChain.from_members({
        0: Lattice.standard(tower_f2, 2),
        1: Lattice.diagonal(tower_f2, [-1, -1]),
    })
    check = chain_validate(bad)
    assert not check.valid
    assert check.pair == (0, 1)


def test_standard_symplectic_chain_has_defect_zero(tower_f3):
    J = SymplecticForm.standard(tower_f3, 2)
    chain = standard_chain(tower_f3, 4, range(4))
    check = chain_validate(chain, J)
    assert check.valid and check.defect == 0
    partial = standard_chain(tower_f3, 4, [0, 1])
    assert not chain_validate(partial, J).valid


def test_neighbours_skip_missing_indices(tower_f2):
    chain = standard_chain(tower_f2, 4, [0, 3])
    assert chain.neighbours(1) == (0, 3)
    assert chain.neighbours(4) == (3, 7)


def test_quotient_lifts_lines_between_members(tower_f4):
    T = tower_f4
    L0 = Lattice.standard(T, 2)
    Q = ResidueQuotient.of(L0, L0.scale(1))
    assert Q.dim == 2
    M = Q.lift_line([1, 2])
    assert L0.contains(M) and M.contains(L0.scale(1))
    assert colength(L0, M) == 1


def test_quotient_needs_nested_pair(tower_f2):
    L0 = Lattice.standard(tower_f2, 2)
    with pytest.raises(InvalidInputError):
        ResidueQuotient.of(L0, L0.scale(2))


def test_induced_map_of_swap(tower_f4):
    T = tower_f4
    L0 = Lattice.standard(T, 2)
    Q = ResidueQuotient.of(L0, L0.scale(1))
    z, one = LaurentPoly.zero(T), LaurentPoly.one(T)
    swap = mx.as_matrix([[z, one], [one, z]])
    phi = induced_map(Q, Q, swap, 1)
    assert phi.power == 1
    assert phi.is_bijective()
    x = [1, 2]
    image = Q.lift_line(phi.apply(x))
    assert image == Q.lift_line(x).image(swap, 1)
