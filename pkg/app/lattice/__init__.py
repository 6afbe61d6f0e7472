"""
lattice 패키지: 정규형 격자, 상대 위치, 쌍대, (자기쌍대) 주기 격자 사슬

@since 2026-10-16
"""

from app.lattice.chain import LatticeChain, chain_validate, standard_chain, standard_lattice
from app.lattice.lattice import Lattice, SymplecticForm, dual, normalize, relative_position
from app.lattice.quotient import ResidueQuotient

__all__ = [
    "LatticeChain",
    "chain_validate",
    "standard_chain",
    "standard_lattice",
    "Lattice",
    "SymplecticForm",
    "dual",
    "normalize",
    "relative_position",
    "ResidueQuotient",
]
