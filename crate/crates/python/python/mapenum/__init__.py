from ._mapenum import (
    Polynomial,
    bip_oneface,
    bipartite,
    bipartite_polynomials,
    flag_oracle,
    maps,
    maps_polynomials,
    oneface,
    triangulations,
    verify,
)

__all__ = [
    "Polynomial",
    "bip_oneface",
    "bipartite",
    "bipartite_polynomials",
    "flag_oracle",
    "maps",
    "maps_polynomials",
    "oneface",
    "triangulations",
    "verify",
]
