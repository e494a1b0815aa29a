from pwhlab.roa.certificates import (
    bounding_box,
    contains,
    ellipsoid_principal_axes,
    q_min_single_port,
    roa_diagonal,
    roa_general,
    sg_roa,
)
from pwhlab.roa.schema import IndexSet, PrincipalAxes, RoaEstimate, RoaMode

__all__ = [
    "IndexSet",
    "PrincipalAxes",
    "RoaEstimate",
    "RoaMode",
    "bounding_box",
    "contains",
    "ellipsoid_principal_axes",
    "q_min_single_port",
    "roa_diagonal",
    "roa_general",
    "sg_roa",
]
