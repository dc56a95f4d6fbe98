from dissection.environment import Environment
from dissection.graph import (
    CellId,
    ConvexCell,
    Cutline,
    DissectionGraph,
    cutline_between,
    dissect,
    locate,
    neighbors,
)
