"""Exact Tate curve torsion, order-N subgroups, and the power operation"""

from __future__ import annotations

__version__ = '0.1.0'

__author__: str = 'Corey Rayburn Yung'


from .configuration import Settings
from .qseries import QSeries
from .rings import ProductRing, RingElement, RingHom, RingPresentation
from .subgroups import SubgroupRecord
from .torsion import CycloQUnit, TatePoint

__all__: list[str] = [
    "CycloQUnit",
    "ProductRing",
    "QSeries",
    "RingElement",
    "RingHom",
    "RingPresentation",
    "Settings",
    "SubgroupRecord",
    "TatePoint"]
