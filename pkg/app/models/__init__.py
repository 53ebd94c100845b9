from app.models.algebra import BaseAlgebra
from app.models.rootdata import ChevalleyDatum, LeviSpec, PChar, TauMap
from app.models.weyl import AffineGenerator, AffineWord, CosetpZI, CosetZI, WeylGroup, Window
from app.models.module import (
    Ambient,
    FiltrationChain,
    GradedModule,
    HeadData,
    Morphism,
    MultiplicityTable,
    SubalgebraSpec,
    Summand
)

__all__ = [
    "BaseAlgebra",
    "ChevalleyDatum",
    "LeviSpec",
    "PChar",
    "TauMap",
    "AffineGenerator",
    "AffineWord",
    "CosetZI",
    "CosetpZI",
    "WeylGroup",
    "Window",
    "Ambient",
    "FiltrationChain",
    "GradedModule",
    "HeadData",
    "Morphism",
    "MultiplicityTable",
    "SubalgebraSpec",
    "Summand"
]
