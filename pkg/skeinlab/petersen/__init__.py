from .kneser import KneserModel, TwoBoxBasis, build_kneser, molecule_from_graph, two_box_basis

__all__ = [
    "KneserModel",
    "TwoBoxBasis",
    "build_kneser",
    "molecule_from_graph",
    "two_box_basis",
]
