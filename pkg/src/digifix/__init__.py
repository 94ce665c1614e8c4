"""Fixed-point verification on finite digital images."""
from .complexity import c_sharp, enumerate_contractions, find_scc, is_isomorphic, is_simple_closed_curve
from .contraction import PremiseError, classify
from .image import DigitalImage, DistanceValue, ImageError, Metric, cu_adjacent
from .selfmap import SelfMap

__all__ = [
    "DigitalImage", "DistanceValue", "ImageError", "Metric", "PremiseError", "SelfMap",
    "c_sharp", "classify", "cu_adjacent", "enumerate_contractions", "find_scc",
    "is_isomorphic", "is_simple_closed_curve",
]
