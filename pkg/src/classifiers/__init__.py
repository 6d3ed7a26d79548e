"""
Core classifiers rebuilt by the UOS engine on every sample.
"""

from .spec import ClassifierKind, ClassifierSpec, TrainedModel, fit, predict
from .knn import KnnModel, fit_knn
from .lda import LdaModel, fit_lda, pooled_covariance
from .plsda import PlsdaModel, fit_plsda

__all__ = [
    "ClassifierKind",
    "ClassifierSpec",
    "TrainedModel",
    "fit",
    "predict",
    "KnnModel",
    "fit_knn",
    "LdaModel",
    "fit_lda",
    "pooled_covariance",
    "PlsdaModel",
    "fit_plsda",
]
