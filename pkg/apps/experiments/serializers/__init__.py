from .config import ExperimentConfigSerializer, HomScanSerializer, NoiseModelSerializer, StrictSerializerMixin
from .results import (
    BellResultSerializer,
    ChshResultSerializer,
    HomResultSerializer,
    QptResultSerializer,
)

__all__ = [
    "StrictSerializerMixin",
    "NoiseModelSerializer",
    "HomScanSerializer",
    "ExperimentConfigSerializer",
    "HomResultSerializer",
    "BellResultSerializer",
    "ChshResultSerializer",
    "QptResultSerializer",
]
