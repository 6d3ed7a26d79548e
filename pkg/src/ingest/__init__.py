"""
Ingestion of the public MOx gas-sensor drift dataset.
"""

from .parse import (
    FEATURES_PER_SENSOR,
    N_FEATURES,
    N_SENSORS,
    RawRecord,
    batch_order,
    parse_files,
    parse_line,
)
from .subset import (
    CONCENTRATION_RTOL,
    DEFAULT_GAS_NAMES,
    MOX_MODELS,
    GasFilter,
    SubsetSpec,
    mox_sensor_map,
    select_subset,
)

__all__ = [
    "FEATURES_PER_SENSOR",
    "N_FEATURES",
    "N_SENSORS",
    "RawRecord",
    "batch_order",
    "parse_files",
    "parse_line",
    "CONCENTRATION_RTOL",
    "DEFAULT_GAS_NAMES",
    "MOX_MODELS",
    "GasFilter",
    "SubsetSpec",
    "mox_sensor_map",
    "select_subset",
]
