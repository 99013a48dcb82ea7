from finsler.enums import Kind, Family, Convention, ConnectionType, DerivativeKind, IndexType, Scheme, Mode, Status
from finsler.objects import (
    MetricSample, CartanTensorSample, ConnectionSample, IntegratorConfig, GeodesicPath, FieldSample,
    CurrentSample, FirstEquationResidual, Check, ValidationReport, CorrespondenceReport,
)
from finsler.structures import load_structure, shipped_structure

VERSION = "0.1.0"
