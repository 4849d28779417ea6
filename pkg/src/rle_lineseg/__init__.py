"""Text-line separator points detected directly on run-length encoded pages."""
__version__ = "0.1.0"

from .band_detection import Band, BandKind, BandList, DetectionParams, detect_bands, detect_mask
from .band_refinement import RefinementTrace, RoiSet, find_under_separation, refine_bands
from .evaluation import EvalReport, GroundTruth, detection_rate, evaluate, expected_point_count
from .pipeline import PipelineConfig, segment, segment_columns
from .rle_codec import RleDocument, decode_image, encode_image, read_rle_csv, write_rle_csv
from .separator_points import SeparatorPoints, assemble
from .terminal_columns import Side, TerminalColumn, left_column, right_column

__all__ = [
    "Band",
    "BandKind",
    "BandList",
    "DetectionParams",
    "EvalReport",
    "GroundTruth",
    "PipelineConfig",
    "RefinementTrace",
    "RleDocument",
    "RoiSet",
    "SeparatorPoints",
    "Side",
    "TerminalColumn",
    "assemble",
    "decode_image",
    "detect_bands",
    "detect_mask",
    "detection_rate",
    "encode_image",
    "evaluate",
    "expected_point_count",
    "find_under_separation",
    "left_column",
    "read_rle_csv",
    "refine_bands",
    "right_column",
    "segment",
    "segment_columns",
    "write_rle_csv",
]
