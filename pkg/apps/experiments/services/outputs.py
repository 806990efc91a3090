"""
File outputs of the experiment commands.

JSON documents follow the result serializers; CSV files have a header row and use ``,`` as the
delimiter.
"""

import logging
from pathlib import Path

from apps.experiments.serializers import (
    BellResultSerializer,
    ChshResultSerializer,
    HomResultSerializer,
    QptResultSerializer,
)
from apps.experiments.types import BellResult, ChshRun, HomResult, QptResult, TruthTableResult
from apps.logical.types import LOGICAL_BASIS_LABELS
from apps.utils.serialization import write_csv, write_json

logger = logging.getLogger(__name__)

HOM_SCAN_HEADER = ("delay", "counts", "exact_probability")
TRUTH_TABLE_HEADER = ("input", "success_probability", *(f"p{label}" for label in LOGICAL_BASIS_LABELS))


def write_hom(result: HomResult, directory) -> list[Path]:
    directory = Path(directory)
    scan = write_csv(
        directory / "hom_scan.csv",
        HOM_SCAN_HEADER,
        ((record.delay, record.counts, record.probability) for record in result.records),
    )
    fit = write_json(directory / "hom_fit.json", HomResultSerializer(result).data)
    logger.info("Wrote %s and %s", scan, fit)
    return [scan, fit]


def write_bell(result: BellResult, directory) -> list[Path]:
    path = write_json(Path(directory) / f"bell_{result.bell_input.value}.json", BellResultSerializer(result).data)
    logger.info("Wrote %s", path)
    return [path]


def write_chsh(result: ChshRun, directory) -> list[Path]:
    path = write_json(Path(directory) / f"chsh_{result.bell_input.value}.json", ChshResultSerializer(result).data)
    logger.info("Wrote %s", path)
    return [path]


def write_qpt(result: QptResult, directory) -> list[Path]:
    path = write_json(Path(directory) / "qpt.json", QptResultSerializer(result).data)
    logger.info("Wrote %s", path)
    return [path]


def write_truth_table(result: TruthTableResult, directory) -> list[Path]:
    rows = []
    for row in result.table.rows:
        probabilities = row.probabilities if row.is_defined else (None,) * len(LOGICAL_BASIS_LABELS)
        rows.append((row.input_label, row.success_probability, *probabilities))
    path = write_csv(Path(directory) / "truth_table.csv", TRUTH_TABLE_HEADER, rows)
    logger.info("Wrote %s", path)
    return [path]
