"""Files: sequences (JSON / text), spectral masks (JSON), CSV exports, report JSON."""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from sidelobe.seqcore import Trace, UnimodularSequence
from sidelobe.spectral import SpectralMask, band_to_indices


class SequenceFile(BaseModel):
    n: int = Field(ge=1)
    phases: list[float]

    @model_validator(mode="after")
    def _length_matches(self):
        if len(self.phases) != self.n:
            raise ValueError(f"n={self.n} but {len(self.phases)} phases given")
        return self


class MaskFile(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda", ge=0)
    bands: list[tuple[float, float]] | None = None
    indices: list[int] | None = None

    @model_validator(mode="after")
    def _one_selector(self):
        if (self.bands is None) == (self.indices is None):
            raise ValueError("Mask needs exactly one of 'bands' or 'indices'")
        return self

    def to_mask(self, n: int) -> SpectralMask:
        if self.bands is not None:
            mask = SpectralMask(band_to_indices(self.bands, n), self.lam)
        else:
            mask = SpectralMask(tuple(self.indices), self.lam)
        mask.bins(n)
        return mask


def _format(value) -> str:
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def write_sequence(path: Path, x: UnimodularSequence) -> None:
    """JSON when the suffix is .json, otherwise one phase per line."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        payload = SequenceFile(n=x.n, phases=x.phases.tolist())
        path.write_text(payload.model_dump_json(indent=2))
    else:
        path.write_text("".join(f"{_format(float(t))}\n" for t in x.phases))


def read_sequence(path: Path) -> UnimodularSequence:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        try:
            payload = SequenceFile.model_validate_json(text)
        except ValidationError as e:
            raise ValueError(f"Invalid sequence file {path}: {e}")
        return UnimodularSequence(payload.phases)
    try:
        phases = [float(line) for line in text.split() if line.strip()]
    except ValueError as e:
        raise ValueError(f"Invalid sequence file {path}: {e}")
    return UnimodularSequence(phases)


def read_mask(path: Path, n: int) -> SpectralMask:
    path = Path(path)
    try:
        payload = MaskFile.model_validate_json(path.read_text())
    except ValidationError as e:
        raise ValueError(f"Invalid mask file {path}: {e}")
    return payload.to_mask(n)


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format(v) for v in row])


def write_trace(path: Path, trace: Trace) -> None:
    """iteration, <objective name>, then any per-step columns the variant records."""
    extra_columns: list[str] = []
    for entry in trace.entries:
        for key in entry.extras:
            if key not in extra_columns:
                extra_columns.append(key)
    rows = (
        [e.iteration, e.objective] + [e.extras.get(c, "") for c in extra_columns]
        for e in trace.entries
    )
    write_csv(path, ["iteration", trace.objective_name, *extra_columns], rows)


def write_correlation_level(path: Path, lags: np.ndarray, levels: np.ndarray) -> None:
    write_csv(path, ["lag", "value_db"], zip(lags.tolist(), levels.tolist()))


def write_spectrum(path: Path, power: np.ndarray) -> None:
    write_csv(path, ["bin", "power"], enumerate(power.tolist()))


def write_json(path: Path, model: BaseModel) -> None:
    Path(path).write_text(model.model_dump_json(indent=2))
