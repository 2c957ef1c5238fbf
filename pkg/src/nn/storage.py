"""Parameter files.

An uncompressed ``.npz`` archive: one float64 array per parameter name
(``encoder.0.weight`` ...) plus ``__meta__``, a JSON string holding the
format version, the architecture, its sha256 fingerprint, every shape and
the training signal length. Zip entries carry a fixed timestamp so equal
parameters give byte-identical files.
"""
import json
import zipfile
from pathlib import Path

import numpy as np

from src.core.exceptions import ArchitectureMismatchError, ParamsFormatError, ShapeError
from src.nn.model import Architecture, ModelParams

FORMAT_VERSION = 1
META_KEY = "__meta__"
_EPOCH = (1980, 1, 1, 0, 0, 0)


def _write_entry(archive: zipfile.ZipFile, name: str, array: np.ndarray) -> None:
    info = zipfile.ZipInfo(f"{name}.npy", date_time=_EPOCH)
    with archive.open(info, "w", force_zip64=True) as handle:
        np.lib.format.write_array(handle, np.ascontiguousarray(array), allow_pickle=False)


def save_params(params: ModelParams, path: Path | str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {
        "format_version": FORMAT_VERSION,
        "architecture": params.architecture.model_dump(mode="json"),
        "architecture_hash": params.architecture.fingerprint(),
        "shapes": params.shapes(),
        "signal_length": params.signal_length,
    }
    with zipfile.ZipFile(path, "w", compression=zipfile.ZIP_STORED) as archive:
        _write_entry(archive, META_KEY, np.array(json.dumps(meta, sort_keys=True)))
        for name, value in sorted(params.named_params().items()):
            _write_entry(archive, name, value)
    return path


def load_params(path: Path | str, architecture: Architecture | None = None) -> ModelParams:
    """Read a parameter file; ``architecture`` (when given) must match the stored one."""
    path = Path(path)
    try:
        with np.load(path, allow_pickle=False) as archive:
            arrays = {name: archive[name] for name in archive.files}
    except FileNotFoundError:
        raise
    except (zipfile.BadZipFile, EOFError, ValueError, OSError, KeyError) as exc:
        raise ParamsFormatError(f"{path.name}: unreadable parameter file ({exc})") from exc

    if META_KEY not in arrays:
        raise ParamsFormatError(f"{path.name}: no {META_KEY} entry")
    try:
        meta = json.loads(arrays.pop(META_KEY).item())
    except json.JSONDecodeError as exc:
        raise ParamsFormatError(f"{path.name}: corrupt metadata ({exc})") from exc
    if meta.get("format_version") != FORMAT_VERSION:
        raise ParamsFormatError(f"{path.name}: unsupported format version {meta.get('format_version')}")

    stored = Architecture.model_validate(meta["architecture"])
    if stored.fingerprint() != meta["architecture_hash"]:
        raise ParamsFormatError(f"{path.name}: architecture hash does not match its description")
    if architecture is not None and architecture.fingerprint() != stored.fingerprint():
        raise ArchitectureMismatchError(
            f"{path.name}: written for architecture {stored.fingerprint()[:12]}, "
            f"expected {architecture.fingerprint()[:12]}"
        )

    params = ModelParams(stored, meta.get("signal_length"))
    if {k: list(v.shape) for k, v in arrays.items()} != meta["shapes"]:
        raise ParamsFormatError(f"{path.name}: stored arrays do not match the recorded shapes")
    try:
        params.load_arrays(arrays)
    except ShapeError as exc:
        raise ArchitectureMismatchError(f"{path.name}: {exc}") from exc
    return params
