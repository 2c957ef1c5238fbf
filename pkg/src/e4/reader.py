import logging
from pathlib import Path

import numpy as np
import pandas as pd

from src.core.exceptions import DataFormatError, RateMismatchError
from src.e4.types import (
    ACC_CHANNELS,
    CANONICAL_RATES,
    BaselineInterval,
    ChannelKind,
    ChannelRecording,
    Session,
)

logger = logging.getLogger(__name__)

SINGLE_CHANNEL_FILES: dict[ChannelKind, str] = {
    ChannelKind.BVP: "BVP.csv",
    ChannelKind.EDA: "EDA.csv",
    ChannelKind.TEMP: "TEMP.csv",
    ChannelKind.HR: "HR.csv",
}
ACC_FILE = "ACC.csv"
TAGS_FILE = "tags.csv"
BASELINE_FILE = "baseline.csv"

VALUE_FORMAT = "%.10g"
HEADER_FORMAT = "{:.6f}"


def _read_numeric(path: Path, n_columns: int) -> np.ndarray:
    """Parse a headerless numeric CSV; row i of the result is file line i + 1."""
    if not path.exists():
        raise DataFormatError(path, "missing file")
    try:
        raw = pd.read_csv(
            path,
            header=None,
            dtype=str,
            skipinitialspace=True,
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError:
        return np.zeros((0, n_columns))
    except pd.errors.ParserError as exc:
        raise DataFormatError(path, f"ragged rows ({exc})") from exc

    if raw.shape[1] != n_columns:
        raise DataFormatError(path, f"expected {n_columns} column(s), found {raw.shape[1]}", line=1)

    values = raw.apply(lambda col: pd.to_numeric(col.str.strip(), errors="coerce"))
    bad_rows = np.flatnonzero(~np.isfinite(values.to_numpy(dtype=np.float64)).all(axis=1))
    if len(bad_rows):
        row = int(bad_rows[0])
        text = ",".join(str(v) for v in raw.iloc[row].tolist())
        raise DataFormatError(path, f"malformed number {text!r}", line=row + 1)
    return values.to_numpy(dtype=np.float64)


def _split_header(path: Path, table: np.ndarray) -> tuple[float, float, np.ndarray]:
    if table.shape[0] < 2:
        raise DataFormatError(path, "missing start-time/sample-rate header lines")
    start_times, rates = table[0], table[1]
    if np.any(start_times != start_times[0]) or np.any(rates != rates[0]):
        raise DataFormatError(path, "header values differ between columns", line=1)
    return float(start_times[0]), float(rates[0]), table[2:]


def _check_rate(path: Path, kind: ChannelKind, rate: float) -> None:
    expected = CANONICAL_RATES[kind]
    if rate != expected:
        raise RateMismatchError(path, f"rate mismatch: {rate:g} Hz declared, {expected:g} Hz expected", line=2)


def _read_baseline(path: Path) -> list[BaselineInterval]:
    if not path.exists():
        return []
    frame = pd.read_csv(path)
    intervals = []
    for row_index, row in enumerate(frame.itertuples(index=False)):
        if row.label not in ("dance", "relax"):
            raise DataFormatError(path, f"unknown baseline label {row.label!r}", line=row_index + 2)
        intervals.append(BaselineInterval(float(row.start), float(row.end), row.label))
    return intervals


def read_session(directory: Path | str, subject_id: str | None = None, week_index: int = 1) -> Session:
    """Load one E4 export directory.

    ``subject_id`` defaults to the directory's parent name when omitted.
    """
    directory = Path(directory)
    channels: dict[ChannelKind, ChannelRecording] = {}

    for kind, filename in SINGLE_CHANNEL_FILES.items():
        path = directory / filename
        start, rate, values = _split_header(path, _read_numeric(path, 1))
        _check_rate(path, kind, rate)
        channels[kind] = ChannelRecording(kind, start, rate, values[:, 0])

    acc_path = directory / ACC_FILE
    start, rate, values = _split_header(acc_path, _read_numeric(acc_path, 3))
    for column, kind in enumerate(ACC_CHANNELS):
        _check_rate(acc_path, kind, rate)
        channels[kind] = ChannelRecording(kind, start, rate, values[:, column])

    tags_path = directory / TAGS_FILE
    tags = _read_numeric(tags_path, 1)[:, 0]
    span_start = max(ch.start_time for ch in channels.values())
    span_end = min(ch.end_time for ch in channels.values())
    for line, tag in enumerate(tags, start=1):
        if not span_start <= tag <= span_end:
            raise DataFormatError(tags_path, f"tag {tag:.3f} outside recorded span", line=line)
        if line > 1 and tag <= tags[line - 2]:
            raise DataFormatError(tags_path, "tags not strictly increasing", line=line)

    session = Session(
        subject_id=subject_id or directory.parent.name or directory.name,
        week_index=week_index,
        channels=channels,
        tags=tags,
        baseline_intervals=_read_baseline(directory / BASELINE_FILE),
    )
    logger.debug("Read session %s week %d with %d tag(s)", session.subject_id, week_index, len(tags))
    return session


def _write_channel(path: Path, start: float, rate: float, columns: list[np.ndarray]) -> None:
    width = len(columns)
    header = ", ".join([HEADER_FORMAT.format(start)] * width)
    rate_line = ", ".join([HEADER_FORMAT.format(rate)] * width)
    with open(path, "w", newline="") as fh:
        fh.write(f"{header}\n{rate_line}\n")
        frame = pd.DataFrame(np.column_stack(columns))
        frame.to_csv(fh, header=False, index=False, float_format=VALUE_FORMAT, lineterminator="\n")


def write_session(session: Session, directory: Path | str) -> None:
    """Write ``session`` in the E4 export layout (inverse of read_session)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    for kind, filename in SINGLE_CHANNEL_FILES.items():
        ch = session.channels[kind]
        _write_channel(directory / filename, ch.start_time, ch.sample_rate, [ch.samples])

    axes = [session.channels[kind] for kind in ACC_CHANNELS]
    _write_channel(directory / ACC_FILE, axes[0].start_time, axes[0].sample_rate, [ch.samples for ch in axes])

    with open(directory / TAGS_FILE, "w", newline="") as fh:
        fh.writelines(f"{HEADER_FORMAT.format(tag)}\n" for tag in session.tags)

    if session.baseline_intervals:
        pd.DataFrame(
            [{"start": b.start, "end": b.end, "label": b.label} for b in session.baseline_intervals]
        ).to_csv(directory / BASELINE_FILE, index=False, float_format="%.6f", lineterminator="\n")


def session_directory(root: Path | str, subject_id: str, week_index: int) -> Path:
    return Path(root) / subject_id / f"week_{week_index}"


def write_cohort(sessions: list[Session], root: Path | str) -> list[Path]:
    """Write every session under ``root/<subject>/week_<n>/``."""
    directories = []
    for session in sessions:
        directory = session_directory(root, session.subject_id, session.week_index)
        write_session(session, directory)
        directories.append(directory)
    return directories


def read_cohort(root: Path | str) -> list[Session]:
    """Read a cohort written by write_cohort, ordered by subject then week."""
    root = Path(root)
    if not root.is_dir():
        raise DataFormatError(root, "data directory does not exist")
    sessions = []
    for subject_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        weeks = []
        for week_dir in subject_dir.glob("week_*"):
            suffix = week_dir.name.removeprefix("week_")
            if week_dir.is_dir() and suffix.isdigit():
                weeks.append((int(suffix), week_dir))
        for week_index, week_dir in sorted(weeks):
            sessions.append(read_session(week_dir, subject_dir.name, week_index))
    if not sessions:
        raise DataFormatError(root, "no session directories (<subject>/week_<n>) found")
    logger.info("Read %d sessions from %s", len(sessions), root)
    return sessions
