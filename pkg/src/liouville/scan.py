"""Streaming scans of the summatory functions L(n) and M(n).

Segments are sieved (optionally by a thread pool) and consumed strictly
in ascending order by a single reducer, so every report is deterministic
and a scan resumed from a checkpoint reproduces an uninterrupted one.
"""

from __future__ import annotations

import csv
import json
import math
import os
import zlib
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .multiplicative import DEFAULT_SEGMENT_LENGTH, SignSegment, iter_segments, sieve_segment

__all__ = [
    "CHECKPOINT_VERSION",
    "CheckpointError",
    "ScanCheckpoint",
    "ScanReport",
    "default_threads",
    "initial_checkpoint",
    "load_checkpoint",
    "log_density_negative",
    "read_checkpoint",
    "save_checkpoint",
    "scan_summatory",
    "summatory_blocks",
    "write_checkpoint",
    "write_events_csv",
]

CHECKPOINT_VERSION = 1
_CRC_PREFIX = "crc32:"

Event = tuple[int, int]


class CheckpointError(ValueError):
    """A checkpoint failed its integrity check or has an unknown version."""


@dataclass(frozen=True)
class ScanReport:
    """Summary of a scan of ``L`` and ``M`` over ``1..n_max``.

    ``min_L`` and ``max_L_on_range`` are taken over ``2 <= n <= n_max``;
    ``nonneg_events`` lists every ``(n, L(n))`` in that range with
    ``L(n) >= 0``.
    """

    n_max: int
    final_L: int
    final_M: int
    min_L: int
    max_L_on_range: int
    nonneg_events: tuple[Event, ...]
    first_positive_n: int | None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["nonneg_events"] = [list(e) for e in self.nonneg_events]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> ScanReport:
        d = dict(d)
        d["nonneg_events"] = tuple((int(n), int(v)) for n, v in d["nonneg_events"])
        return cls(**d)


@dataclass(frozen=True)
class ScanCheckpoint:
    """Resumable scan state: ``L`` and ``M`` are through ``next_n - 1``.

    ``min_L``/``max_L`` are ``None`` until some ``n >= 2`` has been consumed.
    """

    next_n: int
    running_L: int
    running_M: int
    nonneg_events: tuple[Event, ...] = ()
    min_L: int | None = None
    max_L: int | None = None
    format_version: int = CHECKPOINT_VERSION

    def __post_init__(self) -> None:
        if self.next_n < 2:
            raise ValueError("next_n must be >= 2 (L(1) is part of the initial state)")


def initial_checkpoint() -> ScanCheckpoint:
    """State after consuming ``n = 1``: ``L(1) = M(1) = 1``."""
    return ScanCheckpoint(next_n=2, running_L=1, running_M=1)


def write_checkpoint(checkpoint: ScanCheckpoint) -> bytes:
    """Serialize as one JSON document followed by a CRC-32 footer line."""
    d = asdict(checkpoint)
    d["nonneg_events"] = [list(e) for e in checkpoint.nonneg_events]
    body = json.dumps(d, sort_keys=True, separators=(",", ":"))
    crc = zlib.crc32(body.encode("utf-8")) & 0xFFFFFFFF
    return f"{body}\n{_CRC_PREFIX}{crc:08x}\n".encode("utf-8")


def read_checkpoint(data: bytes) -> ScanCheckpoint:
    """Parse and validate bytes produced by :func:`write_checkpoint`.

    Raises:
        CheckpointError: on a missing or mismatched checksum, malformed
            content or an unsupported ``format_version``.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CheckpointError("checkpoint is not valid UTF-8") from exc
    lines = text.rstrip("\n").split("\n")
    if len(lines) != 2 or not lines[1].startswith(_CRC_PREFIX):
        raise CheckpointError("checkpoint is truncated or missing its CRC-32 footer")
    body, footer = lines
    try:
        expected = int(footer[len(_CRC_PREFIX) :], 16)
    except ValueError as exc:
        raise CheckpointError("unreadable CRC-32 footer") from exc
    if zlib.crc32(body.encode("utf-8")) & 0xFFFFFFFF != expected:
        raise CheckpointError("checkpoint CRC-32 mismatch")
    try:
        d = json.loads(body)
    except json.JSONDecodeError as exc:
        raise CheckpointError("checkpoint body is not valid JSON") from exc
    version = d.get("format_version")
    if version != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint format_version {version!r}")
    try:
        return ScanCheckpoint(
            next_n=int(d["next_n"]),
            running_L=int(d["running_L"]),
            running_M=int(d["running_M"]),
            nonneg_events=tuple((int(n), int(v)) for n, v in d["nonneg_events"]),
            min_L=d["min_L"],
            max_L=d["max_L"],
            format_version=version,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CheckpointError(f"malformed checkpoint: {exc}") from exc


def save_checkpoint(checkpoint: ScanCheckpoint, path: str | Path) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_bytes(write_checkpoint(checkpoint))
    os.replace(tmp, path)


def load_checkpoint(path: str | Path) -> ScanCheckpoint:
    return read_checkpoint(Path(path).read_bytes())


def default_threads() -> int:
    env = os.environ.get("NT_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _sieved(
    lo: int, hi: int, segment_length: int, threads: int
) -> Iterator[SignSegment]:
    ranges = iter_segments(lo, hi, segment_length)
    if threads <= 1:
        for a, b in ranges:
            yield sieve_segment(a, b, max_length=segment_length)
        return
    # bounded look-ahead keeps memory at O(threads) segments
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = []
        for a, b in ranges:
            pending.append(pool.submit(sieve_segment, a, b, segment_length))
            if len(pending) > threads:
                yield pending.pop(0).result()
        for fut in pending:
            yield fut.result()


def summatory_blocks(
    lo: int,
    hi: int,
    L0: int,
    M0: int,
    *,
    segment_length: int = DEFAULT_SEGMENT_LENGTH,
    threads: int | None = None,
) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(start, L, M)`` blocks covering ``lo..hi`` in order.

    ``L0``/``M0`` are ``L(lo - 1)``/``M(lo - 1)``; the yielded int64 arrays
    hold ``L(start + i)`` and ``M(start + i)``.
    """
    threads = default_threads() if threads is None else threads
    L, M = L0, M0
    for seg in _sieved(lo, hi, segment_length, threads):
        Ls = np.cumsum(seg.lambda_vals, dtype=np.int64)
        Ls += L
        Ms = np.cumsum(seg.mu_vals, dtype=np.int64)
        Ms += M
        L, M = int(Ls[-1]), int(Ms[-1])
        yield seg.lo, Ls, Ms


@dataclass
class _Reducer:
    state: ScanCheckpoint
    events: list[Event] = field(default_factory=list)

    def consume(self, start: int, Ls: np.ndarray, Ms: np.ndarray) -> None:
        s = self.state
        idx = np.flatnonzero(Ls >= 0)
        self.events.extend(zip((idx + start).tolist(), Ls[idx].tolist()))
        lo_val, hi_val = int(Ls.min()), int(Ls.max())
        self.state = replace(
            s,
            next_n=start + len(Ls),
            running_L=int(Ls[-1]),
            running_M=int(Ms[-1]),
            min_L=lo_val if s.min_L is None else min(s.min_L, lo_val),
            max_L=hi_val if s.max_L is None else max(s.max_L, hi_val),
        )

    def checkpoint(self) -> ScanCheckpoint:
        return replace(self.state, nonneg_events=self.state.nonneg_events + tuple(self.events))


def scan_summatory(
    n_max: int,
    checkpoint: ScanCheckpoint | None = None,
    *,
    segment_length: int = DEFAULT_SEGMENT_LENGTH,
    threads: int | None = None,
    checkpoint_path: str | Path | None = None,
    checkpoint_every: int = 10**8,
    progress: Callable[[int], None] | None = None,
) -> ScanReport:
    """Scan ``L(n)`` and ``M(n)`` exactly for ``n <= n_max``.

    Args:
        n_max: last ``n`` scanned, at least 2.
        checkpoint: state to resume from; a fresh scan starts at ``n = 2``.
        segment_length: sieve block size.
        threads: sieving workers; defaults to ``NT_THREADS`` or the CPU count.
        checkpoint_path: if given, the state is saved there roughly every
            ``checkpoint_every`` integers and at the end.
        progress: called with the last ``n`` consumed after each block.

    Raises:
        ValueError: ``n_max < 2`` or a checkpoint already past ``n_max``.
    """
    n_max = int(n_max)
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    state = checkpoint if checkpoint is not None else initial_checkpoint()
    if state.format_version != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint format_version {state.format_version!r}")
    if state.next_n > n_max + 1:
        raise ValueError(f"checkpoint next_n={state.next_n} is beyond n_max + 1 = {n_max + 1}")

    reducer = _Reducer(state)
    last_saved = state.next_n
    if state.next_n <= n_max:
        for start, Ls, Ms in summatory_blocks(
            state.next_n,
            n_max,
            state.running_L,
            state.running_M,
            segment_length=segment_length,
            threads=threads,
        ):
            reducer.consume(start, Ls, Ms)
            n_done = reducer.state.next_n - 1
            if progress is not None:
                progress(n_done)
            if checkpoint_path is not None and n_done + 1 - last_saved >= checkpoint_every:
                save_checkpoint(reducer.checkpoint(), checkpoint_path)
                last_saved = n_done + 1

    final = reducer.checkpoint()
    if checkpoint_path is not None:
        save_checkpoint(final, checkpoint_path)
    first_positive = next((n for n, v in final.nonneg_events if v > 0), None)
    return ScanReport(
        n_max=n_max,
        final_L=final.running_L,
        final_M=final.running_M,
        min_L=final.min_L,
        max_L_on_range=final.max_L,
        nonneg_events=final.nonneg_events,
        first_positive_n=first_positive,
    )


def log_density_negative(
    n_max: int,
    *,
    segment_length: int = DEFAULT_SEGMENT_LENGTH,
    threads: int | None = None,
) -> float:
    """``(1 / ln n_max) * sum(1/n for 2 <= n <= n_max if L(n) < 0)``.

    Strict negativity is counted; zeros of ``L`` carry no weight. The
    harmonic weights are accumulated with ``math.fsum`` per block and
    across blocks.
    """
    n_max = int(n_max)
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    partials = []
    for start, Ls, _ in summatory_blocks(
        2, n_max, 1, 1, segment_length=segment_length, threads=threads
    ):
        idx = np.flatnonzero(Ls < 0)
        if idx.size:
            partials.append(math.fsum(1.0 / (idx + start).astype(np.float64)))
    return math.fsum(partials) / math.log(n_max)


def write_events_csv(report: ScanReport, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "L"])
        writer.writerows(report.nonneg_events)
