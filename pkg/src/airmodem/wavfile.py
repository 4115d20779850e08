"""Bit-exact 16-bit PCM WAV reading and writing.

Samples scale symmetrically by 32767 so +-1.0 round-trips to +-32767, and the
writer emits a fixed 44-byte header with no metadata, making output files
byte-identical across runs.  Concurrent reads are safe; concurrent writes to
the same path are undefined.
"""

import struct
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ClippingWarning, CorruptFileError, UnsupportedFormatError
from .signals import AudioSignal

_PCM_TAG = 1
_BITS_PER_SAMPLE = 16
_SCALE = 32767.0


@dataclass(frozen=True)
class WavSpec:
    """Format of a decoded WAV file (PCM integer, little-endian only)."""

    sample_rate_hz: int
    channel_count: int
    bits_per_sample: int = _BITS_PER_SAMPLE


def write_wav(signal: AudioSignal, path) -> None:
    """Write a signal as 16-bit PCM WAV (interleaved channels).

    Samples outside [-1, 1] are clipped first; a ClippingWarning reports how
    many.  Conversion is round(sample * 32767) clamped to int16 range.
    """
    samples = signal.samples if signal.channel_count == 2 else signal.samples[np.newaxis, :]
    clipped = np.clip(samples, -1.0, 1.0)
    clip_count = int(np.count_nonzero(clipped != samples))
    if clip_count:
        warnings.warn(
            f"{clip_count} samples clipped to [-1, 1] while writing {path}",
            ClippingWarning,
            stacklevel=2,
        )
    pcm = np.clip(np.round(clipped * _SCALE), -32768, 32767).astype("<i2")
    interleaved = pcm.T.reshape(-1)  # frame-major: L R L R ...
    data = interleaved.tobytes()
    channels = signal.channel_count
    block_align = channels * _BITS_PER_SAMPLE // 8
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(data),
        b"WAVE",
        b"fmt ",
        16,
        _PCM_TAG,
        channels,
        signal.sample_rate_hz,
        signal.sample_rate_hz * block_align,
        block_align,
        _BITS_PER_SAMPLE,
        b"data",
        len(data),
    )
    with open(path, "wb") as handle:
        handle.write(header)
        handle.write(data)


def _read_exact(handle, count: int, what: str) -> bytes:
    chunk = handle.read(count)
    if len(chunk) != count:
        raise CorruptFileError(f"file truncated while reading {what}")
    return chunk


def read_wav(path) -> tuple[AudioSignal, WavSpec]:
    """Read a 16-bit PCM WAV into an AudioSignal scaled by 1/32767.

    Non-PCM format tags and bit depths other than 16 raise
    UnsupportedFormatError; truncated or empty chunks raise CorruptFileError.
    Unknown chunks (LIST, fact, ...) are skipped.
    """
    with open(path, "rb") as handle:
        riff, _riff_size, wave = struct.unpack("<4sI4s", _read_exact(handle, 12, "RIFF header"))
        if riff != b"RIFF" or wave != b"WAVE":
            raise UnsupportedFormatError(f"{path} is not a RIFF/WAVE file")
        fmt = None
        data = None
        while True:
            chunk_header = handle.read(8)
            if not chunk_header:
                break
            if len(chunk_header) != 8:
                raise CorruptFileError("file truncated inside a chunk header")
            chunk_id, chunk_size = struct.unpack("<4sI", chunk_header)
            if chunk_id == b"fmt ":
                if chunk_size < 16:
                    raise CorruptFileError(f"fmt chunk too small ({chunk_size} bytes)")
                body = _read_exact(handle, chunk_size, "fmt chunk")
                fmt = struct.unpack("<HHIIHH", body[:16])
            elif chunk_id == b"data":
                if chunk_size == 0:
                    raise CorruptFileError("data chunk is empty")
                data = _read_exact(handle, chunk_size, "data chunk")
            else:
                handle.seek(chunk_size, 1)
            if chunk_size % 2:  # RIFF chunks are word-aligned
                handle.seek(1, 1)
        if fmt is None:
            raise CorruptFileError("missing fmt chunk")
        if data is None:
            raise CorruptFileError("missing data chunk")
    tag, channels, sample_rate, _byte_rate, block_align, bits = fmt
    if tag != _PCM_TAG:
        raise UnsupportedFormatError(f"unsupported format tag {tag} (only PCM=1)")
    if bits != _BITS_PER_SAMPLE:
        raise UnsupportedFormatError(f"unsupported bit depth {bits} (only 16)")
    if channels not in (1, 2):
        raise UnsupportedFormatError(f"unsupported channel count {channels}")
    if block_align != channels * 2 or len(data) % block_align:
        raise CorruptFileError("data chunk size does not match the frame layout")
    pcm = np.frombuffer(data, dtype="<i2")
    samples = pcm.astype(np.float64) / _SCALE
    if channels == 2:
        samples = samples.reshape(-1, 2).T
    spec = WavSpec(sample_rate, channels)
    return AudioSignal(samples, sample_rate), spec
