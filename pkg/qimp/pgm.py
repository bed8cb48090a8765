"""
Grayscale PGM reading and writing (plain P2 and raw P5).

Raw files with maxval >= 256 store big-endian 16-bit samples.
"""

import logging
from enum import Enum
from pathlib import Path

import numpy as np

from qimp.errors import (
    CorruptDataError,
    CorruptHeaderError,
    IoFailureError,
    TruncatedDataError,
    UnsupportedFormatError,
)
from qimp.qpie import ImageMatrix

logger = logging.getLogger(__name__)

MAX_MAXVAL = 65535
WHITESPACE = b" \t\n\r\v\f"


class WriteMode(str, Enum):
    AUTO = "auto"
    SIGNED = "signed"


class _Tokens:
    """Whitespace separated tokens of a netpbm header; '#' starts a comment."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.data):
            byte = self.data[self.pos:self.pos + 1]
            if byte == b"#":
                end = self.data.find(b"\n", self.pos)
                self.pos = len(self.data) if end < 0 else end + 1
            elif byte in WHITESPACE:
                self.pos += 1
            else:
                return

    def next(self) -> bytes | None:
        self._skip()
        if self.pos >= len(self.data):
            return None
        start = self.pos
        while self.pos < len(self.data) and self.data[self.pos:self.pos + 1] not in WHITESPACE \
                and self.data[self.pos:self.pos + 1] != b"#":
            self.pos += 1
        return self.data[start:self.pos]


def _header_int(tokens: _Tokens, field: str, path) -> int:
    token = tokens.next()
    if token is None:
        raise CorruptHeaderError(f"{path}: header ends before {field}")
    try:
        value = int(token)
    except ValueError as exc:
        raise CorruptHeaderError(f"{path}: {field} {token!r} is not an integer") from exc
    if value < 1:
        raise CorruptHeaderError(f"{path}: {field} must be positive, got {value}")
    return value


def _read_plain(tokens: _Tokens, count: int, path) -> np.ndarray:
    values = []
    while len(values) < count:
        token = tokens.next()
        if token is None:
            raise TruncatedDataError(f"{path}: expected {count} samples, found {len(values)}")
        try:
            values.append(int(token))
        except ValueError as exc:
            raise CorruptDataError(f"{path}: sample {token!r} is not an integer") from exc
    return np.array(values, dtype=np.int64)


def _read_raw(data: bytes, offset: int, count: int, maxval: int, path) -> np.ndarray:
    dtype = np.dtype(">u2") if maxval >= 256 else np.dtype("u1")
    needed = count * dtype.itemsize
    if len(data) - offset < needed:
        raise TruncatedDataError(
            f"{path}: expected {needed} data bytes, found {max(len(data) - offset, 0)}"
        )
    return np.frombuffer(data, dtype=dtype, count=count, offset=offset).astype(np.int64)


def parse_image(data: bytes, path: str = "<bytes>") -> ImageMatrix:
    tokens = _Tokens(data)
    magic = tokens.next()
    if magic not in (b"P2", b"P5"):
        raise UnsupportedFormatError(f"{path}: only P2/P5 graymaps are supported, got {magic!r}")
    width = _header_int(tokens, "width", path)
    height = _header_int(tokens, "height", path)
    maxval = _header_int(tokens, "maxval", path)
    if maxval > MAX_MAXVAL:
        raise CorruptHeaderError(f"{path}: maxval {maxval} exceeds {MAX_MAXVAL}")
    count = width * height
    if magic == b"P2":
        samples = _read_plain(tokens, count, path)
    else:
        # exactly one whitespace byte separates maxval from the raster
        samples = _read_raw(data, tokens.pos + 1, count, maxval, path)
    if samples.size and (samples.max() > maxval or samples.min() < 0):
        raise CorruptDataError(f"{path}: sample outside [0, {maxval}]")
    logger.debug("read %s %dx%d maxval %d from %s", magic.decode(), height, width, maxval, path)
    return ImageMatrix(samples.reshape(height, width).astype(np.float64))


def read_image(path: str | Path) -> ImageMatrix:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise IoFailureError(f"cannot read {path}: {exc}") from exc
    return parse_image(data, str(path))


def to_gray_levels(image: ImageMatrix, mode: WriteMode = WriteMode.AUTO) -> np.ndarray:
    """
    8-bit levels. auto: negatives clipped, max mapped to 255. signed: 0 maps to
    128 and +-max|p| to 255 / 1, so difference images keep their sign.
    """
    pixels = image.pixels
    if WriteMode(mode) is WriteMode.SIGNED:
        peak = float(np.max(np.abs(pixels)))
        if peak == 0.0:
            return np.full(pixels.shape, 128, dtype=np.uint8)
        return np.rint(128.0 + 127.0 * pixels / peak).astype(np.uint8)
    clipped = np.clip(pixels, 0.0, None)
    peak = float(clipped.max())
    if peak == 0.0:
        return np.zeros(pixels.shape, dtype=np.uint8)
    return np.rint(clipped / peak * 255.0).astype(np.uint8)


def format_image(image: ImageMatrix, mode: WriteMode = WriteMode.AUTO, plain: bool = False) -> bytes:
    levels = to_gray_levels(image, mode)
    rows, cols = levels.shape
    if plain:
        lines = [f"P2\n{cols} {rows}\n255"]
        lines += [" ".join(str(v) for v in row) for row in levels]
        return ("\n".join(lines) + "\n").encode("ascii")
    return f"P5\n{cols} {rows}\n255\n".encode("ascii") + levels.tobytes()


def write_image(image: ImageMatrix, path: str | Path, mode: WriteMode = WriteMode.AUTO,
                plain: bool = False) -> None:
    if image.imaginary is not None:
        logger.warning("writing real part only of a complex image to %s", path)
    try:
        Path(path).write_bytes(format_image(image, mode, plain))
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}") from exc
