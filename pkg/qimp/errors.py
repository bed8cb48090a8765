"""
Exception hierarchy for qimp.

Every error carries a machine-readable ``category`` and the CLI exit code of
its family: input problems exit 2, numeric/contract violations exit 3 and
file-system failures exit 4.
"""


class QImpError(Exception):
    """Base class for all qimp errors."""

    category = "qimp_error"
    exit_code = 1


# Input errors (exit 2)

class InputError(QImpError):
    category = "input_error"
    exit_code = 2


class NotPowerOfTwoError(InputError):
    category = "not_power_of_two"


class ZeroVectorError(InputError):
    category = "zero_vector"


class ZeroImageError(InputError):
    category = "zero_image"


class InconsistentShapeError(InputError):
    category = "inconsistent_shape"


class SplitMismatchError(InputError):
    category = "split_mismatch"


class TooSmallError(InputError):
    category = "too_small"


class ShapeMismatchError(InputError):
    category = "shape_mismatch"


class ZeroReferenceError(InputError):
    category = "zero_reference"


class UnsupportedFormatError(InputError):
    category = "unsupported_format"


class CorruptHeaderError(InputError):
    category = "corrupt_header"


class TruncatedDataError(InputError):
    category = "truncated_data"


class CorruptDataError(InputError):
    category = "corrupt_data"


class MaskFormatError(InputError):
    category = "mask_format"


class ConfigError(InputError):
    category = "config_error"


# Numeric / contract violations (exit 3)

class ContractError(QImpError):
    category = "contract_violation"
    exit_code = 3


class NormTooFarError(ContractError):
    category = "norm_too_far"


class BadIndexError(ContractError):
    category = "bad_index"


class OverlapError(ContractError):
    category = "overlap"


class DimensionMismatchError(ContractError):
    category = "dimension_mismatch"


class NotUnitaryError(ContractError):
    category = "not_unitary"


class ZeroProbabilityError(ContractError):
    category = "zero_probability"


# File system (exit 4)

class IoFailureError(QImpError):
    category = "io_failure"
    exit_code = 4
