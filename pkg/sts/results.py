"""
Shared types for the statistical tests: parameters, results and errors.
"""
import math
from typing import Any, ClassVar, Dict, List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from generator.bitstream import Bitstream

DEFAULT_ALPHA = 0.01


class InsufficientLengthError(ValueError):
    """Sequence too short for the test (or for its pattern length)"""

    def __init__(self, test_name: str, n: int, requirement: str):
        self.test_name = test_name
        self.n = n
        self.requirement = requirement
        super().__init__(f"{test_name}: n={n} does not satisfy {requirement}")


class InvalidParameterError(ValueError):
    pass


class TestParams(BaseModel):
    """Battery settings; length minimums may be switched off for worked examples"""

    __test__: ClassVar[bool] = False
    model_config = ConfigDict(frozen=True)

    alpha: float = Field(DEFAULT_ALPHA, gt=0, lt=1)
    block_m: int = Field(20, ge=1)
    serial_m: int = Field(13, ge=2)
    apen_m: int = Field(10, ge=1)
    universal_l: Optional[int] = Field(None, ge=1, le=16)
    universal_q: Optional[int] = Field(None, ge=1)
    enforce_min_length: bool = True


class TestResult(BaseModel):
    """One test's p-values, verdict and intermediate statistics"""

    __test__: ClassVar[bool] = False

    test_name: str
    p_values: List[float] = Field(default_factory=list)
    passed: bool = False
    statistics: Dict[str, Any] = Field(default_factory=dict)
    skipped: bool = False
    reason: Optional[str] = None

    @model_validator(mode="after")
    def _check_p_values(self) -> "TestResult":
        for p in self.p_values:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{self.test_name}: p-value {p} outside [0, 1]")
        return self

    @property
    def p_value(self) -> Optional[float]:
        return min(self.p_values) if self.p_values else None

    @classmethod
    def from_p_values(cls, test_name: str, p_values: Sequence[float],
                      alpha: float = DEFAULT_ALPHA, **statistics: Any) -> "TestResult":
        ps = [clip_p(p) for p in p_values]
        return cls(
            test_name=test_name,
            p_values=ps,
            passed=min(ps) >= alpha,
            statistics={k: _plain(v) for k, v in statistics.items()},
        )

    @classmethod
    def skip(cls, test_name: str, reason: str) -> "TestResult":
        return cls(test_name=test_name, skipped=True, reason=reason)


def clip_p(p: float) -> float:
    p = float(p)
    if math.isnan(p):
        return 0.0
    return min(1.0, max(0.0, p))


def _plain(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def as_bits(bits: Union[Bitstream, np.ndarray, Sequence[int], str]) -> np.ndarray:
    """Coerce a test input to a 1-d uint8 array of 0/1"""
    if isinstance(bits, Bitstream):
        return bits.bits
    if isinstance(bits, str):
        return Bitstream.from_string(bits).bits
    return Bitstream(bits).bits


def require_length(test_name: str, n: int, minimum: int, enforce: bool, floor: int = 1) -> None:
    """Enforce the published minimum, or just the computable floor when relaxed"""
    needed = minimum if enforce else floor
    if n < needed:
        raise InsufficientLengthError(test_name, n, f"n >= {needed}")
