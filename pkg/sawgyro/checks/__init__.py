from __future__ import annotations

from . import analytic, oracle, spectral

__all__ = ["analytic", "oracle", "spectral"]
