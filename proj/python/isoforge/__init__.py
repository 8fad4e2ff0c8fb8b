"""Exact character tables, blocks and perfect isometry certificates."""

from ._core import RequestError, blocks, is_p_integral, table, thread_count, verify

__all__ = ["RequestError", "blocks", "is_p_integral", "table", "thread_count", "verify"]
__version__ = "0.1.0"
