"""Module for small helpers shared by the library, the commands and the views."""

import logging
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from django.conf import settings

from .exceptions import DomainError

logger = logging.getLogger(__name__)


def get_thread_count():
    """Number of worker threads allowed by SYMWALK_THREADS (at least 1)."""
    return max(1, int(getattr(settings, "SYMWALK_THREADS", 1)))


def get_max_certified_time():
    """Horizon past which the stabilization search gives up."""
    return int(getattr(settings, "SYMWALK_MAX_CERTIFIED_TIME", 100000))


def get_table_cap():
    """Largest n for which a full character table is built."""
    return int(getattr(settings, "SYMWALK_TABLE_CAP", 14))


def get_oracle_cap():
    """Largest n accepted by the convolution oracle."""
    return int(getattr(settings, "SYMWALK_ORACLE_CAP", 7))


def parallel_map(func, items):
    """
    Apply `func` to every item, in order, on up to SYMWALK_THREADS threads.

    Args:
        func (callable): A pure function of one argument.
        items (iterable): The inputs.

    Returns:
        list: The results, in the order of `items`.
    """
    items = list(items)
    workers = min(get_thread_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


def parse_fraction(text):
    """
    Parse "3", "-1/2" or "0.25" into an exact Fraction.

    Raises:
        DomainError: If the text is not a rational number.
    """
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"Not a rational number: {text!r}") from exc


def format_fraction(value):
    """Render a Fraction as "num/den", or just "num" for integers."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def fraction_to_dict(value):
    """Render a Fraction as {"num": ..., "den": ...} in lowest terms."""
    value = Fraction(value)
    return {"num": value.numerator, "den": value.denominator}


def write_atomically(path, text):
    """
    Write `text` to `path` through a temporary file in the same directory.

    Readers of `path` see either the old content or the new content, never a
    partial file.
    """
    directory = os.path.dirname(os.path.abspath(path))
    handle, tmp_path = tempfile.mkstemp(dir=directory, prefix=".symwalk-")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as tmp:
            tmp.write(text)
        os.replace(tmp_path, path)
    except OSError:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    logger.info("Wrote %s bytes to %s", len(text.encode("utf-8")), path)
