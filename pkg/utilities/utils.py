import base64
import functools
import hashlib
import multiprocessing
from typing import Any


def canonical_hash(*parts: Any) -> str:
    """Hashes the repr of each part in order and returns the base64 digest.

    Parts must have a deterministic repr; ring, module and matrix keys are tuples of
    ints and strings for that reason.
    """
    digest = hashlib.sha256()
    for part in parts:
        digest.update(repr(part).encode())
        digest.update(b"\x00")
    return base64.b64encode(digest.digest()).decode("utf-8")


def run_with_ttl(func: functools.partial, ttl: int) -> Any:
    """Runs the provided function on a subprocess with 'ttl' seconds to complete.

    Args:
        func (functools.partial): Function to be run.
        ttl (int): How long to try for in seconds.

    Returns:
        Any: The value returned by 'func'

    Raises:
        TimeoutError: If 'func' is still running after 'ttl' seconds.
    """

    def wrapped_func(func: functools.partial, queue: multiprocessing.Queue):
        try:
            queue.put(func())
        except (Exception, BaseException) as e:
            queue.put(e)

    # "fork" keeps the parsed scenario in the child without pickling it.
    ctx = multiprocessing.get_context("fork")
    queue = ctx.Queue()
    process = ctx.Process(target=wrapped_func, args=[func, queue])

    process.start()
    # Drain before join so a large report cannot block the child on a full pipe.
    try:
        result = queue.get(timeout=ttl)
    except Exception:
        process.terminate()
        process.join()
        raise TimeoutError(f"{func.func.__name__} did not finish within {ttl} seconds")
    process.join()

    if isinstance(result, Exception):
        raise result
    if isinstance(result, BaseException):
        raise Exception(f"BaseException raised in subprocess: {str(result)}")

    return result
