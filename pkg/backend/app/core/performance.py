import time
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from functools import wraps
from typing import Any, TypeVar

from loguru import logger

T = TypeVar("T")
R = TypeVar("R")


class PerformanceMonitor:
    """
    Monitor and track wall-time metrics of service calls.
    """

    def __init__(self):
        self.metrics: dict[str, dict[str, float]] = {}

    def record(self, name: str, duration: float) -> None:
        """
        Record one call duration.

        Args:
            name: Name of the operation
            duration: Duration in seconds
        """
        entry = self.metrics.setdefault(
            name, {"count": 0, "total_time": 0.0, "min_time": float("inf"), "max_time": 0.0}
        )
        entry["count"] += 1
        entry["total_time"] += duration
        entry["min_time"] = min(entry["min_time"], duration)
        entry["max_time"] = max(entry["max_time"], duration)

    def get_metrics(self) -> dict[str, Any]:
        """
        Get all performance metrics.

        Returns:
            Dictionary of metrics keyed by operation name
        """
        return {
            name: {
                "count": data["count"],
                "total_time": data["total_time"],
                "avg_time": data["total_time"] / data["count"] if data["count"] else 0.0,
                "min_time": data["min_time"] if data["min_time"] != float("inf") else 0.0,
                "max_time": data["max_time"],
            }
            for name, data in self.metrics.items()
        }

    def reset_metrics(self) -> None:
        self.metrics = {}


performance_monitor = PerformanceMonitor()


def measure_performance(func):
    """
    Decorator to measure the wall time of a function.

    Args:
        func: Function to measure

    Returns:
        Wrapped function
    """

    @wraps(func)
    def wrapper(*args, **kwargs):
        operation_name = f"{func.__module__}.{func.__name__}"
        start = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            duration = time.perf_counter() - start
            performance_monitor.record(operation_name, duration)
            logger.debug(f"Operation {operation_name} took {duration:.4f} seconds")

    return wrapper


def chunked(items: Sequence[T], size: int) -> list[Sequence[T]]:
    """Split a sequence into consecutive chunks of at most ``size`` items."""
    return [items[i : i + size] for i in range(0, len(items), size)]


def map_in_pool(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    """
    Map a function over items in a thread pool.

    Results come back in input order whatever the scheduling, so callers that
    combine them get the same answer for any worker count.

    Args:
        func: Function applied to each item
        items: Items to process
        workers: Number of worker threads; 1 runs inline

    Returns:
        List of results in input order
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
