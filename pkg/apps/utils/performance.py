import time
import logging
from functools import wraps
from django.conf import settings

logger = logging.getLogger(__name__)


def slow_threshold():
    return settings.CODING.get('SLOW_THRESHOLD', 5.0)


def log_performance(threshold=None):
    """Decorator to log slow function executions"""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            result = func(*args, **kwargs)
            execution_time = time.perf_counter() - start_time

            limit = slow_threshold() if threshold is None else threshold
            if execution_time > limit:
                logger.warning(
                    f"Slow execution: {func.__module__}.{func.__name__} took {execution_time:.2f}s"
                )
            else:
                logger.debug(f"{func.__name__} took {execution_time:.3f}s")

            return result

        return wrapper

    return decorator
