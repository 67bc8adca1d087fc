import logging

from celery import group, shared_task

from apps.utils.exceptions import CodingError
from .serializers import FieldResultSerializer, field_result_from_data
from .sweeps import SweepOptions, evaluate_field

logger = logging.getLogger(__name__)


@shared_task
def evaluate_field_task(p, h, m, options):
    """
    Evaluate one field of the sweep and return the serialized FieldResult
    """
    try:
        result = evaluate_field(p, h, m, SweepOptions(**options))
    except CodingError as exc:
        logger.error(f"Sweep task failed for p={p} h={h} m={m}: {exc}")
        raise
    return FieldResultSerializer(result).data


def evaluate_fields(fields, options, dispatch='local'):
    """
    FieldResults for every (p, h, m), in-process or through the broker
    """
    payload = options.as_dict()
    if dispatch == 'celery':
        logger.info(f"Dispatching {len(fields)} field tasks to Celery")
        job = group(evaluate_field_task.s(p, h, m, payload) for p, h, m in fields)
        results = job.apply_async().join()
    else:
        results = [evaluate_field_task(p, h, m, payload) for p, h, m in fields]
    return [field_result_from_data(data) for data in results]
