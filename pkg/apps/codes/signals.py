import logging

from django.db.models.signals import post_save
from django.dispatch import receiver

from .models import SweepRun

logger = logging.getLogger(__name__)


@receiver(post_save, sender=SweepRun)
def handle_sweep_run_saved(sender, instance, created, **kwargs):
    """
    Log finished sweep runs; failed runs are errors
    """
    if instance.status == 'failed':
        logger.error(
            f"Sweep run {instance.run_id} failed: {instance.disagreements} disagreements, "
            f"{instance.violations} violations over {instance.instances} instances"
        )
    elif instance.status == 'passed':
        logger.info(f"Sweep run {instance.run_id} passed over {instance.instances} instances")
