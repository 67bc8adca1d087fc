import uuid

from django.db import models

from apps.utils.models import BaseModel


class SweepRun(BaseModel):
    """
    One verify_sweep invocation: budgets, outcome and summary counts
    """
    STATUS_CHOICES = [
        ('running', 'Running'),
        ('passed', 'Passed'),
        ('failed', 'Failed'),
    ]
    DISPATCH_CHOICES = [
        ('local', 'Local'),
        ('celery', 'Celery'),
    ]

    run_id = models.UUIDField(default=uuid.uuid4, unique=True)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='running')
    dispatch = models.CharField(max_length=20, choices=DISPATCH_CHOICES, default='local')

    # Budgets
    max_field_size = models.PositiveBigIntegerField()
    max_minors = models.PositiveBigIntegerField()
    check_mds = models.BooleanField(default=True)
    spot_checks = models.PositiveIntegerField(default=0)
    seed = models.BigIntegerField(null=True, blank=True)

    # Outcome
    fields_count = models.PositiveIntegerField(default=0)
    instances = models.PositiveIntegerField(default=0)
    disagreements = models.PositiveIntegerField(default=0)
    violations = models.PositiveIntegerField(default=0)
    duration = models.FloatField(default=0.0)
    summary = models.JSONField(default=dict, blank=True)

    class Meta(BaseModel.Meta):
        db_table = 'sweep_runs'
        ordering = ['-created_at']

    def __str__(self):
        return f"Sweep {self.run_id} ({self.status})"

    @property
    def passed(self):
        return self.status == 'passed'


class HullRecord(BaseModel):
    """
    Formula and oracle hull dimensions of one (p, h, m, k, e) instance
    """
    run = models.ForeignKey(
        SweepRun,
        on_delete=models.CASCADE,
        related_name='records'
    )
    p = models.PositiveIntegerField()
    h = models.PositiveIntegerField()
    m = models.PositiveIntegerField()
    k = models.PositiveIntegerField()
    e = models.PositiveIntegerField()

    dim_formula = models.PositiveIntegerField(null=True, blank=True)
    dim_oracle = models.PositiveIntegerField()
    agree = models.BooleanField(null=True, blank=True)
    classification = models.CharField(max_length=32)
    convention = models.CharField(max_length=20, default='theorem')
    mds_status = models.CharField(max_length=20, blank=True)

    class Meta(BaseModel.Meta):
        db_table = 'hull_records'
        ordering = ['p', 'h', 'm', 'k', 'e']
        unique_together = ['run', 'p', 'h', 'm', 'k', 'e']

    def __str__(self):
        return f"q={self.p}^{self.h} m={self.m} k={self.k} e={self.e}: {self.dim_oracle}"
