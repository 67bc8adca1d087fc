from django.db import models


class BaseModel(models.Model):
    """
    Abstract model with created / updated timestamps shared by persisted runs.
    """
    created_at = models.DateTimeField(auto_now_add=True, db_index=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        abstract = True
        ordering = ['-created_at']
        get_latest_by = 'created_at'
