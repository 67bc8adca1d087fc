# Generated by Django 5.2.4 on 2026-10-18 09:12

import django.db.models.deletion
import uuid
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='SweepRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True, db_index=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('run_id', models.UUIDField(default=uuid.uuid4, unique=True)),
                ('status', models.CharField(choices=[('running', 'Running'), ('passed', 'Passed'), ('failed', 'Failed')], default='running', max_length=20)),
                ('dispatch', models.CharField(choices=[('local', 'Local'), ('celery', 'Celery')], default='local', max_length=20)),
                ('max_field_size', models.PositiveBigIntegerField()),
                ('max_minors', models.PositiveBigIntegerField()),
                ('check_mds', models.BooleanField(default=True)),
                ('spot_checks', models.PositiveIntegerField(default=0)),
                ('seed', models.BigIntegerField(blank=True, null=True)),
                ('fields_count', models.PositiveIntegerField(default=0)),
                ('instances', models.PositiveIntegerField(default=0)),
                ('disagreements', models.PositiveIntegerField(default=0)),
                ('violations', models.PositiveIntegerField(default=0)),
                ('duration', models.FloatField(default=0.0)),
                ('summary', models.JSONField(blank=True, default=dict)),
            ],
            options={
                'db_table': 'sweep_runs',
                'ordering': ['-created_at'],
                'get_latest_by': 'created_at',
                'abstract': False,
            },
        ),
        migrations.CreateModel(
            name='HullRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True, db_index=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('p', models.PositiveIntegerField()),
                ('h', models.PositiveIntegerField()),
                ('m', models.PositiveIntegerField()),
                ('k', models.PositiveIntegerField()),
                ('e', models.PositiveIntegerField()),
                ('dim_formula', models.PositiveIntegerField(blank=True, null=True)),
                ('dim_oracle', models.PositiveIntegerField()),
                ('agree', models.BooleanField(blank=True, null=True)),
                ('classification', models.CharField(max_length=32)),
                ('convention', models.CharField(default='theorem', max_length=20)),
                ('mds_status', models.CharField(blank=True, max_length=20)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='records', to='codes.sweeprun')),
            ],
            options={
                'db_table': 'hull_records',
                'ordering': ['p', 'h', 'm', 'k', 'e'],
                'get_latest_by': 'created_at',
                'abstract': False,
                'unique_together': {('run', 'p', 'h', 'm', 'k', 'e')},
            },
        ),
    ]
