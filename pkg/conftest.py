import os

import django


def pytest_configure(config):
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hullcodes.settings')
    django.setup()
    from django.test.utils import setup_databases, setup_test_environment
    setup_test_environment()
    config._django_db_cfg = setup_databases(verbosity=0, interactive=False)


def pytest_unconfigure(config):
    cfg = getattr(config, '_django_db_cfg', None)
    if cfg is not None:
        from django.test.utils import teardown_databases, teardown_test_environment
        teardown_databases(cfg, verbosity=0)
        teardown_test_environment()
