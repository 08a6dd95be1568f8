import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "repo",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def pytest_collection_modifyitems(config, items):
    # acceptance runs last so criterion 9 sees every cross-checked norm call
    items.sort(key=lambda item: item.fspath.basename == "test_acceptance.py")
