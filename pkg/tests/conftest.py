import os

from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=300, deadline=None)
# Full-size runs of the algebraic and ranking laws
settings.register_profile(
    "acceptance",
    max_examples=10_000,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))
