from hypothesis import HealthCheck, settings

# numpy-heavy properties trip the default 200ms deadline on slow boxes
settings.register_profile(
    "qdds",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("qdds")
