from hypothesis import settings

# eigensolves inside property bodies can exceed the default 200 ms deadline
# on loaded CI machines; determinism matters here, wall time does not.
settings.register_profile("mcfqc", deadline=None)
settings.load_profile("mcfqc")
