"""Suite-wide configuration.

Property tests must be reproducible in CI, so hypothesis runs with a
derandomized profile and no deadline (first calls pay a caching cost).
"""

from hypothesis import settings

settings.register_profile("suite", deadline=None, derandomize=True,
                          max_examples=40)
settings.load_profile("suite")
