"""Archive-aware surrogate generation for mementos.

Turns archived web pages into social cards, thumbnails, imagereels,
word clouds, and docreels, exposes them over an HTTP API, and composes
many surrogates into publishable stories via the ``tellstory`` CLI.
"""

__version__ = "0.1.0"

USER_AGENT = f"surrogatekit/{__version__}"
