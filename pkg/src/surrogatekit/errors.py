"""Exception taxonomy shared by all modules.

The API layer maps each of these onto exactly one HTTP status code, so
every error raised by the inner modules must derive from SurrogateError.
"""


class SurrogateError(Exception):
    """Base class; carries an optional detail payload for API bodies."""

    http_status = 500

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class InvalidUri(SurrogateError):
    """The submitted URI lacks a scheme or is otherwise malformed."""

    http_status = 400


class NotAMemento(SurrogateError):
    """The response for the URI carries no Memento-Datetime header."""

    http_status = 404


class ConnectionFailed(SurrogateError):
    """Connection issue while talking to the web archive."""

    http_status = 502


class Timeout(SurrogateError):
    """The archive did not answer within the configured timeout."""

    http_status = 504


class MalformedTimeMap(SurrogateError):
    """TimeMap body did not parse as RFC 7089 link-format."""

    http_status = 500


class UnknownAlgorithm(SurrogateError):
    """Requested ranking algorithm is not one we implement."""

    http_status = 400


class UnknownColormap(SurrogateError):
    """Requested word-cloud colormap is not bundled."""

    http_status = 400


class ProductUnsupported(SurrogateError):
    """The memento cannot support this product (e.g. too few images)."""

    http_status = 500


class RendererUnavailable(SurrogateError):
    """The screenshot backend could not be executed."""

    http_status = 500


class RenderTimeout(SurrogateError):
    """Product generation exceeded its deadline."""

    http_status = 504
