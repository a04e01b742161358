"""HTTP/WebSocket service wrapping the core package."""

from .app import create_app, default_config

__all__ = ["create_app", "default_config"]
