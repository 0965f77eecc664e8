from .base import EventHandler

__all__ = ["EventHandler"]
