from .app import QRoofApp

__all__ = [
    "QRoofApp",
]
