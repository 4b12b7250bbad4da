# src/__init__.py

__version__ = "1.0.0"

from .verification_controller import VerificationController  # Explicit exports

__all__ = ["VerificationController", "__version__"]  # Control public API
