"""
Environment-driven settings.
"""

import logging
import os
from typing import Optional

from .constants import CAP_ENV_VAR, DEFAULT_CAP
from .exceptions import ValidationError

logger = logging.getLogger(__name__)


def resolve_cap(override: Optional[int] = None) -> int:
    """
    Resolve the enumeration cap.

    An explicit override wins, then the REESKIT_CAP environment variable,
    then DEFAULT_CAP.

    Raises:
        ValidationError: If the chosen value is not a positive integer
    """
    if override is not None:
        cap = override
        source = "argument"
    else:
        raw = os.environ.get(CAP_ENV_VAR)
        if raw is None or raw.strip() == "":
            return DEFAULT_CAP
        try:
            cap = int(raw)
        except ValueError as e:
            raise ValidationError(
                f"{CAP_ENV_VAR} must be an integer, got {raw!r}"
            ) from e
        source = CAP_ENV_VAR

    if cap < 1:
        raise ValidationError(f"Enumeration cap must be positive, got {cap} ({source})")
    logger.debug("enumeration cap %d from %s", cap, source)
    return cap
