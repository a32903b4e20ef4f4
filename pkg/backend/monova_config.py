"""
Monova Configuration
Search bounds, budgets and server settings, overridable from the environment or a .env file
"""

import os
from pathlib import Path
from typing import Tuple

from dotenv import load_dotenv

load_dotenv()

PROJECT_ROOT = Path(__file__).parent.parent

# Brute-force evaluations allowed per identity (|M|^letters)
DEFAULT_EVAL_BUDGET = 10**7

# Derivation search bounds
DEFAULT_MAX_WORD_LEN = 14
DEFAULT_MAX_SUB_IMAGE_LEN = 4
DEFAULT_MAX_STEPS = 10**6
DEFAULT_AMBIENT_LEN = 9

# Presentation closure
DEFAULT_MAX_ELEMENTS = 10**4
DEFAULT_MAX_NORMAL_FORM_LEN = 32

# Sweeps
DEFAULT_LETTER_POOL = ("x", "y", "z", "t")
DEFAULT_SWEEP_PAIRS = 5 * 10**7

DEFAULT_HOST = "0.0.0.0"
DEFAULT_PORT = 8050


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(float(raw))
    except ValueError:
        return default
    return value if value > 0 else default


def get_eval_budget() -> int:
    """Evaluation budget, MONOVA_BUDGET overrides the default"""
    return _int_from_env("MONOVA_BUDGET", DEFAULT_EVAL_BUDGET)


def get_max_word_len() -> int:
    return _int_from_env("MONOVA_MAX_WORD_LEN", DEFAULT_MAX_WORD_LEN)


def get_max_sub_image_len() -> int:
    return _int_from_env("MONOVA_MAX_SUB_IMAGE_LEN", DEFAULT_MAX_SUB_IMAGE_LEN)


def get_max_steps() -> int:
    return _int_from_env("MONOVA_MAX_STEPS", DEFAULT_MAX_STEPS)


def get_ambient_len() -> int:
    return _int_from_env("MONOVA_AMBIENT_LEN", DEFAULT_AMBIENT_LEN)


def get_max_elements() -> int:
    return _int_from_env("MONOVA_MAX_ELEMENTS", DEFAULT_MAX_ELEMENTS)


def get_sweep_pairs() -> int:
    """Upper bound on identity pairs visited by one agreement sweep"""
    return _int_from_env("MONOVA_SWEEP_PAIRS", DEFAULT_SWEEP_PAIRS)


def get_letter_pool() -> Tuple[str, ...]:
    """Sweep letter pool, e.g. MONOVA_LETTERS="x y z t" """
    raw = os.getenv("MONOVA_LETTERS", "")
    letters = tuple(raw.split())
    return letters if letters else DEFAULT_LETTER_POOL


def get_data_dir() -> Path:
    return Path(os.getenv("MONOVA_DATA_DIR", str(PROJECT_ROOT / "data")))


def get_server_address() -> Tuple[str, int]:
    return os.getenv("MONOVA_HOST", DEFAULT_HOST), _int_from_env(
        "MONOVA_PORT", DEFAULT_PORT
    )
