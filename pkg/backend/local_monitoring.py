"""
Local Logging and Run Metrics for Monova
Records sweeps, stability checks and derivation searches without external services
"""

import json
import logging
import os
import time
from datetime import datetime, timedelta
from functools import wraps
from pathlib import Path
from typing import Any, Dict, Optional

# ============================================================================
# Logger Configuration
# ============================================================================

LOGS_DIR = Path(__file__).parent.parent / "logs"

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_TO_FILE = os.getenv("LOG_TO_FILE", "false").lower() == "true"

detailed_formatter = logging.Formatter(
    "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S",
)

json_formatter = logging.Formatter(
    '{"timestamp": "%(asctime)s", "level": "%(levelname)s", "module": "%(name)s", '
    '"function": "%(funcName)s", "line": %(lineno)d, "message": "%(message)s"}',
    datefmt="%Y-%m-%d %H:%M:%S",
)

logger = logging.getLogger("monova")
logger.setLevel(getattr(logging, LOG_LEVEL, logging.INFO))
logger.propagate = False

if not logger.handlers:
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(detailed_formatter)
    logger.addHandler(console_handler)

    if LOG_TO_FILE:
        LOGS_DIR.mkdir(exist_ok=True)
        today = datetime.now().strftime("%Y-%m-%d")

        file_handler = logging.FileHandler(LOGS_DIR / f"monova_{today}.log")
        file_handler.setFormatter(detailed_formatter)
        logger.addHandler(file_handler)

        json_handler = logging.FileHandler(LOGS_DIR / f"monova_{today}.json")
        json_handler.setFormatter(json_formatter)
        logger.addHandler(json_handler)


# ============================================================================
# Run Metrics
# ============================================================================


class RunMetrics:
    """Collects bounded-run statistics; persisted only when file logging is on"""

    def __init__(self, metrics_file: Optional[Path] = None, persist: bool = LOG_TO_FILE):
        self.metrics_file = metrics_file or LOGS_DIR / "metrics.json"
        self.persist = persist
        self.metrics = self._load_metrics()

    def _empty(self) -> Dict:
        return {
            "runs": [],
            "daily_stats": {},
            "errors": [],
            "performance": {"by_kind": {}},
        }

    def _load_metrics(self) -> Dict:
        if self.persist and self.metrics_file.exists():
            try:
                with open(self.metrics_file, "r", encoding="utf-8") as f:
                    return json.load(f)
            except (json.JSONDecodeError, IOError):
                pass
        return self._empty()

    def _save_metrics(self):
        if not self.persist:
            return
        self.metrics_file.parent.mkdir(exist_ok=True)
        with open(self.metrics_file, "w", encoding="utf-8") as f:
            json.dump(self.metrics, f, indent=2)

    def log_run(
        self,
        kind: str,
        label: str,
        status: str,
        elapsed: float,
        counts: Optional[Dict[str, int]] = None,
    ):
        """Record one finished run"""
        entry = {
            "timestamp": datetime.now().isoformat(),
            "kind": kind,
            "label": label,
            "status": status,
            "elapsed": elapsed,
            "counts": counts or {},
        }
        self.metrics["runs"].append(entry)

        today = datetime.now().strftime("%Y-%m-%d")
        stats = self.metrics["daily_stats"].setdefault(
            today, {"total": 0, "errors": 0, "avg_elapsed": 0.0}
        )
        stats["total"] += 1
        if status == "ERROR":
            stats["errors"] += 1
        old_avg = stats["avg_elapsed"]
        stats["avg_elapsed"] = (old_avg * (stats["total"] - 1) + elapsed) / stats["total"]

        self.metrics["performance"]["by_kind"].setdefault(kind, []).append(elapsed)

        if len(self.metrics["runs"]) > 1000:
            self.metrics["runs"] = self.metrics["runs"][-1000:]

        self._save_metrics()
        logger.info(f"Run logged: {kind}/{label} - {status} - {elapsed:.2f}s")

    def log_error(self, error_type: str, error_message: str, context: Optional[Dict] = None):
        entry = {
            "timestamp": datetime.now().isoformat(),
            "type": error_type,
            "message": error_message,
            "context": context or {},
        }
        self.metrics["errors"].append(entry)
        if len(self.metrics["errors"]) > 100:
            self.metrics["errors"] = self.metrics["errors"][-100:]
        self._save_metrics()
        logger.error(f"Error logged: {error_type} - {error_message}")

    def get_stats(self, days: int = 7) -> Dict:
        """Get statistics for last N days"""
        end_date = datetime.now()
        start_date = end_date - timedelta(days=days)

        stats = {
            "period": f"Last {days} days",
            "total_runs": 0,
            "errors": 0,
            "avg_elapsed": 0.0,
            "by_kind": {},
            "daily_breakdown": {},
        }

        for date_str, day_stats in self.metrics["daily_stats"].items():
            date = datetime.fromisoformat(date_str)
            if start_date.date() <= date.date() <= end_date.date():
                stats["total_runs"] += day_stats["total"]
                stats["errors"] += day_stats["errors"]
                stats["daily_breakdown"][date_str] = day_stats

        if stats["total_runs"] > 0:
            total = sum(
                day["avg_elapsed"] * day["total"]
                for day in stats["daily_breakdown"].values()
            )
            stats["avg_elapsed"] = total / stats["total_runs"]

        for kind, timings in self.metrics["performance"]["by_kind"].items():
            if timings:
                stats["by_kind"][kind] = {
                    "count": len(timings),
                    "avg": sum(timings) / len(timings),
                    "min": min(timings),
                    "max": max(timings),
                }

        return stats


metrics_collector = RunMetrics()


# ============================================================================
# Decorators
# ============================================================================


def _status_of(result: Any) -> str:
    status = getattr(result, "status", None)
    if status is not None:
        return getattr(status, "value", str(status))
    return type(result).__name__


def log_operation(kind: str):
    """Decorator that times a bounded run and records it in the metrics"""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.time()
            logger.debug(f"Run [{kind}] starting: {func.__name__}")
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                elapsed = time.time() - start_time
                logger.error(f"Run [{kind}] failed after {elapsed:.2f}s - {str(e)}")
                metrics_collector.log_error(
                    error_type=f"{kind}_error",
                    error_message=str(e),
                    context={"function": func.__name__},
                )
                raise
            elapsed = time.time() - start_time
            metrics_collector.log_run(
                kind=kind,
                label=func.__name__,
                status=_status_of(result),
                elapsed=elapsed,
                counts=getattr(result, "counts", None),
            )
            return result

        return wrapper

    return decorator


# ============================================================================
# Reports
# ============================================================================


def get_daily_report() -> str:
    stats = metrics_collector.get_stats(days=1)

    report = f"""
Monova Daily Report
{'='*50}
Date: {datetime.now().strftime('%Y-%m-%d')}

Runs: {stats['total_runs']}
  Errors: {stats['errors']}
  Avg elapsed: {stats['avg_elapsed']:.2f}s

By kind:
"""
    for kind, perf in stats["by_kind"].items():
        report += f"  {kind}: {perf['count']} runs, {perf['avg']:.2f}s avg\n"
    return report


def export_metrics(output_file: Optional[str] = None) -> str:
    """Export the last 30 days of statistics to a JSON file"""
    if output_file is None:
        LOGS_DIR.mkdir(exist_ok=True)
        output_file = (
            LOGS_DIR / f"metrics_export_{datetime.now().strftime('%Y%m%d_%H%M%S')}.json"
        )

    stats = metrics_collector.get_stats(days=30)
    with open(output_file, "w", encoding="utf-8") as f:
        json.dump(stats, f, indent=2)

    logger.info(f"Metrics exported to {output_file}")
    return str(output_file)
