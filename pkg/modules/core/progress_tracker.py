"""
Progress Tracker

This module contains the standardized progress reporting used by experiment workers.
"""


class ProgressTracker:
    """Standardized progress messages for experiments and batch runs"""
    @staticmethod
    def emit_progress(signal, current, total, operation, details=""):
        """Emit standardized progress signal"""
        if details:
            message = f"{operation}: {details} ({current}/{total})"
        else:
            message = f"{operation} ({current}/{total})"
        signal.emit(current, total, message)

    @staticmethod
    def format_verdict(name, passed, elapsed):
        """Format a one-line verdict for the console and the log"""
        status = "PASS" if passed else "FAIL"
        return f"[{status}] {name} ({elapsed:.2f}s)"
