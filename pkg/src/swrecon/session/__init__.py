"""Transcripts, leakage accounting and the simulation harness."""

from .transcript import (LEAK_POLICIES, Direction, Message, Transcript, key_reduction,
                         replay_violations)
from .harness import (CascadeScheme, LdpcScheme, SimReport, UniversalityReport,
                      describe_distribution, rate_sweep, reconcile_oneway, simulate,
                      trial_seeds, universality_sweep)
from .io import CSV_COLUMNS, csv_row, dumps, reports_to_csv

__all__ = [
    "CSV_COLUMNS", "CascadeScheme", "Direction", "LEAK_POLICIES", "LdpcScheme", "Message",
    "SimReport", "Transcript", "UniversalityReport", "csv_row", "describe_distribution", "dumps",
    "key_reduction", "rate_sweep", "reconcile_oneway", "replay_violations", "reports_to_csv",
    "simulate", "trial_seeds", "universality_sweep",
]
