"""Toggle, transfer-curve, classification, calibration, hazard and gate analyses."""

from .calibrate import (CalibrationError, LayerTwoCalibration, SignalMatch,
                        calibrate_signal_matching, calibrate_threshold, calibrate_two_layer,
                        input_threshold)
from .gates import GATE_NAMES, TruthTable, gate_truth_table
from .hazards import Glitch, HazardReport, Overshoot, detect_hazards
from .sweeps import (LineFit, SweepResult, TransferCurve, decision_boundary, fit_line,
                     resolve_axis, resting_state, set_axis, solve, transfer_csv,
                     transfer_function)
from .toggle import (FixedPoint, Stability, toggle_fixed_points, toggle_jacobian,
                     toggle_nullclines, toggle_rhs)

__all__ = [
    "CalibrationError", "FixedPoint", "GATE_NAMES", "Glitch", "HazardReport",
    "LayerTwoCalibration", "LineFit", "Overshoot", "SignalMatch", "Stability",
    "SweepResult", "TransferCurve", "TruthTable", "calibrate_signal_matching",
    "calibrate_threshold", "calibrate_two_layer", "decision_boundary", "detect_hazards",
    "fit_line", "gate_truth_table", "input_threshold", "resolve_axis", "resting_state",
    "set_axis", "solve", "toggle_fixed_points", "toggle_jacobian", "toggle_nullclines",
    "toggle_rhs", "transfer_csv", "transfer_function",
]
