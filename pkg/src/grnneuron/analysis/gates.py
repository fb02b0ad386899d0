"""Boolean truth tables of two-input networks."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import NetworkSpec
from ..integrator import IntegrationConfig
from .sweeps import initial_state, resolve_axis, solve_points

ROWS = ("LL", "LH", "HL", "HH")

GATE_NAMES = {
    (0, 0, 0, 0): "FALSE", (0, 0, 0, 1): "AND", (0, 0, 1, 0): "A_AND_NOT_B",
    (0, 0, 1, 1): "A", (0, 1, 0, 0): "B_AND_NOT_A", (0, 1, 0, 1): "B",
    (0, 1, 1, 0): "XOR", (0, 1, 1, 1): "OR", (1, 0, 0, 0): "NOR",
    (1, 0, 0, 1): "XNOR", (1, 0, 1, 0): "NOT_B", (1, 0, 1, 1): "B_IMPLIES_A",
    (1, 1, 0, 0): "NOT_A", (1, 1, 0, 1): "A_IMPLIES_B", (1, 1, 1, 0): "NAND",
    (1, 1, 1, 1): "TRUE",
}


@dataclass(frozen=True)
class TruthTable:
    inputs: tuple[str, str]
    low: float
    high: float
    threshold: float
    output: str
    outs: tuple[float, float, float, float]
    converged: tuple[bool, bool, bool, bool]

    @property
    def bits(self) -> tuple[int, int, int, int]:
        return tuple(int(v >= self.threshold) for v in self.outs)

    @property
    def name(self) -> str:
        return GATE_NAMES[self.bits]

    def to_dict(self) -> dict:
        return {
            "inputs": list(self.inputs),
            "low": self.low,
            "high": self.high,
            "threshold": self.threshold,
            "output": self.output,
            "gate": self.name,
            "rows": [
                {"row": r, "out": o, "bit": b, "converged": c}
                for r, o, b, c in zip(ROWS, self.outs, self.bits, self.converged)
            ],
        }


def gate_truth_table(spec: NetworkSpec, inputs: tuple[str, str] = ("x", "y"),
                     low: float = 0.0, high: float = 50.0, *,
                     class_threshold: float | None = None, output: str | None = None,
                     cfg: IntegrationConfig | None = None, initial="rest",
                     workers: int = 1) -> TruthTable:
    """Steady output for (low,low), (low,high), (high,low), (high,high).

    Rows are ordered LL, LH, HL, HH with the first letter for ``inputs[0]``.
    """
    axes = [resolve_axis(spec, a) for a in inputs]
    output = output or spec.neurons[-1].name
    p = spec.params_of(output)
    thr = 0.5 * p.k_prod_out / p.k_deg_out if class_threshold is None else float(class_threshold)
    x0 = initial_state(spec, axes, initial, low, cfg)
    corners = [(low, low), (low, high), (high, low), (high, high)]
    res = solve_points(spec, axes, corners, x0, cfg, workers, chunk=1)
    i_out = spec.index(output, "out")
    return TruthTable(tuple(axes), float(low), float(high), thr, output,
                      tuple(float(r[0][i_out]) for r in res), tuple(bool(r[1]) for r in res))


__all__ = ["GATE_NAMES", "ROWS", "TruthTable", "gate_truth_table"]
