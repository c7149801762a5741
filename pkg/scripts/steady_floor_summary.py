#!/usr/bin/env python3
"""Tabulate steady-state entropies against their long-time floors.

For each preset with a unique steady state the table shows the steady
entropy, the floor computed from the steady state alone, and the slack
between them; degenerate presets are reported as such.
"""

from entrodyn.entropy_bounds import steady_state_bound, von_neumann_entropy
from entrodyn.errors import DegenerateSteadyStateError
from entrodyn.models import get_model, list_models
from entrodyn.steady_state import steady_state


def main() -> None:
    print(f"{'preset':<22} {'S(steady)':>12} {'floor':>12} {'slack':>12}")
    for spec in list_models():
        model = get_model(spec.name)
        try:
            rho_inf = steady_state(model)
        except DegenerateSteadyStateError as exc:
            print(f"{spec.name:<22} degenerate fixed-point manifold "
                  f"(dimension {exc.null_dimension})")
            continue
        entropy = von_neumann_entropy(rho_inf)
        floor = steady_state_bound(model, rho_inf).entropy_floor
        print(f"{spec.name:<22} {entropy:>12.8f} {floor:>12.8f} {entropy - floor:>12.8f}")


if __name__ == "__main__":
    main()
