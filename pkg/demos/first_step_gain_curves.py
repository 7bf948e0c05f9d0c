"""Expected information gain of a single measurement step.

Sweeps the field-exposure delay for the two canonical preparation states:
the balanced superposition (1,1,1)/sqrt(3) and the xy-plane spin state
(1, sqrt(2), 1)/2.  Both curves rise from zero and saturate once the
accumulated phase spread covers a full period of the prior; the xy state
plateaus higher, at 2(1/ln2 - 1) ~ 0.885 bits versus (5/3 - ln3)/ln2 ~
0.817 bits.  A finite coherence time caps the curve and eventually bends
it back toward zero.
"""

import numpy as np

from quditmag import DecoherenceParams, T_SATURATION, balanced_state, xy_state
from quditmag.harness import PriorSpec, first_step_gain_curve


def main():
    prior = PriorSpec(m=4096).build()
    t_values = np.linspace(0.0, 6.0 * T_SATURATION, 61)

    preps = {"balanced": balanced_state(3), "xy": xy_state(0.0, 0.0)}
    channels = {"coherent": DecoherenceParams.none(),
                "T_c = 100 ns": DecoherenceParams.from_coherence_time(100e-9)}

    print(f"{'t [ns]':>8}", end="")
    for prep_name in preps:
        for chan_name in channels:
            print(f"  {prep_name + ', ' + chan_name:>22}", end="")
    print()

    curves = {(p, c): first_step_gain_curve(prior, t_values, prep=prep,
                                            params=chan)
              for p, prep in preps.items() for c, chan in channels.items()}
    for i, t in enumerate(t_values[::6]):
        print(f"{t * 1e9:8.1f}", end="")
        for p in preps:
            for c in channels:
                print(f"  {curves[p, c][i * 6]:22.4f}", end="")
        print()

    print("\nplateau targets: balanced", (5 / 3 - np.log(3)) / np.log(2),
          " xy", 2 * (1 / np.log(2) - 1))


if __name__ == "__main__":
    main()
