"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Kernel rows call each backend directly.  The end-to-end rows run a forge in a
fresh interpreter per backend (``RELFORGE_PURE_PYTHON=1`` selects the fallback),
so the recurrence caches start cold in both.
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

from relforge import kernels
from relforge.graphcore import complete, gadget_hn
from relforge.relcalc import recurrence_R, recurrence_S

FORGE_SNIPPET = """
import time
from fractions import Fraction as F
from relforge.forge import ForgeRequest, forge
t = time.perf_counter()
forge(ForgeRequest(F({lo}), F({hi}), max_n=81))
print(time.perf_counter() - t)
"""


def kernel_cases(quick):
    h6 = gadget_hn(6).graph
    k6 = complete(6)
    witness = list((recurrence_R(13) + recurrence_S(13).scale(24)).coeffs)
    cases = [
        ("subset_profile H_6 (14 edges)", lambda k: k.subset_profile(6, *h6.endpoint_lists(), 0, 1)),
        ("subset_profile K_6 (15 edges)", lambda k: k.subset_profile(6, *k6.endpoint_lists())),
        (f"taylor_shift deg {len(witness) - 1}", lambda k: k.taylor_shift(list(witness), 1)),
        (f"sign_variations deg {len(witness) - 1}", lambda k: k.sign_variations(witness)),
    ]
    if not quick:
        k7 = complete(7)
        cases.insert(2, ("subset_profile K_7 (21 edges)", lambda k: k.subset_profile(7, *k7.endpoint_lists())))
    return cases


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def forge_time(pure, lo, hi):
    env = dict(os.environ)
    if pure:
        env["RELFORGE_PURE_PYTHON"] = "1"
    else:
        env.pop("RELFORGE_PURE_PYTHON", None)
    out = subprocess.run(
        [sys.executable, "-c", FORGE_SNIPPET.format(lo=repr(lo), hi=repr(hi))],
        env=env, capture_output=True, text=True, check=True,
    )
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="skip the slowest cases")
    args = ap.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the Python fallback is available")
    names = sorted(backends, reverse=True)
    header = f"{'case':<36}" + "".join(f"{n:>12}" for n in names) + (f"{'speedup':>10}" if len(names) == 2 else "")
    print(header)
    print("-" * len(header))
    for label, fn in kernel_cases(args.quick):
        times = {n: best_of(lambda: fn(backends[n]), args.repeat) for n in names}
        row = f"{label:<36}" + "".join(f"{times[n]:>11.4f}s" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)

    intervals = [("-41/100", "-39/100"), ("-77/100", "-76/100")]
    if not args.quick:
        intervals.append(("-84/100", "-83/100"))
    for lo, hi in intervals:
        label = f"forge ({lo}, {hi})"
        times = {n: forge_time(n == "python", lo, hi) for n in names}
        row = f"{label:<36}" + "".join(f"{times[n]:>11.4f}s" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)
    print(f"\nimport-time default backend: {kernels.BACKEND}")


if __name__ == "__main__":
    main()
