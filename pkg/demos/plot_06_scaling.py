"""
Cubic running time
==================

Classification builds every tower entry D[i,l] + D[l,j], m^3 in total.
Doubling m should multiply the time by about eight.
"""

import numpy as np

from metric_recognizer.cli import bench

report = bench([32, 64, 128, 256, 512], repetitions=3)
for m, t in zip(report["sizes"], report["seconds"]):
    print(f"m = {m:4d}   {t * 1e3:9.2f} ms")
print(f"fitted exponent: {report['slope']:.2f}")

ratios = np.array(report["seconds"][1:]) / np.array(report["seconds"][:-1])
print("time ratios per doubling:", np.round(ratios, 1))
