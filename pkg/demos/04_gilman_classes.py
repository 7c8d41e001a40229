"""
Measure-theoretic equicontinuity: ratio curves and the A/B/C classification.

Example 1 shows class B under the weights recorded in its rule file
(0.2, 0.2, 0.6).  Under the uniform weights the two particle kinds balance
and the curves stay below the threshold.
"""

from caperiod import GilmanParams, PeriodicConfig, classify_gilman, elementary, example1
from caperiod.fixtures import gilman_params_for
from caperiod.gilman import ratio_curve

ex1 = example1()
params = gilman_params_for("example1")
rep = classify_gilman(ex1, params)
print("example1:", rep.cls)
for c in rep.curves:
    print(c.point, list(zip([p.n for p in c.points], [round(p.ratio, 4) for p in c.points])))

print("rule 30:", classify_gilman(elementary(30), GilmanParams(samples=500)).cls)
print("rule 204:", classify_gilman(elementary(204)).cls)

curve = ratio_curve(elementary(30), PeriodicConfig((0,)), 1, [1, 2, 4], 64, 1000, seed=0)
print([p.ratio for p in curve.points])
