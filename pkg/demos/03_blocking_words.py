"""
Blocking words, equicontinuity periods and the Kurka picture for a few rules.
"""

from caperiod import check_blocking, classify_kurka, elementary, example1, example2, find_blocking_words
from caperiod.equicontinuity import replay_falsification

ca = example2()
print(check_blocking(ca, "w", 1, 0))
print([(ca.alphabet.render(c.word), c.p) for c in find_blocking_words(ca, 1, 2)])

# the shift moves everything, so a pair of contexts eventually disagrees
v = check_blocking(elementary(170), "01", 1, 0)
print("170 falsified at t =", v.time, replay_falsification(elementary(170), v, 1, 0))

for name, rule in [("204", elementary(204)), ("108", elementary(108)), ("30", elementary(30)),
                   ("example1", example1()), ("example2", ca)]:
    k = classify_kurka(rule)
    print(name, k.to_dict(rule.alphabet))
