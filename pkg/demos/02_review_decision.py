# Deciding on a paper from significance (s) and methodology (m) over a
# custom six-value structure, with conjunction read as the information meet.
from wadf import interpretation, parse_framework
from wadf.operator import completion_count, completions, kleene_iterate
from wadf.semantics import enumerate_semantics

TEXT = """
structure custom
value no_tendency tendency_accept tendency_reject accept borderline reject
order no_tendency < tendency_accept
order no_tendency < tendency_reject
order tendency_accept < accept
order tendency_accept < borderline
order tendency_reject < reject
order tendency_reject < borderline
conj = info-meet
statement a: s & m
statement s: #accept
statement m: #borderline
"""

fw = parse_framework(TEXT)
print(fw.parents["a"])  # ('s', 'm')

# a still has room to move up, s and m are maximal
v = interpretation(fw, {"a": "tendency_accept", "s": "accept", "m": "borderline"})
print(completion_count(fw, v))
for w in completions(fw, v):
    print(dict(w))

out = kleene_iterate(fw)
print(out.steps, dict(out.interpretation))

for sem in ("complete", "model", "preferred"):
    print(sem, [dict(x) for x in enumerate_semantics(fw, sem)])
