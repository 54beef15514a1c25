# Classical ADFs: the weighted engine against the brute-force reference.
import random

from wadf import build_framework, make_structure, parse_framework
from wadf.oracle import ClassicalADF, check_embedding, classical_semantics
from wadf.semantics import enumerate_semantics

fw = parse_framework("""
structure classical
statement a: a | !b
statement b: !a
""")
for sem in ("admissible", "complete", "preferred"):
    print(sem, [v.values for v in enumerate_semantics(fw, sem)])
print(check_embedding(fw).ok)

# a | !a is a tautology classically, but not over [0,1]
taut = parse_framework("structure unit-flat\nstatement a: a\nstatement b: a | !a\n")
print(enumerate_semantics(taut, "grounded"))
classical = build_framework(make_structure("classical"), [("a", "a"), ("b", "a | !a")])
print(classical_semantics(ClassicalADF.from_framework(classical))["grounded"])

# random agreement check
rng = random.Random(0)
cl = make_structure("classical")
names = ["p", "q", "r"]
ok = 0
for _ in range(50):
    pairs = [(s, " | ".join(rng.choice(["", "!"]) + rng.choice(names) for _ in range(2))) for s in names]
    ok += check_embedding(build_framework(cl, pairs)).ok
print(ok, "of 50 agree")
