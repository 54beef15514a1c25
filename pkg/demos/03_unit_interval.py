# Four statements over [0,1]: a fixed at 0.8, b attacking itself, c the
# conjunction of a and b, d attacked by b but at least 0.6.
from wadf import interpretation, is_stable, parse_assumed, parse_framework
from wadf.framework import serialize_framework
from wadf.operator import dump_interpretation, kleene_iterate
from wadf.semantics import enumerate_semantics, reduct

BODY = """
statement a: 0.8
statement b: !b
statement c: a & b
statement d: !b | 0.6
"""

flat = parse_framework("structure unit-flat" + BODY)
refined = parse_framework("structure unit-refined" + BODY)

# under the flat order nothing about b is certain
print(dump_interpretation(flat, kleene_iterate(flat).interpretation))
for v in enumerate_semantics(flat, "complete"):
    print("complete", dump_interpretation(flat, v))

model = interpretation(flat, [flat.structure.parse_value(x) for x in ("0.8", "0.5", "0.5", "0.6")])

# assuming values up to 0.5 drops b and c from the reduct
for w in ("[0,0.5]", "[0,0.5)"):
    verdict = is_stable(flat, model, parse_assumed(w, flat.structure))
    print(w, verdict.status, verdict.witness)
print(serialize_framework(reduct(flat, model, parse_assumed("[0,0.5]", flat.structure))))

# the refined order already settles everything in the grounded interpretation
out = kleene_iterate(refined)
print(out.steps, dump_interpretation(refined, out.interpretation))
refined_model = interpretation(refined, dict(model))
for w in ("[0,0.5]", "[0,0.5)"):
    print(w, is_stable(refined, refined_model, parse_assumed(w, refined.structure)).status)
