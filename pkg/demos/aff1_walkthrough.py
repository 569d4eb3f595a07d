"""aff(1) by hand: brackets, the enveloping cone, and the weight-2 mixed structure.

Run with ``python3 demos/aff1_walkthrough.py``.
"""
from mgce.ce import aff1_example_check, ce_cohomological, ce_homological
from mgce.enveloping import pbw_truncate
from mgce.lie import aff1, cone_mixed

g = aff1()
print("generators:", g.names, "degrees:", g.degrees)
print("[e1, e2] =", {g.names[k]: str(c) for k, c in g.br_gen(0, 1).items()})

# PBW normal form: e2 e1 = e1 e2 - e1
pb = pbw_truncate(g, 3)
print("e2*e1 ->", {"".join(g.names[i] for i in w) or "1": str(c) for w, c in pb.normal_form((1, 0)).items()})

# the cone g -> g carries eps: bar x -> x one weight down
cone = cone_mixed(g)
print("cone dims (weight -> degree -> dim):", cone.module.dims_table())

# the headline check on the enveloping cone, PBW words up to length 2
r = aff1_example_check()
for row in r["rows"]:
    print(f"  u={''.join(row['u']) or '1':6s} ok={row['ok']}")
print("CE_eps weight-2 eps matrix (e1e2 -> [e1bar, e2bar]):", r["ce_eps2"])

ho = ce_homological(g, 2)
co = ce_cohomological(g, 2)
print("CE_eps dims:", ho.module.dims_table())
print("CE^eps dims:", co.module.dims_table())
print("all good" if r["ok"] else "MISMATCH")
