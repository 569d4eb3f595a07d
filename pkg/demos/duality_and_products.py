"""Two structural facts checked exactly on small examples.

The cohomological CE module is the linear dual of the homological one, and CE
of a product is the tensor product of the CE modules.
"""
from mgce.ce import ce_cohomological, ce_homological, duality_check, monoidality_check
from mgce.lie import abelian, aff1, heis3, sl2
from mgce.mixed import dual_mixed

for g in (aff1(), heis3(), sl2()):
    res = duality_check(g, g.dim)
    same = ce_cohomological(g, g.dim).module == dual_mixed(ce_homological(g, g.dim).module)
    print(f"{g.name:6s} duality ok={res.ok}  module equal to dual={same}")

for g, h in [(aff1(), abelian(2)), (aff1(), sl2())]:
    res = monoidality_check(g, h, 4)
    print(f"CE({g.name} x {h.name}) vs CE({g.name}) (x) CE({h.name}) up to weight 4: ok={res.ok}")
