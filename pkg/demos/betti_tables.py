"""Betti numbers of small Lie algebras from the Tate realization, next to the
classical cochain complex computed directly from structure constants."""
import warnings

from mgce.ce import WindowUnfaithful, betti
from mgce.lie import abelian, adjoint_rep, aff1, heis3, sl2
from mgce.manifest import load_fixture
from mgce.oracle import cohomology_dims

cases = [("abelian3", abelian(3), None), ("aff1", aff1(), None), ("heis3", heis3(), None),
         ("sl2", sl2(), None), ("heis3 adjoint", heis3(), adjoint_rep(heis3())),
         ("sl2 adjoint", sl2(), adjoint_rep(sl2()))]

print(f"{'algebra':16s} {'tate':24s} classical")
for name, g, m in cases:
    tate = betti(g, "cohom", m).betti
    classical = cohomology_dims(g, m)
    print(f"{name:16s} {str(list(tate.values())):24s} {list(classical.values())}")

# an odd generator makes Sym infinite; the window only sees part of it
g = load_fixture("trivial_shifted").lie()
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    rep = betti(g, "cohom", maxweight=3)
print("\ntrivial_shifted, weights <= 3:", rep.betti, "faithful:", rep.faithful)
print("warned:", any(issubclass(w.category, WindowUnfaithful) for w in caught))
