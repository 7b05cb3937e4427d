# Twisted arrow categories of a few small categories, and their nerves.
import numpy as np

from twarrow import fincat as fc
from twarrow import fixtures
from twarrow import sset as ss

cats = fixtures.categories()

# an edge twists into a cospan: two identities map to the one non-identity arrow
C = cats["[1]"]
T, proj = fc.tw_cat(C)
print(T)
for m in range(T.n_mor):
    g, g2, k, h = T.mor_labels[m]
    print(f"  {C.mor_labels[g]} -> {C.mor_labels[g2]} via k={C.mor_labels[k]}, h={C.mor_labels[h]}")

# objects and arrows of Tw(C) for the whole zoo; arrows are the 3-simplices of N(C)
for name, C in cats.items():
    T, _ = fc.tw_cat(C)
    print(f"{name:10s} |C|={C.n_mor:2d}  Tw objects={T.n_obj:2d} arrows={T.n_mor:3d}  N(C)_3={ss.nerve(C, 3).sizes[3]:3d}")

# a group twists into a groupoid
T, _ = fc.tw_cat(cats["Z/2"])
print("Tw(Z/2) is a groupoid:", T.is_groupoid(), " iso classes:", np.unique(T.iso_classes()).size)

# the nerve of Tw(C) is the twisted nerve, over the projections to N(C)^op x N(C)
D = 3
C = cats["J"]
T, proj = fc.tw_cat(C)
NT, NC = ss.nerve(T, D), ss.nerve(C, 2 * D + 1)
NB = ss.nerve(fc.product(fc.opposite(C), C), D)
target = ss.product(ss.op_sset(NC.truncate(D)), NC.truncate(D))
p = ss.nerve_functor(proj, D, NT, NB).then(ss.nerve_op_product_comparison(C, D, NB, target))
phi = ss.find_iso(NT, ss.tw_sset(NC, D), over=(p, ss.tw_projection(NC, D)))
print("N(Tw J) ~ Tw N(J):", phi is not None, " level sizes", NT.sizes)
