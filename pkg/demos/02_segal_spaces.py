# Segal spaces from categories: Segal condition, homotopy category, completeness, all before and after twisting.
from twarrow import fincat as fc
from twarrow import fixtures
from twarrow import gss

cats = fixtures.categories()

W = gss.classifying_diagram(cats["J"], 9)
print(W, "level sizes", W.sizes()[:5])
print("components per level", [len(G.component_reps()) for G in W.levels[:5]])

# Segal maps up to level 4, for W and for Tw W
print("W Segal:", gss.segal_check(W, 4).ok, " Tw W Segal:", gss.segal_check(gss.tw_space(W), 4).ok)

# the spine of two edges is not Segal: nothing fills the composable pair
spine = gss.discrete_embedding(fixtures.spine_sset(3))
rep = gss.segal_check(spine, 3)
print("spine Segal:", rep.ok, " first failure at level", rep.first_failure(), rep.levels[2].witness)

# homotopy category: recovers the category, and Ho(Tw W) is Tw(Ho W)
ho = gss.ho_category(W)
print("Ho(W) ~ J:", fc.find_isomorphism(ho.category, cats["J"]) is not None)
res = gss.f_w_functor(W.truncate(7), ho)
print("comparison Ho(Tw W) -> Tw(Ho W):", res.report.as_dict())

# completeness separates the classifying diagram from the discrete nerve of J
for V in (W.truncate(7), gss.discrete_nerve(cats["J"], 7)):
    c, t = gss.completeness_check(V), gss.completeness_check(gss.tw_space(V))
    print(f"{V.name:14s} complete={c.ok!s:5s}  Tw complete={t.ok!s:5s}  hoequiv components={c.components_hoequiv}")

# invertible twisted arrows are exactly those with invertible outer edges
print("hoequiv pullback:", gss.tw_hoequiv_pullback_check(W.truncate(7)).as_dict())
