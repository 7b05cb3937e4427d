# The twisted projection Tw W -> W^op x W is a left fibration; its fibres are under-categories.
from twarrow import fincat as fc
from twarrow import fixtures
from twarrow import gss

cats = fixtures.categories()

for key, W in fixtures.segal_spaces(9, names=("[2]", "J", "idem")).items():
    r = gss.left_fibration_check(gss.twisted_projection_space(W), 4)
    sizes = [lv.sizes["corner"] for lv in r.levels.values()]
    print(f"{key:12s} left fibration={r.ok}  n=1 shortcut agrees={r.agree}  corner sizes={sizes}")

# a map that is not a left fibration: the first projection W x W -> W
W = gss.classifying_diagram(cats["[1]"], 4)
r = gss.left_fibration_check(gss.first_projection(W), 2)
print("first projection:", r.ok, r.levels[1].witness)

# fibre over an object x, compared with x/C
C = cats["V"]
p = gss.twisted_projection_space(gss.classifying_diagram(C, 7))
for x in range(C.n_obj):
    F, _ = gss.fiber_at(p, x, D=3)
    fib = gss.ho_category(F).category
    under, _ = fc.under_category(C, x)
    same = fc.find_equivalence(fib, under) is not None
    print(f"fibre at {C.obj_labels[x]}: {fib.n_obj} objects, x/C has {under.n_obj}, equivalent={same}")
