# Twisted boundaries of F(2n+1) and corner objects: level-wise injectivity, by exhaustive count.
import time

from twarrow import bisset as bs
from twarrow import sset as ss

for n in range(5):
    t0 = time.perf_counter()
    f = bs.dtw_boundary(n).canonical_map(9, 0)
    ok, witness = bs.is_levelwise_injective(f)
    print(f"dTw F({2 * n + 1}) levels={f.source.sizes[:5, 0].tolist()}...  injective={ok}  {time.perf_counter() - t0:.2f}s")

for k in range(4):
    f = bs.corner_object(k).canonical_map(7, 0)
    print(f"corner({k}) injective={bs.is_levelwise_injective(f)[0]}  attached along {bs.attaching_pattern(k)}")

# two twists of a simplicial set: precomposition (right adjoint) and the left adjoint
S = ss.standard_simplex(1, 7)
print("precomposition twist of Delta[1]:", ss.tw_sset(S, 3).sizes)
print("left adjoint twist of Delta[1]:  ", bs.tw_left_sset(S.truncate(3), 3).sizes)
print("Delta[3]:                        ", ss.standard_simplex(3, 3).sizes)

# the two agree after mapping out of boundaries
W = bs.p1_star(ss.standard_simplex(1, 5), 1)
print("boundary adjunction n<=2:", all(bs.adjunction_check(n, W) for n in range(3)))
