# Copyright 2026 The securebio Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Brute-force reference values frozen into the C++ unit tests.

Pure Python, no shared code with the library. Vectors are strings of '0'/'1'
with bit i at position i.
"""

import itertools
import math
from collections import defaultdict

H4 = ["1011", "0111"]
H8 = ["10110100", "01101010", "11010001"]
H10 = ["1011000110", "0110101001", "1100110010", "0001011111"]


def vecs(n):
    for t in itertools.product("01", repeat=n):
        yield "".join(t)


def syn(h, x):
    return "".join(str(sum(int(r[i]) & int(x[i]) for i in range(len(x))) % 2)
                   for r in h)


def dist(a, b):
    return sum(c != d for c, d in zip(a, b))


def xor(a, b):
    return "".join("1" if c != d else "0" for c, d in zip(a, b))


def coset(h, s):
    return sorted(x for x in vecs(len(h[0])) if syn(h, x) == s)


def code_distance(h, e):
    """Distance from e to the nearest codeword."""
    return min(dist(e, c) for c in coset(h, "0" * len(h)))


def far_frr(h, tau, p):
    n = len(h[0])
    t = math.floor(tau * n + 1e-9)
    cd = {e: code_distance(h, e) for e in vecs(n)}
    far = sum(1 for e in cd if cd[e] <= t) / 2 ** n
    frr = sum(p ** e.count("1") * (1 - p) ** (n - e.count("1"))
              for e in cd if cd[e] > t)
    return far, frr


def plain_far_frr(n, tau, p):
    t = math.floor(tau * n + 1e-9)
    far = sum(math.comb(n, w) for w in range(t + 1)) / 2 ** n
    frr = sum(math.comb(n, w) * p ** w * (1 - p) ** (n - w)
              for w in range(t + 1, n + 1))
    return far, frr


def mutual_information(pairs):
    pj = defaultdict(float)
    px = defaultdict(float)
    py = defaultdict(float)
    for x, y, p in pairs:
        pj[(x, y)] += p
        px[x] += p
        py[y] += p
    return sum(p * math.log2(p / (px[x] * py[y])) for (x, y), p in pj.items()
               if p > 0)


def sketch_leakage(h):
    n = len(h[0])
    return mutual_information([(a, syn(h, a), 2.0 ** -n) for a in vecs(n)])


def map_distortion(pairs, n):
    """Per-bit MAP guess of A from V; expected normalized Hamming error."""
    by_v = defaultdict(list)
    for a, v, p in pairs:
        by_v[v].append((a, p))
    err = 0.0
    for v, lst in by_v.items():
        for i in range(n):
            p1 = sum(p for a, p in lst if a[i] == "1")
            p0 = sum(p for a, p in lst if a[i] == "0")
            err += min(p0, p1)
    return err / n


def negation_pairs(n):
    out = []
    for a in vecs(n):
        na = xor(a, "1" * n)
        out.append((a, a, 2.0 ** -n * 0.5))
        out.append((a, na, 2.0 ** -n * 0.5))
    return out


def eer(points):
    for (t0, fa0, fr0), (t1, fa1, fr1) in zip(points, points[1:]):
        g0, g1 = fa0 - fr0, fa1 - fr1
        if g0 <= 0 <= g1 and g0 != g1:
            w = -g0 / (g1 - g0)
            return t0 + w * (t1 - t0), fa0 + w * (fa1 - fa0)
    return None


def main():
    print("coset H4 s=10:", coset(H4, "10"))
    print("codewords H4:", coset(H4, "00"))
    print("decode 1111 in coset 10:",
          min(coset(H4, "10"), key=lambda c: (dist(c, "1111"), c)))
    for tau in (0.0, 0.25):
        print("H4 tau=%g far/frr(p=0.1):" % tau, far_frr(H4, tau, 0.1))
    print("H4 eer:", eer([(0.0,) + far_frr(H4, 0.0, 0.1),
                          (0.25,) + far_frr(H4, 0.25, 0.1)]))
    for tau in (0.0, 0.125, 0.25):
        print("H8 tau=%g far/frr(p=0.05): %.17g %.17g" %
              ((tau,) + far_frr(H8, tau, 0.05)))
        print("plain8 tau=%g far/frr(p=0.05): %.17g %.17g" %
              ((tau,) + plain_far_frr(8, tau, 0.05)))
    for tau in (0.1, 0.2):
        print("H10 tau=%g far/frr(p=0.05): %.17g %.17g" %
              ((tau,) + far_frr(H10, tau, 0.05)))
    for h in (H4, H8, H10):
        print("leakage", len(h[0]), len(h), "=", sketch_leakage(h))
    n = 4
    pairs = [(a, syn(H4, a), 2.0 ** -n) for a in vecs(n)]
    print("H4 distortion given S:", map_distortion(pairs, n))
    print("negation leakage n=4:", mutual_information(negation_pairs(4)))
    print("negation distortion n=4:", map_distortion(negation_pairs(4), 4))
    print("dmin H8:", min(c.count("1") for c in coset(H8, "000") if "1" in c))
    print("dmin H10:", min(c.count("1") for c in coset(H10, "0000")
                           if "1" in c))


if __name__ == "__main__":
    main()
