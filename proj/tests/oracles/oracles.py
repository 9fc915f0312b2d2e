# Copyright 2026 The gapart Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values for the unit tests.

Uses numpy, scipy and torch only. Run with `python3 oracles.py`; the printed
numbers are pasted into the C++ tests.
"""
import itertools

import numpy as np
import scipy.linalg
import scipy.spatial
import torch


def adjacency(n, edges):
    a = np.zeros((n, n))
    for u, v in edges:
        a[u, v] = a[v, u] = 1.0
    return a


def path(n):
    return adjacency(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return adjacency(n, [(i, (i + 1) % n) for i in range(n)])


def lattice(rows, cols, holes=()):
    keep = np.ones((rows, cols), bool)
    for r, c, h, w in holes:
        keep[r:r + h, c:c + w] = False
    ids = -np.ones((rows, cols), int)
    ids[keep] = np.arange(keep.sum())
    edges = []
    for r in range(rows):
        for c in range(cols):
            if not keep[r, c]:
                continue
            if c + 1 < cols and keep[r, c + 1]:
                edges.append((ids[r, c], ids[r, c + 1]))
            if r + 1 < rows and keep[r + 1, c]:
                edges.append((ids[r, c], ids[r + 1, c]))
    return adjacency(int(keep.sum()), edges)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return adjacency(10, outer + inner + spokes)


LOLLIPOP = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]


def lambda2(a):
    d = a.sum(1)
    s = np.eye(len(a)) - a / np.sqrt(np.outer(d, d))
    return scipy.linalg.eigh(s, eigvals_only=True)[1]


def ncut(a, labels):
    labels = np.asarray(labels)
    d = a.sum(1)
    total = 0.0
    for k in (0, 1):
        m = labels == k
        total += a[m][:, ~m].sum() / d[m].sum()
    return total


def brute(a):
    n = len(a)
    best = np.inf
    for bits in itertools.product((0, 1), repeat=n - 1):
        lab = (0,) + bits
        if sum(lab) == 0:
            continue
        best = min(best, ncut(a, lab))
    return best


def qr_positive(m):
    q, r = np.linalg.qr(m)
    s = np.sign(np.diag(r))
    return q * s


def eigen_loss(a, f):
    d = a.sum(1)
    lf = f - (a @ f) / d[:, None]
    lam = (f * lf).sum(0)
    return np.linalg.norm(lf - f * lam) + lam.sum()


def expected_ncut(a, y):
    d = a.sum(1)
    total = 0.0
    for k in range(y.shape[1]):
        c = sum(y[i, k] * (1 - y[j, k]) for i in range(len(a)) for j in range(len(a)) if a[i, j])
        total += c / (d * y[:, k]).sum()
    return total


def show(name, value):
    if isinstance(value, np.ndarray):
        print(f"{name} = {{{', '.join(f'{v:.17g}' for v in value.ravel())}}}")
    else:
        print(f"{name} = {value:.17g}")


def main():
    graphs = {
        "path5": path(5),
        "cycle6": cycle(6),
        "grid3x4": lattice(3, 4),
        "complete5": np.ones((5, 5)) - np.eye(5),
        "star5": adjacency(5, [(0, i) for i in range(1, 5)]),
        "petersen": petersen(),
        "lollipop": adjacency(8, LOLLIPOP),
        "l_shape3": lattice(6, 6, [(0, 3, 3, 3)]),
        "hole3_2": lattice(6, 14, [(2, 2, 2, 2), (2, 6, 2, 2), (2, 10, 2, 2)]),
    }
    for name, a in graphs.items():
        show(f"lambda2[{name}]", lambda2(a))
        if len(a) <= 16:
            show(f"brute_ncut[{name}]", brute(a))

    lol = graphs["lollipop"]
    show("ncut[lollipop, 00011111]", ncut(lol, [0, 0, 0, 1, 1, 1, 1, 1]))

    m = np.array([[1.0, 0.5], [0.2, -1.0], [-0.3, 0.7], [0.9, 0.1], [-1.2, 0.4], [0.05, -0.6], [0.4, 0.3],
                  [-0.8, -0.2]])
    q = qr_positive(m)
    show("qr[lollipop]", q)
    show("eigen_loss[lollipop]", eigen_loss(lol, q))

    y0 = np.array([0.9, 0.8, 0.7, 0.4, 0.3, 0.2, 0.15, 0.05])
    y = np.stack([y0, 1 - y0], 1)
    show("expected_ncut[lollipop]", expected_ncut(lol, y))

    pts = np.array([[0.1, 0.2], [0.9, 0.1], [0.5, 0.9], [0.3, 0.55], [0.75, 0.6], [0.2, 0.95], [0.95, 0.85],
                    [0.55, 0.3], [0.05, 0.7], [0.6, 0.05]])
    tri = scipy.spatial.Delaunay(pts)
    edges = sorted({tuple(sorted((int(s[i]), int(s[j])))) for s in tri.simplices for i, j in ((0, 1), (1, 2), (0, 2))})
    print("delaunay_edges =", edges)

    # Three Adam steps from p = [1, -2] with fixed gradients.
    p = torch.tensor([1.0, -2.0], dtype=torch.float64, requires_grad=True)
    opt = torch.optim.Adam([p], lr=1e-2, betas=(0.9, 0.999), eps=1e-8)
    for g in ([0.5, -1.0], [0.1, 2.0], [-0.3, 0.0]):
        opt.zero_grad()
        p.grad = torch.tensor(g, dtype=torch.float64)
        opt.step()
    show("adam3", p.detach().numpy())


if __name__ == "__main__":
    main()
