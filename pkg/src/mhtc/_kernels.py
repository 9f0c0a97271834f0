"""Compiled inner loops of the simulator."""

import numpy as np
from numba import njit

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_K_TX = np.uint64(0xD6E8FEB86659FD93)
_K_RX = np.uint64(0xA0761D6478BD642F)
_K_SLOT = np.uint64(0xE7037ED1A0B428DB)


@njit(cache=True)
def uniform(key, tx, rx, slot, draw):
    z = (np.uint64(tx) * _K_TX) ^ (np.uint64(rx) * _K_RX)
    z ^= np.uint64(key) + np.uint64(slot * 64 + draw) * _K_SLOT
    z += _GOLD
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    z ^= z >> np.uint64(31)
    return (np.float64(z >> np.uint64(11)) + 0.5) * 1.1102230246251565e-16


@njit(cache=True)
def power(key, tx, rx, slot, m0):
    """Unit-mean Gamma(m0) fading power; ``m0 == 0`` means no fading."""
    if m0 == 0:
        return 1.0
    h = 0.0
    for j in range(m0):
        h -= np.log(uniform(key, tx, rx, slot, j))
    return h / m0


@njit(cache=True)
def power_many(key, tx, rx, slot, m0):
    out = np.empty(tx.shape[0])
    for i in range(tx.shape[0]):
        out[i] = power(key, tx[i], rx[i], slot, m0)
    return out


@njit(cache=True)
def _wrap(d, L):
    return d - L * np.floor(d / L + 0.5)


@njit(cache=True)
def interference(rx_pos, rx_ids, tx_pos, tx_ids, key, slot, alpha, m0, L, cap, base):
    """``base`` plus the faded received powers at each receiver, skipping co-located ids.

    Summation for receiver ``i`` stops once it exceeds ``cap[i]``; callers pass
    interferers nearest first so the cut comes early.
    """
    out = np.zeros(rx_pos.shape[0])
    half = -alpha / 2.0
    for i in range(rx_pos.shape[0]):
        acc = base
        for j in range(tx_pos.shape[0]):
            if tx_ids[j] == rx_ids[i]:
                continue
            dx = _wrap(rx_pos[i, 0] - tx_pos[j, 0], L)
            dy = _wrap(rx_pos[i, 1] - tx_pos[j, 1], L)
            acc += power(key, tx_ids[j], rx_ids[i], slot, m0) * (dx * dx + dy * dy) ** half
            if acc > cap[i]:
                break
        out[i] = acc
    return out


@njit(cache=True)
def signals(tx_rel, tx_ids, rx_rel, rx_ids, mask, key, slot, alpha, m0):
    """Faded received power on each masked link; zero elsewhere."""
    out = np.zeros((tx_rel.shape[0], rx_rel.shape[0]))
    half = -alpha / 2.0
    for a in range(tx_rel.shape[0]):
        for b in range(rx_rel.shape[0]):
            if mask[a, b]:
                dx = rx_rel[b, 0] - tx_rel[a, 0]
                dy = rx_rel[b, 1] - tx_rel[a, 1]
                out[a, b] = power(key, tx_ids[a], rx_ids[b], slot, m0) * (dx * dx + dy * dy) ** half
    return out


@njit(cache=True)
def claim_nearest(pool_pos, ideal, L, cell):
    """Give each ideal point, in order, the nearest pool node not yet taken.

    Pool nodes are bucketed on a periodic grid; rings of cells are searched
    outward until no closer node can exist.  Returns pool indices or -1.
    """
    n = pool_pos.shape[0]
    nc = max(1, int(L / cell))
    cs = L / nc
    cx = np.empty(n, np.int64)
    for i in range(n):
        a = min(int(pool_pos[i, 0] / cs), nc - 1)
        b = min(int(pool_pos[i, 1] / cs), nc - 1)
        cx[i] = a * nc + b
    order = np.argsort(cx)
    start = np.zeros(nc * nc + 1, np.int64)
    for i in range(n):
        start[cx[i] + 1] += 1
    for c in range(nc * nc):
        start[c + 1] += start[c]
    taken = np.zeros(n, np.bool_)
    out = np.full(ideal.shape[0], -1, np.int64)
    free = n
    for q in range(ideal.shape[0]):
        if free == 0:
            break
        px, py = ideal[q, 0], ideal[q, 1]
        qa = min(int(px / cs), nc - 1)
        qb = min(int(py / cs), nc - 1)
        best, best_d = -1, np.inf
        r = 0
        while True:
            for da in range(-r, r + 1):
                for db in range(-r, r + 1):
                    if max(abs(da), abs(db)) != r:
                        continue
                    c = ((qa + da) % nc) * nc + (qb + db) % nc
                    for k in range(start[c], start[c + 1]):
                        j = order[k]
                        if taken[j]:
                            continue
                        dx = _wrap(pool_pos[j, 0] - px, L)
                        dy = _wrap(pool_pos[j, 1] - py, L)
                        d2 = dx * dx + dy * dy
                        if d2 < best_d or (d2 == best_d and j < best):
                            best, best_d = j, d2
            if (best >= 0 and best_d <= (r * cs) ** 2) or 2 * r + 1 >= nc:
                break
            r += 1
        out[q] = best
        if best >= 0:
            taken[best] = True
            free -= 1
    return out
