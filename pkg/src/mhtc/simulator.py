"""Monte Carlo simulation of a Poisson ad hoc network with multihop routes.

One trial draws an HPPP of nodes on a torus, marks sources, places the typical
source-destination pair at the window centre and lets every other pair claim
relays.  The typical pair then searches for a relay chain whose hops all clear
the SIR threshold in their own subslot.

Fading powers are a deterministic hash of (trial key, transmitter, receiver,
subslot), so every routing mode sees the same channel in a given trial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import _kernels as _k
from .analytics import NetworkConfig
from .channel import FadingSpec
from .geometry import RelayChain

MODES = ("dynamic", "predetermined_equidistant", "synthetic_independent")
MODE_ALIASES = {"predetermined": "predetermined_equidistant", "independent": "synthetic_independent"}
SEARCH_EXCESS = 20.0
EXPANSION_CAP = 10**6


class DegenerateWindowError(ValueError):
    """Window too small compared with the route-search region."""


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std: float
    trials: int
    seed: int
    cap_hits: int = 0

    def __post_init__(self):
        if not 0.0 <= self.mean <= 1.0 or self.std < 0:
            raise ValueError(f"invalid estimate mean={self.mean}, std={self.std}")


@dataclass
class NetworkRealization:
    """A single trial's nodes, pairs, claims and fading key.

    Node ``0`` is the typical source at the window centre and pair ``0`` is
    the typical pair.  Destination of pair ``p`` has id ``n_nodes + p``.
    ``relays[p]`` lists the relay ids claimed by pair ``p`` (``-1`` where none).
    """

    cfg: NetworkConfig
    L: float
    positions: np.ndarray
    is_source: np.ndarray
    pair_src: np.ndarray
    pair_dst: np.ndarray
    claim_rank: np.ndarray
    relays: np.ndarray
    fading_key: int
    search_budget: float
    claimed: np.ndarray = field(default=None)

    @property
    def n_nodes(self) -> int:
        return len(self.positions)

    def point(self, ids) -> np.ndarray:
        ids = np.asarray(ids)
        n = self.n_nodes
        out = np.empty(ids.shape + (2,))
        low = ids < n
        out[low] = self.positions[ids[low]]
        out[~low] = self.pair_dst[ids[~low] - n]
        return out

    def available_pool(self) -> np.ndarray:
        """Relay ids the typical pair may use: non-sources not claimed earlier."""
        ok = ~self.is_source.copy()
        if self.claimed is not None:
            ok &= ~self.claimed
        return np.flatnonzero(ok)


# -- fading -------------------------------------------------------------------

def _m0(real_or_cfg_fading, tag):
    if tag.startswith("pathloss"):
        return 0
    f = real_or_cfg_fading
    return 1 if f is None or f.m0 is None else int(f.m0)


def fading_power(key: int, tx, rx, subslot: int, fading: FadingSpec | None, tag: str):
    """Unit-mean fading power of link ``tx -> rx`` in ``subslot``.

    Powers are a hash of (key, tx, rx, subslot); Nakagami-``m0`` power is a
    mean of ``m0`` unit exponentials and path loss alone gives power one.
    """
    tx, rx = np.broadcast_arrays(np.asarray(tx, dtype=np.int64), np.asarray(rx, dtype=np.int64))
    flat = _k.power_many(np.uint64(key), tx.ravel(), rx.ravel(), int(subslot), _m0(fading, tag))
    return flat.reshape(tx.shape)


# -- network sampling -----------------------------------------------------------

def search_budget(cfg: NetworkConfig) -> float:
    """Route budget actually searched: ``D`` capped where chains stop mattering.

    A chain with ``d_m`` beyond ``R^2/(m+1) + 20/Lam`` succeeds with
    probability below ``exp(-20)``.
    """
    cap = cfg.R**2 / (cfg.m + 1) + SEARCH_EXCESS / cfg.Lam
    return min(cfg.D, cap)


def window_guard(cfg: NetworkConfig) -> float:
    return 10.0 * max(cfg.R, math.sqrt(search_budget(cfg)))


def hop_range(cfg: NetworkConfig) -> float:
    """Hops longer than this pass with probability below ``G exp(-20)``."""
    return math.sqrt(SEARCH_EXCESS / (cfg.lambda_t * cfg.hop_model.K))


def far_field_interference(L: float, alpha: float, density: float) -> float:
    """Mean interference from transmitters outside the ``L x L`` window around a receiver.

    The torus only sees the window, and for small ``alpha`` the missing tail is
    far from negligible.  Its mean is
    ``density * (L/2)^(2-alpha)/(alpha-2) * 8 int_0^(pi/4) cos(t)^(alpha-2) dt``.
    """
    ang, _ = integrate.quad(lambda t: math.cos(t) ** (alpha - 2), 0, math.pi / 4)
    return density * (L / 2) ** (2 - alpha) / (alpha - 2) * 8 * ang


def _torus(delta, L):
    return delta - L * np.round(delta / L)


def _claim_proxies(cfg, L, positions, pool, pair_src, pair_dst, claim_rank):
    """Background routes: in claim order, the nearest free pool node to each equidistant point."""
    m = cfg.m
    P = len(pair_src)
    relays = np.full((P, m), -1, dtype=np.int64)
    if m == 0 or P <= 1 or len(pool) == 0:
        return relays
    bg = 1 + np.argsort(claim_rank[1:], kind="stable")
    src = positions[pair_src[bg]]
    vec = _torus(pair_dst[bg] - src, L)
    frac = np.arange(1, m + 1) / (m + 1)
    ideal = np.mod(src[:, None, :] + frac[None, :, None] * vec[:, None, :], L).reshape(-1, 2)
    cell = 1.5 / math.sqrt(len(pool) / (L * L))
    got = _k.claim_nearest(positions[pool], ideal, float(L), cell)
    got = np.where(got >= 0, pool[np.maximum(got, 0)], -1)
    relays[bg] = got.reshape(-1, m)
    return relays


def _check_window(cfg, L):
    guard = window_guard(cfg)
    if L < guard * (1 - 1e-12):
        raise DegenerateWindowError(f"window side L={L:.4g} is below the guard {guard:.4g} "
                                    "(10 x max(R, sqrt(search budget)))")


def sample_network(cfg: NetworkConfig, L: float | None = None, seed=0,
                   background: str = "routes") -> NetworkRealization:
    """Draw one trial's network: HPPP nodes, pairs, claim order and proxy routes.

    With ``background="scattered"`` other pairs' relays are uniformly random
    pool nodes instead of nodes along their own routes, which removes the
    spatial correlation between successive subslots' interferers.
    """
    L = window_guard(cfg) if L is None else float(L)
    _check_window(cfg, L)
    rng = np.random.default_rng(seed)
    n = rng.poisson(cfg.lam * L * L)
    centre = np.array([L / 2, L / 2])
    positions = np.vstack([centre, rng.uniform(0, L, size=(n, 2))])
    is_source = np.concatenate([[True], rng.random(n) < cfg.gamma])
    pair_src = np.flatnonzero(is_source)
    theta = rng.uniform(0, 2 * np.pi, size=len(pair_src))
    pair_dst = np.mod(positions[pair_src] + cfg.R * np.stack([np.cos(theta), np.sin(theta)], 1), L)
    claim_rank = rng.permutation(len(pair_src))
    pool = np.flatnonzero(~is_source)
    if background == "routes":
        relays = _claim_proxies(cfg, L, positions, pool, pair_src, pair_dst, claim_rank)
    elif background == "scattered":
        relays = np.full((len(pair_src), cfg.m), -1, dtype=np.int64)
        take = min(len(pool), (len(pair_src) - 1) * cfg.m)
        picked = rng.choice(pool, size=take, replace=False)
        relays.reshape(-1)[cfg.m:cfg.m + take] = picked
    else:
        raise ValueError(f"unknown background model {background!r}")
    key = int(rng.integers(0, 2**63))
    claimed = np.zeros(len(positions), dtype=bool)
    earlier = relays[claim_rank < claim_rank[0]]
    claimed[earlier[earlier >= 0]] = True
    return NetworkRealization(cfg, L, positions, is_source, pair_src, pair_dst, claim_rank, relays,
                              key, search_budget(cfg), claimed)


# -- SIR ------------------------------------------------------------------------

def _tag(real):
    return real.cfg.hop_model.model_tag


def evaluate_sir(real: NetworkRealization, links, subslot: int) -> np.ndarray:
    """Pass/fail of simultaneously active links ``[(tx, rx), ...]``.

    Each receiver hears every other link's transmitter as interference.
    """
    links = np.asarray(links, dtype=np.int64).reshape(-1, 2)
    tx, rx = links[:, 0], links[:, 1]
    fad = real.cfg.hop_model.fading
    d2 = np.sum(_torus(real.point(rx)[:, None, :] - real.point(tx)[None, :, :], real.L) ** 2, -1)
    h = fading_power(real.fading_key, tx[None, :], rx[:, None], subslot, fad, _tag(real))
    with np.errstate(divide="ignore"):
        gain = h * d2 ** (-fad.alpha / 2)
    own = np.diag(gain).copy()
    np.fill_diagonal(gain, 0.0)
    return own >= fad.beta * gain.sum(axis=1)


def _interferers(real, subslot):
    """Ids of other routes' transmitters active in ``subslot``."""
    if subslot == 0:
        ids = real.pair_src[1:]
    else:
        ids = real.relays[1:, subslot - 1]
    return ids[ids >= 0]


class _Search:
    """The typical pair's route search over its feasible region.

    Relays are the free pool nodes that could sit in some chain within the
    search budget.  Edges are evaluated lazily, layer by layer, only where a
    passing walk from the source can still finish within budget; interference
    at each receiver is computed once per subslot.
    """

    def __init__(self, real: NetworkRealization):
        cfg = real.cfg
        self.real, self.m = real, cfg.m
        self.fad = cfg.hop_model.fading
        self.m0 = _m0(self.fad, _tag(real))
        self.key = np.uint64(real.fading_key)
        self.budget = real.search_budget
        self.r2max = hop_range(cfg) ** 2
        self.centre = real.positions[0]
        self.rel_dst = _torus(real.pair_dst[0] - self.centre, real.L)
        pool = real.available_pool()
        rel = _torus(real.positions[pool] - self.centre, real.L)
        # relay i of a chain within budget has |z-S|^2/i + |z-dst|^2/(m+1-i) <= budget
        a, b = np.sum(rel**2, 1), np.sum((rel - self.rel_dst) ** 2, 1)
        near = np.zeros(len(pool), dtype=bool)
        for i in range(1, self.m + 1):
            near |= a / i + b / (self.m + 1 - i) <= self.budget
        self.ids, self.rel = pool[near], rel[near]
        self.rest = b[near]
        n = len(self.ids)
        # receivers: relays then the destination; transmitters: relays then the source
        self.rx_ids = np.append(self.ids, real.n_nodes)
        self.rx_rel = np.vstack([self.rel, self.rel_dst[None]])
        self.tx_ids = np.append(self.ids, 0)
        self.tx_rel = np.vstack([self.rel, np.zeros((1, 2))])
        self._itx, self._itx_pos = [], []
        for s in range(self.m + 1):
            itx = _interferers(real, s)
            # nearest to the typical source first, so capped sums stop early
            order = np.argsort(np.sum(_torus(real.positions[itx] - self.centre, real.L) ** 2, 1))
            self._itx.append(itx[order])
            self._itx_pos.append(real.positions[itx[order]])
        self.far = far_field_interference(real.L, self.fad.alpha, cfg.lambda_t)
        self._edges = None
        self.cap_hit = False

    def _block(self, s, tx, rx, mask):
        """Edge weights for transmitter rows ``tx``, receiver columns ``rx``, masked links."""
        real, fad, L = self.real, self.fad, float(self.real.L)
        tx_ids, rx_ids = self.tx_ids[tx], self.rx_ids[rx]
        tx_rel, rx_rel = self.tx_rel[tx], self.rx_rel[rx]
        S = _k.signals(tx_rel, tx_ids, rx_rel, rx_ids, mask, self.key, s, fad.alpha, self.m0)
        itx = self._itx[s]
        # transmitters of this route that other routes also use are summed separately
        shared = np.isin(tx_ids, itx)
        rest_tx = itx[~np.isin(itx, tx_ids[shared])] if shared.any() else itx
        rx_pos = np.mod(rx_rel + self.centre, L)
        extra = np.zeros(len(rx))
        if shared.any():
            sh = tx_ids[shared]
            d2 = np.sum(_torus(rx_pos[None] - real.positions[sh][:, None], L) ** 2, -1)
            h = fading_power(real.fading_key, sh[:, None], rx_ids[None, :], s, fad, _tag(real))
            with np.errstate(divide="ignore"):
                own = np.where(sh[:, None] == rx_ids[None, :], 0.0, h * d2 ** (-fad.alpha / 2))
            extra = own.sum(0)
        cap = S.max(axis=0) / fad.beta
        I = _k.interference(rx_pos, rx_ids, self._itx_pos[s][~np.isin(itx, tx_ids[shared])]
                            if shared.any() else self._itx_pos[s], rest_tx, self.key, s,
                            fad.alpha, self.m0, L, cap, self.far)
        noise = I[None, :] + extra[None, :]
        if shared.any():
            noise = noise - np.where(shared[:, None], S, 0.0)
        d2 = np.sum((rx_rel[None] - tx_rel[:, None]) ** 2, -1)
        return np.where(mask & (S >= fad.beta * noise), d2, np.inf)

    def edges(self):
        """Per hop, squared length where the hop clears SIR (else inf), plus prefix costs.

        ``W[s]`` has rows for the hop's transmitters (the source alone for
        ``s = 0``) and columns for its receivers (the destination alone for
        ``s = m``).
        """
        if self._edges is not None:
            return self._edges
        m, n = self.m, len(self.ids)
        src, dst = np.array([n]), np.array([n])
        W, cost = [], np.zeros(1)
        for s in range(m + 1):
            tx = src if s == 0 else np.arange(n)
            rx = dst if s == m else np.arange(n)
            Ws = np.full((len(tx), len(rx)), np.inf)
            live = np.flatnonzero(np.isfinite(cost))
            if len(live) and len(rx):
                d2 = np.sum((self.rx_rel[rx][None] - self.tx_rel[tx][live][:, None]) ** 2, -1)
                lower = 0.0 if s == m else self.rest[rx] / (m - s)
                ok = (d2 <= self.r2max) & (d2 > 0) & (cost[live][:, None] + d2 + lower <= self.budget)
                rows, cols = np.flatnonzero(ok.any(1)), np.flatnonzero(ok.any(0))
                if len(rows) and len(cols):
                    Ws[np.ix_(live[rows], cols)] = self._block(s, tx[live[rows]], rx[cols],
                                                               ok[np.ix_(rows, cols)])
            W.append(Ws)
            cost = np.min(cost[:, None] + Ws, axis=0)
        self._edges = W
        return W

    def best_chain(self):
        """Minimum-``d_m`` chain of distinct relays with all hops passing."""
        m = self.m
        W = self.edges()
        if m == 0:
            return ((), float(W[0][0, 0])) if W[0][0, 0] <= self.budget else None
        if len(self.ids) == 0:
            return None
        cost, back = W[0][0], []
        for s in range(1, m):
            tot = cost[:, None] + W[s]
            back.append(np.argmin(tot, axis=0))
            cost = tot[back[-1], np.arange(tot.shape[1])]
        final = cost + W[m][:, 0]
        last = int(np.argmin(final))
        if not final[last] <= self.budget:
            return None
        path = [last]
        for b in reversed(back):
            path.append(int(b[path[-1]]))
        path.reverse()
        if len(set(path)) == m:
            return tuple(path), float(final[last])
        return self._dfs()

    def _dfs(self):
        # walks may revisit a node once m >= 3; fall back to an exact search
        W, m = self.edges(), self.m
        best = [self.budget, None]
        self.expanded = 0

        def go(path, partial):
            self.expanded += 1
            if self.expanded > EXPANSION_CAP:
                raise _CapHit
            s = len(path)
            row = W[0][0] if s == 0 else W[s][path[-1]]
            if s == m:
                tot = partial + row[0]
                if tot <= best[0]:
                    best[:] = [tot, tuple(path)]
                return
            nxt = np.flatnonzero(partial + row + self.rest / (m - s) <= best[0])
            for v in nxt[np.argsort(row[nxt])]:
                if v not in path:
                    go(path + [int(v)], partial + row[v])

        try:
            go([], 0.0)
        except _CapHit:
            self.cap_hit = True
        return None if best[1] is None else (best[1], best[0])

    def predetermined(self):
        """Nearest free pool nodes to the equidistant points, checked hop by hop."""
        real, m = self.real, self.m
        pool = real.available_pool()
        if len(pool) < m:
            return None
        rel = _torus(real.positions[pool] - self.centre, real.L)
        chosen = []
        for i in range(1, m + 1):
            d2 = np.sum((rel - self.rel_dst * i / (m + 1)) ** 2, 1)
            d2[chosen] = np.inf
            chosen.append(int(np.argmin(d2)))
        pts = np.vstack([[0.0, 0.0], rel[chosen], self.rel_dst])
        hops = np.sum(np.diff(pts, axis=0) ** 2, 1)
        if hops.sum() > self.budget:
            return None
        # within budget, every chosen node lies in the feasible region
        index = {int(v): j for j, v in enumerate(self.ids)}
        walk = [index[int(v)] for v in pool[chosen]]
        n = len(self.ids)
        tx, rx = [n] + walk, walk + [n]
        for s in range(m + 1):
            one = np.ones((1, 1), dtype=bool)
            if not np.isfinite(self._block(s, np.array([tx[s]]), np.array([rx[s]]), one)[0, 0]):
                return None
        return tuple(walk), float(hops.sum())


class _CapHit(Exception):
    pass


def _chain_of(search, found):
    """Relay coordinates in the frame with source (-R/2, 0), destination (R/2, 0)."""
    if found is None:
        return None
    R = search.real.cfg.R
    u = search.rel_dst / np.linalg.norm(search.rel_dst)
    frame = np.array([u, [-u[1], u[0]]])
    pts = search.rel[list(found[0])] @ frame.T - np.array([R / 2, 0.0])
    return RelayChain(pts, R)


def select_route(real: NetworkRealization, pair: int = 0, mode: str = "dynamic"):
    """Route of the typical pair (``pair`` must be 0) or ``None`` on failure.

    ``synthetic_independent`` ignores SIR and accepts each candidate chain
    independently with its analytic success probability.
    """
    if pair != 0:
        raise ValueError("only the typical pair (0) is routed; other pairs use proxy relays")
    mode = MODE_ALIASES.get(mode, mode)
    search = _Search(real)
    if mode == "dynamic":
        return _chain_of(search, search.best_chain())
    if mode == "predetermined_equidistant":
        return _chain_of(search, search.predetermined())
    if mode == "synthetic_independent":
        rng = np.random.default_rng(real.fading_key)
        for idx, d in _candidate_chains(search.rel, search.rel_dst, real.cfg.m, search.budget):
            if rng.random() < _chain_success(real.cfg, d):
                return _chain_of(search, (idx, d))
        return None
    raise ValueError(f"unknown mode {mode!r}; choose from {MODES}")


# -- independent-chain idealisation ---------------------------------------------

def _chain_success(cfg, d):
    hm = cfg.hop_model
    return hm.G ** (cfg.m + 1) * np.exp(-cfg.lambda_t * hm.K * np.asarray(d))


def _candidate_chains(rel, dst, m, budget):
    """All ordered chains of distinct relays with ``d_m <= budget``, by ascending ``d_m``."""
    rest = np.sum((rel - dst) ** 2, 1)
    out = []

    def go(path, pos, partial):
        left = m - len(path)
        if left == 0:
            tot = partial + float(np.sum((pos - dst) ** 2))
            if tot <= budget:
                out.append((tuple(path), tot))
            return
        step = np.sum((rel - pos) ** 2, 1)
        for v in np.flatnonzero(partial + step + rest / left <= budget):
            if v not in path:
                go(path + [int(v)], rel[v], partial + step[v])

    go([], np.zeros(2), 0.0)
    out.sort(key=lambda t: t[1])
    return out


def _independent_trials(cfg, trials, seed):
    """Outage flags when every candidate chain succeeds independently."""
    m, R = cfg.m, cfg.R
    budget = search_budget(cfg)
    radius = math.sqrt(max(m * budget - R**2 / 2, 0.0) / 2)
    rng = np.random.default_rng(seed)
    mean_count = cfg.relay_density * math.pi * radius**2
    counts = rng.poisson(mean_count, size=trials)
    total = int(counts.sum())
    rad = radius * np.sqrt(rng.random(total))
    ang = rng.uniform(0, 2 * np.pi, total)
    pts = np.stack([rad * np.cos(ang), rad * np.sin(ang)], 1)
    if m == 1:
        d = 2 * np.sum(pts**2, 1) + R**2 / 2
        ok = (d <= budget) & (rng.random(total) < _chain_success(cfg, d))
        hit = np.zeros(trials, dtype=bool)
        owner = np.repeat(np.arange(trials), counts)
        hit[owner[ok]] = True
        return ~hit
    starts = np.concatenate([[0], np.cumsum(counts)])
    src, dst = np.array([-R / 2, 0.0]), np.array([R / 2, 0.0])
    out = np.ones(trials, dtype=bool)
    for t in range(trials):
        rel = pts[starts[t]:starts[t + 1]] - src
        chains = _candidate_chains(rel, dst - src, m, budget)
        if chains:
            d = np.array([c[1] for c in chains])
            out[t] = not np.any(rng.random(len(d)) < _chain_success(cfg, d))
    return out


# -- trials ---------------------------------------------------------------------

def _estimate(flags, seed, cap_hits=0):
    flags = np.asarray(flags, dtype=float)
    n = len(flags)
    mean = float(flags.mean())
    std = float(flags.std(ddof=1) / math.sqrt(n)) if n > 1 else 0.0
    return McEstimate(mean, std, n, int(seed), cap_hits)


def _typical_outage(cfg, L, seed, trial, modes, background):
    real = sample_network(cfg, L, seed=[int(seed), int(trial)], background=background)
    search = _Search(real)
    out = {}
    for mode in modes:
        found = search.best_chain() if mode == "dynamic" else search.predetermined()
        out[mode] = found is None
    return out, int(getattr(search, "cap_hit", False))


def run_paired_trials(cfg: NetworkConfig, L: float | None, trials: int, modes, seed: int = 0,
                      background: str = "routes"):
    """Outage of the typical pair under several modes on identical realizations."""
    modes = [MODE_ALIASES.get(md, md) for md in modes]
    for md in modes:
        if md not in MODES:
            raise ValueError(f"unknown mode {md!r}; choose from {MODES}")
    if cfg.hop_model.fading is None:
        raise ValueError("simulation needs hop_model.fading (alpha, beta, m0)")
    L = window_guard(cfg) if L is None else float(L)
    _check_window(cfg, L)
    results = {}
    routed = [md for md in modes if md != "synthetic_independent"]
    if routed:
        flags = {md: np.empty(trials, dtype=bool) for md in routed}
        caps = 0
        for t in range(trials):
            res, cap = _typical_outage(cfg, L, seed, t, routed, background)
            caps += cap
            for md in routed:
                flags[md][t] = res[md]
        for md in routed:
            results[md] = _estimate(flags[md], seed, caps)
    if "synthetic_independent" in modes:
        results["synthetic_independent"] = _estimate(_independent_trials(cfg, trials, seed), seed)
    return results


def run_outage_trials(cfg: NetworkConfig, L: float | None = None, trials: int = 1000,
                      mode: str = "dynamic", seed: int = 0, background: str = "routes") -> McEstimate:
    """Typical-pair outage estimate; ``std`` is the standard error of the mean."""
    if trials < 2:
        raise ValueError("need at least two trials")
    mode = MODE_ALIASES.get(mode, mode)
    return run_paired_trials(cfg, L, trials, [mode], seed, background)[mode]


@dataclass(frozen=True)
class SweepResult:
    density: float
    effective_density: float
    estimates: tuple


class NoFeasibleDensityError(ValueError):
    """Even the smallest grid density violates the outage target."""


def max_density_sweep(cfg: NetworkConfig, epsilon: float, mode: str, grid, trials: int = 1000,
                      seed: int = 0, L: float | None = None) -> SweepResult:
    """Largest grid density whose simulated outage stays within ``epsilon``."""
    grid = sorted(float(g) for g in grid)
    ests, best = [], None
    for i, lam in enumerate(grid):
        c = cfg.with_(lam=lam)
        est = run_outage_trials(c, L, trials, mode, seed + i)
        ests.append(est)
        if est.mean <= epsilon:
            best = lam
    if best is None:
        raise NoFeasibleDensityError(f"outage exceeds {epsilon} at every grid density")
    return SweepResult(best, best / (cfg.m + 1), tuple(ests))


__all__ = ["DegenerateWindowError", "McEstimate", "NetworkRealization", "SweepResult",
           "NoFeasibleDensityError", "evaluate_sir", "fading_power", "hop_range",
           "max_density_sweep", "run_outage_trials", "run_paired_trials", "sample_network",
           "search_budget", "select_route", "window_guard"]
