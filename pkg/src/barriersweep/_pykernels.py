"""Pure-Python/numpy implementations of the hot kernels.

Each function mirrors one in ``_ckernels.pyx`` with identical semantics and
floating-point operation order, so both backends give the same answers.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

TIE = 1e-12

# strategy codes shared with the compiled kernel
STATIONARY, RANDOM_WALK, BOUNCE, EVADER = 0, 1, 2, 3


def _closest_param(px, py, ax, ay, bx, by):
    dx, dy = bx - ax, by - ay
    n2 = dx * dx + dy * dy
    with np.errstate(invalid="ignore", divide="ignore"):
        f = ((px - ax) * dx + (py - ay) * dy) / n2
    f = np.where(n2 == 0.0, 0.0, np.clip(f, 0.0, 1.0))
    return f


def segment_distances(a, b):
    """Pairwise closest distances between segment arrays ``a`` (n,4) and ``b`` (m,4).

    Returns ``(dist, param_a, param_b)``, each (n, m); params are arc lengths.
    Candidate set and tie-break match ``geometry.segment_distance``.
    """
    a = np.asarray(a, dtype=float).reshape(-1, 4)
    b = np.asarray(b, dtype=float).reshape(-1, 4)
    ax, ay, bx, by = (a[:, i][:, None] for i in range(4))
    cx, cy, dx_, dy_ = (b[:, i][None, :] for i in range(4))
    l1 = np.hypot(bx - ax, by - ay)
    l2 = np.hypot(dx_ - cx, dy_ - cy)
    shape = (a.shape[0], b.shape[0])

    cand_d, cand_p, cand_q = [], [], []

    d1x, d1y = bx - ax, by - ay
    d2x, d2y = dx_ - cx, dy_ - cy
    den = d1x * d2y - d1y * d2x
    rx, ry = cx - ax, cy - ay
    with np.errstate(invalid="ignore", divide="ignore"):
        u = (rx * d2y - ry * d2x) / den
        w = (rx * d1y - ry * d1x) / den
        ok = (den != 0.0) & (u >= 0.0) & (u <= 1.0) & (w >= 0.0) & (w <= 1.0)
        cand_p.append(np.where(ok, u * l1, 0.0))
        cand_q.append(np.where(ok, w * l2, 0.0))
    cand_d.append(np.where(ok, 0.0, np.inf))

    for px, py, q in ((ax, ay, 0.0), (bx, by, l1)):
        f = _closest_param(px, py, cx, cy, dx_, dy_)
        qx, qy = cx + f * (dx_ - cx), cy + f * (dy_ - cy)
        cand_d.append(np.hypot(px - qx, py - qy) + np.zeros(shape))
        cand_p.append(q + np.zeros(shape))
        cand_q.append(f * l2 + np.zeros(shape))
    for px, py, q in ((cx, cy, 0.0), (dx_, dy_, l2)):
        f = _closest_param(px, py, ax, ay, bx, by)
        qx, qy = ax + f * (bx - ax), ay + f * (by - ay)
        cand_d.append(np.hypot(qx - px, qy - py) + np.zeros(shape))
        cand_p.append(f * l1 + np.zeros(shape))
        cand_q.append(q + np.zeros(shape))

    D = np.stack(cand_d)
    P = np.stack(cand_p)
    Q = np.stack(cand_q)
    dmin = D.min(axis=0)
    tied = D <= dmin + TIE
    # lexicographic (p, q, d) among tied candidates
    big = np.inf
    Pm = np.where(tied, P, big)
    pbest = Pm.min(axis=0)
    tied &= Pm <= pbest
    Qm = np.where(tied, Q, big)
    qbest = Qm.min(axis=0)
    tied &= Qm <= qbest
    Dm = np.where(tied, D, big)
    return Dm.min(axis=0), pbest, qbest


def visit_gaps(params, groups, n_groups, offsets, directions, tour_length,
               speed, dt, n_steps, radius, warmup):
    """Largest gap between visits per target group on a closed tour.

    Agents start at ``offsets`` and move at ``speed`` in ``directions`` (+1/-1)
    around a tour of length ``tour_length``. A target at tour parameter ``p``
    is visited at step ``k`` when some agent is within ``radius`` of ``p``
    (circular distance). Gaps ending before ``warmup`` are ignored; the
    trailing gap up to the horizon is included.
    """
    params = np.asarray(params, dtype=float)
    groups = np.asarray(groups, dtype=np.int64)
    offsets = np.asarray(offsets, dtype=float)
    dirs = np.asarray(directions, dtype=float)
    L = float(tour_length)
    last = np.zeros(n_groups)
    best = np.zeros(n_groups)
    horizon = n_steps * dt
    if params.size == 0 or offsets.size == 0:
        return np.full(n_groups, horizon)
    for k in range(n_steps + 1):
        time = k * dt
        if L > 0.0:
            pos = np.fmod(offsets + dirs * (speed * time), L)
            pos = np.where(pos < 0.0, pos + L, pos)
            diff = np.abs(params[:, None] - pos[None, :])
            diff = np.minimum(diff, L - diff)
        else:
            diff = np.zeros((params.size, offsets.size))
        hit = (diff <= radius).any(axis=1)
        visited = np.zeros(n_groups, dtype=bool)
        visited[groups[hit]] = True
        if time > warmup:
            gap = np.where(visited, time - last, 0.0)
            best = np.maximum(best, gap)
        last = np.where(visited, time, last)
    return np.maximum(best, horizon - last)


def _tour_xy(cum, xy, s):
    i = np.searchsorted(cum, s, side="right") - 1
    i = np.clip(i, 0, len(cum) - 2)
    seg = cum[i + 1] - cum[i]
    with np.errstate(invalid="ignore", divide="ignore"):
        f = np.where(seg > 0.0, (s - cum[i]) / seg, 0.0)
    x = xy[i, 0] + f * (xy[i + 1, 0] - xy[i, 0])
    y = xy[i, 1] + f * (xy[i + 1, 1] - xy[i, 1])
    return x, y


def _interp_min_dist(mx0, my0, mx1, my1, sx0, sy0, sx1, sy1):
    # min over tau in [0,1] of |(m0 - s0) + tau((m1 - m0) - (s1 - s0))|
    rx, ry = mx0 - sx0, my0 - sy0
    vx = (mx1 - mx0) - (sx1 - sx0)
    vy = (my1 - my0) - (sy1 - sy0)
    vv = vx * vx + vy * vy
    with np.errstate(invalid="ignore", divide="ignore"):
        tau = -(rx * vx + ry * vy) / vv
    tau = np.where(vv > 0.0, np.clip(tau, 0.0, 1.0), 0.0)
    return np.hypot(rx + tau * vx, ry + tau * vy)


def meeting_gaps(cum, xy, offsets, directions, speed, segs, kinds, sensor_speeds,
                 start_params, start_dirs, noise, dt, n_steps, radius, evade_radius,
                 warmup):
    """Largest gap between mule meetings per mobile sensor.

    Mules ride the closed tour (``cum``/``xy`` with the closing vertex
    repeated). Sensors move on their own segment according to ``kinds``.
    A meeting in step k is the linearly interpolated mule-sensor distance
    over [k dt, (k+1) dt] dropping to ``radius`` or below; it is stamped
    at time (k+1) dt.
    """
    cum = np.asarray(cum, dtype=float)
    xy = np.asarray(xy, dtype=float)
    offsets = np.asarray(offsets, dtype=float)
    dirs = np.asarray(directions, dtype=float)
    segs = np.asarray(segs, dtype=float).reshape(-1, 4)
    kinds = np.asarray(kinds, dtype=np.int64)
    sp = np.asarray(sensor_speeds, dtype=float)
    x = np.asarray(start_params, dtype=float).copy()
    sdir = np.asarray(start_dirs, dtype=float).copy()
    noise = np.asarray(noise, dtype=float)
    L = float(cum[-1])
    n = segs.shape[0]
    seglen = np.hypot(segs[:, 2] - segs[:, 0], segs[:, 3] - segs[:, 1])
    ux = np.where(seglen > 0, (segs[:, 2] - segs[:, 0]) / np.where(seglen > 0, seglen, 1.0), 0.0)
    uy = np.where(seglen > 0, (segs[:, 3] - segs[:, 1]) / np.where(seglen > 0, seglen, 1.0), 0.0)
    last = np.zeros(n)
    best = np.zeros(n)
    horizon = n_steps * dt

    def mules_at(time):
        if L > 0.0:
            s = np.fmod(offsets + dirs * (speed * time), L)
            s = np.where(s < 0.0, s + L, s)
        else:
            s = np.zeros_like(offsets)
        return _tour_xy(cum, xy, s)

    mx0, my0 = mules_at(0.0)
    for k in range(n_steps):
        t1 = (k + 1) * dt
        mx1, my1 = mules_at(t1)
        sx0 = segs[:, 0] + x * ux
        sy0 = segs[:, 1] + x * uy
        # choose velocity along the segment for this step
        vel = np.zeros(n)
        vel = np.where(kinds == RANDOM_WALK, noise[k] * sp, vel)
        vel = np.where(kinds == BOUNCE, sdir * sp, vel)
        ev = np.nonzero(kinds == EVADER)[0]
        for i in ev:
            ddx = sx0[i] - mx0
            ddy = sy0[i] - my0
            dd = np.hypot(ddx, ddy)
            j = int(np.argmin(dd))
            if dd[j] <= evade_radius:
                away = ddx[j] * ux[i] + ddy[j] * uy[i]
                if away > 0.0:
                    vel[i] = sp[i]
                elif away < 0.0:
                    vel[i] = -sp[i]
        nx = x + vel * dt
        hit_hi = nx > seglen
        hit_lo = nx < 0.0
        bounce = kinds == BOUNCE
        sdir = np.where(bounce & hit_hi, -1.0, sdir)
        sdir = np.where(bounce & hit_lo, 1.0, sdir)
        nx = np.where(hit_hi, seglen, nx)
        nx = np.where(hit_lo, 0.0, nx)
        sx1 = segs[:, 0] + nx * ux
        sy1 = segs[:, 1] + nx * uy
        md = _interp_min_dist(mx0[None, :], my0[None, :], mx1[None, :], my1[None, :],
                              sx0[:, None], sy0[:, None], sx1[:, None], sy1[:, None])
        met = (md <= radius).any(axis=1)
        if t1 > warmup:
            best = np.maximum(best, np.where(met, t1 - last, 0.0))
        last = np.where(met, t1, last)
        x = nx
        mx0, my0 = mx1, my1
    return np.maximum(best, horizon - last)


def matching_dp(w):
    """Exact minimum-weight perfect matching by memoized bitmask recursion.

    The lowest unmatched index is paired with each candidate in ascending
    order; strict improvement decides, so ties resolve to the smallest partner.
    """
    n = len(w)
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def solve(mask):
        if mask == 0:
            return 0.0, None
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        best, arg = math.inf, -1
        m = rest
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            c = w[i][j] + solve(rest & ~(1 << j))[0]
            if c < best:
                best, arg = c, j
        return best, arg

    pairs = []
    mask = full
    while mask:
        i = (mask & -mask).bit_length() - 1
        j = solve(mask)[1]
        pairs.append((i, j))
        mask &= ~((1 << i) | (1 << j))
    return pairs
