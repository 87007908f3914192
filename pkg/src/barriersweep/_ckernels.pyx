# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fmod, fabs, INFINITY, hypot

cnp.import_array()

cdef double TIE = 1e-12
cdef int STATIONARY = 0, RANDOM_WALK = 1, BOUNCE = 2, EVADER = 3


cdef inline double _clip01(double f) noexcept nogil:
    if f < 0.0:
        return 0.0
    if f > 1.0:
        return 1.0
    return f


cdef inline double _closest_f(double px, double py, double ax, double ay,
                              double bx, double by) noexcept nogil:
    cdef double dx = bx - ax, dy = by - ay
    cdef double n2 = dx * dx + dy * dy
    if n2 == 0.0:
        return 0.0
    return _clip01(((px - ax) * dx + (py - ay) * dy) / n2)


cdef inline bint _better(double d, double p, double q, double dmin,
                         double bd, double bp, double bq) noexcept nogil:
    # is (d, p, q) preferred over current best (bd, bp, bq) given global minimum dmin
    if d > dmin + TIE:
        return False
    if bd > dmin + TIE:
        return True
    if p != bp:
        return p < bp
    if q != bq:
        return q < bq
    return d < bd


def segment_distances(a, b):
    cdef double[:, ::1] A = np.ascontiguousarray(a, dtype=np.float64).reshape(-1, 4)
    cdef double[:, ::1] B = np.ascontiguousarray(b, dtype=np.float64).reshape(-1, 4)
    cdef Py_ssize_t n = A.shape[0], m = B.shape[0], i, j, c
    out_d = np.empty((n, m))
    out_p = np.empty((n, m))
    out_q = np.empty((n, m))
    cdef double[:, ::1] OD = out_d, OP = out_p, OQ = out_q
    cdef double ax, ay, bx, by, cx, cy, dx, dy, l1, l2
    cdef double d1x, d1y, d2x, d2y, den, rx, ry, u, w, f, qx, qy, dmin, bd, bp, bq
    cdef double cd[5]
    cdef double cp[5]
    cdef double cq[5]
    with nogil:
        for i in range(n):
            ax = A[i, 0]; ay = A[i, 1]; bx = A[i, 2]; by = A[i, 3]
            l1 = hypot(bx - ax, by - ay)
            for j in range(m):
                cx = B[j, 0]; cy = B[j, 1]; dx = B[j, 2]; dy = B[j, 3]
                l2 = hypot(dx - cx, dy - cy)
                d1x = bx - ax; d1y = by - ay
                d2x = dx - cx; d2y = dy - cy
                den = d1x * d2y - d1y * d2x
                cd[0] = INFINITY; cp[0] = 0.0; cq[0] = 0.0
                if den != 0.0:
                    rx = cx - ax; ry = cy - ay
                    u = (rx * d2y - ry * d2x) / den
                    w = (rx * d1y - ry * d1x) / den
                    if u >= 0.0 and u <= 1.0 and w >= 0.0 and w <= 1.0:
                        cd[0] = 0.0; cp[0] = u * l1; cq[0] = w * l2
                f = _closest_f(ax, ay, cx, cy, dx, dy)
                qx = cx + f * (dx - cx); qy = cy + f * (dy - cy)
                cd[1] = hypot(ax - qx, ay - qy); cp[1] = 0.0; cq[1] = f * l2
                f = _closest_f(bx, by, cx, cy, dx, dy)
                qx = cx + f * (dx - cx); qy = cy + f * (dy - cy)
                cd[2] = hypot(bx - qx, by - qy); cp[2] = l1; cq[2] = f * l2
                f = _closest_f(cx, cy, ax, ay, bx, by)
                qx = ax + f * (bx - ax); qy = ay + f * (by - ay)
                cd[3] = hypot(qx - cx, qy - cy); cp[3] = f * l1; cq[3] = 0.0
                f = _closest_f(dx, dy, ax, ay, bx, by)
                qx = ax + f * (bx - ax); qy = ay + f * (by - ay)
                cd[4] = hypot(qx - dx, qy - dy); cp[4] = f * l1; cq[4] = l2
                dmin = cd[0]
                for c in range(1, 5):
                    if cd[c] < dmin:
                        dmin = cd[c]
                bd = INFINITY; bp = INFINITY; bq = INFINITY
                for c in range(5):
                    if _better(cd[c], cp[c], cq[c], dmin, bd, bp, bq):
                        bd = cd[c]; bp = cp[c]; bq = cq[c]
                OD[i, j] = bd; OP[i, j] = bp; OQ[i, j] = bq
    return out_d, out_p, out_q


def visit_gaps(params, groups, Py_ssize_t n_groups, offsets, directions,
               double tour_length, double speed, double dt, Py_ssize_t n_steps,
               double radius, double warmup):
    cdef double[::1] P = np.ascontiguousarray(params, dtype=np.float64)
    cdef cnp.int64_t[::1] G = np.ascontiguousarray(groups, dtype=np.int64)
    cdef double[::1] O = np.ascontiguousarray(offsets, dtype=np.float64)
    cdef double[::1] D = np.ascontiguousarray(directions, dtype=np.float64)
    cdef Py_ssize_t nt = P.shape[0], na = O.shape[0], k, i, j
    cdef double horizon = n_steps * dt
    if nt == 0 or na == 0:
        return np.full(n_groups, horizon)
    last_a = np.zeros(n_groups)
    best_a = np.zeros(n_groups)
    pos_a = np.empty(na)
    vis_a = np.zeros(n_groups, dtype=np.uint8)
    cdef double[::1] last = last_a, best = best_a, pos = pos_a
    cdef unsigned char[::1] vis = vis_a
    cdef double L = tour_length, time, diff, gap
    with nogil:
        for k in range(n_steps + 1):
            time = k * dt
            for j in range(na):
                if L > 0.0:
                    pos[j] = fmod(O[j] + D[j] * (speed * time), L)
                    if pos[j] < 0.0:
                        pos[j] = pos[j] + L
                else:
                    pos[j] = 0.0
            for i in range(n_groups):
                vis[i] = 0
            for i in range(nt):
                if vis[G[i]]:
                    continue
                for j in range(na):
                    if L > 0.0:
                        diff = fabs(P[i] - pos[j])
                        if L - diff < diff:
                            diff = L - diff
                    else:
                        diff = 0.0
                    if diff <= radius:
                        vis[G[i]] = 1
                        break
            for i in range(n_groups):
                if vis[i]:
                    if time > warmup:
                        gap = time - last[i]
                        if gap > best[i]:
                            best[i] = gap
                    last[i] = time
        for i in range(n_groups):
            if horizon - last[i] > best[i]:
                best[i] = horizon - last[i]
    return best_a


cdef inline void _tour_xy(double[::1] cum, double[:, ::1] xy, double s,
                          double* x, double* y) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = cum.shape[0] - 1, mid
    # largest i with cum[i] <= s, clipped to [0, len-2]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if cum[mid] <= s:
            lo = mid
        else:
            hi = mid
    while lo + 1 < cum.shape[0] - 1 and cum[lo + 1] <= s:
        lo += 1
    cdef double seg = cum[lo + 1] - cum[lo], f = 0.0
    if seg > 0.0:
        f = (s - cum[lo]) / seg
    x[0] = xy[lo, 0] + f * (xy[lo + 1, 0] - xy[lo, 0])
    y[0] = xy[lo, 1] + f * (xy[lo + 1, 1] - xy[lo, 1])


def meeting_gaps(cum, xy, offsets, directions, double speed, segs, kinds,
                 sensor_speeds, start_params, start_dirs, noise, double dt,
                 Py_ssize_t n_steps, double radius, double evade_radius, double warmup):
    cdef double[::1] C = np.ascontiguousarray(cum, dtype=np.float64)
    cdef double[:, ::1] XY = np.ascontiguousarray(xy, dtype=np.float64)
    cdef double[::1] O = np.ascontiguousarray(offsets, dtype=np.float64)
    cdef double[::1] MD = np.ascontiguousarray(directions, dtype=np.float64)
    cdef double[:, ::1] S = np.ascontiguousarray(segs, dtype=np.float64).reshape(-1, 4)
    cdef cnp.int64_t[::1] K = np.ascontiguousarray(kinds, dtype=np.int64)
    cdef double[::1] SP = np.ascontiguousarray(sensor_speeds, dtype=np.float64)
    x_a = np.array(start_params, dtype=np.float64)
    sd_a = np.array(start_dirs, dtype=np.float64)
    cdef double[::1] X = x_a, SD = sd_a
    cdef double[:, ::1] NZ = np.ascontiguousarray(noise, dtype=np.float64).reshape(-1, max(S.shape[0], 1))
    cdef Py_ssize_t nm = O.shape[0], ns = S.shape[0], k, i, j, jn
    cdef double L = C[C.shape[0] - 1], horizon = n_steps * dt
    last_a = np.zeros(ns)
    best_a = np.zeros(ns)
    cdef double[::1] last = last_a, best = best_a
    mm_a = np.empty((2, nm, 2))
    cdef double[:, :, ::1] MM = mm_a
    cdef Py_ssize_t a = 0, b = 1
    cdef double t1, s, sx0, sy0, sx1, sy1, ux, uy, ln, vel, nx, ddx, ddy, dd, dmin, away
    cdef double rx, ry, vx, vy, vv, tau, md
    cdef bint met

    with nogil:
        for j in range(nm):
            s = 0.0
            if L > 0.0:
                s = fmod(O[j], L)
                if s < 0.0:
                    s = s + L
            _tour_xy(C, XY, s, &MM[0, j, 0], &MM[0, j, 1])
        for k in range(n_steps):
            a = k & 1
            b = 1 - a
            t1 = (k + 1) * dt
            for j in range(nm):
                s = 0.0
                if L > 0.0:
                    s = fmod(O[j] + MD[j] * (speed * t1), L)
                    if s < 0.0:
                        s = s + L
                _tour_xy(C, XY, s, &MM[b, j, 0], &MM[b, j, 1])
            for i in range(ns):
                ln = hypot(S[i, 2] - S[i, 0], S[i, 3] - S[i, 1])
                ux = 0.0; uy = 0.0
                if ln > 0.0:
                    ux = (S[i, 2] - S[i, 0]) / ln
                    uy = (S[i, 3] - S[i, 1]) / ln
                sx0 = S[i, 0] + X[i] * ux
                sy0 = S[i, 1] + X[i] * uy
                vel = 0.0
                if K[i] == RANDOM_WALK:
                    vel = NZ[k, i] * SP[i]
                elif K[i] == BOUNCE:
                    vel = SD[i] * SP[i]
                elif K[i] == EVADER and nm > 0:
                    dmin = INFINITY; jn = 0
                    for j in range(nm):
                        dd = hypot(sx0 - MM[a, j, 0], sy0 - MM[a, j, 1])
                        if dd < dmin:
                            dmin = dd; jn = j
                    if dmin <= evade_radius:
                        away = (sx0 - MM[a, jn, 0]) * ux + (sy0 - MM[a, jn, 1]) * uy
                        if away > 0.0:
                            vel = SP[i]
                        elif away < 0.0:
                            vel = -SP[i]
                nx = X[i] + vel * dt
                if nx > ln:
                    if K[i] == BOUNCE:
                        SD[i] = -1.0
                    nx = ln
                if nx < 0.0:
                    if K[i] == BOUNCE:
                        SD[i] = 1.0
                    nx = 0.0
                sx1 = S[i, 0] + nx * ux
                sy1 = S[i, 1] + nx * uy
                met = False
                for j in range(nm):
                    rx = MM[a, j, 0] - sx0; ry = MM[a, j, 1] - sy0
                    vx = (MM[b, j, 0] - MM[a, j, 0]) - (sx1 - sx0)
                    vy = (MM[b, j, 1] - MM[a, j, 1]) - (sy1 - sy0)
                    vv = vx * vx + vy * vy
                    tau = 0.0
                    if vv > 0.0:
                        tau = _clip01(-(rx * vx + ry * vy) / vv)
                    md = hypot(rx + tau * vx, ry + tau * vy)
                    if md <= radius:
                        met = True
                        break
                if met:
                    if t1 > warmup and t1 - last[i] > best[i]:
                        best[i] = t1 - last[i]
                    last[i] = t1
                X[i] = nx
        for i in range(ns):
            if horizon - last[i] > best[i]:
                best[i] = horizon - last[i]
    return best_a


def matching_dp(w):
    cdef Py_ssize_t n = len(w), i, j, mask, rest, sub, full
    W_a = np.ascontiguousarray(w, dtype=np.float64).reshape(n, n) if n else np.zeros((0, 0))
    cdef double[:, ::1] W = W_a
    if n == 0:
        return []
    full = (1 << n) - 1
    f_a = np.full(full + 1, INFINITY)
    arg_a = np.full(full + 1, -1, dtype=np.int64)
    cdef double[::1] F = f_a
    cdef cnp.int64_t[::1] ARG = arg_a
    cdef double c
    F[0] = 0.0
    with nogil:
        for mask in range(1, full + 1):
            i = 0
            while not (mask >> i) & 1:
                i += 1
            rest = mask & ~(1 << i)
            for j in range(i + 1, n):
                if (rest >> j) & 1:
                    sub = rest & ~(1 << j)
                    c = W[i, j] + F[sub]
                    if c < F[mask]:
                        F[mask] = c
                        ARG[mask] = j
    pairs = []
    mask = full
    while mask:
        i = 0
        while not (mask >> i) & 1:
            i += 1
        j = ARG[mask]
        pairs.append((int(i), int(j)))
        mask &= ~((1 << i) | (1 << j))
    return pairs
