#pragma once

// Independent cross-validation paths. This header is the only place in the
// library where floating point appears; the exact engine never includes it.

#include <cmath>
#include <random>
#include <vector>

#include "gammadeg/degree.hpp"

namespace gammadeg::oracle {

struct SphereModelConfig {
    int n = 3;                // sphere dimension, >= 2
    int samples = 0;          // reserved for future sampling-based checks
    double fd_step = 1e-5;    // finite-difference step
    double tolerance = 1e-6;  // |det| below this re-draws the target
};

using Point = std::vector<double>; // in R^{n+1}

inline double dot(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Point& a) { return std::sqrt(dot(a, a)); }

inline Point normalized(Point a) {
    const double n = norm(a);
    for (auto& c : a) c /= n;
    return a;
}

// Squaring map on the unit sphere: s_x(q) = 2<x,q>x - q, the point reflection
// fixing x.
inline Point sphere_theta(const Point& x, const Point& q, double tolerance = 1e-9) {
    if (std::fabs(norm(x) - 1.0) > 1e-6 || std::fabs(norm(q) - 1.0) > 1e-6)
        throw Error("sphere_theta: inputs must be unit vectors");
    (void)tolerance;
    const double c = 2.0 * dot(x, q);
    Point out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * x[i] - q[i];
    return out;
}

namespace detail {

// det of a dense matrix by partial-pivot elimination
inline double determinant(std::vector<Point> m) {
    const std::size_t n = m.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (std::fabs(m[piv][c]) < 1e-300) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return det;
}

// Oriented orthonormal tangent basis at p: Gram-Schmidt the coordinate
// vectors against p, then flip one vector if needed so that
// det[p, v_1..v_n] > 0.
inline std::vector<Point> oriented_tangent_basis(const Point& p) {
    const std::size_t dim = p.size();
    std::vector<Point> basis{p};
    for (std::size_t i = 0; i < dim && basis.size() < dim; ++i) {
        Point e(dim, 0.0);
        e[i] = 1.0;
        for (const auto& b : basis) {
            const double c = dot(e, b);
            for (std::size_t k = 0; k < dim; ++k) e[k] -= c * b[k];
        }
        if (norm(e) > 1e-8) basis.push_back(normalized(e));
    }
    if (basis.size() != dim) throw Error("tangent basis construction failed");
    std::vector<Point> rows = basis;
    if (determinant(rows) < 0)
        for (auto& c : basis.back()) c = -c;
    basis.erase(basis.begin());
    return basis;
}

} // namespace detail

struct DegenerateTarget : Error {
    using Error::Error;
};

// Signed preimage count of a generic target of the squaring map on S^n,
// with the differential's sign decided by finite differences. Independent of
// the exact engine in every step.
inline int sphere_degree(const SphereModelConfig& cfg) {
    if (cfg.n < 2) throw Error("sphere_degree: n must be >= 2");
    const std::size_t dim = static_cast<std::size_t>(cfg.n) + 1;
    Point q(dim, 0.0);
    q[0] = 1.0;
    Point u(dim, 0.0);
    u[1] = 1.0;

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> angle(0.3, 1.2);

    for (int attempt = 0; attempt < 32; ++attempt) {
        const double phi = angle(rng);
        Point y(dim, 0.0);
        for (std::size_t i = 0; i < dim; ++i) y[i] = std::cos(phi) * q[i] + std::sin(phi) * u[i];

        // Every preimage of a generic y solves y + q = 2<x,q>x, hence
        // x = +-(y+q)/|y+q|: angle doubling on the q-y great circle.
        Point mid(dim);
        for (std::size_t i = 0; i < dim; ++i) mid[i] = y[i] + q[i];
        if (norm(mid) < 1e-8) continue;
        const Point x1 = normalized(mid);
        Point x2 = x1;
        for (auto& c : x2) c = -c;

        int total = 0;
        bool degenerate = false;
        for (const Point& x : {x1, x2}) {
            const auto vbasis = detail::oriented_tangent_basis(x);
            // rows: [y, dtheta(v_1), ..., dtheta(v_n)]; its det sign is the
            // local degree since [x, v_1..v_n] is positively oriented.
            std::vector<Point> rows{y};
            for (const auto& v : vbasis) {
                Point xp = x, xm = x;
                for (std::size_t k = 0; k < dim; ++k) {
                    xp[k] += cfg.fd_step * v[k];
                    xm[k] -= cfg.fd_step * v[k];
                }
                const Point tp = sphere_theta(normalized(xp), q);
                const Point tm = sphere_theta(normalized(xm), q);
                Point d(dim);
                for (std::size_t k = 0; k < dim; ++k) d[k] = (tp[k] - tm[k]) / (2 * cfg.fd_step);
                rows.push_back(std::move(d));
            }
            const double det = detail::determinant(rows);
            if (std::fabs(det) <= cfg.tolerance) {
                degenerate = true;
                break;
            }
            total += det > 0 ? 1 : -1;
        }
        if (!degenerate) return total;
    }
    throw DegenerateTarget("no target with well-separated determinant signs found");
}

inline int sphere_degree(int n) {
    SphereModelConfig cfg;
    cfg.n = n;
    return sphere_degree(cfg);
}

// Exhaustive recomputation of the parity sum: lexicographic delta order,
// per-delta root values from scratch, a reversed-order translate search, and
// no fast path. Deliberately slow; rank capped at 12.
inline long long naive_degree(const SpaceDescriptor& space, std::uint64_t seed = 0,
                              int max_attempts = 64) {
    if (const auto bad = validate(space); !bad.empty())
        throw DataError("'" + space.name + "' fails validation: " + bad.front());
    const int r = space.rank;
    if (r > 12) throw CapacityError("naive oracle limited to rank 12");
    const auto& sys = space.system;
    static const Rational half(1, 2);
    static const Rational one(1);

    const auto valid = [&](const FlatVector& v) {
        for (const auto& root : sys.roots)
            if (!(evaluate(root.form, v).abs() < one)) return false;
        return true;
    };
    // translate search over {-2..2}^r, scanned in the opposite direction of
    // the engine's box search
    const auto find_rep = [&](const FlatVector& x) -> FlatVector {
        if (valid(x)) return x;
        for (const int radius : {1, 2}) {
            const long long base = 2 * radius + 1;
            long long count = 1;
            for (int j = 0; j < r; ++j) count *= base;
            for (long long idx = count - 1; idx >= 0; --idx) {
                long long rest = idx;
                FlatVector v = x;
                for (int j = 0; j < r; ++j) {
                    const int t = static_cast<int>(rest % base) - radius;
                    rest /= base;
                    if (t != 0) v = v + Rational(t) * sys.lattice.generators[j];
                }
                if (valid(v)) return v;
            }
        }
        throw NoValidRepresentative("naive oracle: no translate in the window");
    };

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        const FlatVector y = gammadeg::detail::generic_candidate(r, seed, attempt);
        const FlatVector y_half = half * y;
        long long sum = 0;
        bool rejected = false;
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << r) && !rejected; ++bits) {
            FlatVector x = y_half;
            for (int j = 0; j < r; ++j)
                if (bits >> j & 1) x = x + half * sys.lattice.generators[j];
            FlatVector v;
            try {
                v = find_rep(x);
            } catch (const NoValidRepresentative&) {
                rejected = true;
                break;
            }
            int eps = 0;
            for (const auto& root : sys.roots) {
                const Band band = classify_against_thresholds(root.form, v);
                if (band == Band::Zero || band == Band::Half) {
                    rejected = true;
                    break;
                }
                if (band == Band::Outer && root.multiplicity % 2 == 1) eps ^= 1;
            }
            if (rejected) break;
            sum += eps ? -1 : 1;
        }
        if (!rejected) return space.oriented ? sum : 0;
    }
    throw NoGenericPoint("naive oracle: no generic target for '" + space.name + "'");
}

} // namespace gammadeg::oracle
