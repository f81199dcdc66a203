#pragma once

#include <algorithm>
#include <boost/rational.hpp>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sdof/errors.hpp"
#include <nlohmann/json.hpp>

namespace sdof {

using Rat = boost::rational<long long>;
using json = nlohmann::ordered_json;

/// A point (d1, d2) in secrecy-degrees-of-freedom space.
struct DofPoint {
    Rat d1{0};
    Rat d2{0};
    friend bool operator==(const DofPoint&, const DofPoint&) = default;
};

/// Closed half-plane a*d1 + b*d2 <= c with coprime integer coefficients.
struct Halfspace {
    long long a = 0;
    long long b = 0;
    long long c = 0;
    friend bool operator==(const Halfspace&, const Halfspace&) = default;
    friend auto operator<=>(const Halfspace&, const Halfspace&) = default;
};

enum class RegionCase { A, B, C, Degenerate };

inline const char* to_string(RegionCase c) {
    switch (c) {
        case RegionCase::A: return "A";
        case RegionCase::B: return "B";
        case RegionCase::C: return "C";
        default: return "Degenerate";
    }
}

namespace geo {

inline bool lex_less(const DofPoint& p, const DofPoint& q) {
    return p.d1 != q.d1 ? p.d1 < q.d1 : p.d2 < q.d2;
}

inline Rat cross(const DofPoint& o, const DofPoint& a, const DofPoint& b) {
    return (a.d1 - o.d1) * (b.d2 - o.d2) - (a.d2 - o.d2) * (b.d1 - o.d1);
}

/// Andrew monotone chain. Returns the hull counterclockwise, starting at the
/// lexicographically smallest vertex, collinear points dropped.
inline std::vector<DofPoint> convex_hull(std::vector<DofPoint> pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<DofPoint> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= Rat(0)) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, lo = k + 1; i-- > 0;) {  // upper
        while (k >= lo && cross(hull[k - 2], hull[k - 1], pts[i]) <= Rat(0)) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

/// Scale (a, b, c) by the positive factor that makes the coefficients
/// coprime integers.
inline Halfspace normalize(Rat a, Rat b, Rat c) {
    long long l = std::lcm(std::lcm(a.denominator(), b.denominator()), c.denominator());
    long long ia = boost::rational_cast<long long>(a * l);
    long long ib = boost::rational_cast<long long>(b * l);
    long long ic = boost::rational_cast<long long>(c * l);
    long long g = std::gcd(std::gcd(std::abs(ia), std::abs(ib)), std::abs(ic));
    if (g > 1) { ia /= g; ib /= g; ic /= g; }
    return Halfspace{ia, ib, ic};
}

/// Half-space through edge p -> q with the interior on the left.
inline Halfspace edge_halfspace(const DofPoint& p, const DofPoint& q) {
    const Rat a = q.d2 - p.d2;
    const Rat b = p.d1 - q.d1;
    return normalize(a, b, a * p.d1 + b * p.d2);
}

inline std::vector<Halfspace> hull_to_halfspaces(const std::vector<DofPoint>& hull) {
    std::vector<Halfspace> hs;
    if (hull.empty()) return hs;
    if (hull.size() == 1) {
        const auto& v = hull[0];
        hs.push_back(normalize(Rat(1), Rat(0), v.d1));
        hs.push_back(normalize(Rat(-1), Rat(0), -v.d1));
        hs.push_back(normalize(Rat(0), Rat(1), v.d2));
        hs.push_back(normalize(Rat(0), Rat(-1), -v.d2));
    } else if (hull.size() == 2) {
        const auto& p = hull[0];
        const auto& q = hull[1];
        hs.push_back(edge_halfspace(p, q));
        hs.push_back(edge_halfspace(q, p));
        const Rat dx = q.d1 - p.d1, dy = q.d2 - p.d2;
        hs.push_back(normalize(dx, dy, dx * q.d1 + dy * q.d2));      // cap at q
        hs.push_back(normalize(-dx, -dy, -(dx * p.d1 + dy * p.d2)));  // cap at p
    } else {
        for (size_t i = 0; i < hull.size(); ++i)
            hs.push_back(edge_halfspace(hull[i], hull[(i + 1) % hull.size()]));
    }
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

}  // namespace geo

/// Bounded convex region in both canonical vertex form (counterclockwise,
/// lexicographically smallest vertex first, no collinear vertices) and
/// half-space form. Two regions are equal iff their canonical forms match.
struct DofRegion {
    std::vector<DofPoint> vertices;
    std::vector<Halfspace> halfspaces;

    static DofRegion from_points(std::vector<DofPoint> pts) {
        DofRegion r;
        r.vertices = geo::convex_hull(std::move(pts));
        r.halfspaces = geo::hull_to_halfspaces(r.vertices);
        return r;
    }

    /// Vertex enumeration over pairwise line intersections. Every input
    /// half-space must be honored; the set must describe a bounded region.
    static DofRegion from_halfspaces(const std::vector<Halfspace>& hs) {
        std::vector<DofPoint> pts;
        for (size_t i = 0; i < hs.size(); ++i) {
            for (size_t j = i + 1; j < hs.size(); ++j) {
                const Rat det = Rat(hs[i].a) * hs[j].b - Rat(hs[j].a) * hs[i].b;
                if (det == Rat(0)) continue;
                DofPoint p;
                p.d1 = (Rat(hs[i].c) * hs[j].b - Rat(hs[j].c) * hs[i].b) / det;
                p.d2 = (Rat(hs[i].a) * hs[j].c - Rat(hs[j].a) * hs[i].c) / det;
                bool ok = true;
                for (const auto& h : hs)
                    if (Rat(h.a) * p.d1 + Rat(h.b) * p.d2 > Rat(h.c)) { ok = false; break; }
                if (ok) pts.push_back(p);
            }
        }
        return from_points(std::move(pts));
    }

    friend bool operator==(const DofRegion&, const DofRegion&) = default;
};

inline bool contains(const DofRegion& region, const DofPoint& p) {
    for (const auto& h : region.halfspaces)
        if (Rat(h.a) * p.d1 + Rat(h.b) * p.d2 > Rat(h.c)) return false;
    return true;
}

inline bool subset_of(const DofRegion& inner, const DofRegion& outer) {
    for (const auto& v : inner.vertices)
        if (!contains(outer, v)) return false;
    return true;
}

inline void validate_dims(long r0, long r1, long r2, long n_e) {
    if (r0 < 0 || r1 < 0 || r2 < 0 || n_e < 0)
        throw InvalidDims("dims: counts must be nonnegative");
    if (std::max(r1, r2) > r0)
        throw InvalidDims("dims: max(r1, r2) <= r0 violated");
    if (r0 > r1 + r2)
        throw InvalidDims("dims: r0 <= r1 + r2 violated");
}

inline long clamp0(long x) { return x > 0 ? x : 0; }

/// The five extreme points p0..p4 of the s.d.o.f. region.
inline std::vector<DofPoint> sdof_vertices(long r0, long r1, long r2, long n_e) {
    validate_dims(r0, r1, r2, n_e);
    return {
        DofPoint{Rat(0), Rat(0)},
        DofPoint{Rat(clamp0(r1 - n_e)), Rat(0)},
        DofPoint{Rat(0), Rat(clamp0(r2 - n_e))},
        DofPoint{Rat(clamp0(r1 - n_e)), Rat(clamp0(r0 - r1 - n_e))},
        DofPoint{Rat(clamp0(r0 - r2 - n_e)), Rat(clamp0(r2 - n_e))},
    };
}

inline DofRegion sdof_region(long r0, long r1, long r2, long n_e) {
    return DofRegion::from_points(sdof_vertices(r0, r1, r2, n_e));
}

/// Shape classification by eavesdropper strength; ties resolved in the
/// order A, C, B (the region formulas agree at the boundaries).
inline RegionCase classify_case(long r0, long r1, long r2, long n_e) {
    validate_dims(r0, r1, r2, n_e);
    const long lo = std::min(r0 - r1, r0 - r2);
    const long hi = std::max(r0 - r1, r0 - r2);
    if (n_e <= lo) return RegionCase::A;
    if (n_e >= hi && n_e < std::min(r1, r2)) return RegionCase::C;
    if (n_e <= hi) return RegionCase::B;
    return RegionCase::Degenerate;
}

/// Convex hull of the rectangles [0, [t1-n_e]^+] x [0, [t2-n_e]^+] over all
/// feasible integer dimension splits t1 + t2 <= r0, t_i <= r_i.
inline DofRegion rectangle_hull(long r0, long r1, long r2, long n_e) {
    validate_dims(r0, r1, r2, n_e);
    std::vector<DofPoint> pts;
    for (long t1 = 0; t1 <= r1; ++t1) {
        for (long t2 = 0; t2 <= r2 && t1 + t2 <= r0; ++t2) {
            const Rat x(clamp0(t1 - n_e)), y(clamp0(t2 - n_e));
            pts.push_back({Rat(0), Rat(0)});
            pts.push_back({x, Rat(0)});
            pts.push_back({Rat(0), y});
            pts.push_back({x, y});
        }
    }
    return DofRegion::from_points(std::move(pts));
}

inline json rat_to_json(const Rat& r) { return json::array({r.numerator(), r.denominator()}); }

inline json region_to_json(const DofRegion& r) {
    json j;
    json verts = json::array();
    for (const auto& v : r.vertices)
        verts.push_back(json::array({rat_to_json(v.d1), rat_to_json(v.d2)}));
    json hs = json::array();
    for (const auto& h : r.halfspaces)
        hs.push_back(json::array({h.a, 1, h.b, 1, h.c, 1}));
    j["vertices"] = std::move(verts);
    j["halfspaces"] = std::move(hs);
    return j;
}

/// Plot-ready vertex table, one row per hull vertex.
inline std::string region_vertices_csv(const DofRegion& r) {
    std::ostringstream os;
    os << "d1,d2\n";
    os.precision(17);
    for (const auto& v : r.vertices)
        os << boost::rational_cast<double>(v.d1) << ',' << boost::rational_cast<double>(v.d2)
           << '\n';
    return os.str();
}

}  // namespace sdof
