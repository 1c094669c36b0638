#pragma once

// Lattice polytopes and cones in H-representation, tailored to point
// configurations lifted to height one: convex hulls, dilations, interior
// lattice points, graded sections of the positive-span cone, and the
// reflexive-style polytope attached to a balanced factorial ratio.

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "hypalg/linalg.hpp"
#include "hypalg/rational.hpp"
#include "hypalg/vec.hpp"

namespace hypalg {

// A point configuration b_0..b_{N-1} in Z^m together with its lift
// a_i = (b_i, 1) into Z^(m+1).  Positions matter; points must be distinct
// and affinely span Z^m.
struct LatticeConfig {
    size_t m = 0;
    std::vector<IVec> points;
    std::vector<IVec> lifted;

    size_t size() const { return points.size(); }
    bool operator==(const LatticeConfig&) const = default;
};

inline size_t affine_rank(const std::vector<IVec>& points)
{
    if (points.size() <= 1)
        return 0;
    QMat diffs;
    for (size_t i = 1; i < points.size(); ++i)
        diffs.push_back(to_qvec(ivec_sub(points[i], points[0])));
    return q_rank(diffs);
}

inline LatticeConfig lift_config(const std::vector<IVec>& points)
{
    if (points.empty())
        throw std::invalid_argument("lift_config: empty configuration");
    size_t m = points[0].size();
    if (m == 0)
        throw std::invalid_argument("lift_config: zero-dimensional points");
    for (const auto& p : points)
        check_same_size(p.size(), m, "lift_config");
    std::set<IVec> seen(points.begin(), points.end());
    if (seen.size() != points.size())
        throw std::invalid_argument("lift_config: duplicate points");
    if (affine_rank(points) != m)
        throw std::invalid_argument("lift_config: points do not affinely span the ambient lattice");
    LatticeConfig cfg;
    cfg.m = m;
    cfg.points = points;
    cfg.lifted.reserve(points.size());
    for (const auto& p : points) {
        IVec a = p;
        a.push_back(1);
        cfg.lifted.push_back(std::move(a));
    }
    return cfg;
}

// Facet inequality normal·x <= offset with primitive integer normal.
struct Facet {
    IVec normal;
    Int offset = 0;
    bool operator==(const Facet&) const = default;
    auto operator<=>(const Facet&) const = default;
};

// Full-dimensional polytope: facet inequalities, vertices, and the
// (deduplicated, sorted) generating points it was built from.
struct HPolytope {
    size_t dim = 0;
    std::vector<Facet> facets;
    std::vector<QVec> vertices;
    std::vector<IVec> generators;

    bool operator==(const HPolytope&) const = default;

    bool contains(const QVec& x, bool strict = false) const
    {
        check_same_size(x.size(), dim, "HPolytope::contains");
        for (const auto& f : facets) {
            Rat v = qvec_dot(to_qvec(f.normal), x);
            if (strict ? !(v < f.offset) : !(v <= f.offset))
                return false;
        }
        return true;
    }
    bool contains(const IVec& x, bool strict = false) const
    {
        check_same_size(x.size(), dim, "HPolytope::contains");
        for (const auto& f : facets) {
            BigInt v = ivec_dot(f.normal, x);
            if (strict ? !(v < f.offset) : !(v <= f.offset))
                return false;
        }
        return true;
    }
};

namespace detail {

// Visits every k-subset of {0..n-1} in lexicographic order.
inline void for_each_subset(size_t n, size_t k, const std::function<void(const std::vector<size_t>&)>& fn)
{
    if (k > n)
        return;
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        fn(idx);
        size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

// Visits all integer points of the box [lo, hi] in lexicographic order.
inline void for_each_box_point(const IVec& lo, const IVec& hi, const std::function<void(const IVec&)>& fn)
{
    check_same_size(lo.size(), hi.size(), "for_each_box_point");
    for (size_t i = 0; i < lo.size(); ++i)
        if (lo[i] > hi[i])
            return;
    IVec x = lo;
    while (true) {
        fn(x);
        size_t i = x.size();
        while (i > 0 && x[i - 1] == hi[i - 1])
            --i;
        if (i == 0)
            return;
        ++x[i - 1];
        for (size_t j = i; j < x.size(); ++j)
            x[j] = lo[j];
    }
}

inline BigInt box_point_count(const IVec& lo, const IVec& hi)
{
    BigInt n = 1;
    for (size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] > hi[i])
            return 0;
        n *= BigInt(hi[i]) - lo[i] + 1;
    }
    return n;
}

// Vertices of a point set relative to a facet list: generators whose tight
// normals span the full dimension.
inline std::vector<QVec> vertices_from_facets(const std::vector<IVec>& generators,
                                              const std::vector<Facet>& facets, size_t dim)
{
    std::vector<QVec> verts;
    for (const auto& p : generators) {
        QMat tight;
        for (const auto& f : facets)
            if (ivec_dot(f.normal, p) == f.offset)
                tight.push_back(to_qvec(f.normal));
        if (tight.size() >= dim && q_rank(tight) == dim)
            verts.push_back(to_qvec(p));
    }
    std::sort(verts.begin(), verts.end());
    return verts;
}

}  // namespace detail

// Facet enumeration by exhaustive candidate hyperplanes through dim-subsets
// of the generators.  Every supporting hyperplane found this way carries dim
// affinely independent points, hence is a facet, and every facet arises.
inline HPolytope convex_hull_hrep(const std::vector<IVec>& points)
{
    if (points.empty())
        throw std::invalid_argument("convex_hull_hrep: no points");
    size_t dim = points[0].size();
    for (const auto& p : points)
        check_same_size(p.size(), dim, "convex_hull_hrep");

    std::vector<IVec> gens(points);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    if (affine_rank(gens) != dim)
        throw std::invalid_argument("convex_hull_hrep: degenerate point set");

    std::set<std::pair<IVec, Int>> found;
    detail::for_each_subset(gens.size(), dim, [&](const std::vector<size_t>& idx) {
        QMat diffs;
        for (size_t t = 1; t < dim; ++t)
            diffs.push_back(to_qvec(ivec_sub(gens[idx[t]], gens[idx[0]])));
        auto ns = q_nullspace(diffs, dim);
        if (ns.size() != 1)
            return;  // subset not affinely independent
        IVec n = primitive_vector(ns[0]);
        Int c = to_int(ivec_dot(n, gens[idx[0]]));
        bool any_above = false, any_below = false;
        for (const auto& p : gens) {
            BigInt v = ivec_dot(n, p) - c;
            any_above |= v > 0;
            any_below |= v < 0;
        }
        if (any_above && any_below)
            return;  // not supporting
        if (any_above)
            found.emplace(ivec_scale(-1, n), -c);
        else
            found.emplace(n, c);
    });

    HPolytope poly;
    poly.dim = dim;
    for (const auto& [n, c] : found)
        poly.facets.push_back({n, c});
    poly.generators = std::move(gens);
    poly.vertices = detail::vertices_from_facets(poly.generators, poly.facets, dim);
    return poly;
}

inline HPolytope dilate(const HPolytope& p, Int k)
{
    if (k < 1)
        throw std::invalid_argument("dilate: factor must be >= 1");
    HPolytope q = p;
    for (auto& f : q.facets)
        f.offset *= k;
    for (auto& v : q.vertices)
        v = qvec_scale(Rat(k), v);
    for (auto& g : q.generators)
        g = ivec_scale(k, g);
    return q;
}

// Lattice points strictly inside the polytope, lexicographically sorted.
inline std::vector<IVec> interior_lattice_points(const HPolytope& p)
{
    if (p.vertices.empty())
        throw std::invalid_argument("interior_lattice_points: polytope has no vertices");
    IVec lo(p.dim), hi(p.dim);
    for (size_t i = 0; i < p.dim; ++i) {
        Rat mn = p.vertices[0][i], mx = p.vertices[0][i];
        for (const auto& v : p.vertices) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
        }
        lo[i] = to_int(rat_ceil(mn));
        hi[i] = to_int(rat_floor(mx));
    }
    if (detail::box_point_count(lo, hi) > BigInt(200000000))
        throw std::runtime_error("interior_lattice_points: bounding box too large");
    std::vector<IVec> out;
    detail::for_each_box_point(lo, hi, [&](const IVec& x) {
        if (p.contains(x, /*strict=*/true))
            out.push_back(x);
    });
    return out;
}

// Pointed full-dimensional cone spanned by the lifted points, as facet
// inequalities normal·x >= 0.
struct HCone {
    size_t dim = 0;
    std::vector<IVec> normals;
    std::vector<IVec> generators;

    bool operator==(const HCone&) const = default;

    bool contains(const IVec& u) const
    {
        check_same_size(u.size(), dim, "HCone::contains");
        for (const auto& n : normals)
            if (ivec_dot(n, u) < 0)
                return false;
        return true;
    }
    bool interior(const IVec& u) const
    {
        check_same_size(u.size(), dim, "HCone::interior");
        for (const auto& n : normals)
            if (ivec_dot(n, u) <= 0)
                return false;
        return true;
    }
};

inline HCone cone_hrep(const LatticeConfig& cfg)
{
    size_t dim = cfg.m + 1;
    std::set<IVec> found;
    detail::for_each_subset(cfg.lifted.size(), cfg.m, [&](const std::vector<size_t>& idx) {
        QMat rows;
        for (size_t t : idx)
            rows.push_back(to_qvec(cfg.lifted[t]));
        auto ns = q_nullspace(rows, dim);
        if (ns.size() != 1)
            return;
        IVec n = primitive_vector(ns[0]);
        bool any_above = false, any_below = false;
        for (const auto& a : cfg.lifted) {
            BigInt v = ivec_dot(n, a);
            any_above |= v > 0;
            any_below |= v < 0;
        }
        if (any_above && any_below)
            return;
        found.insert(any_below ? ivec_scale(-1, n) : n);
    });
    HCone cone;
    cone.dim = dim;
    cone.normals.assign(found.begin(), found.end());
    cone.generators = cfg.lifted;
    return cone;
}

// Lattice points of the cone with last coordinate (degree) 0..max_degree,
// sorted by degree then lexicographically, with interiority flags.
struct GradedLatticePoints {
    Int max_degree = 0;
    std::vector<IVec> points;
    std::vector<bool> interior;
};

inline GradedLatticePoints cone_sections(const LatticeConfig& cfg, Int max_degree)
{
    if (max_degree < 0)
        throw std::invalid_argument("cone_sections: negative degree bound");
    HCone cone = cone_hrep(cfg);
    IVec lo1(cfg.m), hi1(cfg.m);
    for (size_t i = 0; i < cfg.m; ++i) {
        Int mn = cfg.points[0][i], mx = cfg.points[0][i];
        for (const auto& p : cfg.points) {
            mn = std::min(mn, p[i]);
            mx = std::max(mx, p[i]);
        }
        lo1[i] = mn;
        hi1[i] = mx;
    }
    GradedLatticePoints out;
    out.max_degree = max_degree;
    for (Int h = 0; h <= max_degree; ++h) {
        // The degree-h section is h times the hull of the configuration.
        IVec lo = ivec_scale(h, lo1), hi = ivec_scale(h, hi1);
        if (detail::box_point_count(lo, hi) > BigInt(200000000))
            throw std::runtime_error("cone_sections: section box too large");
        detail::for_each_box_point(lo, hi, [&](const IVec& x) {
            IVec u = x;
            u.push_back(h);
            if (!cone.contains(u))
                return;
            out.points.push_back(u);
            out.interior.push_back(cone.interior(u));
        });
    }
    return out;
}

// True when the selected configuration points lie on a common proper face,
// i.e. some facet of the hull of the configuration is tight on all of them.
inline bool on_common_face(const LatticeConfig& cfg, const std::vector<size_t>& subset)
{
    if (subset.empty())
        throw std::invalid_argument("on_common_face: empty subset");
    for (size_t q : subset)
        if (q >= cfg.size())
            throw std::out_of_range("on_common_face: index out of range");
    HPolytope hull = convex_hull_hrep(cfg.points);
    for (const auto& f : hull.facets) {
        bool all_tight = true;
        for (size_t q : subset)
            all_tight &= ivec_dot(f.normal, cfg.points[q]) == f.offset;
        if (all_tight)
            return true;
    }
    return false;
}

// Point configuration attached to a balanced factorial ratio
// (a_1..a_r; b_1..b_s): zero, the unit vectors of Z^m (m = r + s), and the
// mixed point (a, -b).
inline std::vector<IVec> ratio_points(const IVec& alpha, const IVec& beta)
{
    if (alpha.empty() || beta.empty())
        throw std::invalid_argument("ratio_points: empty parameter list");
    Int sa = 0, sb = 0;
    for (Int a : alpha) {
        if (a < 1)
            throw std::invalid_argument("ratio_points: parameters must be positive");
        sa += a;
    }
    for (Int b : beta) {
        if (b < 1)
            throw std::invalid_argument("ratio_points: parameters must be positive");
        sb += b;
    }
    if (sa != sb)
        throw std::invalid_argument("ratio_points: parameter sums must balance");
    size_t n = alpha.size(), m = n + beta.size();
    std::vector<IVec> pts;
    pts.push_back(IVec(m, 0));
    for (size_t i = 0; i < m; ++i) {
        IVec e(m, 0);
        e[i] = 1;
        pts.push_back(e);
    }
    IVec mixed(alpha);
    for (Int b : beta)
        mixed.push_back(-b);
    pts.push_back(mixed);
    return pts;
}

// Fast facet construction for the ratio polytope: candidate inequalities
// from expanding the min-branches of its known inequality description, then
// filtered down to genuine facets by a tightness-rank test.  Agrees with
// convex_hull_hrep on the same generators.
inline HPolytope delta_alpha_beta(const IVec& alpha, const IVec& beta)
{
    std::vector<IVec> pts = ratio_points(alpha, beta);
    size_t n = alpha.size(), m = n + beta.size();

    std::set<std::pair<IVec, Int>> cand;
    auto add = [&](IVec normal, Int c) {
        BigInt g = abs(BigInt(c));
        for (Int x : normal)
            g = gcd(g, BigInt(x < 0 ? -x : x));
        if (g > 1) {
            for (Int& x : normal)
                x /= to_int(g);
            c /= to_int(g);
        }
        cand.emplace(std::move(normal), c);
    };
    // Branch through the plain upper bound: sum x <= 1, x_i >= 0.
    add(IVec(m, 1), 1);
    for (size_t i = 0; i < n; ++i) {
        IVec co(m, 0);
        co[i] = -1;
        add(std::move(co), 0);
    }
    // Branches through each negative-weight coordinate.
    for (size_t j = 0; j < beta.size(); ++j) {
        Int bj = beta[j];
        IVec co(m, bj);
        co[n + j] -= 1;
        add(std::move(co), bj);
        for (size_t i = 0; i < n; ++i) {
            IVec lo(m, 0);
            lo[i] = -bj;
            lo[n + j] = -alpha[i];
            add(std::move(lo), 0);
        }
    }

    std::vector<IVec> gens(pts);
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

    HPolytope poly;
    poly.dim = m;
    for (const auto& [normal, c] : cand) {
        std::vector<IVec> tight;
        bool valid = true;
        for (const auto& p : gens) {
            BigInt v = ivec_dot(normal, p);
            valid &= v <= c;
            if (v == c)
                tight.push_back(p);
        }
        if (!valid || tight.size() < m || affine_rank(tight) != m - 1)
            continue;
        poly.facets.push_back({normal, c});
    }
    std::sort(poly.facets.begin(), poly.facets.end());
    poly.generators = std::move(gens);
    poly.vertices = detail::vertices_from_facets(poly.generators, poly.facets, m);
    return poly;
}

// Configuration whose lift spans the cone used for ratio integrality tests.
inline LatticeConfig ratio_config(const IVec& alpha, const IVec& beta)
{
    return lift_config(ratio_points(alpha, beta));
}

}  // namespace hypalg
