#include "leekit/lee.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

#include "leekit/numtheory.hpp"

namespace leekit {

LatticePoint zero_point(int n) { return LatticePoint{std::vector<std::int64_t>(n, 0)}; }

LatticePoint unit_point(int n, int axis) {
    if (axis < 0 || axis >= n) throw std::invalid_argument("unit_point: axis out of range");
    LatticePoint p = zero_point(n);
    p.coords[axis] = 1;
    return p;
}

LatticePoint point_add(const LatticePoint& a, const LatticePoint& b) {
    if (a.coords.size() != b.coords.size())
        throw std::invalid_argument("point_add: dimension mismatch");
    LatticePoint out = a;
    for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
    return out;
}

LatticePoint point_sub(const LatticePoint& a, const LatticePoint& b) {
    if (a.coords.size() != b.coords.size())
        throw std::invalid_argument("point_sub: dimension mismatch");
    LatticePoint out = a;
    for (size_t i = 0; i < out.coords.size(); ++i) out.coords[i] -= b.coords[i];
    return out;
}

std::int64_t lee_distance(const LatticePoint& u, const LatticePoint& v) {
    if (u.coords.size() != v.coords.size())
        throw std::invalid_argument("lee_distance: dimension mismatch");
    std::int64_t d = 0;
    for (size_t i = 0; i < u.coords.size(); ++i) d += std::llabs(u.coords[i] - v.coords[i]);
    return d;
}

namespace {

// Coordinate descent on the remaining radius; emits center + offset.
void sphere_rec(const LatticePoint& center, int axis, std::int64_t budget, LatticePoint& offset,
                std::vector<LatticePoint>& out) {
    const int n = center.dimension();
    if (axis == n) {
        out.push_back(point_add(center, offset));
        return;
    }
    for (std::int64_t d = -budget; d <= budget; ++d) {
        offset.coords[axis] = d;
        sphere_rec(center, axis + 1, budget - std::llabs(d), offset, out);
    }
    offset.coords[axis] = 0;
}

}  // namespace

LeeShape lee_sphere(int n, std::int64_t r, const LatticePoint& center) {
    if (n < 1) throw std::invalid_argument("lee_sphere: dimension must be >= 1");
    if (r < 0) throw std::invalid_argument("lee_sphere: radius must be >= 0");
    if (center.dimension() != n) throw std::invalid_argument("lee_sphere: center dimension");
    LeeShape shape{n, ShapeKind::sphere, r, {center}, {}};
    LatticePoint offset = zero_point(n);
    sphere_rec(center, 0, r, offset, shape.points);
    std::sort(shape.points.begin(), shape.points.end());
    return shape;
}

LeeShape double_lee_sphere(int n, std::int64_t r, const LatticePoint& u, const LatticePoint& v) {
    if (lee_distance(u, v) != 1)
        throw std::invalid_argument("double_lee_sphere: centers must be at Lee distance 1");
    LeeShape a = lee_sphere(n, r, u);
    LeeShape b = lee_sphere(n, r, v);
    LeeShape shape{n, ShapeKind::double_sphere, r, {u, v}, {}};
    shape.points.reserve(a.points.size() + b.points.size());
    std::set_union(a.points.begin(), a.points.end(), b.points.begin(), b.points.end(),
                   std::back_inserter(shape.points));
    return shape;
}

LeeShape canonical_double_sphere(int n, std::int64_t r) {
    return double_lee_sphere(n, r, zero_point(n), unit_point(n, 0));
}

std::int64_t ds_size_formula(std::int64_t n, std::int64_t r) {
    if (n < 1) throw std::invalid_argument("ds_size_formula: dimension must be >= 1");
    if (r < 0) throw std::invalid_argument("ds_size_formula: radius must be >= 0");
    std::int64_t total = 0;
    for (std::int64_t i = 0; i <= std::min(n - 1, r); ++i) {
        std::int64_t term = checked_mul(std::int64_t{1} << (i + 1), binomial(n - 1, i));
        term = checked_mul(term, binomial(r + 1, i + 1));
        total = checked_add(total, term);
    }
    return total;
}

void write_points(const LeeShape& shape, std::ostream& os) {
    for (const LatticePoint& p : shape.points) {
        for (size_t i = 0; i < p.coords.size(); ++i) {
            if (i) os << ' ';
            os << p.coords[i];
        }
        os << '\n';
    }
}

}  // namespace leekit
