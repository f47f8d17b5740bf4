#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace leekit {

/// Point of Z^n.
struct LatticePoint {
    std::vector<std::int64_t> coords;

    auto operator<=>(const LatticePoint&) const = default;
    int dimension() const { return static_cast<int>(coords.size()); }
};

LatticePoint zero_point(int n);
/// Standard basis point e_axis (0-based axis).
LatticePoint unit_point(int n, int axis);
LatticePoint point_add(const LatticePoint& a, const LatticePoint& b);
LatticePoint point_sub(const LatticePoint& a, const LatticePoint& b);

/// L1 distance. Throws on dimension mismatch.
std::int64_t lee_distance(const LatticePoint& u, const LatticePoint& v);

enum class ShapeKind { sphere, double_sphere };

/// Finite point set in Z^n: a Lee sphere or a double Lee sphere.
/// Points are kept sorted lexicographically.
struct LeeShape {
    int dimension = 0;
    ShapeKind kind = ShapeKind::sphere;
    std::int64_t radius = 0;
    std::vector<LatticePoint> centers;
    std::vector<LatticePoint> points;

    std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
};

/// All points within Lee distance r of the center.
LeeShape lee_sphere(int n, std::int64_t r, const LatticePoint& center);

/// Union of the spheres at u and v; requires d_L(u, v) = 1.
LeeShape double_lee_sphere(int n, std::int64_t r, const LatticePoint& u, const LatticePoint& v);

/// Canonical anticode for the diameter-(2r+2) criterion: DS_{n,r}(0, e_1).
LeeShape canonical_double_sphere(int n, std::int64_t r);

/// Closed form for |DS_{n,r}|: sum over i of 2^(i+1) C(n-1,i) C(r+1,i+1).
std::int64_t ds_size_formula(std::int64_t n, std::int64_t r);

/// One point per line, space-separated coordinates.
void write_points(const LeeShape& shape, std::ostream& os);

}  // namespace leekit
