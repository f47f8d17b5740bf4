#include "leekit/tiling.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace leekit {

GroupHomomorphism make_homomorphism(int source_dim, AbelianGroup target,
                                    std::vector<GroupElement> images) {
    if (source_dim < 1) throw std::invalid_argument("make_homomorphism: dimension must be >= 1");
    if (static_cast<int>(images.size()) != source_dim)
        throw std::invalid_argument("make_homomorphism: one image per basis vector required");
    for (const GroupElement& a : images)
        if (!target.contains(a))
            throw std::invalid_argument("make_homomorphism: image outside the target group");
    return GroupHomomorphism{source_dim, std::move(target), std::move(images)};
}

GroupElement hom_apply(const GroupHomomorphism& phi, const LatticePoint& x) {
    if (x.dimension() != phi.source_dim)
        throw std::invalid_argument("hom_apply: point dimension mismatch");
    GroupElement acc = phi.target.identity();
    for (int i = 0; i < phi.source_dim; ++i)
        acc = phi.target.combine(acc, phi.target.power(phi.images[i], x.coords[i]));
    return acc;
}

BijectionResult bijection_check(const GroupHomomorphism& phi, const LeeShape& v) {
    const std::int64_t order = phi.target.order();
    if (v.size() != order)
        throw std::invalid_argument("bijection_check: |V| must equal the group order");
    // First occupant of each group index; a second occupant is a collision.
    std::vector<std::int32_t> occupant(static_cast<size_t>(order), -1);
    for (size_t i = 0; i < v.points.size(); ++i) {
        const std::int64_t idx = phi.target.index_of(hom_apply(phi, v.points[i]));
        if (occupant[static_cast<size_t>(idx)] >= 0) {
            return BijectionResult{
                false,
                std::make_pair(v.points[static_cast<size_t>(occupant[static_cast<size_t>(idx)])],
                               v.points[i])};
        }
        occupant[static_cast<size_t>(idx)] = static_cast<std::int32_t>(i);
    }
    return BijectionResult{true, std::nullopt};
}

bool packing_crosscheck(const GroupHomomorphism& phi, const LeeShape& v) {
    if (v.size() != phi.target.order())
        throw std::invalid_argument("packing_crosscheck: |V| must equal the group order");
    const GroupElement id = phi.target.identity();
    for (size_t i = 0; i < v.points.size(); ++i) {
        for (size_t j = i + 1; j < v.points.size(); ++j) {
            if (hom_apply(phi, point_sub(v.points[i], v.points[j])) == id) return false;
        }
    }
    return true;
}

bool is_surjective(const GroupHomomorphism& phi) {
    const AbelianGroup& g = phi.target;
    if (g.order() > kDefaultEnumerationBound)
        throw std::overflow_error("is_surjective: group order exceeds enumeration bound");
    std::vector<char> seen(static_cast<size_t>(g.order()), 0);
    std::queue<std::int64_t> frontier;
    seen[static_cast<size_t>(g.index_of(g.identity()))] = 1;
    frontier.push(g.index_of(g.identity()));
    std::int64_t count = 1;
    std::vector<std::int64_t> gens;
    for (const GroupElement& a : phi.images) gens.push_back(g.index_of(a));
    while (!frontier.empty()) {
        const std::int64_t cur = frontier.front();
        frontier.pop();
        for (std::int64_t a : gens) {
            const std::int64_t nxt = g.index_combine(cur, a);
            if (!seen[static_cast<size_t>(nxt)]) {
                seen[static_cast<size_t>(nxt)] = 1;
                ++count;
                frontier.push(nxt);
            }
        }
    }
    return count == g.order();
}

// ----------------------------------------------------------------- lattices

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

void negate_row(std::vector<std::int64_t>& row) {
    for (std::int64_t& x : row) x = -x;
}

void row_axpy(std::vector<std::int64_t>& dst, const std::vector<std::int64_t>& src,
              std::int64_t q) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] = checked_add(dst[i], checked_mul(-q, src[i]));
}

// Reduces rows so that column `col` has a single nonzero entry at `pivot_row`
// (if the column has any nonzero at or below pivot_row). Returns whether a
// pivot was produced. Applies every row operation to `mirror` too when given.
bool eliminate_column(Matrix& m, size_t pivot_row, size_t col, Matrix* mirror) {
    const size_t rows = m.size();
    while (true) {
        // Locate the nonzero entry of minimal absolute value at/below pivot_row.
        size_t best = rows;
        for (size_t r = pivot_row; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            if (best == rows || std::llabs(m[r][col]) < std::llabs(m[best][col])) best = r;
        }
        if (best == rows) return false;
        std::swap(m[pivot_row], m[best]);
        if (mirror) std::swap((*mirror)[pivot_row], (*mirror)[best]);
        if (m[pivot_row][col] < 0) {
            negate_row(m[pivot_row]);
            if (mirror) negate_row((*mirror)[pivot_row]);
        }
        bool clean = true;
        for (size_t r = pivot_row + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            const std::int64_t q = m[r][col] / m[pivot_row][col];
            row_axpy(m[r], m[pivot_row], q);
            if (mirror) row_axpy((*mirror)[r], (*mirror)[pivot_row], q);
            if (m[r][col] != 0) clean = false;
        }
        if (clean) return true;
    }
}

}  // namespace

std::vector<std::vector<std::int64_t>> hermite_normal_form(
    std::vector<std::vector<std::int64_t>> rows) {
    const size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) throw std::invalid_argument("hermite_normal_form: matrix not square");
    for (size_t col = 0; col < n; ++col) {
        if (!eliminate_column(rows, col, col, nullptr))
            throw std::invalid_argument("hermite_normal_form: matrix is singular");
        // Reduce the entries above the pivot into [0, pivot).
        const std::int64_t p = rows[col][col];
        for (size_t r = 0; r < col; ++r) {
            std::int64_t q = rows[r][col] / p;
            if (rows[r][col] - q * p < 0) --q;  // floor division
            if (q != 0) row_axpy(rows[r], rows[col], q);
        }
    }
    return rows;
}

CodeLattice kernel_basis(const GroupHomomorphism& phi) {
    if (!is_surjective(phi))
        throw std::invalid_argument("kernel_basis: homomorphism is not surjective");
    const AbelianGroup& g = phi.target;
    const int n = phi.source_dim;
    const int k = g.rank();
    // Relation matrix: rows 0..n-1 carry the lifted images, rows n..n+k-1
    // the subgroup relations m_j e_j. Integer row vectors (x, y) with
    // x*images + y*diag(m) = 0 project onto exactly ker(phi).
    Matrix m(static_cast<size_t>(n + k), std::vector<std::int64_t>(static_cast<size_t>(k), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            phi.images[static_cast<size_t>(i)].residues[static_cast<size_t>(j)];
    for (int j = 0; j < k; ++j)
        m[static_cast<size_t>(n + j)][static_cast<size_t>(j)] = g.invariant_factors()[static_cast<size_t>(j)];
    // Left kernel via row reduction with a transformation mirror.
    Matrix u(static_cast<size_t>(n + k), std::vector<std::int64_t>(static_cast<size_t>(n + k), 0));
    for (size_t i = 0; i < u.size(); ++i) u[i][i] = 1;
    size_t pivot_row = 0;
    for (size_t col = 0; col < static_cast<size_t>(k); ++col)
        if (eliminate_column(m, pivot_row, col, &u)) ++pivot_row;
    if (pivot_row != static_cast<size_t>(k))
        throw std::runtime_error("kernel_basis: relation matrix rank defect");
    // Rows past the pivots are zero in m; their u-rows span the left kernel.
    Matrix basis;
    for (size_t r = pivot_row; r < m.size(); ++r) {
        std::vector<std::int64_t> x(u[r].begin(), u[r].begin() + n);
        basis.push_back(std::move(x));
    }
    if (basis.size() != static_cast<size_t>(n))
        throw std::runtime_error("kernel_basis: unexpected kernel rank");
    Matrix hnf = hermite_normal_form(std::move(basis));
    CodeLattice out;
    out.determinant = 1;
    for (size_t i = 0; i < hnf.size(); ++i)
        out.determinant = checked_mul(out.determinant, hnf[i][i]);
    out.basis = std::move(hnf);
    // Every basis row must map to the identity.
    for (const auto& row : out.basis) {
        if (!(hom_apply(phi, LatticePoint{row}) == g.identity()))
            throw std::runtime_error("kernel_basis: basis row not in the kernel");
    }
    return out;
}

}  // namespace leekit
