#include "maninlab/polytope.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace maninlab {

void PolytopeH::add_constraint(std::vector<Rat> row, Rat rhs) {
    if ((int)row.size() != dim) throw std::invalid_argument("constraint arity != dim");
    A.push_back(std::move(row));
    b.push_back(std::move(rhs));
}

void PolytopeH::add_nonnegativity() {
    for (int i = 0; i < dim; ++i) {
        std::vector<Rat> row(dim, Rat(0));
        row[i] = Rat(-1);
        add_constraint(std::move(row), Rat(0));
    }
}

namespace {

using Row = std::pair<std::vector<Rat>, Rat>;

// scale each constraint to a primitive integer normal and drop duplicates
// (same normal keeps the tightest rhs); a duplicated facet would be double
// counted by the recursion otherwise
std::vector<Row> canonicalize(const std::vector<Row>& rows) {
    std::map<std::vector<Rat>, Rat> best;
    bool infeasible = false;
    for (const auto& [a, c] : rows) {
        BigInt lcm(1);
        bool zero = true;
        for (const Rat& x : a) {
            if (x != 0) zero = false;
            BigInt den = x.get_den();
            lcm = lcm / gcd(lcm, den) * den;
        }
        if (zero) {
            if (c < 0) infeasible = true;
            continue;
        }
        std::vector<Rat> ai(a.size());
        BigInt g(0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            BigInt v = a[i].get_num() * (lcm / a[i].get_den());
            ai[i] = Rat(v);
            g = gcd(g, v);
        }
        Rat scale = rat(lcm, g);
        std::vector<Rat> key(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) key[i] = ai[i] / Rat(g);
        Rat rhs = c * scale;
        auto it = best.find(key);
        if (it == best.end())
            best.emplace(std::move(key), rhs);
        else
            it->second = std::min(it->second, rhs);
    }
    if (infeasible) return {{std::vector<Rat>{}, Rat(-1)}};  // marker: 0 <= -1
    std::vector<Row> out;
    for (auto& [a, c] : best) out.emplace_back(a, c);
    return out;
}

bool is_infeasible_marker(const std::vector<Row>& rows) {
    return rows.size() == 1 && rows[0].first.empty();
}

Rat volume_rec(const std::vector<Row>& raw, int d) {
    std::vector<Row> rows = canonicalize(raw);
    if (is_infeasible_marker(rows)) return Rat(0);
    if (d == 1) {
        bool has_lo = false, has_hi = false;
        Rat lo, hi;
        for (const auto& [a, c] : rows) {
            Rat v = c / a[0];
            if (a[0] > 0) {
                if (!has_hi || v < hi) hi = v;
                has_hi = true;
            } else {
                if (!has_lo || v > lo) lo = v;
                has_lo = true;
            }
        }
        if (!has_lo || !has_hi) throw PolytopeUnbounded();
        return hi > lo ? hi - lo : Rat(0);
    }
    if (rows.empty()) throw PolytopeUnbounded();
    Rat total(0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& [a, c] = rows[i];
        int j = 0;
        while (a[j] == 0) ++j;
        // substitute x_j = (c - sum_{k!=j} a_k x_k)/a_j into the others
        std::vector<Row> sub;
        sub.reserve(rows.size() - 1);
        for (std::size_t ii = 0; ii < rows.size(); ++ii) {
            if (ii == i) continue;
            const auto& [e, f] = rows[ii];
            std::vector<Rat> row;
            row.reserve(d - 1);
            Rat ratio = e[j] / a[j];
            for (int k = 0; k < d; ++k)
                if (k != j) row.push_back(e[k] - ratio * a[k]);
            sub.emplace_back(std::move(row), f - ratio * c);
        }
        Rat face = volume_rec(sub, d - 1);
        if (face != 0) total += c / abs(a[j]) * face;  // reference point x0 = 0
    }
    return total / d;
}

}  // namespace

std::vector<std::vector<Rat>> polytope_vertices(const PolytopeH& P) {
    const int d = P.dim;
    const std::size_t n = P.A.size();
    if ((int)n < d) return {};
    std::vector<std::vector<Rat>> verts;
    std::vector<int> idx(d);
    // iterate over all d-subsets of constraints
    for (int i = 0; i < d; ++i) idx[i] = i;
    auto advance = [&]() {
        int i = d - 1;
        while (i >= 0 && idx[i] == (int)n - d + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int k = i + 1; k < d; ++k) idx[k] = idx[k - 1] + 1;
        return true;
    };
    do {
        // solve A_sub x = b_sub by Gaussian elimination over Q
        std::vector<std::vector<Rat>> M(d, std::vector<Rat>(d + 1));
        for (int r = 0; r < d; ++r) {
            for (int cc = 0; cc < d; ++cc) M[r][cc] = P.A[idx[r]][cc];
            M[r][d] = P.b[idx[r]];
        }
        bool singular = false;
        for (int col = 0; col < d && !singular; ++col) {
            int piv = -1;
            for (int r = col; r < d; ++r)
                if (M[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) {
                singular = true;
                break;
            }
            std::swap(M[col], M[piv]);
            for (int r = 0; r < d; ++r) {
                if (r == col || M[r][col] == 0) continue;
                Rat f = M[r][col] / M[col][col];
                for (int cc = col; cc <= d; ++cc) M[r][cc] -= f * M[col][cc];
            }
        }
        if (singular) continue;
        std::vector<Rat> x(d);
        for (int r = 0; r < d; ++r) x[r] = M[r][d] / M[r][r];
        bool feasible = true;
        for (std::size_t r = 0; r < n && feasible; ++r) {
            Rat lhs(0);
            for (int cc = 0; cc < d; ++cc) lhs += P.A[r][cc] * x[cc];
            if (lhs > P.b[r]) feasible = false;
        }
        if (feasible && std::find(verts.begin(), verts.end(), x) == verts.end())
            verts.push_back(std::move(x));
    } while (advance());
    return verts;
}

std::optional<std::vector<Rat>> polytope_interior_point(const PolytopeH& P) {
    auto verts = polytope_vertices(P);
    if (verts.empty()) return std::nullopt;
    std::vector<Rat> c(P.dim, Rat(0));
    for (const auto& v : verts)
        for (int i = 0; i < P.dim; ++i) c[i] += v[i];
    for (int i = 0; i < P.dim; ++i) c[i] /= Rat((long)verts.size());
    for (std::size_t r = 0; r < P.A.size(); ++r) {
        Rat lhs(0);
        for (int i = 0; i < P.dim; ++i) lhs += P.A[r][i] * c[i];
        if (!(lhs < P.b[r])) return std::nullopt;  // not strictly interior
    }
    return c;
}

Rat polytope_volume(const PolytopeH& P) {
    if (P.dim < 1) throw std::invalid_argument("polytope_volume: dim >= 1");
    std::vector<Row> rows;
    rows.reserve(P.A.size());
    for (std::size_t i = 0; i < P.A.size(); ++i) rows.emplace_back(P.A[i], P.b[i]);
    Rat v = volume_rec(rows, P.dim);  // throws PolytopeUnbounded if unbounded
    if (v == 0 && polytope_vertices(P).empty()) throw PolytopeEmpty();
    return v;
}

}  // namespace maninlab
