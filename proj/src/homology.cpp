#include "nerve/homology.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <utility>

#include "nerve/error.hpp"

namespace nerve {

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const
{
    if (cols_ != other.rows_) {
        throw PreconditionError("matrix product: dimension mismatch");
    }
    IntegerMatrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& a = (*this)(i, k);
            if (a.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < other.cols_; ++j) {
                out(i, j) += a * other(k, j);
            }
        }
    }
    return out;
}

bool IntegerMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x.is_zero(); });
}

namespace {

struct Overflow {};

template <typename T>
using SparseRow = std::vector<std::pair<std::uint32_t, T>>;

template <typename T>
T checked_mul(const T& a, const T& b)
{
    if constexpr (std::is_same_v<T, std::int64_t>) {
        std::int64_t out;
        if (__builtin_mul_overflow(a, b, &out)) {
            throw Overflow{};
        }
        return out;
    } else {
        return a * b;
    }
}

template <typename T>
T checked_sub(const T& a, const T& b)
{
    if constexpr (std::is_same_v<T, std::int64_t>) {
        std::int64_t out;
        if (__builtin_sub_overflow(a, b, &out)) {
            throw Overflow{};
        }
        return out;
    } else {
        return a - b;
    }
}

template <typename T>
bool is_unit(const T& v)
{
    return v == 1 || v == -1;
}

/// Dense Smith normal form by repeated minimal-pivot reduction. Returns the
/// nonzero invariant factors in divisibility order.
std::vector<BigInt> dense_smith(std::vector<std::vector<BigInt>> a)
{
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::vector<BigInt> diag;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Bring the smallest nonzero entry of the trailing block to (t, t).
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (!a[i][j].is_zero() && (pi == m || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi == m) {
                return diag;
            }
            std::swap(a[t], a[pi]);
            for (std::size_t i = 0; i < m; ++i) {
                std::swap(a[i][t], a[i][pj]);
            }
            const BigInt pivot = a[t][t];
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t].is_zero()) {
                    continue;
                }
                const BigInt q = a[i][t] / pivot;
                for (std::size_t j = t; j < n; ++j) {
                    a[i][j] -= q * a[t][j];
                }
                clean = clean && a[i][t].is_zero();
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j].is_zero()) {
                    continue;
                }
                const BigInt q = a[t][j] / pivot;
                for (std::size_t i = t; i < m; ++i) {
                    a[i][j] -= q * a[i][t];
                }
                clean = clean && a[t][j].is_zero();
            }
            if (!clean) {
                continue;
            }
            // Pivot must divide the rest of the block; otherwise fold the
            // offending row into row t and reduce again.
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (!BigInt(a[i][j] % pivot).is_zero()) {
                        bad = i;
                        break;
                    }
                }
            }
            if (bad == m) {
                diag.push_back(abs(pivot));
                break;
            }
            for (std::size_t j = t; j < n; ++j) {
                a[t][j] += a[bad][j];
            }
        }
    }
    return diag;
}

/// Eliminates on +-1 entries while any remain, then hands the residual
/// block to the dense routine. Each unit pivot contributes an invariant
/// factor 1.
template <typename T>
std::vector<BigInt> sparse_smith(std::vector<SparseRow<T>> rows, std::size_t num_cols)
{
    std::vector<std::vector<std::uint32_t>> col_rows(num_cols);
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
        for (const auto& [c, v] : rows[r]) {
            col_rows[c].push_back(r);
        }
    }
    std::size_t units = 0;
    SparseRow<T> merged;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::uint32_t r = 0; r < rows.size(); ++r) {
            if (rows[r].empty()) {
                continue;
            }
            std::size_t best = rows[r].size();
            for (std::size_t e = 0; e < rows[r].size(); ++e) {
                if (is_unit(rows[r][e].second) &&
                    (best == rows[r].size() || col_rows[rows[r][e].first].size() < col_rows[rows[r][best].first].size())) {
                    best = e;
                }
            }
            if (best == rows[r].size()) {
                continue;
            }
            progress = true;
            const std::uint32_t pc = rows[r][best].first;
            const T pv = rows[r][best].second;
            const SparseRow<T> pivot_row = std::move(rows[r]);
            rows[r].clear();
            for (std::uint32_t r2 : col_rows[pc]) {
                if (r2 == r || rows[r2].empty()) {
                    continue;
                }
                auto& target = rows[r2];
                auto hit = std::lower_bound(target.begin(), target.end(), pc,
                                            [](const auto& e, std::uint32_t c) { return e.first < c; });
                if (hit == target.end() || hit->first != pc) {
                    continue;
                }
                const T factor = checked_mul(hit->second, pv);
                merged.clear();
                std::size_t i = 0, j = 0;
                while (i < target.size() || j < pivot_row.size()) {
                    if (j == pivot_row.size() || (i < target.size() && target[i].first < pivot_row[j].first)) {
                        merged.push_back(std::move(target[i++]));
                    } else if (i == target.size() || pivot_row[j].first < target[i].first) {
                        const std::uint32_t c = pivot_row[j].first;
                        T v = checked_sub(T(0), checked_mul(factor, pivot_row[j].second));
                        merged.emplace_back(c, std::move(v));
                        col_rows[c].push_back(r2);
                        ++j;
                    } else {
                        T v = checked_sub(target[i].second, checked_mul(factor, pivot_row[j].second));
                        if (v != 0) {
                            merged.emplace_back(target[i].first, std::move(v));
                        }
                        ++i;
                        ++j;
                    }
                }
                std::swap(target, merged);
            }
            col_rows[pc].clear();
            ++units;
        }
    }

    std::vector<std::uint32_t> live_cols;
    std::vector<std::uint32_t> live_rows;
    for (std::uint32_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].empty()) {
            live_rows.push_back(r);
            for (const auto& [c, v] : rows[r]) {
                live_cols.push_back(c);
            }
        }
    }
    std::sort(live_cols.begin(), live_cols.end());
    live_cols.erase(std::unique(live_cols.begin(), live_cols.end()), live_cols.end());

    std::vector<BigInt> diag(units, BigInt(1));
    if (!live_rows.empty()) {
        std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
        for (std::size_t i = 0; i < live_rows.size(); ++i) {
            for (const auto& [c, v] : rows[live_rows[i]]) {
                auto pos = std::lower_bound(live_cols.begin(), live_cols.end(), c) - live_cols.begin();
                dense[i][static_cast<std::size_t>(pos)] = BigInt(v);
            }
        }
        auto rest = dense_smith(std::move(dense));
        diag.insert(diag.end(), rest.begin(), rest.end());
    }
    return diag;
}

std::vector<BigInt> invariant_factors(const std::vector<SparseRow<std::int64_t>>& rows, std::size_t num_cols)
{
    try {
        return sparse_smith<std::int64_t>(rows, num_cols);
    } catch (const Overflow&) {
        std::vector<SparseRow<BigInt>> wide(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const auto& [c, v] : rows[r]) {
                wide[r].emplace_back(c, BigInt(v));
            }
        }
        return sparse_smith<BigInt>(std::move(wide), num_cols);
    }
}

std::vector<SparseRow<std::int64_t>> sparse_boundary(const SimplicialComplex& K, int k)
{
    if (k == 0) {
        SparseRow<std::int64_t> row;
        for (std::uint32_t c = 0; c < K.faces(0).size(); ++c) {
            row.emplace_back(c, 1);
        }
        return {row};
    }
    const auto lower = K.faces(k - 1);
    const auto upper = K.faces(k);
    std::vector<SparseRow<std::int64_t>> rows(lower.size());
    Face sub;
    for (std::uint32_t c = 0; c < upper.size(); ++c) {
        const Face& f = upper[c];
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            sub.assign(f.begin(), f.end());
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(skip));
            const auto r = *K.face_index(sub);
            rows[r].emplace_back(c, (skip % 2 == 0) ? 1 : -1);
        }
    }
    return rows;
}

void require_boundary_degree(const SimplicialComplex& K, int k)
{
    if (k < 0 || k > K.dimension()) {
        throw PreconditionError("boundary matrix degree " + std::to_string(k) + " outside 0.." +
                                std::to_string(K.dimension()));
    }
}

std::vector<BigInt> boundary_factors(const SimplicialComplex& K, int k)
{
    return invariant_factors(sparse_boundary(K, k), K.faces(k).size());
}

const HomologyGroup kZeroGroup{};

} // namespace

SmithForm smith_normal_form(const IntegerMatrix& m)
{
    std::vector<SparseRow<BigInt>> rows(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (!m(r, c).is_zero()) {
                rows[r].emplace_back(static_cast<std::uint32_t>(c), m(r, c));
            }
        }
    }
    SmithForm out;
    out.diagonal = sparse_smith<BigInt>(std::move(rows), m.cols());
    out.rank = out.diagonal.size();
    return out;
}

IntegerMatrix boundary_matrix(const SimplicialComplex& K, int k)
{
    require_boundary_degree(K, k);
    const auto sparse = sparse_boundary(K, k);
    IntegerMatrix out(sparse.size(), K.faces(k).size());
    for (std::size_t r = 0; r < sparse.size(); ++r) {
        for (const auto& [c, v] : sparse[r]) {
            out(r, c) = v;
        }
    }
    return out;
}

const HomologyGroup& HomologyProfile::at(int k) const
{
    if (k < -1 || k + 1 >= static_cast<int>(groups_.size())) {
        return kZeroGroup;
    }
    return groups_[static_cast<std::size_t>(k + 1)];
}

bool HomologyProfile::is_acyclic() const
{
    return std::all_of(groups_.begin(), groups_.end(), [](const HomologyGroup& g) { return g.is_zero(); });
}

bool HomologyProfile::is_sphere(int n) const
{
    for (int k = -1; k <= std::max(top_dimension(), n); ++k) {
        const HomologyGroup& g = at(k);
        if (k == n ? !(g.betti == 1 && g.torsion.empty()) : !g.is_zero()) {
            return false;
        }
    }
    return true;
}

HomologyProfile reduced_homology(const SimplicialComplex& K)
{
    const int d = K.dimension();
    if (d < 0) {
        return HomologyProfile({HomologyGroup{1, {}}});
    }
    // factors[k] = invariant factors of the boundary C_k -> C_{k-1}.
    std::vector<std::vector<BigInt>> factors(static_cast<std::size_t>(d + 2));
    for (int k = 0; k <= d; ++k) {
        factors[static_cast<std::size_t>(k)] = boundary_factors(K, k);
    }
    auto rank = [&](int k) { return factors[static_cast<std::size_t>(k)].size(); };
    std::vector<HomologyGroup> groups;
    groups.push_back(HomologyGroup{1 - rank(0), {}});
    for (int k = 0; k <= d; ++k) {
        HomologyGroup g;
        g.betti = K.faces(k).size() - rank(k) - rank(k + 1);
        for (const BigInt& x : factors[static_cast<std::size_t>(k + 1)]) {
            if (x > 1) {
                g.torsion.push_back(x);
            }
        }
        groups.push_back(std::move(g));
    }
    return HomologyProfile(std::move(groups));
}

bool reduced_cohomology_nonzero(const HomologyProfile& profile, int k)
{
    return profile.at(k).betti > 0 || !profile.at(k - 1).torsion.empty();
}

bool reduced_cohomology_nonzero(const SimplicialComplex& K, int k)
{
    return reduced_cohomology_nonzero(reduced_homology(K), k);
}

namespace {

/// Facet indices of every face, computed once so that full subcomplexes on
/// vertex complements can be scanned without rebuilding them.
class Incidence {
public:
    explicit Incidence(const SimplicialComplex& K) : K_(K), facets_(static_cast<std::size_t>(K.dimension() + 1))
    {
        Face sub;
        for (int k = 1; k <= K.dimension(); ++k) {
            auto& table = facets_[static_cast<std::size_t>(k)];
            for (const Face& f : K.faces(k)) {
                std::vector<std::uint32_t> idx;
                idx.reserve(f.size());
                for (std::size_t skip = 0; skip < f.size(); ++skip) {
                    sub.assign(f.begin(), f.end());
                    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(skip));
                    idx.push_back(static_cast<std::uint32_t>(*K.face_index(sub)));
                }
                table.push_back(std::move(idx));
            }
        }
    }

    /// Highest j >= floor with reduced H^j nonzero on the full subcomplex
    /// spanned by the vertices not in `removed`.
    std::optional<int> highest_nonzero(const std::vector<char>& removed, int floor) const
    {
        const int d = K_.dimension();
        // alive[k][i]: position of face i among surviving k-faces, or -1.
        std::vector<std::vector<std::int64_t>> alive(static_cast<std::size_t>(d + 1));
        std::vector<std::size_t> count(static_cast<std::size_t>(d + 1), 0);
        for (int k = 0; k <= d; ++k) {
            const auto faces = K_.faces(k);
            auto& pos = alive[static_cast<std::size_t>(k)];
            pos.assign(faces.size(), -1);
            std::size_t n = 0;
            for (std::size_t i = 0; i < faces.size(); ++i) {
                const Face& f = faces[i];
                if (std::none_of(f.begin(), f.end(), [&](VertexId v) { return removed[v] != 0; })) {
                    pos[i] = static_cast<std::int64_t>(n++);
                }
            }
            count[static_cast<std::size_t>(k)] = n;
        }
        if (d < 0 || count[0] == 0) {
            return floor <= -1 ? std::optional<int>(-1) : std::nullopt;
        }
        std::size_t rank_above = 0;
        for (int j = d; j >= std::max(floor, 0); --j) {
            const std::size_t nj = count[static_cast<std::size_t>(j)];
            if (nj == 0) {
                continue;
            }
            std::vector<SparseRow<std::int64_t>> rows;
            if (j == 0) {
                rows.emplace_back();
                for (std::uint32_t c = 0; c < nj; ++c) {
                    rows[0].emplace_back(c, 1);
                }
            } else {
                rows.resize(count[static_cast<std::size_t>(j - 1)]);
                const auto& upper = alive[static_cast<std::size_t>(j)];
                const auto& lower = alive[static_cast<std::size_t>(j - 1)];
                const auto& table = facets_[static_cast<std::size_t>(j)];
                for (std::size_t i = 0; i < upper.size(); ++i) {
                    if (upper[i] < 0) {
                        continue;
                    }
                    const auto c = static_cast<std::uint32_t>(upper[i]);
                    for (std::size_t skip = 0; skip < table[i].size(); ++skip) {
                        rows[static_cast<std::size_t>(lower[table[i][skip]])].emplace_back(
                            c, (skip % 2 == 0) ? 1 : -1);
                    }
                }
            }
            const auto fac = invariant_factors(rows, nj);
            const std::size_t betti = nj - fac.size() - rank_above;
            const bool torsion = std::any_of(fac.begin(), fac.end(), [](const BigInt& x) { return x > 1; });
            if (betti > 0 || torsion) {
                return j;
            }
            rank_above = fac.size();
        }
        // A nonempty complex has H^{-1} = 0.
        return std::nullopt;
    }

private:
    const SimplicialComplex& K_;
    std::vector<std::vector<std::vector<std::uint32_t>>> facets_;
};

} // namespace

std::optional<int> highest_nonzero_cohomology(const SimplicialComplex& K, int floor)
{
    return Incidence(K).highest_nonzero(std::vector<char>(K.num_vertices(), 0), floor);
}

int vcd(const SimplicialComplex& L, unsigned threads)
{
    if (auto bad = find_flag_violation(L)) {
        throw PreconditionError("vcd: nerve is not flag, clique " + format_face(L, *bad) + " spans no simplex");
    }
    const int ceiling = L.dimension() + 1;
    const Incidence incidence(L);
    std::atomic<int> best{0};
    auto consider = [&](const std::vector<char>& removed) {
        if (auto j = incidence.highest_nonzero(removed, best.load())) {
            int k = *j + 1;
            int seen = best.load();
            while (k > seen && !best.compare_exchange_weak(seen, k)) {
            }
        }
    };
    consider(std::vector<char>(L.num_vertices(), 0));

    // Larger simplices first: their complements are smaller and tend to
    // reach high cohomology early, which raises the floor for the rest.
    std::vector<const Face*> simplices;
    for (int k = L.dimension(); k >= 0; --k) {
        for (const Face& f : L.faces(k)) {
            simplices.push_back(&f);
        }
    }

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        std::vector<char> removed(L.num_vertices(), 0);
        for (;;) {
            if (best.load() >= ceiling) {
                return;
            }
            const std::size_t i = next.fetch_add(1);
            if (i >= simplices.size()) {
                return;
            }
            for (VertexId v : *simplices[i]) {
                removed[v] = 1;
            }
            consider(removed);
            for (VertexId v : *simplices[i]) {
                removed[v] = 0;
            }
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    return best.load();
}

int boundary_dimension(const SimplicialComplex& L, unsigned threads)
{
    return vcd(L, threads) - 1;
}

} // namespace nerve
