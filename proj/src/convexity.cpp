#include "nerve/convexity.hpp"

#include <algorithm>
#include <set>

#include "nerve/error.hpp"

namespace nerve {

namespace {

std::vector<char> membership(std::size_t n, const std::vector<VertexId>& vertices)
{
    std::vector<char> in(n, 0);
    for (VertexId v : vertices) {
        in.at(v) = 1;
    }
    return in;
}

} // namespace

std::optional<ConvexityViolation> find_3_convexity_violation(const SimplicialComplex& K, const VertexSubset& J)
{
    if (auto f = find_fullness_violation(K, J)) {
        return ConvexityViolation{ConvexityViolation::Kind::NotFull, *f, {}};
    }
    const auto in = membership(K.num_vertices(), J.vertices);
    for (VertexId a : J.vertices) {
        for (VertexId m : K.neighbors(a)) {
            if (in[m]) {
                continue;
            }
            for (VertexId b : K.neighbors(m)) {
                if (b != a && in[b] && !K.adjacent(a, b)) {
                    return ConvexityViolation{ConvexityViolation::Kind::MiddleOutside, {}, {a, m, b}};
                }
            }
        }
    }
    return std::nullopt;
}

bool is_3_convex(const SimplicialComplex& K, const VertexSubset& J)
{
    return !find_3_convexity_violation(K, J).has_value();
}

bool union_with_star_is_full(const SimplicialComplex& K, const VertexSubset& J, const Face& sigma)
{
    if (!K.contains(sigma)) {
        throw PreconditionError("star of " + format_face(K, sigma) + ": not a face");
    }
    std::vector<char> in = membership(K.num_vertices(), J.vertices);
    for (VertexId v : sigma) {
        in[v] = 1;
        for (VertexId w : K.neighbors(v)) {
            // Star vertices are those joinable to all of sigma.
            if (K.contains(face_union(sigma, Face{w}))) {
                in[w] = 1;
            }
        }
    }
    const auto jfaces = faces_of(K, J);
    const std::set<Face> own(jfaces.begin(), jfaces.end());
    for (int k = 0; k <= K.dimension(); ++k) {
        for (const Face& f : K.faces(k)) {
            if (!std::all_of(f.begin(), f.end(), [&](VertexId v) { return in[v] != 0; })) {
                continue;
            }
            if (!own.count(f) && !K.contains(face_union(f, sigma))) {
                return false;
            }
        }
    }
    return true;
}

bool is_3_convex_via_stars(const SimplicialComplex& K, const VertexSubset& J)
{
    if (auto bad = find_flag_violation(K)) {
        throw PreconditionError("star criterion needs a flag complex; " + format_face(K, *bad) + " spans no face");
    }
    if (!is_full(K, J)) {
        return false;
    }
    return std::all_of(J.vertices.begin(), J.vertices.end(),
                       [&](VertexId v) { return union_with_star_is_full(K, J, Face{v}); });
}

SimplicialComplex remove_full_subcomplex(const SimplicialComplex& K, const std::vector<VertexId>& removed)
{
    const auto out = membership(K.num_vertices(), removed);
    std::vector<VertexId> rest;
    for (VertexId v = 0; v < K.num_vertices(); ++v) {
        if (!out[v]) {
            rest.push_back(v);
        }
    }
    return full_subcomplex(K, rest);
}

bool separates(const SimplicialComplex& K, const std::vector<VertexId>& removed)
{
    return count_components_without(K, removed) >= 2;
}

std::string to_string(Separation::Kind kind)
{
    switch (kind) {
    case Separation::Kind::Disconnected:
        return "disconnected";
    case Separation::Kind::Simplex:
        return "separating simplex";
    case Separation::Kind::NonadjacentPair:
        return "separating nonadjacent pair";
    case Separation::Kind::Suspension:
        return "separating suspension";
    }
    return "unknown";
}

std::optional<Separation> find_separation(const SimplicialComplex& L)
{
    if (count_components_without(L, {}) != 1) {
        return Separation{Separation::Kind::Disconnected, {}, {}};
    }
    for (int k = 0; k <= L.dimension(); ++k) {
        for (const Face& f : L.faces(k)) {
            if (separates(L, f)) {
                return Separation{Separation::Kind::Simplex, f, {}};
            }
        }
    }
    const auto n = static_cast<VertexId>(L.num_vertices());
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId w = u + 1; w < n; ++w) {
            if (!L.adjacent(u, w) && separates(L, {u, w})) {
                return Separation{Separation::Kind::NonadjacentPair, {u, w}, {}};
            }
        }
    }
    for (VertexId u = 0; u < n; ++u) {
        const SimplicialComplex lu = link(L, {u});
        for (VertexId w = u + 1; w < n; ++w) {
            if (L.adjacent(u, w)) {
                continue;
            }
            for (int k = 0; k <= lu.dimension(); ++k) {
                for (const Face& local : lu.faces(k)) {
                    Face base = L.face_from_names(lu.names_of(local));
                    if (!L.contains(face_union(base, {w}))) {
                        continue;
                    }
                    Face removed = face_union(base, {u, w});
                    if (separates(L, removed)) {
                        return Separation{Separation::Kind::Suspension, {u, w}, base};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

bool is_unseparable(const SimplicialComplex& L)
{
    return !find_separation(L).has_value();
}

std::string barycenter_name(const std::vector<std::string>& names)
{
    std::string out = "b[";
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += names[i];
    }
    out += ']';
    return out;
}

SimplicialComplex relative_barycentric_subdivision(const SimplicialComplex& K, const VertexSubset& J)
{
    const auto jlist = faces_of(K, J);
    const std::set<Face> in_j(jlist.begin(), jlist.end());

    // New vertex ids: kept J-vertices first, then one barycenter per face
    // outside J, in the complex's face order.
    std::vector<std::string> names;
    std::vector<VertexId> kept_id(K.num_vertices(), 0);
    for (VertexId v : J.vertices) {
        kept_id[v] = static_cast<VertexId>(names.size());
        names.push_back(K.name(v));
    }
    std::map<Face, VertexId> bary;
    for (int k = 0; k <= K.dimension(); ++k) {
        for (const Face& f : K.faces(k)) {
            if (!in_j.count(f)) {
                bary.emplace(f, static_cast<VertexId>(names.size()));
                names.push_back(barycenter_name(K.names_of(f)));
            }
        }
    }
    {
        std::set<std::string> seen;
        for (const auto& n : names) {
            if (!seen.insert(n).second) {
                throw MalformedInput("barycenter name '" + n + "' clashes with an existing vertex name");
            }
        }
    }

    // Every face lies in one of the following: for a maximal face F of K
    // and a face tau of J inside F, tau followed by a saturated chain of
    // faces outside J from tau + x up to F.
    std::vector<Face> generators;
    for (const Face& F : K.maximal_faces()) {
        if (in_j.count(F)) {
            Face g;
            for (VertexId v : F) {
                g.push_back(kept_id[v]);
            }
            generators.push_back(std::move(g));
            continue;
        }
        const std::size_t k = F.size();
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            Face tau, rest;
            for (std::size_t i = 0; i < k; ++i) {
                ((mask >> i) & 1 ? tau : rest).push_back(F[i]);
            }
            if (!tau.empty() && !in_j.count(tau)) {
                continue;
            }
            std::sort(rest.begin(), rest.end());
            do {
                if (in_j.count(face_union(tau, {rest[0]}))) {
                    continue;
                }
                Face g;
                for (VertexId v : tau) {
                    g.push_back(kept_id[v]);
                }
                Face sigma = tau;
                for (VertexId x : rest) {
                    sigma = face_union(sigma, {x});
                    g.push_back(bary.at(sigma));
                }
                generators.push_back(std::move(g));
            } while (std::next_permutation(rest.begin(), rest.end()));
        }
    }
    return SimplicialComplex::from_indexed(std::move(names), generators);
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& K)
{
    return relative_barycentric_subdivision(K, VertexSubset::spanned({}));
}

} // namespace nerve
