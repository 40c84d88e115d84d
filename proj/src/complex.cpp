#include "nerve/complex.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "nerve/error.hpp"

namespace nerve {

namespace {

constexpr std::size_t kMaxSimplexSize = 30;

std::vector<std::vector<Face>> downward_closure(const std::vector<Face>& simplices, std::size_t num_vertices)
{
    std::vector<std::vector<Face>> by_dim;
    auto slot = [&](std::size_t size) -> std::vector<Face>& {
        if (by_dim.size() < size) {
            by_dim.resize(size);
        }
        return by_dim[size - 1];
    };
    for (VertexId v = 0; v < num_vertices; ++v) {
        slot(1).push_back({v});
    }
    for (const Face& s : simplices) {
        const std::size_t k = s.size();
        if (k > kMaxSimplexSize) {
            throw MalformedInput("simplex with more than " + std::to_string(kMaxSimplexSize) +
                                 " vertices is not supported");
        }
        const std::uint64_t full = (std::uint64_t{1} << k) - 1;
        for (std::uint64_t mask = 1; mask <= full; ++mask) {
            Face sub;
            sub.reserve(static_cast<std::size_t>(std::popcount(mask)));
            for (std::size_t i = 0; i < k; ++i) {
                if (mask & (std::uint64_t{1} << i)) {
                    sub.push_back(s[i]);
                }
            }
            slot(sub.size()).push_back(std::move(sub));
        }
    }
    for (auto& list : by_dim) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return by_dim;
}

Face sorted_checked(Face f)
{
    if (f.empty()) {
        throw MalformedInput("empty simplex");
    }
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
        throw MalformedInput("simplex repeats a vertex");
    }
    return f;
}

} // namespace

SimplicialComplex::SimplicialComplex(std::vector<std::string> names, std::vector<std::vector<Face>> faces)
    : names_(std::move(names)), faces_(std::move(faces)), adjacency_(names_.size())
{
    while (!faces_.empty() && faces_.back().empty()) {
        faces_.pop_back();
    }
    if (faces_.size() > 1) {
        for (const Face& e : faces_[1]) {
            adjacency_[e[0]].push_back(e[1]);
            adjacency_[e[1]].push_back(e[0]);
        }
        for (auto& list : adjacency_) {
            std::sort(list.begin(), list.end());
        }
    }
}

SimplicialComplex SimplicialComplex::from_maximal_simplices(
    const std::vector<std::vector<std::string>>& simplices,
    const std::vector<std::string>& extra_vertices)
{
    std::set<std::string> name_set(extra_vertices.begin(), extra_vertices.end());
    for (const auto& s : simplices) {
        name_set.insert(s.begin(), s.end());
    }
    std::vector<std::string> names(name_set.begin(), name_set.end());
    std::map<std::string_view, VertexId> index;
    for (VertexId i = 0; i < names.size(); ++i) {
        index.emplace(names[i], i);
    }
    std::vector<Face> faces;
    faces.reserve(simplices.size());
    for (const auto& s : simplices) {
        Face f;
        f.reserve(s.size());
        for (const auto& n : s) {
            f.push_back(index.at(n));
        }
        try {
            faces.push_back(sorted_checked(std::move(f)));
        } catch (const MalformedInput&) {
            std::string listed;
            for (const auto& n : s) {
                listed += (listed.empty() ? "" : " ") + n;
            }
            throw MalformedInput("malformed simplex {" + listed + "}: empty or repeats a vertex");
        }
    }
    return from_indexed(std::move(names), faces);
}

SimplicialComplex SimplicialComplex::from_indexed(std::vector<std::string> names, const std::vector<Face>& simplices)
{
    std::vector<VertexId> order(names.size());
    std::iota(order.begin(), order.end(), VertexId{0});
    std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return names[a] < names[b]; });
    std::vector<VertexId> new_id(names.size());
    std::vector<std::string> sorted_names;
    sorted_names.reserve(names.size());
    for (VertexId i = 0; i < order.size(); ++i) {
        new_id[order[i]] = i;
        sorted_names.push_back(std::move(names[order[i]]));
        if (sorted_names.back().empty()) {
            throw MalformedInput("empty vertex name");
        }
        if (i > 0 && sorted_names[i] == sorted_names[i - 1]) {
            throw MalformedInput("duplicate vertex name '" + sorted_names[i] + "'");
        }
    }
    std::vector<Face> remapped;
    remapped.reserve(simplices.size());
    for (const Face& s : simplices) {
        Face f;
        f.reserve(s.size());
        for (VertexId v : s) {
            if (v >= new_id.size()) {
                throw MalformedInput("simplex refers to an unknown vertex index");
            }
            f.push_back(new_id[v]);
        }
        remapped.push_back(sorted_checked(std::move(f)));
    }
    auto faces = downward_closure(remapped, sorted_names.size());
    return SimplicialComplex(std::move(sorted_names), std::move(faces));
}

std::optional<VertexId> SimplicialComplex::find_vertex(std::string_view name) const
{
    auto it = std::lower_bound(names_.begin(), names_.end(), name,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == names_.end() || *it != name) {
        return std::nullopt;
    }
    return static_cast<VertexId>(it - names_.begin());
}

VertexId SimplicialComplex::vertex(std::string_view name) const
{
    if (auto v = find_vertex(name)) {
        return *v;
    }
    throw PreconditionError("unknown vertex '" + std::string(name) + "'");
}

Face SimplicialComplex::face_from_names(const std::vector<std::string>& names) const
{
    Face f;
    f.reserve(names.size());
    for (const auto& n : names) {
        f.push_back(vertex(n));
    }
    return sorted_checked(std::move(f));
}

std::vector<std::string> SimplicialComplex::names_of(const Face& face) const
{
    std::vector<std::string> out;
    out.reserve(face.size());
    for (VertexId v : face) {
        out.push_back(names_.at(v));
    }
    return out;
}

std::size_t SimplicialComplex::num_faces() const noexcept
{
    std::size_t total = 0;
    for (const auto& list : faces_) {
        total += list.size();
    }
    return total;
}

std::span<const Face> SimplicialComplex::faces(int k) const noexcept
{
    if (k < 0 || k >= static_cast<int>(faces_.size())) {
        return {};
    }
    return faces_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialComplex::face_index(const Face& face) const
{
    if (face.empty() || face.size() > faces_.size()) {
        return std::nullopt;
    }
    const auto& list = faces_[face.size() - 1];
    auto it = std::lower_bound(list.begin(), list.end(), face);
    if (it == list.end() || *it != face) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - list.begin());
}

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> out;
    for (const auto& list : faces_) {
        out.push_back(list.size());
    }
    return out;
}

std::vector<Face> SimplicialComplex::maximal_faces() const
{
    // A face is maximal iff no face one dimension up contains it.
    std::vector<Face> out;
    for (std::size_t k = 0; k < faces_.size(); ++k) {
        std::set<Face> covered;
        if (k + 1 < faces_.size()) {
            for (const Face& up : faces_[k + 1]) {
                for (std::size_t skip = 0; skip < up.size(); ++skip) {
                    Face f;
                    f.reserve(up.size() - 1);
                    for (std::size_t i = 0; i < up.size(); ++i) {
                        if (i != skip) {
                            f.push_back(up[i]);
                        }
                    }
                    covered.insert(std::move(f));
                }
            }
        }
        for (const Face& f : faces_[k]) {
            if (!covered.count(f)) {
                out.push_back(f);
            }
        }
    }
    return out;
}

long long SimplicialComplex::euler_characteristic() const noexcept
{
    long long chi = 0;
    for (std::size_t k = 0; k < faces_.size(); ++k) {
        const auto n = static_cast<long long>(faces_[k].size());
        chi += (k % 2 == 0) ? n : -n;
    }
    return chi;
}

bool SimplicialComplex::adjacent(VertexId u, VertexId v) const
{
    const auto& list = adjacency_.at(u);
    return std::binary_search(list.begin(), list.end(), v);
}

// ---------------------------------------------------------------------------

VertexSubset VertexSubset::spanned(std::vector<VertexId> vertices)
{
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return VertexSubset{std::move(vertices), std::nullopt};
}

VertexSubset VertexSubset::spanned(const SimplicialComplex& ambient, const std::vector<std::string>& names)
{
    std::vector<VertexId> ids;
    ids.reserve(names.size());
    for (const auto& n : names) {
        ids.push_back(ambient.vertex(n));
    }
    return spanned(std::move(ids));
}

VertexSubset VertexSubset::explicit_faces(const SimplicialComplex& ambient, std::vector<Face> faces)
{
    for (Face& f : faces) {
        f = sorted_checked(std::move(f));
        if (!ambient.contains(f)) {
            throw MalformedInput("subcomplex face " + format_face(ambient, f) + " is not a face of the ambient complex");
        }
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    std::set<Face> present(faces.begin(), faces.end());
    std::vector<VertexId> vertices;
    for (const Face& f : faces) {
        if (f.size() == 1) {
            vertices.push_back(f[0]);
        }
        for (std::size_t skip = 0; f.size() > 1 && skip < f.size(); ++skip) {
            Face sub = f;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(skip));
            if (!present.count(sub)) {
                throw MalformedInput("subcomplex face list is not downward closed: missing " + format_face(ambient, sub));
            }
        }
    }
    return VertexSubset{std::move(vertices), std::move(faces)};
}

VertexSubset VertexSubset::of_subcomplex(const SimplicialComplex& ambient, const SimplicialComplex& sub)
{
    std::vector<Face> faces;
    faces.reserve(sub.num_faces());
    for (int k = 0; k <= sub.dimension(); ++k) {
        for (const Face& f : sub.faces(k)) {
            faces.push_back(ambient.face_from_names(sub.names_of(f)));
        }
    }
    return explicit_faces(ambient, std::move(faces));
}

bool VertexSubset::has_vertex(VertexId v) const
{
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::vector<Face> faces_of(const SimplicialComplex& ambient, const VertexSubset& subset)
{
    if (subset.faces) {
        return *subset.faces;
    }
    std::vector<char> member(ambient.num_vertices(), 0);
    for (VertexId v : subset.vertices) {
        member.at(v) = 1;
    }
    std::vector<Face> out;
    for (int k = 0; k <= ambient.dimension(); ++k) {
        for (const Face& f : ambient.faces(k)) {
            if (std::all_of(f.begin(), f.end(), [&](VertexId v) { return member[v] != 0; })) {
                out.push_back(f);
            }
        }
    }
    return out;
}

SimplicialComplex materialize(const SimplicialComplex& ambient, const VertexSubset& subset)
{
    if (subset.is_spanned()) {
        return full_subcomplex(ambient, subset.vertices);
    }
    return subcomplex_from_faces(ambient, *subset.faces);
}

SimplicialComplex full_subcomplex(const SimplicialComplex& K, const std::vector<VertexId>& vertices)
{
    constexpr VertexId kAbsent = std::numeric_limits<VertexId>::max();
    std::vector<VertexId> remap(K.num_vertices(), kAbsent);
    std::vector<VertexId> kept(vertices);
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    std::vector<std::string> names;
    names.reserve(kept.size());
    for (VertexId i = 0; i < kept.size(); ++i) {
        remap.at(kept[i]) = i;
        names.push_back(K.name(kept[i]));
    }
    // Ids are renumbered monotonically, so lexicographic order survives.
    std::vector<std::vector<Face>> faces;
    for (int k = 0; k <= K.dimension(); ++k) {
        std::vector<Face> level;
        for (const Face& f : K.faces(k)) {
            Face g;
            g.reserve(f.size());
            for (VertexId v : f) {
                if (remap[v] == kAbsent) {
                    break;
                }
                g.push_back(remap[v]);
            }
            if (g.size() == f.size()) {
                level.push_back(std::move(g));
            }
        }
        if (level.empty()) {
            break;
        }
        faces.push_back(std::move(level));
    }
    return SimplicialComplex(std::move(names), std::move(faces));
}

SimplicialComplex subcomplex_from_faces(const SimplicialComplex& K, const std::vector<Face>& faces)
{
    std::vector<VertexId> used;
    for (const Face& f : faces) {
        used.insert(used.end(), f.begin(), f.end());
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::map<VertexId, VertexId> local;
    std::vector<std::string> names;
    for (VertexId i = 0; i < used.size(); ++i) {
        local.emplace(used[i], i);
        names.push_back(K.name(used[i]));
    }
    std::vector<Face> translated;
    translated.reserve(faces.size());
    for (const Face& f : faces) {
        Face g;
        for (VertexId v : f) {
            g.push_back(local.at(v));
        }
        translated.push_back(std::move(g));
    }
    return SimplicialComplex::from_indexed(std::move(names), translated);
}

bool is_subface(const Face& small, const Face& big)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Face face_union(const Face& a, const Face& b)
{
    Face out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

namespace {

void require_face(const SimplicialComplex& K, const Face& sigma, const char* op)
{
    if (!K.contains(sigma)) {
        throw PreconditionError(std::string(op) + ": " + format_face(K, sigma) + " is not a face");
    }
}

} // namespace

SimplicialComplex link(const SimplicialComplex& K, const Face& sigma)
{
    require_face(K, sigma, "link");
    std::vector<Face> faces;
    for (int k = static_cast<int>(sigma.size()); k <= K.dimension(); ++k) {
        for (const Face& f : K.faces(k)) {
            if (is_subface(sigma, f)) {
                Face rest;
                std::set_difference(f.begin(), f.end(), sigma.begin(), sigma.end(), std::back_inserter(rest));
                faces.push_back(std::move(rest));
            }
        }
    }
    return subcomplex_from_faces(K, faces);
}

SimplicialComplex star(const SimplicialComplex& K, const Face& sigma)
{
    require_face(K, sigma, "star");
    std::vector<Face> faces;
    for (int k = static_cast<int>(sigma.size()) - 1; k <= K.dimension(); ++k) {
        for (const Face& f : K.faces(k)) {
            if (is_subface(sigma, f)) {
                faces.push_back(f);
            }
        }
    }
    return subcomplex_from_faces(K, faces);
}

std::optional<Face> find_fullness_violation(const SimplicialComplex& K, const VertexSubset& A)
{
    for (VertexId v : A.vertices) {
        if (v >= K.num_vertices()) {
            throw PreconditionError("vertex subset refers to an unknown vertex");
        }
    }
    if (A.is_spanned()) {
        return std::nullopt;
    }
    std::vector<char> member(K.num_vertices(), 0);
    for (VertexId v : A.vertices) {
        member[v] = 1;
    }
    const std::set<Face> own(A.faces->begin(), A.faces->end());
    for (int k = 1; k <= K.dimension(); ++k) {
        for (const Face& f : K.faces(k)) {
            if (std::all_of(f.begin(), f.end(), [&](VertexId v) { return member[v] != 0; })) {
                if (!own.count(f)) {
                    return f;
                }
            }
        }
    }
    return std::nullopt;
}

bool is_full(const SimplicialComplex& K, const VertexSubset& A)
{
    return !find_fullness_violation(K, A).has_value();
}

std::optional<Face> find_flag_violation(const SimplicialComplex& K)
{
    // A minimal non-face clique C has all proper subsets as faces, so it
    // shows up as (C minus its largest vertex) extended by that vertex.
    for (int k = 1; k <= K.dimension(); ++k) {
        for (const Face& f : K.faces(k)) {
            for (VertexId v : K.neighbors(f.front())) {
                if (v <= f.back()) {
                    continue;
                }
                bool clique = true;
                for (std::size_t i = 1; i < f.size() && clique; ++i) {
                    clique = K.adjacent(f[i], v);
                }
                if (!clique) {
                    continue;
                }
                Face bigger = f;
                bigger.push_back(v);
                if (!K.contains(bigger)) {
                    return bigger;
                }
            }
        }
    }
    return std::nullopt;
}

bool is_flag(const SimplicialComplex& K)
{
    return !find_flag_violation(K).has_value();
}

std::optional<std::array<VertexId, 4>> find_empty_square(const SimplicialComplex& K)
{
    const auto n = static_cast<VertexId>(K.num_vertices());
    std::vector<VertexId> hits(n, 0);
    std::vector<std::vector<VertexId>> middles(n);
    for (VertexId a = 0; a < n; ++a) {
        std::vector<VertexId> touched;
        for (VertexId b : K.neighbors(a)) {
            for (VertexId c : K.neighbors(b)) {
                if (c <= a || K.adjacent(a, c)) {
                    continue;
                }
                if (middles[c].empty()) {
                    touched.push_back(c);
                }
                middles[c].push_back(b);
            }
        }
        std::optional<std::array<VertexId, 4>> found;
        for (VertexId c : touched) {
            const auto& mids = middles[c];
            for (std::size_t i = 0; i < mids.size() && !found; ++i) {
                for (std::size_t j = i + 1; j < mids.size(); ++j) {
                    if (!K.adjacent(mids[i], mids[j])) {
                        found = std::array<VertexId, 4>{a, mids[i], c, mids[j]};
                        break;
                    }
                }
            }
        }
        for (VertexId c : touched) {
            middles[c].clear();
        }
        if (found) {
            return found;
        }
    }
    return std::nullopt;
}

bool is_flag_no_square(const SimplicialComplex& K)
{
    return is_flag(K) && !find_empty_square(K).has_value();
}

std::vector<std::size_t> distances_from(const SimplicialComplex& K, VertexId source)
{
    if (source >= K.num_vertices()) {
        throw PreconditionError("graph distance: unknown vertex");
    }
    std::vector<std::size_t> dist(K.num_vertices(), std::numeric_limits<std::size_t>::max());
    std::deque<VertexId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        for (VertexId w : K.neighbors(u)) {
            if (dist[w] == std::numeric_limits<std::size_t>::max()) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::optional<std::size_t> graph_distance(const SimplicialComplex& K, VertexId u, VertexId v)
{
    if (v >= K.num_vertices()) {
        throw PreconditionError("graph distance: unknown vertex");
    }
    const auto dist = distances_from(K, u);
    if (dist[v] == std::numeric_limits<std::size_t>::max()) {
        return std::nullopt;
    }
    return dist[v];
}

std::vector<VertexSubset> connected_components(const SimplicialComplex& K)
{
    const auto n = K.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<VertexSubset> out;
    for (VertexId s = 0; s < n; ++s) {
        if (seen[s]) {
            continue;
        }
        std::vector<VertexId> members{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (VertexId w : K.neighbors(members[i])) {
                if (!seen[w]) {
                    seen[w] = 1;
                    members.push_back(w);
                }
            }
        }
        out.push_back(VertexSubset::spanned(std::move(members)));
    }
    return out;
}

std::size_t count_components_without(const SimplicialComplex& K, const std::vector<VertexId>& removed)
{
    const auto n = K.num_vertices();
    std::vector<char> seen(n, 0);
    for (VertexId v : removed) {
        seen.at(v) = 1;
    }
    std::size_t count = 0;
    std::vector<VertexId> stack;
    for (VertexId s = 0; s < n; ++s) {
        if (seen[s]) {
            continue;
        }
        ++count;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            VertexId u = stack.back();
            stack.pop_back();
            for (VertexId w : K.neighbors(u)) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

bool verify_map(const SimplicialComplex& K1, const SimplicialComplex& K2, const std::vector<VertexId>& image)
{
    if (K1.f_vector() != K2.f_vector()) {
        return false;
    }
    std::vector<char> hit(K2.num_vertices(), 0);
    for (VertexId v : image) {
        if (v >= K2.num_vertices() || hit[v]) {
            return false;
        }
        hit[v] = 1;
    }
    for (int k = 1; k <= K1.dimension(); ++k) {
        for (const Face& f : K1.faces(k)) {
            Face g;
            g.reserve(f.size());
            for (VertexId v : f) {
                g.push_back(image[v]);
            }
            std::sort(g.begin(), g.end());
            if (!K2.contains(g)) {
                return false;
            }
        }
    }
    return true;
}

/// Joint colour refinement on the disjoint union so colours are comparable.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(const SimplicialComplex& K1,
                                                                            const SimplicialComplex& K2)
{
    auto initial = [](const SimplicialComplex& K) {
        std::vector<std::vector<std::size_t>> sig(K.num_vertices(), std::vector<std::size_t>(K.dimension() + 1, 0));
        for (int k = 0; k <= K.dimension(); ++k) {
            for (const Face& f : K.faces(k)) {
                for (VertexId v : f) {
                    ++sig[v][static_cast<std::size_t>(k)];
                }
            }
        }
        return sig;
    };
    auto s1 = initial(K1);
    auto s2 = initial(K2);
    auto compress = [](const auto& a, const auto& b, std::vector<std::size_t>& ca, std::vector<std::size_t>& cb) {
        using Sig = typename std::decay_t<decltype(a)>::value_type;
        std::map<Sig, std::size_t> ids;
        for (const auto& s : a) {
            ids.emplace(s, 0);
        }
        for (const auto& s : b) {
            ids.emplace(s, 0);
        }
        std::size_t next = 0;
        for (auto& [sig, id] : ids) {
            id = next++;
        }
        ca.resize(a.size());
        cb.resize(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            ca[i] = ids.at(a[i]);
        }
        for (std::size_t i = 0; i < b.size(); ++i) {
            cb[i] = ids.at(b[i]);
        }
        return ids.size();
    };
    std::vector<std::size_t> c1, c2;
    std::size_t classes = compress(s1, s2, c1, c2);
    for (;;) {
        auto step = [](const SimplicialComplex& K, const std::vector<std::size_t>& c) {
            std::vector<std::vector<std::size_t>> sig(K.num_vertices());
            for (VertexId v = 0; v < K.num_vertices(); ++v) {
                sig[v].push_back(c[v]);
                std::vector<std::size_t> around;
                for (VertexId w : K.neighbors(v)) {
                    around.push_back(c[w]);
                }
                std::sort(around.begin(), around.end());
                sig[v].insert(sig[v].end(), around.begin(), around.end());
            }
            return sig;
        };
        auto n1 = step(K1, c1);
        auto n2 = step(K2, c2);
        std::vector<std::size_t> d1, d2;
        const std::size_t refined = compress(n1, n2, d1, d2);
        c1 = std::move(d1);
        c2 = std::move(d2);
        if (refined == classes) {
            break;
        }
        classes = refined;
    }
    return {c1, c2};
}

} // namespace

std::optional<VertexMap> are_isomorphic(const SimplicialComplex& K1,
                                        const SimplicialComplex& K2,
                                        const std::optional<VertexMap>& hint)
{
    if (K1.num_vertices() != K2.num_vertices() || K1.f_vector() != K2.f_vector()) {
        return std::nullopt;
    }
    if (hint) {
        if (hint->size() != K1.num_vertices()) {
            return std::nullopt;
        }
        std::vector<VertexId> image(K1.num_vertices());
        for (VertexId v = 0; v < K1.num_vertices(); ++v) {
            auto it = hint->find(K1.name(v));
            if (it == hint->end()) {
                return std::nullopt;
            }
            auto target = K2.find_vertex(it->second);
            if (!target) {
                return std::nullopt;
            }
            image[v] = *target;
        }
        if (!verify_map(K1, K2, image)) {
            return std::nullopt;
        }
        return hint;
    }

    const auto [c1, c2] = refine_colours(K1, K2);
    {
        auto h1 = c1;
        auto h2 = c2;
        std::sort(h1.begin(), h1.end());
        std::sort(h2.begin(), h2.end());
        if (h1 != h2) {
            return std::nullopt;
        }
    }
    const auto n = static_cast<VertexId>(K1.num_vertices());
    if (n == 0) {
        return VertexMap{};
    }

    // Visit K1 in BFS order so each new vertex is constrained by mapped
    // neighbours; start every component from its rarest colour.
    std::map<std::size_t, std::size_t> freq;
    for (auto c : c1) {
        ++freq[c];
    }
    std::vector<VertexId> order;
    std::vector<char> queued(n, 0);
    while (order.size() < n) {
        VertexId start = n;
        for (VertexId v = 0; v < n; ++v) {
            if (!queued[v] && (start == n || freq[c1[v]] < freq[c1[start]])) {
                start = v;
            }
        }
        queued[start] = 1;
        std::size_t head = order.size();
        order.push_back(start);
        while (head < order.size()) {
            VertexId u = order[head++];
            for (VertexId w : K1.neighbors(u)) {
                if (!queued[w]) {
                    queued[w] = 1;
                    order.push_back(w);
                }
            }
        }
    }
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) {
        position[order[i]] = i;
    }
    // Faces to verify once their last vertex (in visiting order) is mapped.
    std::vector<std::vector<Face>> closing(n);
    for (int k = 2; k <= K1.dimension(); ++k) {
        for (const Face& f : K1.faces(k)) {
            VertexId last = *std::max_element(f.begin(), f.end(), [&](VertexId a, VertexId b) {
                return position[a] < position[b];
            });
            closing[last].push_back(f);
        }
    }

    constexpr VertexId kUnset = std::numeric_limits<VertexId>::max();
    std::vector<VertexId> image(n, kUnset);
    std::vector<char> used(n, 0);

    std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
        if (depth == n) {
            return true;
        }
        const VertexId v = order[depth];
        for (VertexId cand = 0; cand < n; ++cand) {
            if (used[cand] || c2[cand] != c1[v]) {
                continue;
            }
            bool ok = true;
            for (std::size_t i = 0; i < depth && ok; ++i) {
                const VertexId u = order[i];
                ok = K1.adjacent(u, v) == K2.adjacent(image[u], cand);
            }
            if (!ok) {
                continue;
            }
            image[v] = cand;
            for (const Face& f : closing[v]) {
                Face g;
                for (VertexId x : f) {
                    g.push_back(image[x]);
                }
                std::sort(g.begin(), g.end());
                if (!K2.contains(g)) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                used[cand] = 1;
                if (extend(depth + 1)) {
                    return true;
                }
                used[cand] = 0;
            }
            image[v] = kUnset;
        }
        return false;
    };
    if (!extend(0) || !verify_map(K1, K2, image)) {
        return std::nullopt;
    }
    VertexMap out;
    for (VertexId v = 0; v < n; ++v) {
        out.emplace(K1.name(v), K2.name(image[v]));
    }
    return out;
}

bool is_closed_pseudomanifold(const SimplicialComplex& K, int d)
{
    if (d < 0 || K.dimension() != d) {
        return false;
    }
    const auto tops = K.faces(d);
    // Purity: every maximal face has dimension d.
    for (const Face& f : K.maximal_faces()) {
        if (static_cast<int>(f.size()) != d + 1) {
            return false;
        }
    }
    if (d == 0) {
        return tops.size() == 2;
    }
    const auto ridges = K.faces(d - 1);
    std::vector<std::vector<std::size_t>> cofaces(ridges.size());
    for (std::size_t t = 0; t < tops.size(); ++t) {
        const Face& f = tops[t];
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            Face r = f;
            r.erase(r.begin() + static_cast<std::ptrdiff_t>(skip));
            cofaces[*K.face_index(r)].push_back(t);
        }
    }
    std::vector<std::size_t> parent(tops.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (const auto& c : cofaces) {
        if (c.size() != 2) {
            return false;
        }
        parent[find(c[0])] = find(c[1]);
    }
    for (std::size_t t = 0; t < tops.size(); ++t) {
        if (find(t) != find(0)) {
            return false;
        }
    }
    return true;
}

bool is_simplex(const SimplicialComplex& K)
{
    return K.num_vertices() > 0 && K.faces(K.dimension()).size() == 1 &&
           K.faces(K.dimension())[0].size() == K.num_vertices();
}

std::string format_face(const SimplicialComplex& K, const Face& face)
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < face.size(); ++i) {
        os << (i ? " " : "") << (face[i] < K.num_vertices() ? K.name(face[i]) : std::string("?"));
    }
    os << '}';
    return os.str();
}

} // namespace nerve
