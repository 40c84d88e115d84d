#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nerve {

/// Index of a vertex inside one particular complex. Ids follow the byte
/// order of the vertex names, so a sorted id list is also name-sorted.
using VertexId = std::uint32_t;

/// A simplex given by its sorted, duplicate-free vertex ids.
using Face = std::vector<VertexId>;

/// Finite abstract simplicial complex over string-named vertices.
///
/// Every face is stored explicitly, grouped by dimension and sorted
/// lexicographically. The empty simplex is implicit and never listed.
/// Instances are immutable once built.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Downward closure of `simplices`. `extra_vertices` adds isolated
    /// vertices (names already used are ignored).
    /// Throws MalformedInput when a simplex repeats a vertex or is empty.
    static SimplicialComplex from_maximal_simplices(
        const std::vector<std::vector<std::string>>& simplices,
        const std::vector<std::string>& extra_vertices = {});

    /// Downward closure of `simplices`, whose entries index into `names`.
    /// `names` must be distinct but need not be sorted; every name becomes
    /// a vertex even if no simplex mentions it.
    static SimplicialComplex from_indexed(std::vector<std::string> names,
                                          const std::vector<Face>& simplices);

    std::size_t num_vertices() const noexcept { return names_.size(); }
    const std::vector<std::string>& vertex_names() const noexcept { return names_; }
    const std::string& name(VertexId v) const { return names_.at(v); }
    std::optional<VertexId> find_vertex(std::string_view name) const;
    /// Throws PreconditionError for an unknown name.
    VertexId vertex(std::string_view name) const;

    /// Sorted ids for a list of names. Throws PreconditionError on unknown
    /// names and MalformedInput on repeats.
    Face face_from_names(const std::vector<std::string>& names) const;
    std::vector<std::string> names_of(const Face& face) const;

    /// -1 for the empty complex.
    int dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }
    std::size_t num_faces() const noexcept;
    /// The k-dimensional faces in lexicographic order; empty outside 0..dim.
    std::span<const Face> faces(int k) const noexcept;
    /// Position of `face` inside faces(dim), if it is a face.
    std::optional<std::size_t> face_index(const Face& face) const;
    bool contains(const Face& face) const { return face_index(face).has_value(); }

    std::vector<std::size_t> f_vector() const;
    std::vector<Face> maximal_faces() const;
    long long euler_characteristic() const noexcept;

    const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v); }
    bool adjacent(VertexId u, VertexId v) const;

    bool operator==(const SimplicialComplex& other) const {
        return names_ == other.names_ && faces_ == other.faces_;
    }

private:
    friend SimplicialComplex full_subcomplex(const SimplicialComplex&, const std::vector<VertexId>&);

    /// `faces` must already be closed, per-dimension sorted and unique.
    SimplicialComplex(std::vector<std::string> names, std::vector<std::vector<Face>> faces);

    std::vector<std::string> names_;
    std::vector<std::vector<Face>> faces_;
    std::vector<std::vector<VertexId>> adjacency_;
};

/// A designated subcomplex of an ambient complex: either the full
/// subcomplex spanned by `vertices`, or an explicit downward-closed face
/// list. Ids refer to the ambient complex.
struct VertexSubset {
    std::vector<VertexId> vertices;
    std::optional<std::vector<Face>> faces;

    static VertexSubset spanned(std::vector<VertexId> vertices);
    static VertexSubset spanned(const SimplicialComplex& ambient,
                                const std::vector<std::string>& names);
    /// Validates closure and containment in `ambient`; throws MalformedInput.
    static VertexSubset explicit_faces(const SimplicialComplex& ambient, std::vector<Face> faces);
    /// `sub` must be a subcomplex of `ambient` (matched by vertex names).
    static VertexSubset of_subcomplex(const SimplicialComplex& ambient, const SimplicialComplex& sub);

    bool has_vertex(VertexId v) const;
    bool is_spanned() const noexcept { return !faces.has_value(); }
};

/// All faces of `ambient` designated by `subset`, ordered by dimension and
/// then lexicographically.
std::vector<Face> faces_of(const SimplicialComplex& ambient, const VertexSubset& subset);
/// `subset` as a standalone complex (vertex names preserved).
SimplicialComplex materialize(const SimplicialComplex& ambient, const VertexSubset& subset);

/// Full subcomplex spanned by `vertices` (ambient ids, any order).
SimplicialComplex full_subcomplex(const SimplicialComplex& K, const std::vector<VertexId>& vertices);

/// Complex generated by `faces` (ambient ids) with ambient vertex names.
SimplicialComplex subcomplex_from_faces(const SimplicialComplex& K, const std::vector<Face>& faces);

bool is_subface(const Face& small, const Face& big);
Face face_union(const Face& a, const Face& b);

SimplicialComplex link(const SimplicialComplex& K, const Face& sigma);
SimplicialComplex star(const SimplicialComplex& K, const Face& sigma);

/// A face of K spanned by vertices of A that A does not contain.
std::optional<Face> find_fullness_violation(const SimplicialComplex& K, const VertexSubset& A);
bool is_full(const SimplicialComplex& K, const VertexSubset& A);

/// Smallest pairwise-adjacent vertex set that does not span a face.
std::optional<Face> find_flag_violation(const SimplicialComplex& K);
bool is_flag(const SimplicialComplex& K);

/// A 4-cycle (a, b, c, d) with neither diagonal ac nor bd.
std::optional<std::array<VertexId, 4>> find_empty_square(const SimplicialComplex& K);
bool is_flag_no_square(const SimplicialComplex& K);

/// Number of edges on a shortest 1-skeleton path; nullopt when u and v lie
/// in different components.
std::optional<std::size_t> graph_distance(const SimplicialComplex& K, VertexId u, VertexId v);
/// BFS distances from `source`; unreachable vertices hold SIZE_MAX.
std::vector<std::size_t> distances_from(const SimplicialComplex& K, VertexId source);

/// Components of the 1-skeleton, ordered by smallest vertex.
std::vector<VertexSubset> connected_components(const SimplicialComplex& K);
/// Component count of the graph K minus `removed` (sorted ids).
std::size_t count_components_without(const SimplicialComplex& K, const std::vector<VertexId>& removed);

using VertexMap = std::map<std::string, std::string>;

/// Simplicial isomorphism K1 -> K2. With a hint, only the hint is checked;
/// otherwise a refinement-guided backtracking search runs.
std::optional<VertexMap> are_isomorphic(const SimplicialComplex& K1,
                                        const SimplicialComplex& K2,
                                        const std::optional<VertexMap>& hint = std::nullopt);

/// Pure of dimension d, every (d-1)-face in exactly two d-faces, and
/// connected through (d-1)-faces.
bool is_closed_pseudomanifold(const SimplicialComplex& K, int d);

/// True when K consists of a single simplex and all its faces.
bool is_simplex(const SimplicialComplex& K);

std::string format_face(const SimplicialComplex& K, const Face& face);

} // namespace nerve
