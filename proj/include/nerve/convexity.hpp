#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nerve/complex.hpp"

namespace nerve {

/// Why a subcomplex J of K is not 3-convex.
struct ConvexityViolation {
    enum class Kind {
        NotFull,        // `face` is spanned by J-vertices but missing from J
        MiddleOutside,  // `path` = (a, m, b) with a, b in J at distance 2, m not in J
    };
    Kind kind;
    Face face;
    std::array<VertexId, 3> path{};
};

std::optional<ConvexityViolation> find_3_convexity_violation(const SimplicialComplex& K, const VertexSubset& J);
bool is_3_convex(const SimplicialComplex& K, const VertexSubset& J);

/// Whether J together with the closed star of `sigma` is a full subcomplex
/// of K.
bool union_with_star_is_full(const SimplicialComplex& K, const VertexSubset& J, const Face& sigma);

/// 3-convexity decided through stars: J full and J + st(v) full for every
/// vertex v of J. Throws PreconditionError when K is not flag.
bool is_3_convex_via_stars(const SimplicialComplex& K, const VertexSubset& J);

/// Full subcomplex on the vertices of K outside `removed`.
SimplicialComplex remove_full_subcomplex(const SimplicialComplex& K, const std::vector<VertexId>& removed);

/// Removing `removed` leaves at least two components.
bool separates(const SimplicialComplex& K, const std::vector<VertexId>& removed);

struct Separation {
    enum class Kind {
        Disconnected,
        Simplex,          // `vertices` is a separating simplex
        NonadjacentPair,  // `vertices` = {u, w}
        Suspension,       // poles `vertices` = {u, w} over the simplex `base`
    };
    Kind kind;
    Face vertices;
    Face base;
};

std::string to_string(Separation::Kind kind);

/// First violated clause of unseparability, checked in the order connected,
/// simplices (by dimension, then lexicographic), nonadjacent pairs,
/// suspensions of nonempty simplices.
std::optional<Separation> find_separation(const SimplicialComplex& L);
bool is_unseparable(const SimplicialComplex& L);

/// Name given to the barycenter of a face with the listed vertex names:
/// "b[" + names joined by "," + "]".
std::string barycenter_name(const std::vector<std::string>& names);

/// Subdivision of K that keeps J and cones off everything else: vertices
/// V(J) plus one barycenter per face of K outside J. Faces are the sets
/// tau + {b(s1), ..., b(sp)} with tau a face of J (or empty) and
/// tau <= s1 < ... < sp. Throws MalformedInput if a barycenter name clashes
/// with a kept vertex name.
SimplicialComplex relative_barycentric_subdivision(const SimplicialComplex& K, const VertexSubset& J);

/// First barycentric subdivision (relative to the empty subcomplex).
SimplicialComplex barycentric_subdivision(const SimplicialComplex& K);

} // namespace nerve
