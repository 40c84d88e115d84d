#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nerve/complex.hpp"

namespace nerve {

/// A complex L given together with a triangulated (n+1)-sphere L' that
/// contains it. `sub` designates L inside `ambient`.
struct AmbientPair {
    SimplicialComplex ambient;
    VertexSubset sub;

    /// n = dim L' - 1.
    int n() const { return ambient.dimension() - 1; }
    SimplicialComplex nerve() const { return materialize(ambient, sub); }
};

/// Faces of L' outside L that are linked through shared faces outside L.
/// All ids refer to the ambient complex.
struct ComplementComponent {
    std::vector<Face> simplices;
    /// Faces of L lying in the closure of `simplices`, by dimension then
    /// lexicographically.
    std::vector<Face> boundary;

    std::vector<VertexId> boundary_vertices() const;
};

/// Deterministic order: by the smallest face of each component. Throws
/// PreconditionError when L = L' (no holes).
std::vector<ComplementComponent> complement_components(const AmbientPair& pair);

enum class Tier { Exact, ModuloPL };
std::string to_string(Tier tier);

struct SphereVerdict {
    bool ok = false;
    Tier tier = Tier::Exact;
    std::string reason;  // empty when ok
};

/// Combinatorial recognition of a triangulated n-sphere. Exact for n <= 2;
/// for n >= 3 a closed pseudomanifold with the homology of S^n whose vertex
/// links pass recursively, reported as ModuloPL.
SphereVerdict recognize_sphere(const SimplicialComplex& C, int n);

/// Greedy elementary collapses through free faces; true when a single
/// vertex remains.
bool collapses_to_point(const std::vector<Face>& faces);

/// Named groups of vertex names that let a caller re-run the failing check.
struct Witness {
    std::string kind;
    std::vector<std::vector<std::string>> items;
    std::string detail;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::optional<std::size_t> component;
    std::optional<std::size_t> other_component;
    std::optional<Witness> witness;
    std::optional<Tier> tier;
};

struct ComponentSummary {
    std::size_t index = 0;
    std::size_t simplices = 0;
    std::vector<std::string> boundary_vertices;
    std::vector<std::size_t> boundary_f_vector;
    Tier tier = Tier::ModuloPL;
    bool collapsible = false;
};

struct CertificationReport {
    std::string subject;
    int n = -1;
    std::vector<CheckResult> checks;
    std::vector<ComponentSummary> components;
    std::optional<int> vcd;
    std::optional<int> boundary_dimension;
    std::optional<bool> flag_no_square;
    std::vector<std::string> notes;
    std::string conclusion;
    /// Independent verdicts on the same input reached by another route.
    std::vector<CertificationReport> other_routes;

    bool passed() const;
    const CheckResult* find(const std::string& name, std::optional<std::size_t> component = std::nullopt) const;
    std::string to_text() const;
    std::string to_json(int indent = 2) const;
};

struct CertifyOptions {
    /// Compare vcd(L) - 1 against n. Costly on large nerves.
    bool cross_check_dimension = true;
    unsigned threads = 0;
};

/// Sphere-with-holes conditions: L' a closed (n+1)-pseudomanifold, L a
/// proper flag subcomplex, every hole boundary a full n-sphere whose hole
/// closure is an acyclic (n+1)-ball candidate bounded by it.
CertificationReport check_sphere_with_holes(const AmbientPair& pair);

/// The sphere-with-holes conditions plus: distinct hole boundaries meet in
/// the empty set or a common simplex, and every hole boundary is 3-convex
/// in L. A passing report concludes that the visual boundary of the
/// right-angled Coxeter group with nerve L is the n-dimensional Sierpinski
/// compactum.
CertificationReport certify_sierpinski(const AmbientPair& pair, const CertifyOptions& options = {});

/// L with one new apex per hole, coned over that hole's boundary. Apex
/// names default to "apex0", "apex1", ... (extended with "'" on clashes).
/// Throws PreconditionError when a hole boundary fails the sphere tier.
SimplicialComplex cone_off(const AmbientPair& pair, const std::vector<std::string>& apex_names = {});

/// Cyclic neighbour order at every vertex, by vertex name.
using RotationSystem = std::map<std::string, std::vector<std::string>>;

/// Planar criterion for a nerve of dimension <= 2: planar 1-skeleton, flag,
/// unseparable, not a simplex, not a triangulated 2-sphere. With a rotation
/// system the embedding is verified instead of searched for. With an
/// ambient pair the general certificate is attached as a separate route.
/// Throws PreconditionError when dim L > 2.
CertificationReport certify_planar_sierpinski(const SimplicialComplex& L,
                                              const std::optional<RotationSystem>& rotation = std::nullopt,
                                              const std::optional<AmbientPair>& ambient = std::nullopt,
                                              const CertifyOptions& options = {});

} // namespace nerve
