#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nerve/complex.hpp"

namespace nerve {

/// Generators are the nerve's vertex ids.
using Generator = VertexId;
using Word = std::vector<Generator>;

/// Right-angled Coxeter system: involutions, two distinct generators
/// commute exactly when they span an edge of the nerve.
class RacgPresentation {
public:
    explicit RacgPresentation(SimplicialComplex nerve);

    const SimplicialComplex& nerve() const noexcept { return nerve_; }
    std::size_t rank() const noexcept { return nerve_.num_vertices(); }
    const std::string& name(Generator s) const { return nerve_.name(s); }
    /// Throws PreconditionError for an unknown name.
    Generator generator(std::string_view name) const;
    /// Distinct and adjacent in the nerve.
    bool commute(Generator s, Generator t) const { return commute_[s][t] != 0; }

    /// Words are written as generator names joined by "."; "()" is the
    /// identity.
    Word parse_word(std::string_view text) const;
    std::string format_word(const Word& w) const;

private:
    SimplicialComplex nerve_;
    std::vector<std::vector<char>> commute_;
};

/// Cancels s against the nearest earlier s when only letters commuting with
/// s lie between, leaving a reduced word.
Word reduce_word(const RacgPresentation& P, const Word& w);

/// Shortlex-least word for the same group element. Two words give the same
/// element exactly when their normal forms coincide. Throws
/// PreconditionError on letters outside the presentation.
Word normal_form(const RacgPresentation& P, const Word& w);

/// Shorter first, then lexicographic by generator id.
bool shortlex_less(const Word& a, const Word& b);

/// Generators s with |w s| < |w|; `w` must be reduced.
std::vector<Generator> right_descents(const RacgPresentation& P, const Word& w);

/// Normal forms of length <= r, ordered by length then shortlex.
std::vector<Word> enumerate_ball_elements(const RacgPresentation& P, int r);

/// A coset u W_T, stored with u the shortest element of the coset and T a
/// sorted clique of the nerve. The cube has dimension |T|.
struct Cube {
    Word rep;
    Face gens;

    bool operator==(const Cube&) const = default;
};
bool operator<(const Cube& a, const Cube& b);

/// Cube of the coset w W_T for any word w.
Cube make_cube(const RacgPresentation& P, const Word& w, const Face& T);
/// The 2^|T| group elements of the coset, in shortlex order.
std::vector<Word> cube_vertices(const RacgPresentation& P, const Cube& c);
/// Codimension-one faces.
std::vector<Cube> cube_facets(const RacgPresentation& P, const Cube& c);

/// The cubes of the Davis complex all of whose vertices have length <= r.
/// A materialized ball lists every element and cube; a local ball answers
/// membership queries only and suits nerves with many generators.
class CubicalBall {
public:
    /// Throws PreconditionError when r < 1.
    static CubicalBall davis_ball(RacgPresentation P, int r);
    static CubicalBall local(RacgPresentation P, int r);

    const RacgPresentation& presentation() const noexcept { return *P_; }
    int radius() const noexcept { return radius_; }
    bool materialized() const noexcept { return materialized_; }

    /// `w` in normal form.
    bool contains(const Word& w) const { return static_cast<int>(w.size()) <= radius_; }
    /// `c` as built by make_cube.
    bool contains(const Cube& c) const { return static_cast<int>(c.rep.size() + c.gens.size()) <= radius_; }

    /// Throw PreconditionError on a local ball.
    const std::vector<Word>& elements() const;
    /// Ordered by dimension, then representative (shortlex), then clique.
    const std::vector<Cube>& cubes() const;
    /// Number of cubes in each dimension 0..max.
    std::vector<std::size_t> cube_counts() const;

private:
    CubicalBall(std::shared_ptr<const RacgPresentation> P, int r, bool materialized);

    std::shared_ptr<const RacgPresentation> P_;
    int radius_ = 0;
    bool materialized_ = false;
    std::vector<Word> elements_;
    std::vector<Cube> cubes_;
};

/// Link of the vertex w: one vertex per ball edge at w (named by its
/// generator), one simplex per cube corner at w. Throws PreconditionError
/// when w is outside the ball.
SimplicialComplex vertex_link_in_ball(const CubicalBall& ball, const Word& w);

/// A subcomplex of a Davis complex, queried cube by cube.
class CubicalSubcomplex {
public:
    virtual ~CubicalSubcomplex() = default;
    virtual bool contains(const Cube& c) const = 0;
    /// Vertices of length <= max_length, shortlex ordered.
    virtual std::vector<Word> vertices_up_to(int max_length) const = 0;
};

/// Explicit finite cube list, closed under taking faces.
class CubeSet final : public CubicalSubcomplex {
public:
    CubeSet() = default;
    /// Adds every face of the given cubes.
    static CubeSet closure(const RacgPresentation& P, const std::vector<Cube>& cubes);

    bool contains(const Cube& c) const override { return cubes_.count(c) != 0; }
    std::vector<Word> vertices_up_to(int max_length) const override;
    const std::set<Cube>& cubes() const noexcept { return cubes_; }

private:
    std::set<Cube> cubes_;
};

/// The subcomplex carried by the special subgroup W_C: cubes u W_T with u
/// in W_C and T a simplex of C. `C` designates a subcomplex of the nerve.
class SpecialSubcomplex final : public CubicalSubcomplex {
public:
    SpecialSubcomplex(const RacgPresentation& P, VertexSubset C);

    bool contains(const Cube& c) const override;
    std::vector<Word> vertices_up_to(int max_length) const override;

private:
    const RacgPresentation* P_;
    VertexSubset C_;
    std::set<Face> faces_;
};

/// Whether, at every vertex v of Y with |v| <= interior_radius, the link of
/// v in Y is 3-convex in the link of v in the ball. Throws
/// PreconditionError unless interior_radius + dim(nerve) + 1 <= radius, so
/// that all examined links are untruncated.
bool is_locally_3_convex(const CubicalBall& ball, const CubicalSubcomplex& Y, int interior_radius);

/// Condition on an element w relative to C <= D+: in the normal form of w,
/// the first letter outside C, if any, lies in D+ \ C.
bool satisfies_star_condition(const RacgPresentation& P, const Word& w, const VertexSubset& C,
                              const VertexSubset& D_plus);
/// The same condition read off a given expression without normalizing.
bool star_condition_on_expression(const Word& expression, const VertexSubset& C, const VertexSubset& D_plus);

/// Random word obtained from `w` by swapping adjacent commuting letters.
Word random_commutation_rewrite(const RacgPresentation& P, const Word& w, std::mt19937_64& rng,
                                std::size_t swaps);

/// Edges of the ball related through opposite sides of squares.
struct WallClass {
    Generator label;
    std::vector<Cube> edges;  // sorted
};

/// Requires a materialized ball. Classes ordered by their least edge.
std::vector<WallClass> wall_classes(const CubicalBall& ball);

/// Every ball cube having an edge in `wall`, with all faces.
CubeSet carrier(const CubicalBall& ball, const WallClass& wall);

} // namespace nerve
