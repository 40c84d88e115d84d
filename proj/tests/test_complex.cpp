#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "nerve/complex.hpp"
#include "nerve/error.hpp"

using namespace nerve;
using fixtures::make;

namespace {

std::vector<std::size_t> fv(std::initializer_list<std::size_t> x) { return x; }

/// Flag oracle: every clique of the 1-skeleton spans a face.
bool brute_is_flag(const SimplicialComplex& K)
{
    const std::size_t n = K.num_vertices();
    for (const Face& s : fixtures::all_subsets(n)) {
        if (s.size() < 3) {
            continue;
        }
        bool clique = true;
        for (std::size_t a = 0; a < s.size() && clique; ++a) {
            for (std::size_t b = a + 1; b < s.size() && clique; ++b) {
                clique = K.contains({s[a], s[b]});
            }
        }
        if (clique && !K.contains(s)) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("f-vectors")
{
    CHECK(fixtures::icosahedron().f_vector() == fv({12, 30, 20}));
    CHECK(make({{"a"}}).f_vector() == fv({1}));
    CHECK(fixtures::icosahedron().euler_characteristic() == 2);
    CHECK(SimplicialComplex().dimension() == -1);
    CHECK(SimplicialComplex().f_vector().empty());
}

TEST_CASE("construction rejects malformed simplices")
{
    CHECK_THROWS_AS(make({{"a", "a"}}), MalformedInput);
    CHECK_THROWS_AS(make({{}}), MalformedInput);
    CHECK_THROWS_AS(SimplicialComplex::from_indexed({"a", "a"}, {}), MalformedInput);
}

TEST_CASE("faces are downward closed and sorted")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto K = fixtures::random_complex(8, 5, 5, rng);
        for (int k = 1; k <= K.dimension(); ++k) {
            auto faces = K.faces(k);
            CHECK(std::is_sorted(faces.begin(), faces.end()));
            for (const Face& f : faces) {
                for (std::size_t skip = 0; skip < f.size(); ++skip) {
                    Face sub = f;
                    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(skip));
                    CHECK(K.contains(sub));
                }
            }
        }
    }
}

TEST_CASE("vertex ids follow name order")
{
    auto K = make({{"zeta", "alpha"}, {"mid"}});
    CHECK(K.vertex_names() == std::vector<std::string>{"alpha", "mid", "zeta"});
    CHECK(K.vertex("mid") == 1);
    CHECK_THROWS_AS(K.vertex("nope"), PreconditionError);
}

TEST_CASE("links")
{
    auto tri = make({{"a", "b", "c"}});
    auto lk = link(tri, {tri.vertex("a")});
    CHECK(lk.vertex_names() == std::vector<std::string>{"b", "c"});
    CHECK(lk.f_vector() == fv({2, 1}));
    CHECK_THROWS_AS(link(fixtures::cycle(4), {0, 2}), PreconditionError);

    auto ico = fixtures::icosahedron();
    auto c5 = fixtures::cycle(5);
    for (VertexId v = 0; v < ico.num_vertices(); ++v) {
        CHECK(are_isomorphic(link(ico, {v}), c5).has_value());
    }
}

TEST_CASE("stars")
{
    auto tri = make({{"a", "b", "c"}});
    CHECK(star(tri, {0}) == tri);
    auto wheel = make({{"h", "v1", "v2"}, {"h", "v2", "v3"}, {"h", "v3", "v4"}, {"h", "v4", "v5"}, {"h", "v1", "v5"}});
    CHECK(star(wheel, {wheel.vertex("h")}) == wheel);
}

TEST_CASE("link and star duality on random complexes")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        auto K = fixtures::random_complex(7, 6, 4, rng);
        for (int k = 0; k <= K.dimension(); ++k) {
            for (const Face& sigma : K.faces(k)) {
                auto lk = link(K, sigma);
                auto st = star(K, sigma);
                std::vector<std::vector<std::string>> gens{K.names_of(sigma)};
                for (int j = 0; j <= lk.dimension(); ++j) {
                    for (const Face& tau : lk.faces(j)) {
                        auto names = lk.names_of(tau);
                        auto s = K.names_of(sigma);
                        names.insert(names.end(), s.begin(), s.end());
                        gens.push_back(names);
                    }
                }
                CHECK(st == make(gens));
            }
        }
    }
}

TEST_CASE("fullness")
{
    auto tri = make({{"a", "b", "c"}});
    CHECK(is_full(tri, VertexSubset::spanned(tri, {"a", "b"})));
    auto c4 = make({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
    CHECK(is_full(c4, VertexSubset::spanned(c4, {"a", "c"})));
    // An explicit subcomplex missing the edge it spans is not full.
    auto two_points = VertexSubset::explicit_faces(tri, {{0}, {1}});
    auto bad = find_fullness_violation(tri, two_points);
    REQUIRE(bad);
    CHECK(*bad == Face{0, 1});
    CHECK_THROWS_AS(VertexSubset::explicit_faces(tri, {{0, 1}}), MalformedInput);
}

TEST_CASE("stars in flag complexes are full")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 80; ++trial) {
        auto K = fixtures::random_flag_complex(9, 0.5, rng);
        for (int k = 0; k <= K.dimension(); ++k) {
            for (const Face& sigma : K.faces(k)) {
                CHECK(is_full(K, VertexSubset::of_subcomplex(K, star(K, sigma))));
            }
        }
    }
}

TEST_CASE("flag and flag-no-square")
{
    CHECK_FALSE(is_flag(fixtures::cycle(3)));
    CHECK(find_flag_violation(fixtures::cycle(3)) == Face{0, 1, 2});
    CHECK(is_flag(fixtures::icosahedron()));
    CHECK(is_flag_no_square(fixtures::icosahedron()));
    CHECK(is_flag(fixtures::cycle(4)));
    CHECK_FALSE(is_flag_no_square(fixtures::cycle(4)));
    CHECK(find_empty_square(fixtures::cycle(4)).has_value());
    CHECK_FALSE(is_flag_no_square(fixtures::octahedron()));
    CHECK(is_flag_no_square(fixtures::cycle(5)));
}

TEST_CASE("flag test agrees with clique enumeration")
{
    std::mt19937_64 rng(3);
    int nonflag = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<std::size_t> n(1, 12);
        auto K = fixtures::random_complex(n(rng), 8, 4, rng);
        const bool oracle = brute_is_flag(K);
        nonflag += oracle ? 0 : 1;
        CHECK(is_flag(K) == oracle);
    }
    CHECK(nonflag > 0);
}

TEST_CASE("graph distance")
{
    auto c4 = make({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"a", "d"}});
    CHECK(graph_distance(c4, 0, 1) == 1u);
    CHECK(graph_distance(c4, 0, 2) == 2u);
    auto ico = fixtures::icosahedron();
    CHECK(graph_distance(ico, ico.vertex("t"), ico.vertex("b")) == 3u);
    auto two = make({{"a", "b"}, {"c", "d"}});
    CHECK_FALSE(graph_distance(two, 0, 2).has_value());
    CHECK_THROWS_AS(graph_distance(two, 0, 9), PreconditionError);
}

TEST_CASE("graph distance is a metric on components")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        auto K = fixtures::random_flag_complex(10, 0.3, rng);
        std::uniform_int_distribution<VertexId> pick(0, 9);
        for (int t = 0; t < 30; ++t) {
            VertexId a = pick(rng), b = pick(rng), c = pick(rng);
            auto ab = graph_distance(K, a, b), bc = graph_distance(K, b, c), ac = graph_distance(K, a, c);
            CHECK(graph_distance(K, a, a) == 0u);
            CHECK(ab == graph_distance(K, b, a));
            if (ab && bc) {
                REQUIRE(ac);
                CHECK(*ac <= *ab + *bc);
            }
        }
    }
}

TEST_CASE("connected components")
{
    CHECK(connected_components(make({{"a", "b"}, {"c", "d"}})).size() == 2);
    CHECK(connected_components(fixtures::icosahedron()).size() == 1);
    CHECK(connected_components(SimplicialComplex()).empty());
    auto comps = connected_components(make({{"c", "d"}, {"a"}, {"b", "e"}}));
    REQUIRE(comps.size() == 3);
    CHECK(comps[0].vertices == std::vector<VertexId>{0});
    CHECK(comps[1].vertices == std::vector<VertexId>{1, 4});
}

TEST_CASE("isomorphism")
{
    auto ico = fixtures::icosahedron();
    VertexMap id;
    for (const auto& n : ico.vertex_names()) {
        id[n] = n;
    }
    CHECK(are_isomorphic(ico, ico, id) == id);
    CHECK_FALSE(are_isomorphic(fixtures::cycle(3), make({{"a", "b"}, {"b", "c"}, {"c", "d"}})));
    std::mt19937_64 rng(4);
    auto shuffled = fixtures::relabel(ico, rng);
    auto found = are_isomorphic(ico, shuffled);
    REQUIRE(found);
    CHECK(are_isomorphic(ico, shuffled, found).has_value());
    CHECK_FALSE(are_isomorphic(ico, fixtures::octahedron()));
    // A wrong hint is rejected even when the complexes are isomorphic.
    VertexMap wrong = *found;
    std::swap(wrong["t"], wrong["u0"]);
    CHECK_FALSE(are_isomorphic(ico, shuffled, wrong));
}

TEST_CASE("closed pseudomanifolds and simplices")
{
    CHECK(is_closed_pseudomanifold(fixtures::icosahedron(), 2));
    CHECK(is_closed_pseudomanifold(fixtures::cycle(4), 1));
    CHECK_FALSE(is_closed_pseudomanifold(make({{"a", "b"}, {"b", "c"}}), 1));
    CHECK_FALSE(is_closed_pseudomanifold(make({{"a", "b"}, {"b", "c"}, {"a", "c"}, {"d", "e"}, {"e", "f"}, {"d", "f"}}), 1));
    CHECK(is_simplex(make({{"a", "b", "c"}})));
    CHECK_FALSE(is_simplex(fixtures::cycle(3)));
}
