#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "nerve/convexity.hpp"
#include "nerve/coxeter.hpp"
#include "nerve/error.hpp"

using namespace nerve;
using fixtures::make;
using oracles::Matrix;
using oracles::TitsRepresentation;
using oracles::all_words;
using oracles::small_nerves;

namespace {

RacgPresentation presentation(const SimplicialComplex& K) { return RacgPresentation(K); }

} // namespace

TEST_CASE("normal form examples")
{
    auto P = presentation(make({{"s", "t"}, {"u"}}));
    CHECK(normal_form(P, P.parse_word("s.s")).empty());
    CHECK(P.format_word(normal_form(P, P.parse_word("s.t.s"))) == "t");
    CHECK(P.format_word(normal_form(P, P.parse_word("s.u.s"))) == "s.u.s");
    CHECK(P.format_word(normal_form(P, P.parse_word("t.s"))) == "s.t");
    CHECK(P.format_word({}) == "()");
    CHECK(P.parse_word("()").empty());
    CHECK_THROWS_AS(P.parse_word("s.x"), PreconditionError);
    CHECK_THROWS_AS(normal_form(P, Word{7}), PreconditionError);
    CHECK(shortlex_less(Word{1}, Word{0, 0}));
    CHECK(shortlex_less(Word{0, 1}, Word{1, 0}));
}

TEST_CASE("normal forms agree with the Tits representation on all small nerves")
{
    const auto nerves = small_nerves();
    CHECK(nerves.size() == 1 + 2 + 8 + 64);
    for (const auto& K : nerves) {
        auto P = presentation(K);
        TitsRepresentation rho(P);
        std::map<Matrix, Word> by_matrix;
        std::map<Word, Matrix> by_form;
        const std::size_t max_len = K.num_vertices() == 4 ? 6 : 7;
        for (const Word& w : all_words(P.rank(), max_len)) {
            const Word nf = normal_form(P, w);
            const Matrix m = rho.of(w);
            CHECK(nf.size() <= w.size());
            CHECK(normal_form(P, nf) == nf);
            CHECK(rho.of(nf) == m);
            CHECK(reduce_word(P, w).size() == nf.size());
            auto [it, fresh] = by_matrix.emplace(m, nf);
            if (!fresh) {
                CHECK(it->second == nf);
            }
            auto [jt, fresh2] = by_form.emplace(nf, m);
            if (!fresh2) {
                CHECK(jt->second == m);
            }
            // The normal form is the shortlex-least word seen for its element.
            if (shortlex_less(w, it->second)) {
                FAIL("word shortlex-below its normal form");
            }
        }
        if (K.num_faces() == (std::size_t{1} << K.num_vertices()) - 1) {
            CHECK(by_matrix.size() == (std::size_t{1} << K.num_vertices()));
        }
    }
}

TEST_CASE("ball enumeration")
{
    auto tri = presentation(make({{"a", "b", "c"}}));
    CHECK(enumerate_ball_elements(tri, 3).size() == 8);
    CHECK(enumerate_ball_elements(tri, 5).size() == 8);
    auto c4 = presentation(fixtures::cycle(4));
    CHECK(enumerate_ball_elements(c4, 2).size() == 13);
    auto pair = presentation(make({{"a"}, {"b"}}));
    auto seg = enumerate_ball_elements(pair, 3);
    CHECK(seg.size() == 7);
    CHECK(pair.format_word(seg.back()) == "b.a.b");
    for (std::size_t i = 1; i < seg.size(); ++i) {
        CHECK(shortlex_less(seg[i - 1], seg[i]));
    }
    CHECK(enumerate_ball_elements(pair, 0).size() == 1);
}

TEST_CASE("ball sizes agree with the linear oracle")
{
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        auto K = fixtures::random_flag_complex(4, 0.5, rng);
        auto P = presentation(K);
        TitsRepresentation rho(P);
        for (int r = 0; r <= 5; ++r) {
            std::set<Matrix> distinct;
            for (const Word& w : all_words(P.rank(), static_cast<std::size_t>(r))) {
                distinct.insert(rho.of(w));
            }
            CHECK(enumerate_ball_elements(P, r).size() == distinct.size());
        }
    }
}

TEST_CASE("right descents")
{
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        auto P = presentation(fixtures::random_flag_complex(5, 0.5, rng));
        for (const Word& w : enumerate_ball_elements(P, 4)) {
            std::vector<Generator> expected;
            for (Generator s = 0; s < P.rank(); ++s) {
                Word ws = w;
                ws.push_back(s);
                if (normal_form(P, ws).size() < w.size()) {
                    expected.push_back(s);
                }
            }
            CHECK(right_descents(P, w) == expected);
        }
    }
}

TEST_CASE("commutation rewrites keep the element")
{
    auto P = presentation(fixtures::icosahedron());
    std::mt19937_64 rng(79);
    std::uniform_int_distribution<Generator> letter(0, static_cast<Generator>(P.rank() - 1));
    for (int trial = 0; trial < 200; ++trial) {
        Word w;
        for (int i = 0; i < 10; ++i) {
            w.push_back(letter(rng));
        }
        auto x = random_commutation_rewrite(P, w, rng, 30);
        CHECK(normal_form(P, x) == normal_form(P, w));
    }
}

TEST_CASE("star condition")
{
    // C = link of the pole t, D+ = everything but t: the two sides of C.
    auto ico = fixtures::icosahedron();
    auto P = presentation(ico);
    const VertexId t = ico.vertex("t");
    std::vector<VertexId> rim, plus, minus;
    for (VertexId v = 0; v < ico.num_vertices(); ++v) {
        if (ico.adjacent(t, v)) {
            rim.push_back(v);
        }
        if (v != t) {
            plus.push_back(v);
        }
        if (v == t || ico.adjacent(t, v)) {
            minus.push_back(v);
        }
    }
    auto C = VertexSubset::spanned(rim);
    auto Dp = VertexSubset::spanned(plus);
    auto Dm = VertexSubset::spanned(minus);

    CHECK(satisfies_star_condition(P, {}, C, Dp));
    CHECK(satisfies_star_condition(P, {rim[0]}, C, Dp));
    CHECK(satisfies_star_condition(P, {rim[0]}, C, Dm));
    CHECK_FALSE(satisfies_star_condition(P, {t}, C, Dp));
    CHECK(satisfies_star_condition(P, {t}, C, Dm));

    for (const Word& w : enumerate_ball_elements(P, 3)) {
        const bool in_plus = satisfies_star_condition(P, w, C, Dp);
        const bool in_minus = satisfies_star_condition(P, w, C, Dm);
        const bool in_special = std::all_of(w.begin(), w.end(), [&](Generator s) { return C.has_vertex(s); });
        CHECK((in_plus || in_minus));
        CHECK((in_plus && in_minus) == in_special);
        if (std::all_of(w.begin(), w.end(), [&](Generator s) { return Dp.has_vertex(s); })) {
            CHECK(in_plus);
        }
    }

    std::mt19937_64 rng(83);
    std::uniform_int_distribution<Generator> letter(0, static_cast<Generator>(P.rank() - 1));
    for (int trial = 0; trial < 200; ++trial) {
        Word w;
        for (int i = 0; i < 9; ++i) {
            w.push_back(letter(rng));
        }
        const Word reduced = reduce_word(P, w);
        const bool verdict = satisfies_star_condition(P, w, C, Dp);
        CHECK(star_condition_on_expression(reduced, C, Dp) == verdict);
        for (int k = 0; k < 10; ++k) {
            CHECK(star_condition_on_expression(random_commutation_rewrite(P, reduced, rng, 40), C, Dp) == verdict);
        }
    }
}

TEST_CASE("Davis balls")
{
    auto tri = CubicalBall::davis_ball(presentation(make({{"a", "b", "c"}})), 3);
    CHECK(tri.cube_counts() == std::vector<std::size_t>{8, 12, 6, 1});
    auto c4 = presentation(fixtures::cycle(4));
    for (int r = 1; r <= 4; ++r) {
        auto ball = CubicalBall::davis_ball(c4, r);
        CHECK(ball.elements().size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
    }
    auto ball2 = CubicalBall::davis_ball(c4, 2);
    std::size_t squares_at_identity = 0;
    for (const Cube& c : ball2.cubes()) {
        if (c.gens.size() == 2 && c.rep.empty()) {
            ++squares_at_identity;
        }
    }
    CHECK(squares_at_identity == 4);
    auto free_pair = CubicalBall::davis_ball(presentation(make({{"a"}, {"b"}})), 5);
    CHECK(free_pair.cube_counts().size() == 2);
    CHECK_THROWS_AS(CubicalBall::davis_ball(c4, 0), PreconditionError);
    auto local = CubicalBall::local(c4, 2);
    CHECK_THROWS_AS(local.elements(), PreconditionError);
    for (const Cube& c : ball2.cubes()) {
        CHECK(local.contains(c));
    }
}

TEST_CASE("cubes are closed under faces")
{
    for (const auto& K : {fixtures::cycle(4), fixtures::cycle(5), fixtures::octahedron(), make({{"a", "b", "c"}, {"c", "d"}})}) {
        auto P = presentation(K);
        auto ball = CubicalBall::davis_ball(P, 3);
        const std::set<Cube> all(ball.cubes().begin(), ball.cubes().end());
        for (const Cube& c : ball.cubes()) {
            CHECK(make_cube(P, c.rep, c.gens) == c);
            for (const Cube& f : cube_facets(P, c)) {
                CHECK(all.count(f) == 1);
            }
            auto verts = cube_vertices(P, c);
            CHECK(verts.size() == (std::size_t{1} << c.gens.size()));
            CHECK(verts.front() == c.rep);
            for (const Word& v : verts) {
                CHECK(ball.contains(v));
            }
        }
    }
}

TEST_CASE("vertex links in balls")
{
    for (const auto& K : {make({{"a", "b", "c"}}), fixtures::cycle(4), fixtures::cycle(5), fixtures::octahedron(),
                          make({{"a", "b"}, {"b", "c"}})}) {
        auto P = presentation(K);
        const int dim = K.dimension();
        auto ball = CubicalBall::davis_ball(P, dim + 3);
        for (const Word& w : ball.elements()) {
            auto lk = vertex_link_in_ball(ball, w);
            if (static_cast<int>(w.size()) + dim + 1 <= ball.radius()) {
                CHECK(lk == K);
                continue;
            }
            // Near the boundary a simplex T survives exactly when the whole
            // coset w W_T lies in the ball.
            std::vector<Face> expected;
            for (int k = 0; k <= dim; ++k) {
                for (const Face& T : K.faces(k)) {
                    bool inside = true;
                    for (const Face& sub : fixtures::all_subsets(T.size())) {
                        Word x = w;
                        for (VertexId i : sub) {
                            x.push_back(T[i]);
                        }
                        inside = inside && static_cast<int>(normal_form(P, x).size()) <= ball.radius();
                    }
                    if (inside) {
                        expected.push_back(T);
                    }
                }
            }
            std::vector<Face> got;
            for (int k = 0; k <= lk.dimension(); ++k) {
                for (const Face& f : lk.faces(k)) {
                    got.push_back(K.face_from_names(lk.names_of(f)));
                }
            }
            std::sort(expected.begin(), expected.end());
            std::sort(got.begin(), got.end());
            CHECK(got == expected);
        }
    }
    auto tri = make({{"a", "b", "c"}});
    auto ball = CubicalBall::davis_ball(presentation(tri), 3);
    CHECK(vertex_link_in_ball(ball, {}) == tri);
    auto c4 = presentation(fixtures::cycle(4));
    auto small = CubicalBall::davis_ball(c4, 2);
    CHECK_THROWS_AS(vertex_link_in_ball(small, c4.parse_word("v1.v3.v1")), PreconditionError);
}

TEST_CASE("local 3-convexity")
{
    auto c4 = fixtures::cycle(4);
    auto P = presentation(c4);
    auto ball = CubicalBall::davis_ball(P, 3);
    auto point = CubeSet::closure(P, {make_cube(P, {}, {})});
    CHECK(is_locally_3_convex(ball, point, 1));

    // Two edges at the identity in commuting directions: the link of the
    // identity in Y spans an edge of the nerve that Y omits.
    auto corner = CubeSet::closure(P, {make_cube(P, {}, {0}), make_cube(P, {}, {1})});
    CHECK_FALSE(is_locally_3_convex(ball, corner, 1));
    CHECK_THROWS_AS(is_locally_3_convex(ball, corner, 2), PreconditionError);

    // The rim of a deleted pole is 3-convex in the remaining disk but not in
    // the icosahedron, where the pole is a common neighbour.
    auto ico = fixtures::icosahedron();
    std::vector<VertexId> keep;
    for (VertexId v = 0; v < ico.num_vertices(); ++v) {
        if (ico.name(v) != "t") {
            keep.push_back(v);
        }
    }
    auto disk = full_subcomplex(ico, keep);
    std::vector<VertexId> rim;
    for (VertexId v : ico.neighbors(ico.vertex("t"))) {
        rim.push_back(disk.vertex(ico.name(v)));
    }
    std::sort(rim.begin(), rim.end());
    auto Q = presentation(disk);
    CHECK(is_locally_3_convex(CubicalBall::local(Q, 5), SpecialSubcomplex(Q, VertexSubset::spanned(rim)), 2));

    auto R = presentation(ico);
    std::vector<VertexId> link_t(ico.neighbors(ico.vertex("t")).begin(), ico.neighbors(ico.vertex("t")).end());
    std::sort(link_t.begin(), link_t.end());
    CHECK_FALSE(is_locally_3_convex(CubicalBall::local(R, 5), SpecialSubcomplex(R, VertexSubset::spanned(link_t)), 2));
}

TEST_CASE("walls")
{
    auto P = presentation(make({{"a", "b", "c"}}));
    auto ball = CubicalBall::davis_ball(P, 3);
    auto walls = wall_classes(ball);
    REQUIRE(walls.size() == 3);
    for (const auto& w : walls) {
        CHECK(w.edges.size() == 4);
        CHECK(carrier(ball, w).cubes().size() == 27);
    }

    auto c4 = presentation(fixtures::cycle(4));
    auto ball2 = CubicalBall::davis_ball(c4, 2);
    auto walls2 = wall_classes(ball2);
    const Cube origin_a = make_cube(c4, {}, {0});
    const WallClass* wa = nullptr;
    for (const auto& w : walls2) {
        if (std::find(w.edges.begin(), w.edges.end(), origin_a) != w.edges.end()) {
            wa = &w;
        }
    }
    REQUIRE(wa != nullptr);
    CHECK(wa->label == 0);
    CHECK(wa->edges.size() == 3);
    auto strip = carrier(ball2, *wa);
    std::size_t squares = 0;
    for (const Cube& c : strip.cubes()) {
        squares += c.gens.size() == 2 ? 1 : 0;
    }
    CHECK(squares == 2);

    for (const auto& K : {fixtures::cycle(4), fixtures::octahedron(), make({{"a", "b", "c"}, {"c", "d"}})}) {
        auto Q = presentation(K);
        auto b = CubicalBall::davis_ball(Q, 3);
        auto ws = wall_classes(b);
        std::map<Cube, std::size_t> cls;
        std::size_t total = 0;
        for (std::size_t i = 0; i < ws.size(); ++i) {
            std::set<Word> ends;
            for (const Cube& e : ws[i].edges) {
                CHECK(e.gens == Face{ws[i].label});
                cls[e] = i;
                ++total;
                for (const Word& v : cube_vertices(Q, e)) {
                    CHECK(ends.insert(v).second);
                }
            }
        }
        CHECK(total == b.cube_counts()[1]);
        for (const Cube& sq : b.cubes()) {
            if (sq.gens.size() != 2) {
                continue;
            }
            std::set<std::size_t> seen;
            for (const Cube& e : cube_facets(Q, sq)) {
                seen.insert(cls.at(e));
            }
            CHECK(seen.size() == 2);
        }
    }
}
