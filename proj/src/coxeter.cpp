#include "nerve/coxeter.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nerve/convexity.hpp"
#include "nerve/error.hpp"

namespace nerve {

RacgPresentation::RacgPresentation(SimplicialComplex nerve)
    : nerve_(std::move(nerve)), commute_(nerve_.num_vertices(), std::vector<char>(nerve_.num_vertices(), 0))
{
    for (const Face& e : nerve_.faces(1)) {
        commute_[e[0]][e[1]] = commute_[e[1]][e[0]] = 1;
    }
}

Generator RacgPresentation::generator(std::string_view name) const
{
    if (auto v = nerve_.find_vertex(name)) {
        return *v;
    }
    throw PreconditionError("unknown generator '" + std::string(name) + "'");
}

Word RacgPresentation::parse_word(std::string_view text) const
{
    Word w;
    if (text.empty() || text == "()") {
        return w;
    }
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t dot = text.find('.', start);
        const std::string_view part = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
        if (part.empty()) {
            throw MalformedInput("empty letter in word '" + std::string(text) + "'");
        }
        w.push_back(generator(part));
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    return w;
}

std::string RacgPresentation::format_word(const Word& w) const
{
    if (w.empty()) {
        return "()";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out += (i ? "." : "") + name(w[i]);
    }
    return out;
}

namespace {

void require_letters(const RacgPresentation& P, const Word& w)
{
    for (Generator s : w) {
        if (s >= P.rank()) {
            throw PreconditionError("word uses a letter outside the presentation");
        }
    }
}

/// Least-letter-first linearization of a reduced word's commutation class.
Word lex_least_arrangement(const RacgPresentation& P, Word rest)
{
    Word out;
    out.reserve(rest.size());
    while (!rest.empty()) {
        std::size_t best = rest.size();
        for (std::size_t i = 0; i < rest.size(); ++i) {
            bool front = true;
            for (std::size_t j = 0; j < i && front; ++j) {
                front = P.commute(rest[j], rest[i]);
            }
            if (front && (best == rest.size() || rest[i] < rest[best])) {
                best = i;
            }
        }
        out.push_back(rest[best]);
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return out;
}

} // namespace

Word reduce_word(const RacgPresentation& P, const Word& w)
{
    require_letters(P, w);
    Word out;
    for (Generator s : w) {
        bool cancelled = false;
        for (std::size_t i = out.size(); i-- > 0;) {
            if (out[i] == s) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                cancelled = true;
                break;
            }
            if (!P.commute(out[i], s)) {
                break;
            }
        }
        if (!cancelled) {
            out.push_back(s);
        }
    }
    return out;
}

Word normal_form(const RacgPresentation& P, const Word& w)
{
    return lex_least_arrangement(P, reduce_word(P, w));
}

bool shortlex_less(const Word& a, const Word& b)
{
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

std::vector<Generator> right_descents(const RacgPresentation& P, const Word& w)
{
    std::vector<Generator> out;
    for (std::size_t i = w.size(); i-- > 0;) {
        bool last = true;
        for (std::size_t j = i + 1; j < w.size() && last; ++j) {
            last = P.commute(w[i], w[j]);
        }
        if (last) {
            out.push_back(w[i]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct ShortlexLess {
    bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

/// Elements of length <= r whose letters pass `allowed`.
template <typename Allowed>
std::vector<Word> grow_ball(const RacgPresentation& P, int r, Allowed allowed)
{
    std::vector<Word> out{Word{}};
    std::vector<Word> layer{Word{}};
    for (int len = 1; len <= r; ++len) {
        std::set<Word, ShortlexLess> next;
        for (const Word& w : layer) {
            const auto desc = right_descents(P, w);
            for (Generator s = 0; s < P.rank(); ++s) {
                if (!allowed(s) || std::binary_search(desc.begin(), desc.end(), s)) {
                    continue;
                }
                Word ws = w;
                ws.push_back(s);
                next.insert(normal_form(P, ws));
            }
        }
        layer.assign(next.begin(), next.end());
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::vector<Face> nerve_faces_with_empty(const SimplicialComplex& L)
{
    std::vector<Face> out{Face{}};
    for (int k = 0; k <= L.dimension(); ++k) {
        out.insert(out.end(), L.faces(k).begin(), L.faces(k).end());
    }
    return out;
}

} // namespace

std::vector<Word> enumerate_ball_elements(const RacgPresentation& P, int r)
{
    if (r < 0) {
        throw PreconditionError("ball radius must be nonnegative");
    }
    return grow_ball(P, r, [](Generator) { return true; });
}

bool operator<(const Cube& a, const Cube& b)
{
    if (a.gens.size() != b.gens.size()) {
        return a.gens.size() < b.gens.size();
    }
    if (a.rep != b.rep) {
        return shortlex_less(a.rep, b.rep);
    }
    return a.gens < b.gens;
}

Cube make_cube(const RacgPresentation& P, const Word& w, const Face& T)
{
    for (std::size_t i = 0; i < T.size(); ++i) {
        for (std::size_t j = i + 1; j < T.size(); ++j) {
            if (!P.commute(T[i], T[j])) {
                throw PreconditionError("cube directions must span a simplex of the nerve");
            }
        }
    }
    Word u = normal_form(P, w);
    const auto desc = right_descents(P, u);
    Word drop;
    std::set_intersection(desc.begin(), desc.end(), T.begin(), T.end(), std::back_inserter(drop));
    if (!drop.empty()) {
        u.insert(u.end(), drop.begin(), drop.end());
        u = normal_form(P, u);
    }
    return Cube{std::move(u), T};
}

std::vector<Word> cube_vertices(const RacgPresentation& P, const Cube& c)
{
    std::vector<Word> out;
    const std::size_t k = c.gens.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        Word w = c.rep;
        for (std::size_t i = 0; i < k; ++i) {
            if ((mask >> i) & 1) {
                w.push_back(c.gens[i]);
            }
        }
        out.push_back(normal_form(P, w));
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

std::vector<Cube> cube_facets(const RacgPresentation& P, const Cube& c)
{
    std::vector<Cube> out;
    for (std::size_t i = 0; i < c.gens.size(); ++i) {
        Face rest = c.gens;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(make_cube(P, c.rep, rest));
        Word moved = c.rep;
        moved.push_back(c.gens[i]);
        out.push_back(make_cube(P, moved, rest));
    }
    std::sort(out.begin(), out.end());
    return out;
}

CubicalBall::CubicalBall(std::shared_ptr<const RacgPresentation> P, int r, bool materialized)
    : P_(std::move(P)), radius_(r), materialized_(materialized)
{
    if (r < 1) {
        throw PreconditionError("ball radius must be at least 1");
    }
    if (!materialized) {
        return;
    }
    elements_ = enumerate_ball_elements(*P_, r);
    const auto cliques = nerve_faces_with_empty(P_->nerve());
    for (const Word& u : elements_) {
        const auto desc = right_descents(*P_, u);
        for (const Face& T : cliques) {
            if (static_cast<int>(u.size() + T.size()) > r) {
                continue;
            }
            const bool min_rep = std::none_of(T.begin(), T.end(), [&](Generator s) {
                return std::binary_search(desc.begin(), desc.end(), s);
            });
            if (min_rep) {
                cubes_.push_back(Cube{u, T});
            }
        }
    }
    std::sort(cubes_.begin(), cubes_.end());
}

CubicalBall CubicalBall::davis_ball(RacgPresentation P, int r)
{
    return CubicalBall(std::make_shared<const RacgPresentation>(std::move(P)), r, true);
}

CubicalBall CubicalBall::local(RacgPresentation P, int r)
{
    return CubicalBall(std::make_shared<const RacgPresentation>(std::move(P)), r, false);
}

const std::vector<Word>& CubicalBall::elements() const
{
    if (!materialized_) {
        throw PreconditionError("element list requested from a local ball");
    }
    return elements_;
}

const std::vector<Cube>& CubicalBall::cubes() const
{
    if (!materialized_) {
        throw PreconditionError("cube list requested from a local ball");
    }
    return cubes_;
}

std::vector<std::size_t> CubicalBall::cube_counts() const
{
    std::vector<std::size_t> out;
    for (const Cube& c : cubes()) {
        if (out.size() <= c.gens.size()) {
            out.resize(c.gens.size() + 1, 0);
        }
        ++out[c.gens.size()];
    }
    return out;
}

SimplicialComplex vertex_link_in_ball(const CubicalBall& ball, const Word& w)
{
    const RacgPresentation& P = ball.presentation();
    const Word v = normal_form(P, w);
    if (!ball.contains(v)) {
        throw PreconditionError("vertex " + P.format_word(v) + " lies outside the ball");
    }
    const auto desc = right_descents(P, v);
    // The cube at v in directions T has its least vertex at v minus the
    // descents in T, so it fits iff |v| + |T \ desc| <= r.
    std::vector<Face> faces;
    const SimplicialComplex& L = P.nerve();
    for (int k = 0; k <= L.dimension(); ++k) {
        for (const Face& T : L.faces(k)) {
            std::size_t fresh = 0;
            for (Generator s : T) {
                fresh += std::binary_search(desc.begin(), desc.end(), s) ? 0 : 1;
            }
            if (static_cast<int>(v.size() + fresh) <= ball.radius()) {
                faces.push_back(T);
            }
        }
    }
    return subcomplex_from_faces(L, faces);
}

CubeSet CubeSet::closure(const RacgPresentation& P, const std::vector<Cube>& cubes)
{
    CubeSet out;
    std::vector<Cube> stack;
    for (const Cube& c : cubes) {
        stack.push_back(make_cube(P, c.rep, c.gens));
    }
    while (!stack.empty()) {
        Cube c = std::move(stack.back());
        stack.pop_back();
        if (!out.cubes_.insert(c).second) {
            continue;
        }
        for (Cube& f : cube_facets(P, c)) {
            if (!out.cubes_.count(f)) {
                stack.push_back(std::move(f));
            }
        }
    }
    return out;
}

std::vector<Word> CubeSet::vertices_up_to(int max_length) const
{
    std::vector<Word> out;
    for (const Cube& c : cubes_) {
        if (c.gens.empty() && static_cast<int>(c.rep.size()) <= max_length) {
            out.push_back(c.rep);
        }
    }
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

SpecialSubcomplex::SpecialSubcomplex(const RacgPresentation& P, VertexSubset C) : P_(&P), C_(std::move(C))
{
    const auto faces = faces_of(P.nerve(), C_);
    faces_.insert(faces.begin(), faces.end());
}

bool SpecialSubcomplex::contains(const Cube& c) const
{
    const bool rep_ok = std::all_of(c.rep.begin(), c.rep.end(), [&](Generator s) { return C_.has_vertex(s); });
    return rep_ok && (c.gens.empty() || faces_.count(c.gens) != 0);
}

std::vector<Word> SpecialSubcomplex::vertices_up_to(int max_length) const
{
    return grow_ball(*P_, max_length, [&](Generator s) { return C_.has_vertex(s); });
}

bool is_locally_3_convex(const CubicalBall& ball, const CubicalSubcomplex& Y, int interior_radius)
{
    const RacgPresentation& P = ball.presentation();
    if (interior_radius + P.nerve().dimension() + 1 > ball.radius()) {
        throw PreconditionError("interior radius " + std::to_string(interior_radius) +
                                " reaches truncated links in a ball of radius " + std::to_string(ball.radius()));
    }
    for (const Word& v : Y.vertices_up_to(interior_radius)) {
        const SimplicialComplex lk = vertex_link_in_ball(ball, v);
        std::vector<Face> in_y;
        for (int k = 0; k <= lk.dimension(); ++k) {
            for (const Face& local : lk.faces(k)) {
                const Face T = P.nerve().face_from_names(lk.names_of(local));
                if (Y.contains(make_cube(P, v, T))) {
                    in_y.push_back(local);
                }
            }
        }
        if (!is_3_convex(lk, VertexSubset::explicit_faces(lk, std::move(in_y)))) {
            return false;
        }
    }
    return true;
}

bool star_condition_on_expression(const Word& expression, const VertexSubset& C, const VertexSubset& D_plus)
{
    for (Generator s : expression) {
        if (!C.has_vertex(s)) {
            return D_plus.has_vertex(s);
        }
    }
    return true;
}

bool satisfies_star_condition(const RacgPresentation& P, const Word& w, const VertexSubset& C,
                              const VertexSubset& D_plus)
{
    return star_condition_on_expression(normal_form(P, w), C, D_plus);
}

Word random_commutation_rewrite(const RacgPresentation& P, const Word& w, std::mt19937_64& rng, std::size_t swaps)
{
    Word out = w;
    if (out.size() < 2) {
        return out;
    }
    std::uniform_int_distribution<std::size_t> pick(0, out.size() - 2);
    for (std::size_t i = 0; i < swaps; ++i) {
        const std::size_t j = pick(rng);
        if (P.commute(out[j], out[j + 1])) {
            std::swap(out[j], out[j + 1]);
        }
    }
    return out;
}

std::vector<WallClass> wall_classes(const CubicalBall& ball)
{
    const RacgPresentation& P = ball.presentation();
    std::map<Cube, std::size_t> edge_id;
    std::vector<Cube> edges;
    for (const Cube& c : ball.cubes()) {
        if (c.gens.size() == 1) {
            edge_id.emplace(c, edges.size());
            edges.push_back(c);
        }
    }
    std::vector<std::size_t> parent(edges.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (const Cube& sq : ball.cubes()) {
        if (sq.gens.size() != 2) {
            continue;
        }
        for (std::size_t i = 0; i < 2; ++i) {
            const Generator dir = sq.gens[i];
            const Generator across = sq.gens[1 - i];
            Word shifted = sq.rep;
            shifted.push_back(across);
            const std::size_t a = edge_id.at(make_cube(P, sq.rep, {dir}));
            const std::size_t b = edge_id.at(make_cube(P, shifted, {dir}));
            parent[find(a)] = find(b);
        }
    }
    std::map<std::size_t, std::vector<Cube>> groups;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        groups[find(i)].push_back(edges[i]);
    }
    std::vector<WallClass> out;
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        const Generator label = members.front().gens[0];
        for (const Cube& e : members) {
            if (e.gens[0] != label) {
                throw ConstructionError("wall class mixes generator labels");
            }
        }
        out.push_back(WallClass{label, std::move(members)});
    }
    std::sort(out.begin(), out.end(), [](const WallClass& a, const WallClass& b) { return a.edges.front() < b.edges.front(); });
    return out;
}

CubeSet carrier(const CubicalBall& ball, const WallClass& wall)
{
    const RacgPresentation& P = ball.presentation();
    const std::set<Cube> members(wall.edges.begin(), wall.edges.end());
    std::vector<Cube> hit;
    for (const Cube& c : ball.cubes()) {
        bool touches = false;
        for (std::size_t i = 0; i < c.gens.size() && !touches; ++i) {
            Face others = c.gens;
            others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << others.size()) && !touches; ++mask) {
                Word corner = c.rep;
                for (std::size_t j = 0; j < others.size(); ++j) {
                    if ((mask >> j) & 1) {
                        corner.push_back(others[j]);
                    }
                }
                touches = members.count(make_cube(P, corner, {c.gens[i]})) != 0;
            }
        }
        if (touches) {
            hit.push_back(c);
        }
    }
    return CubeSet::closure(P, hit);
}

} // namespace nerve
