#include "nerve/zoo.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "nerve/convexity.hpp"
#include "nerve/error.hpp"

namespace nerve {

namespace {

/// Sign of p + q*sqrt(5).
int sign_sqrt5(const Rational& p, const Rational& q)
{
    const int sp = p > 0 ? 1 : (p < 0 ? -1 : 0);
    const int sq = q > 0 ? 1 : (q < 0 ? -1 : 0);
    if (sp >= 0 && sq >= 0) {
        return sp + sq > 0 ? 1 : 0;
    }
    if (sp <= 0 && sq <= 0) {
        return -1;
    }
    const Rational lhs = p * p;
    const Rational rhs = 5 * q * q;
    if (lhs == rhs) {
        return 0;
    }
    return (lhs > rhs) == (sp > 0) ? 1 : -1;
}

} // namespace

GoldenRational GoldenRational::operator*(const GoldenRational& o) const
{
    // (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
    const Rational bd = b_ * o.b_;
    return {a_ * o.a_ + bd, a_ * o.b_ + b_ * o.a_ + bd};
}

GoldenRational GoldenRational::operator/(const GoldenRational& o) const
{
    const Rational n = o.norm();
    if (n == 0) {
        throw PreconditionError("golden rational division by zero");
    }
    const GoldenRational num = *this * o.conjugate();
    return {num.a_ / n, num.b_ / n};
}

bool GoldenRational::operator<(const GoldenRational& o) const
{
    const GoldenRational d = o - *this;
    return sign_sqrt5(d.a_ + d.b_ / 2, d.b_ / 2) > 0;
}

std::string GoldenRational::to_string() const
{
    return a_.str() + (b_ < 0 ? " - " : " + ") + Rational(abs(b_)).str() + "*phi";
}

GoldenRational Vertex4D::dot(const Vertex4D& o) const
{
    GoldenRational s;
    for (std::size_t i = 0; i < 4; ++i) {
        s = s + x[i] * o.x[i];
    }
    return s;
}

std::vector<Vertex4D> unit_icosians()
{
    const Rational half(1, 2);
    std::vector<Vertex4D> out;
    for (std::size_t axis = 0; axis < 4; ++axis) {
        for (int s : {1, -1}) {
            Vertex4D v;
            v.x[axis] = GoldenRational(s);
            out.push_back(v);
        }
    }
    for (int mask = 0; mask < 16; ++mask) {
        Vertex4D v;
        for (std::size_t i = 0; i < 4; ++i) {
            v.x[i] = GoldenRational((mask >> i) & 1 ? -half : half);
        }
        out.push_back(v);
    }
    // phi/2, 1/2, 1/(2 phi) = (phi - 1)/2, 0
    const std::array<GoldenRational, 4> base{GoldenRational(0, half), GoldenRational(half),
                                             GoldenRational(-half, half), GoldenRational(0)};
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = i + 1; j < 4; ++j) {
                inversions += perm[i] > perm[j] ? 1 : 0;
            }
        }
        if (inversions % 2 != 0) {
            continue;
        }
        for (int mask = 0; mask < 8; ++mask) {
            Vertex4D v;
            for (std::size_t i = 0; i < 4; ++i) {
                const auto src = static_cast<std::size_t>(perm[i]);
                GoldenRational c = base[src];
                if (src < 3 && ((mask >> src) & 1)) {
                    c = -c;
                }
                v.x[i] = c;
            }
            out.push_back(v);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::string cell600_vertex_name(std::size_t i)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "v%03zu", i);
    return buf;
}

SimplicialComplex build_600_cell()
{
    const auto pts = unit_icosians();
    const std::size_t n = pts.size();
    const GoldenRational edge_dot(0, Rational(1, 2));
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (pts[i].dot(pts[j]) == edge_dot) {
                adj[i][j] = adj[j][i] = 1;
            }
        }
    }
    std::vector<Face> cliques;
    std::size_t five = 0;
    for (VertexId a = 0; a < n; ++a) {
        for (VertexId b = a + 1; b < n; ++b) {
            if (!adj[a][b]) {
                continue;
            }
            for (VertexId c = b + 1; c < n; ++c) {
                if (!adj[a][c] || !adj[b][c]) {
                    continue;
                }
                for (VertexId d = c + 1; d < n; ++d) {
                    if (adj[a][d] && adj[b][d] && adj[c][d]) {
                        cliques.push_back({a, b, c, d});
                        for (VertexId e = d + 1; e < n; ++e) {
                            five += (adj[a][e] && adj[b][e] && adj[c][e] && adj[d][e]) ? 1 : 0;
                        }
                    }
                }
            }
        }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(cell600_vertex_name(i));
    }
    SimplicialComplex K = SimplicialComplex::from_indexed(std::move(names), cliques);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
        edges += static_cast<std::size_t>(std::count(adj[i].begin(), adj[i].end(), 1));
    }
    const std::vector<std::size_t> expected{120, 720, 1200, 600};
    if (K.f_vector() != expected || edges != 2 * 720 || five != 0) {
        throw ConstructionError("600-cell construction produced an unexpected f-vector");
    }
    return K;
}

Disk build_580_disk(const std::optional<std::string>& deleted)
{
    const SimplicialComplex X = build_600_cell();
    const VertexId v = X.vertex(deleted.value_or(cell600_vertex_name(0)));
    std::vector<VertexId> rest;
    for (VertexId u = 0; u < X.num_vertices(); ++u) {
        if (u != v) {
            rest.push_back(u);
        }
    }
    Disk out{full_subcomplex(X, rest), {}};
    out.boundary = VertexSubset::of_subcomplex(out.complex, link(X, {v}));
    const std::vector<std::size_t> expected{119, 708, 1170, 580};
    if (out.complex.f_vector() != expected) {
        throw ConstructionError("580-disk construction produced an unexpected f-vector");
    }
    return out;
}

SimplicialComplex simplex_boundary(int d)
{
    if (d < 1) {
        throw PreconditionError("simplex boundary needs dimension at least 1");
    }
    std::vector<std::string> names;
    for (int i = 0; i <= d; ++i) {
        names.push_back("v" + std::to_string(i));
    }
    std::vector<Face> facets;
    for (int skip = 0; skip <= d; ++skip) {
        Face f;
        for (int i = 0; i <= d; ++i) {
            if (i != skip) {
                f.push_back(static_cast<VertexId>(i));
            }
        }
        facets.push_back(std::move(f));
    }
    return SimplicialComplex::from_indexed(std::move(names), facets);
}

AmbientPair punctured_sphere(const SimplicialComplex& N, const std::vector<std::vector<std::string>>& holes)
{
    const int d = N.dimension();
    if (holes.empty()) {
        throw PreconditionError("punctured sphere: at least one hole is required");
    }
    const SphereVerdict sphere = recognize_sphere(N, d);
    if (!sphere.ok) {
        throw PreconditionError("punctured sphere: input is not a " + std::to_string(d) + "-sphere: " + sphere.reason);
    }
    std::vector<Face> hole_faces;
    std::set<VertexId> used;
    for (const auto& h : holes) {
        Face f = N.face_from_names(h);
        if (static_cast<int>(f.size()) != d + 1 || !N.contains(f)) {
            throw PreconditionError("punctured sphere: " + format_face(N, f) + " is not a top simplex");
        }
        for (VertexId v : f) {
            if (!used.insert(v).second) {
                throw PreconditionError("punctured sphere: holes share vertex " + N.name(v));
            }
        }
        hole_faces.push_back(std::move(f));
    }

    std::vector<Face> kept;
    for (int k = 0; k <= d; ++k) {
        for (const Face& f : N.faces(k)) {
            if (std::find(hole_faces.begin(), hole_faces.end(), f) == hole_faces.end()) {
                kept.push_back(f);
            }
        }
    }
    const SimplicialComplex M = SimplicialComplex::from_indexed(N.vertex_names(), kept);
    const SimplicialComplex Msub = barycentric_subdivision(M);

    // Barycenters of the proper faces of each hole; their span is the
    // subdivided hole boundary.
    std::vector<std::vector<VertexId>> rims(hole_faces.size());
    std::vector<VertexId> rim_all;
    for (std::size_t i = 0; i < hole_faces.size(); ++i) {
        const Face& h = hole_faces[i];
        for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << h.size()); ++mask) {
            std::vector<std::string> sub;
            for (std::size_t j = 0; j < h.size(); ++j) {
                if ((mask >> j) & 1) {
                    sub.push_back(N.name(h[j]));
                }
            }
            const VertexId b = Msub.vertex(barycenter_name(sub));
            rims[i].push_back(b);
            rim_all.push_back(b);
        }
    }
    const SimplicialComplex L = relative_barycentric_subdivision(Msub, VertexSubset::spanned(rim_all));

    std::vector<std::string> names = L.vertex_names();
    std::vector<Face> simplices = L.maximal_faces();
    for (std::size_t i = 0; i < rims.size(); ++i) {
        std::vector<VertexId> in_l;
        for (VertexId b : rims[i]) {
            in_l.push_back(L.vertex(Msub.name(b)));
        }
        const SimplicialComplex rim = full_subcomplex(L, in_l);
        const auto apex = static_cast<VertexId>(names.size());
        const std::string apex_name = "hole" + std::to_string(i);
        if (L.find_vertex(apex_name)) {
            throw PreconditionError("punctured sphere: apex name '" + apex_name + "' is already a vertex");
        }
        names.push_back(apex_name);
        for (const Face& f : rim.maximal_faces()) {
            Face g = L.face_from_names(rim.names_of(f));
            g.push_back(apex);
            simplices.push_back(std::move(g));
        }
    }
    SimplicialComplex ambient = SimplicialComplex::from_indexed(std::move(names), simplices);
    VertexSubset sub = VertexSubset::spanned(ambient, L.vertex_names());
    return AmbientPair{std::move(ambient), std::move(sub)};
}

} // namespace nerve
