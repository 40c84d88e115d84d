#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "nerve/complex.hpp"

namespace fixtures {

using nerve::Face;
using nerve::SimplicialComplex;

inline SimplicialComplex make(const std::vector<std::vector<std::string>>& simplices,
                              const std::vector<std::string>& extra = {})
{
    return SimplicialComplex::from_maximal_simplices(simplices, extra);
}

/// Cycle on v1 .. vn.
inline SimplicialComplex cycle(int n)
{
    std::vector<std::vector<std::string>> edges;
    for (int i = 1; i <= n; ++i) {
        edges.push_back({"v" + std::to_string(i), "v" + std::to_string(i % n + 1)});
    }
    return make(edges);
}

inline SimplicialComplex octahedron()
{
    std::vector<std::vector<std::string>> tris;
    for (const char* p : {"n", "s"}) {
        for (int i = 0; i < 4; ++i) {
            tris.push_back({p, "e" + std::to_string(i), "e" + std::to_string((i + 1) % 4)});
        }
    }
    return make(tris);
}

/// Pentagonal antiprism capped by two pyramids: poles t, b; rings u0..u4
/// and l0..l4, with t antipodal to b.
inline SimplicialComplex icosahedron()
{
    std::vector<std::vector<std::string>> tris;
    auto u = [](int i) { return "u" + std::to_string(((i % 5) + 5) % 5); };
    auto l = [](int i) { return "l" + std::to_string(((i % 5) + 5) % 5); };
    for (int i = 0; i < 5; ++i) {
        tris.push_back({"t", u(i), u(i + 1)});
        tris.push_back({"b", l(i), l(i + 1)});
        tris.push_back({u(i), u(i + 1), l(i)});
        tris.push_back({u(i + 1), l(i), l(i + 1)});
    }
    return make(tris);
}

/// Six-vertex real projective plane.
inline SimplicialComplex projective_plane()
{
    return make({{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"}, {"1", "5", "6"}, {"1", "2", "6"},
                 {"2", "3", "5"}, {"3", "4", "6"}, {"2", "4", "5"}, {"3", "5", "6"}, {"2", "4", "6"}});
}

inline std::string padded(std::size_t i)
{
    return (i < 10 ? "x0" : "x") + std::to_string(i);
}

/// Undirected graph as an adjacency matrix.
using Graph = std::vector<std::vector<bool>>;

inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng)
{
    std::bernoulli_distribution coin(p);
    Graph g(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            g[i][j] = g[j][i] = coin(rng);
        }
    }
    return g;
}

/// Clique complex by brute force over all vertex subsets (n <= 16).
inline SimplicialComplex clique_complex(const Graph& g)
{
    const std::size_t n = g.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(padded(i));
    }
    std::vector<Face> cliques;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        Face f;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                f.push_back(static_cast<nerve::VertexId>(i));
            }
        }
        bool clique = true;
        for (std::size_t a = 0; a < f.size() && clique; ++a) {
            for (std::size_t b = a + 1; b < f.size() && clique; ++b) {
                clique = g[f[a]][f[b]];
            }
        }
        if (clique) {
            cliques.push_back(std::move(f));
        }
    }
    return SimplicialComplex::from_indexed(names, cliques);
}

inline SimplicialComplex random_flag_complex(std::size_t n, double p, std::mt19937_64& rng)
{
    return clique_complex(random_graph(n, p, rng));
}

/// Random complex generated by a few random simplices; usually not flag.
inline SimplicialComplex random_complex(std::size_t n, std::size_t count, std::size_t max_size, std::mt19937_64& rng)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        names.push_back(padded(i));
    }
    std::uniform_int_distribution<std::size_t> size(1, max_size);
    std::vector<Face> gens;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<nerve::VertexId> all(n);
        for (std::size_t i = 0; i < n; ++i) {
            all[i] = static_cast<nerve::VertexId>(i);
        }
        std::shuffle(all.begin(), all.end(), rng);
        Face f(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(n, size(rng))));
        std::sort(f.begin(), f.end());
        gens.push_back(std::move(f));
    }
    return SimplicialComplex::from_indexed(names, gens);
}

/// Every subset of the vertex ids, as sorted id lists.
inline std::vector<Face> all_subsets(std::size_t n)
{
    std::vector<Face> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Face f;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                f.push_back(static_cast<nerve::VertexId>(i));
            }
        }
        out.push_back(std::move(f));
    }
    return out;
}

/// Same complex with vertex names permuted.
inline SimplicialComplex relabel(const SimplicialComplex& K, std::mt19937_64& rng)
{
    std::vector<std::string> names = K.vertex_names();
    std::vector<std::string> shuffled = names;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<std::vector<std::string>> simplices;
    for (const Face& f : K.maximal_faces()) {
        std::vector<std::string> s;
        for (auto v : f) {
            s.push_back("r" + shuffled[v]);
        }
        simplices.push_back(std::move(s));
    }
    return make(simplices);
}

} // namespace fixtures
