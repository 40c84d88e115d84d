#include "nerve/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "nerve/error.hpp"

namespace nerve {

namespace {

std::vector<std::string> split_ws(const std::string& s)
{
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string tok; is >> tok;) {
        out.push_back(tok);
    }
    return out;
}

struct PendingSub {
    std::size_t line;
    std::vector<std::string> vertices;
};

} // namespace

ComplexFile parse_complex(std::istream& in, const std::string& source)
{
    std::vector<std::vector<std::string>> simplices;
    std::vector<std::string> declared;
    std::map<std::string, PendingSub> subs;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> cubes;

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
        }
        const auto first = raw.find_first_not_of(" \t");
        if (first == std::string::npos || raw[first] == '#') {
            continue;
        }
        auto tokens = split_ws(raw);
        const std::string keyword = tokens.front();
        tokens.erase(tokens.begin());
        if (keyword == "vertex") {
            if (tokens.size() != 1) {
                throw ParseError(source, lineno, "'vertex' takes exactly one name");
            }
            declared.push_back(tokens[0]);
        } else if (keyword == "simplex") {
            if (tokens.empty()) {
                throw ParseError(source, lineno, "'simplex' needs at least one vertex");
            }
            if (std::set<std::string>(tokens.begin(), tokens.end()).size() != tokens.size()) {
                throw ParseError(source, lineno, "repeated vertex in simplex");
            }
            simplices.push_back(std::move(tokens));
        } else if (keyword == "sub") {
            if (tokens.empty() || tokens[0].size() < 2 || tokens[0].back() != ':') {
                throw ParseError(source, lineno, "expected 'sub <name>: <vertices>'");
            }
            std::string name = tokens[0].substr(0, tokens[0].size() - 1);
            tokens.erase(tokens.begin());
            if (subs.count(name)) {
                throw ParseError(source, lineno, "duplicate subset name '" + name + "'");
            }
            subs.emplace(std::move(name), PendingSub{lineno, std::move(tokens)});
        } else if (keyword == "cube") {
            if (tokens.empty()) {
                throw ParseError(source, lineno, "'cube' needs at least one vertex");
            }
            cubes.emplace_back(lineno, std::move(tokens));
        } else {
            throw ParseError(source, lineno, "unknown record '" + keyword + "'");
        }
    }

    ComplexFile out;
    try {
        out.complex = SimplicialComplex::from_maximal_simplices(simplices, declared);
    } catch (const MalformedInput& e) {
        throw ParseError(source, lineno, e.what());
    }
    for (auto& [name, pending] : subs) {
        std::vector<VertexId> ids;
        for (const auto& v : pending.vertices) {
            const auto id = out.complex.find_vertex(v);
            if (!id) {
                throw ParseError(source, pending.line, "subset '" + name + "' names unknown vertex '" + v + "'");
            }
            ids.push_back(*id);
        }
        out.subsets.emplace(name, VertexSubset::spanned(std::move(ids)));
    }
    for (auto& [line, vertices] : cubes) {
        for (const auto& v : vertices) {
            if (!out.complex.find_vertex(v)) {
                throw ParseError(source, line, "cube names unknown vertex '" + v + "'");
            }
        }
        out.cubes.push_back(std::move(vertices));
    }
    return out;
}

ComplexFile parse_complex_string(const std::string& text, const std::string& source)
{
    std::istringstream is(text);
    return parse_complex(is, source);
}

ComplexFile read_complex_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path, 0, "cannot open file");
    }
    return parse_complex(in, path);
}

std::string serialize(const ComplexFile& file)
{
    const SimplicialComplex& K = file.complex;
    std::ostringstream os;
    for (const auto& name : K.vertex_names()) {
        os << "vertex " << name << '\n';
    }
    auto maximal = K.maximal_faces();
    std::sort(maximal.begin(), maximal.end());
    for (const Face& f : maximal) {
        if (f.size() < 2) {
            continue;
        }
        os << "simplex";
        for (VertexId v : f) {
            os << ' ' << K.name(v);
        }
        os << '\n';
    }
    for (const auto& [name, subset] : file.subsets) {
        os << "sub " << name << ':';
        for (VertexId v : subset.vertices) {
            os << ' ' << K.name(v);
        }
        os << '\n';
    }
    for (const auto& cube : file.cubes) {
        os << "cube";
        for (const auto& v : cube) {
            os << ' ' << v;
        }
        os << '\n';
    }
    return os.str();
}

std::string serialize(const SimplicialComplex& K)
{
    return serialize(ComplexFile{K, {}, {}});
}

} // namespace nerve
