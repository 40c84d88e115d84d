#include "nerve/certifier.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <nlohmann/json.hpp>

#include "nerve/convexity.hpp"
#include "nerve/error.hpp"
#include "nerve/homology.hpp"

namespace nerve {

namespace {

bool by_size_then_lex(const Face& a, const Face& b)
{
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

std::vector<Face> closure_of(const std::vector<Face>& faces)
{
    std::set<Face> out;
    std::vector<Face> stack(faces.begin(), faces.end());
    while (!stack.empty()) {
        Face f = std::move(stack.back());
        stack.pop_back();
        if (f.empty() || !out.insert(f).second) {
            continue;
        }
        for (std::size_t skip = 0; f.size() > 1 && skip < f.size(); ++skip) {
            Face sub = f;
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(skip));
            if (!out.count(sub)) {
                stack.push_back(std::move(sub));
            }
        }
    }
    std::vector<Face> sorted(out.begin(), out.end());
    std::sort(sorted.begin(), sorted.end(), by_size_then_lex);
    return sorted;
}

Tier worse(Tier a, Tier b)
{
    return (a == Tier::ModuloPL || b == Tier::ModuloPL) ? Tier::ModuloPL : Tier::Exact;
}

SphereVerdict reject(std::string reason)
{
    return SphereVerdict{false, Tier::Exact, std::move(reason)};
}

std::vector<std::size_t> degrees(const SimplicialComplex& C)
{
    std::vector<std::size_t> out(C.num_vertices());
    for (VertexId v = 0; v < C.num_vertices(); ++v) {
        out[v] = C.neighbors(v).size();
    }
    return out;
}

bool connected(const SimplicialComplex& C)
{
    return count_components_without(C, {}) == 1;
}

/// Pure of dimension d with every (d-1)-face in one or two d-faces.
/// Returns the closure of the (d-1)-faces lying in exactly one d-face.
std::optional<std::vector<Face>> manifold_boundary(const SimplicialComplex& C, int d)
{
    if (C.dimension() != d) {
        return std::nullopt;
    }
    for (const Face& f : C.maximal_faces()) {
        if (static_cast<int>(f.size()) != d + 1) {
            return std::nullopt;
        }
    }
    std::vector<std::size_t> count(C.faces(d - 1).size(), 0);
    for (const Face& f : C.faces(d)) {
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
            Face r = f;
            r.erase(r.begin() + static_cast<std::ptrdiff_t>(skip));
            ++count[*C.face_index(r)];
        }
    }
    std::vector<Face> boundary;
    for (std::size_t i = 0; i < count.size(); ++i) {
        if (count[i] > 2) {
            return std::nullopt;
        }
        if (count[i] == 1) {
            boundary.push_back(C.faces(d - 1)[i]);
        }
    }
    return closure_of(boundary);
}

SphereVerdict recognize_ball(const SimplicialComplex& C, int n);

/// Vertex links: spheres at interior vertices, balls at boundary vertices.
SphereVerdict check_vertex_links(const SimplicialComplex& C, int n, const std::vector<Face>& boundary)
{
    std::vector<char> on_boundary(C.num_vertices(), 0);
    for (const Face& f : boundary) {
        for (VertexId v : f) {
            on_boundary[v] = 1;
        }
    }
    Tier tier = Tier::Exact;
    for (VertexId v = 0; v < C.num_vertices(); ++v) {
        const SimplicialComplex lk = link(C, {v});
        const SphereVerdict sub = on_boundary[v] ? recognize_ball(lk, n - 1) : recognize_sphere(lk, n - 1);
        if (!sub.ok) {
            return reject("link of " + C.name(v) + ": " + sub.reason);
        }
        tier = worse(tier, sub.tier);
    }
    return SphereVerdict{true, tier, {}};
}

std::vector<Face> all_faces(const SimplicialComplex& C)
{
    std::vector<Face> out;
    for (int k = 0; k <= C.dimension(); ++k) {
        out.insert(out.end(), C.faces(k).begin(), C.faces(k).end());
    }
    return out;
}

SphereVerdict recognize_ball(const SimplicialComplex& C, int n)
{
    if (n == 0) {
        return C.num_vertices() == 1 ? SphereVerdict{true, Tier::Exact, {}} : reject("0-ball must be one vertex");
    }
    if (n == 1) {
        const auto deg = degrees(C);
        const auto ends = std::count(deg.begin(), deg.end(), std::size_t{1});
        const bool path = C.dimension() == 1 && connected(C) && ends == 2 &&
                          std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d == 1 || d == 2; }) &&
                          C.euler_characteristic() == 1;
        return path ? SphereVerdict{true, Tier::Exact, {}} : reject("not a path");
    }
    if (!connected(C)) {
        return reject("disconnected");
    }
    const auto boundary = manifold_boundary(C, n);
    if (!boundary) {
        return reject("not a pseudomanifold with boundary in dimension " + std::to_string(n));
    }
    const SimplicialComplex bd = subcomplex_from_faces(C, *boundary);
    const SphereVerdict bs = recognize_sphere(bd, n - 1);
    if (!bs.ok) {
        return reject("boundary: " + bs.reason);
    }
    if (!reduced_homology(C).is_acyclic()) {
        return reject("not acyclic");
    }
    const SphereVerdict links = check_vertex_links(C, n, *boundary);
    if (!links.ok) {
        return links;
    }
    // A surface with one boundary circle and trivial homology is a disk. In
    // higher dimensions a collapsible combinatorial manifold is a ball.
    Tier tier = worse(bs.tier, links.tier);
    if (n >= 3 && !collapses_to_point(all_faces(C))) {
        tier = Tier::ModuloPL;
    }
    return SphereVerdict{true, tier, {}};
}

std::vector<std::string> names(const SimplicialComplex& K, const Face& f)
{
    return K.names_of(f);
}

Witness witness(std::string kind, std::vector<std::vector<std::string>> items, std::string detail = {})
{
    return Witness{std::move(kind), std::move(items), std::move(detail)};
}

CheckResult check(std::string name, bool passed, std::optional<Witness> w = std::nullopt)
{
    CheckResult r;
    r.name = std::move(name);
    r.passed = passed;
    if (!passed) {
        r.witness = std::move(w);
    }
    return r;
}

Face translate(const SimplicialComplex& from, const SimplicialComplex& to, const Face& f)
{
    return to.face_from_names(from.names_of(f));
}

struct HoleData {
    ComplementComponent component;
    SimplicialComplex boundary;  // standalone, ambient names
    VertexSubset in_nerve;       // boundary inside L
};

std::vector<HoleData> holes_of(const AmbientPair& pair, const SimplicialComplex& L)
{
    std::vector<HoleData> out;
    for (auto& c : complement_components(pair)) {
        SimplicialComplex bd = subcomplex_from_faces(pair.ambient, c.boundary);
        std::vector<Face> in_l;
        for (const Face& f : c.boundary) {
            in_l.push_back(translate(pair.ambient, L, f));
        }
        VertexSubset sub = VertexSubset::explicit_faces(L, std::move(in_l));
        out.push_back(HoleData{std::move(c), std::move(bd), std::move(sub)});
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? sep : "") + parts[i];
    }
    return out;
}

/// Runs the sphere-with-holes checks, appending to `report`. Returns the
/// hole data when the complement could be computed.
std::vector<HoleData> sphere_with_holes_checks(const AmbientPair& pair, const SimplicialComplex& L,
                                               CertificationReport& report)
{
    const int n = pair.n();
    report.n = n;

    const SphereVerdict amb = recognize_sphere(pair.ambient, n + 1);
    CheckResult ambient_check =
        check("ambient-sphere", amb.ok, witness("not-a-sphere", {}, amb.reason));
    if (amb.ok) {
        ambient_check.tier = amb.tier;
    }
    report.checks.push_back(std::move(ambient_check));

    const auto lfaces = faces_of(pair.ambient, pair.sub);
    const bool proper = lfaces.size() < pair.ambient.num_faces();
    report.checks.push_back(check("proper", proper, witness("no-holes", {}, "L equals the ambient complex")));

    const auto clique = find_flag_violation(L);
    report.checks.push_back(
        check("flag", !clique, clique ? std::optional(witness("empty-clique", {names(L, *clique)})) : std::nullopt));
    report.flag_no_square = is_flag_no_square(L);

    if (!proper) {
        return {};
    }
    auto holes = holes_of(pair, L);
    for (std::size_t i = 0; i < holes.size(); ++i) {
        const HoleData& h = holes[i];
        ComponentSummary summary;
        summary.index = i;
        summary.simplices = h.component.simplices.size();
        for (VertexId v : h.component.boundary_vertices()) {
            summary.boundary_vertices.push_back(pair.ambient.name(v));
        }
        summary.boundary_f_vector = h.boundary.f_vector();

        const SphereVerdict sphere = recognize_sphere(h.boundary, n);
        CheckResult sc = check("hole-boundary-sphere", sphere.ok,
                               witness("not-a-sphere", {summary.boundary_vertices}, sphere.reason));
        sc.component = i;
        if (sphere.ok) {
            sc.tier = sphere.tier;
        }
        report.checks.push_back(std::move(sc));

        // The hole closure must be a ball whose boundary is exactly bd.
        const auto closure_faces = closure_of(h.component.simplices);
        const SimplicialComplex closure = subcomplex_from_faces(pair.ambient, closure_faces);
        SphereVerdict ball = recognize_ball(closure, n + 1);
        std::string ball_reason = ball.reason;
        if (ball.ok) {
            auto frontier = manifold_boundary(closure, n + 1);
            std::vector<Face> expected;
            for (const Face& f : h.boundary.maximal_faces()) {
                expected.push_back(translate(h.boundary, closure, f));
            }
            if (!frontier || *frontier != closure_of(expected)) {
                ball.ok = false;
                ball_reason = "manifold boundary of the closure differs from the hole boundary";
            }
            if (closure.euler_characteristic() != 1) {
                ball.ok = false;
                ball_reason = "Euler characteristic " + std::to_string(closure.euler_characteristic());
            }
        }
        summary.collapsible = collapses_to_point(all_faces(closure));
        if (ball.ok && n + 1 <= 2) {
            ball.tier = Tier::Exact;
        }
        if (ball.ok && !summary.collapsible) {
            ball.tier = Tier::ModuloPL;
        }
        CheckResult bc = check("hole-closure-ball", ball.ok, witness("not-a-ball", {summary.boundary_vertices}, ball_reason));
        bc.component = i;
        if (ball.ok) {
            bc.tier = ball.tier;
        }
        report.checks.push_back(std::move(bc));

        const auto chord = find_fullness_violation(L, h.in_nerve);
        CheckResult fc = check("hole-boundary-full", !chord,
                               chord ? std::optional(witness("chord", {names(L, *chord)})) : std::nullopt);
        fc.component = i;
        report.checks.push_back(std::move(fc));

        summary.tier = (sphere.ok && ball.ok) ? worse(sphere.tier, ball.tier) : Tier::ModuloPL;
        report.components.push_back(std::move(summary));
    }
    return holes;
}

} // namespace

std::vector<VertexId> ComplementComponent::boundary_vertices() const
{
    std::vector<VertexId> out;
    for (const Face& f : boundary) {
        if (f.size() == 1) {
            out.push_back(f[0]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ComplementComponent> complement_components(const AmbientPair& pair)
{
    const SimplicialComplex& A = pair.ambient;
    const auto lfaces = faces_of(A, pair.sub);
    const std::set<Face> in_l(lfaces.begin(), lfaces.end());

    // Global ids: faces of A in dimension order.
    std::vector<std::size_t> offset(static_cast<std::size_t>(A.dimension() + 2), 0);
    for (int k = 0; k <= A.dimension(); ++k) {
        offset[static_cast<std::size_t>(k + 1)] = offset[static_cast<std::size_t>(k)] + A.faces(k).size();
    }
    const std::size_t total = offset.back();
    std::vector<char> outside(total, 0);
    for (int k = 0; k <= A.dimension(); ++k) {
        const auto level = A.faces(k);
        for (std::size_t i = 0; i < level.size(); ++i) {
            outside[offset[static_cast<std::size_t>(k)] + i] = !in_l.count(level[i]);
        }
    }
    if (std::find(outside.begin(), outside.end(), 1) == outside.end()) {
        throw PreconditionError("complement components: L equals the ambient complex (no holes)");
    }
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    auto id_of = [&](const Face& f) {
        return offset[f.size() - 1] + *A.face_index(f);
    };
    for (int k = 1; k <= A.dimension(); ++k) {
        for (const Face& f : A.faces(k)) {
            const std::size_t fid = id_of(f);
            if (!outside[fid]) {
                continue;
            }
            for (std::size_t skip = 0; skip < f.size(); ++skip) {
                Face r = f;
                r.erase(r.begin() + static_cast<std::ptrdiff_t>(skip));
                const std::size_t rid = id_of(r);
                if (outside[rid]) {
                    parent[find(fid)] = find(rid);
                }
            }
        }
    }
    std::map<std::size_t, std::size_t> slot;  // root -> component index
    std::vector<ComplementComponent> out;
    std::vector<std::vector<Face>> frontier;
    for (int k = 0; k <= A.dimension(); ++k) {
        for (const Face& f : A.faces(k)) {
            const std::size_t fid = id_of(f);
            if (!outside[fid]) {
                continue;
            }
            auto [it, fresh] = slot.emplace(find(fid), out.size());
            if (fresh) {
                out.emplace_back();
                frontier.emplace_back();
            }
            out[it->second].simplices.push_back(f);
            for (std::size_t skip = 0; f.size() > 1 && skip < f.size(); ++skip) {
                Face r = f;
                r.erase(r.begin() + static_cast<std::ptrdiff_t>(skip));
                if (in_l.count(r)) {
                    frontier[it->second].push_back(std::move(r));
                }
            }
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].boundary = closure_of(frontier[i]);
    }
    return out;
}

std::string to_string(Tier tier)
{
    return tier == Tier::Exact ? "exact" : "modulo-PL";
}

SphereVerdict recognize_sphere(const SimplicialComplex& C, int n)
{
    if (n < 0) {
        return C.num_vertices() == 0 ? SphereVerdict{true, Tier::Exact, {}} : reject("expected the empty complex");
    }
    if (C.dimension() != n) {
        return reject("dimension " + std::to_string(C.dimension()) + ", expected " + std::to_string(n));
    }
    if (n == 0) {
        return C.num_vertices() == 2 ? SphereVerdict{true, Tier::Exact, {}} : reject("0-sphere must be two points");
    }
    if (!connected(C)) {
        return reject("disconnected");
    }
    if (n == 1) {
        const auto deg = degrees(C);
        if (!std::all_of(deg.begin(), deg.end(), [](std::size_t d) { return d == 2; })) {
            return reject("not 2-regular");
        }
        return SphereVerdict{true, Tier::Exact, {}};
    }
    if (!is_closed_pseudomanifold(C, n)) {
        return reject("not a closed pseudomanifold of dimension " + std::to_string(n));
    }
    if (n == 2) {
        for (VertexId v = 0; v < C.num_vertices(); ++v) {
            if (!recognize_sphere(link(C, {v}), 1).ok) {
                return reject("link of " + C.name(v) + " is not a cycle");
            }
        }
        if (C.euler_characteristic() != 2) {
            return reject("Euler characteristic " + std::to_string(C.euler_characteristic()));
        }
        return SphereVerdict{true, Tier::Exact, {}};
    }
    if (!reduced_homology(C).is_sphere(n)) {
        return reject("homology differs from the " + std::to_string(n) + "-sphere");
    }
    const SphereVerdict links = check_vertex_links(C, n, {});
    if (!links.ok) {
        return links;
    }
    // Removing one facet from a combinatorial manifold whose remainder
    // collapses leaves a ball, so the whole is a sphere.
    Tier tier = links.tier;
    if (tier == Tier::Exact) {
        auto faces = all_faces(C);
        const Face facet = C.faces(n).front();
        faces.erase(std::find(faces.begin(), faces.end(), facet));
        if (!collapses_to_point(faces)) {
            tier = Tier::ModuloPL;
        }
    }
    return SphereVerdict{true, tier, {}};
}

bool collapses_to_point(const std::vector<Face>& input)
{
    std::vector<Face> faces(input);
    std::sort(faces.begin(), faces.end(), by_size_then_lex);
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    if (faces.empty()) {
        return false;
    }
    auto index_of = [&](const Face& f) -> std::optional<std::size_t> {
        auto it = std::lower_bound(faces.begin(), faces.end(), f, by_size_then_lex);
        if (it == faces.end() || *it != f) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - faces.begin());
    };
    const std::size_t m = faces.size();
    std::vector<std::vector<std::size_t>> sub(m), sup(m);
    for (std::size_t i = 0; i < m; ++i) {
        const Face& f = faces[i];
        for (std::size_t skip = 0; f.size() > 1 && skip < f.size(); ++skip) {
            Face r = f;
            r.erase(r.begin() + static_cast<std::ptrdiff_t>(skip));
            auto j = index_of(r);
            if (!j) {
                throw PreconditionError("collapse: face list is not downward closed");
            }
            sub[i].push_back(*j);
            sup[*j].push_back(i);
        }
    }
    std::vector<char> alive(m, 1);
    std::vector<std::size_t> live_sup(m);
    for (std::size_t i = 0; i < m; ++i) {
        live_sup[i] = sup[i].size();
    }
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < m; ++i) {
        if (live_sup[i] == 1) {
            queue.push_back(i);
        }
    }
    std::size_t remaining = m;
    auto drop = [&](std::size_t x) {
        alive[x] = 0;
        --remaining;
        for (std::size_t s : sub[x]) {
            if (--live_sup[s] == 1) {
                queue.push_back(s);
            } else if (live_sup[s] == 0) {
                for (std::size_t t : sub[s]) {
                    if (live_sup[t] == 1) {
                        queue.push_back(t);
                    }
                }
            }
        }
    };
    while (!queue.empty() && remaining > 1) {
        const std::size_t tau = queue.front();
        queue.pop_front();
        if (!alive[tau] || live_sup[tau] != 1) {
            continue;
        }
        std::size_t sigma = m;
        for (std::size_t s : sup[tau]) {
            if (alive[s]) {
                sigma = s;
                break;
            }
        }
        if (live_sup[sigma] != 0) {
            continue;
        }
        drop(sigma);
        drop(tau);
    }
    return remaining == 1;
}

bool CertificationReport::passed() const
{
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* CertificationReport::find(const std::string& name, std::optional<std::size_t> component) const
{
    for (const CheckResult& c : checks) {
        if (c.name == name && (!component || c.component == component)) {
            return &c;
        }
    }
    return nullptr;
}

namespace {

std::string format_witness(const Witness& w)
{
    std::vector<std::string> groups;
    for (const auto& g : w.items) {
        groups.push_back(join(g, " "));
    }
    std::string out = w.kind;
    if (!groups.empty()) {
        out += ": " + join(groups, " | ");
    }
    if (!w.detail.empty()) {
        out += " (" + w.detail + ")";
    }
    return out;
}

nlohmann::ordered_json report_json(const CertificationReport& r)
{
    nlohmann::ordered_json j;
    j["subject"] = r.subject;
    j["verdict"] = r.passed() ? "PASS" : "FAIL";
    j["n"] = r.n;
    auto checks = nlohmann::ordered_json::array();
    for (const CheckResult& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["passed"] = c.passed;
        if (c.component) {
            cj["component"] = *c.component;
        }
        if (c.other_component) {
            cj["other_component"] = *c.other_component;
        }
        if (c.tier) {
            cj["tier"] = to_string(*c.tier);
        }
        if (c.witness) {
            cj["witness"] = {{"kind", c.witness->kind}, {"items", c.witness->items}, {"detail", c.witness->detail}};
        }
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    auto comps = nlohmann::ordered_json::array();
    for (const ComponentSummary& c : r.components) {
        comps.push_back({{"index", c.index},
                         {"simplices", c.simplices},
                         {"boundary_vertices", c.boundary_vertices},
                         {"boundary_f_vector", c.boundary_f_vector},
                         {"tier", to_string(c.tier)},
                         {"collapsible", c.collapsible}});
    }
    j["components"] = std::move(comps);
    j["vcd"] = r.vcd ? nlohmann::ordered_json(*r.vcd) : nlohmann::ordered_json(nullptr);
    j["boundary_dimension"] =
        r.boundary_dimension ? nlohmann::ordered_json(*r.boundary_dimension) : nlohmann::ordered_json(nullptr);
    j["flag_no_square"] =
        r.flag_no_square ? nlohmann::ordered_json(*r.flag_no_square) : nlohmann::ordered_json(nullptr);
    j["notes"] = r.notes;
    j["conclusion"] = r.conclusion;
    auto routes = nlohmann::ordered_json::array();
    for (const auto& o : r.other_routes) {
        routes.push_back(report_json(o));
    }
    j["other_routes"] = std::move(routes);
    return j;
}

void append_text(const CertificationReport& r, std::ostringstream& os, const std::string& indent)
{
    os << indent << "subject: " << r.subject << '\n';
    os << indent << "verdict: " << (r.passed() ? "PASS" : "FAIL") << '\n';
    os << indent << "n: " << r.n << '\n';
    for (const CheckResult& c : r.checks) {
        os << indent << "check " << c.name;
        if (c.component) {
            os << " [" << *c.component;
            if (c.other_component) {
                os << "," << *c.other_component;
            }
            os << "]";
        }
        os << ": " << (c.passed ? "PASS" : "FAIL");
        if (c.tier) {
            os << " (" << to_string(*c.tier) << ")";
        }
        if (c.witness) {
            os << " " << format_witness(*c.witness);
        }
        os << '\n';
    }
    for (const ComponentSummary& c : r.components) {
        std::vector<std::string> fv;
        for (auto x : c.boundary_f_vector) {
            fv.push_back(std::to_string(x));
        }
        os << indent << "component " << c.index << ": simplices " << c.simplices << ", boundary f-vector ("
           << join(fv, ",") << "), tier " << to_string(c.tier) << (c.collapsible ? ", collapsible" : "") << '\n';
    }
    if (r.vcd) {
        os << indent << "vcd: " << *r.vcd << '\n';
    }
    if (r.boundary_dimension) {
        os << indent << "boundary-dimension: " << *r.boundary_dimension << '\n';
    }
    if (r.flag_no_square) {
        os << indent << "flag-no-square: " << (*r.flag_no_square ? "yes" : "no") << '\n';
    }
    for (const auto& note : r.notes) {
        os << indent << "note: " << note << '\n';
    }
    if (!r.conclusion.empty()) {
        os << indent << "conclusion: " << r.conclusion << '\n';
    }
    for (const auto& o : r.other_routes) {
        os << indent << "route:\n";
        append_text(o, os, indent + "  ");
    }
}

} // namespace

std::string CertificationReport::to_text() const
{
    std::ostringstream os;
    append_text(*this, os, "");
    return os.str();
}

std::string CertificationReport::to_json(int indent) const
{
    return report_json(*this).dump(indent);
}

CertificationReport check_sphere_with_holes(const AmbientPair& pair)
{
    CertificationReport report;
    report.subject = "sphere-with-holes";
    const SimplicialComplex L = pair.nerve();
    sphere_with_holes_checks(pair, L, report);
    return report;
}

CertificationReport certify_sierpinski(const AmbientPair& pair, const CertifyOptions& options)
{
    CertificationReport report;
    report.subject = "sierpinski";
    const SimplicialComplex L = pair.nerve();
    const auto holes = sphere_with_holes_checks(pair, L, report);
    const int n = report.n;

    for (std::size_t i = 0; i < holes.size(); ++i) {
        for (std::size_t j = i + 1; j < holes.size(); ++j) {
            std::vector<VertexId> common;
            const auto& a = holes[i].in_nerve.vertices;
            const auto& b = holes[j].in_nerve.vertices;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            std::optional<Witness> w;
            if (!common.empty()) {
                const auto fa = faces_of(L, holes[i].in_nerve);
                const auto fb = faces_of(L, holes[j].in_nerve);
                const bool simplex_in_both = std::find(fa.begin(), fa.end(), common) != fa.end() &&
                                             std::find(fb.begin(), fb.end(), common) != fb.end();
                if (!simplex_in_both) {
                    for (std::size_t x = 0; x < common.size() && !w; ++x) {
                        for (std::size_t y = x + 1; y < common.size() && !w; ++y) {
                            if (!L.adjacent(common[x], common[y])) {
                                w = witness("nonadjacent-pair", {names(L, {common[x], common[y]})});
                            }
                        }
                    }
                    if (!w) {
                        w = witness("not-a-simplex", {names(L, common)});
                    }
                }
            }
            CheckResult c = check("boundaries-meet-in-simplex", !w.has_value(), w);
            c.component = i;
            c.other_component = j;
            report.checks.push_back(std::move(c));
        }
    }
    for (std::size_t i = 0; i < holes.size(); ++i) {
        const auto v = find_3_convexity_violation(L, holes[i].in_nerve);
        std::optional<Witness> w;
        if (v && v->kind == ConvexityViolation::Kind::NotFull) {
            w = witness("chord", {names(L, v->face)});
        } else if (v) {
            w = witness("path-leaves-boundary", {{L.name(v->path[0]), L.name(v->path[1]), L.name(v->path[2])}});
        }
        CheckResult c = check("hole-boundary-3-convex", !v, w);
        c.component = i;
        report.checks.push_back(std::move(c));
    }

    if (options.cross_check_dimension && report.passed()) {
        const int d = vcd(L, options.threads);
        report.vcd = d;
        report.boundary_dimension = d - 1;
        report.checks.push_back(check("boundary-dimension", d - 1 == n,
                                      witness("dimension-mismatch", {},
                                              "vcd " + std::to_string(d) + " gives boundary dimension " +
                                                  std::to_string(d - 1) + ", expected " + std::to_string(n))));
    } else if (!options.cross_check_dimension) {
        report.notes.push_back("boundary dimension cross-check skipped");
    }
    if (report.passed()) {
        Tier tier = Tier::Exact;
        for (const auto& c : report.components) {
            tier = worse(tier, c.tier);
        }
        report.conclusion = "visual boundary is the " + std::to_string(n) + "-dimensional Sierpinski compactum (" +
                            to_string(tier) + ")";
    }
    return report;
}

SimplicialComplex cone_off(const AmbientPair& pair, const std::vector<std::string>& apex_names)
{
    const SimplicialComplex L = pair.nerve();
    const auto comps = complement_components(pair);
    if (!apex_names.empty() && apex_names.size() != comps.size()) {
        throw PreconditionError("cone_off: " + std::to_string(apex_names.size()) + " apex names for " +
                                std::to_string(comps.size()) + " holes");
    }
    std::vector<std::string> vertex_names = L.vertex_names();
    std::set<std::string> taken(vertex_names.begin(), vertex_names.end());
    std::vector<Face> simplices = L.maximal_faces();
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const SimplicialComplex bd = subcomplex_from_faces(pair.ambient, comps[i].boundary);
        const SphereVerdict sphere = recognize_sphere(bd, pair.n());
        if (!sphere.ok) {
            throw PreconditionError("cone_off: boundary of hole " + std::to_string(i) + " is not an " +
                                    std::to_string(pair.n()) + "-sphere: " + sphere.reason);
        }
        std::string apex;
        if (!apex_names.empty()) {
            apex = apex_names[i];
            if (taken.count(apex)) {
                throw PreconditionError("cone_off: apex name '" + apex + "' is already a vertex");
            }
        } else {
            apex = "apex" + std::to_string(i);
            while (taken.count(apex)) {
                apex += "'";
            }
        }
        taken.insert(apex);
        const auto apex_id = static_cast<VertexId>(vertex_names.size());
        vertex_names.push_back(apex);
        for (const Face& f : bd.maximal_faces()) {
            Face g = translate(bd, L, f);
            g.push_back(apex_id);
            simplices.push_back(std::move(g));
        }
    }
    return SimplicialComplex::from_indexed(std::move(vertex_names), simplices);
}

namespace {

using PlanarGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS,
                                          boost::property<boost::vertex_index_t, int>,
                                          boost::property<boost::edge_index_t, int>>;

CheckResult planarity_by_search(const SimplicialComplex& L)
{
    PlanarGraph g(L.num_vertices());
    int e = 0;
    for (const Face& edge : L.faces(1)) {
        boost::add_edge(edge[0], edge[1], e++, g);
    }
    std::vector<boost::graph_traits<PlanarGraph>::edge_descriptor> kuratowski;
    const bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = g,
        boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(kuratowski));
    Witness w{"kuratowski-subgraph", {}, {}};
    for (const auto& ed : kuratowski) {
        const auto u = static_cast<VertexId>(boost::source(ed, g));
        const auto v = static_cast<VertexId>(boost::target(ed, g));
        w.items.push_back({L.name(std::min(u, v)), L.name(std::max(u, v))});
    }
    std::sort(w.items.begin(), w.items.end());
    return check("planar", planar, w);
}

CheckResult planarity_by_rotation(const SimplicialComplex& L, const RotationSystem& rotation)
{
    const auto n = L.num_vertices();
    std::vector<std::vector<VertexId>> order(n);
    for (const auto& [name, ring] : rotation) {
        const auto v = L.find_vertex(name);
        if (!v) {
            return check("planar", false, witness("bad-rotation", {{name}}, "unknown vertex"));
        }
        for (const auto& nb : ring) {
            const auto w = L.find_vertex(nb);
            if (!w) {
                return check("planar", false, witness("bad-rotation", {{name, nb}}, "unknown vertex"));
            }
            order[*v].push_back(*w);
        }
    }
    for (VertexId v = 0; v < n; ++v) {
        std::vector<VertexId> sorted = order[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != L.neighbors(v)) {
            return check("planar", false,
                         witness("bad-rotation", {{L.name(v)}}, "rotation is not a permutation of the neighbours"));
        }
    }
    // Face tracing: the dart u->v continues as v->w, where w follows u in
    // the rotation at v.
    std::set<std::pair<VertexId, VertexId>> seen;
    std::size_t faces = 0;
    for (VertexId u = 0; u < n; ++u) {
        for (VertexId v : order[u]) {
            if (seen.count({u, v})) {
                continue;
            }
            ++faces;
            VertexId a = u, b = v;
            while (seen.insert({a, b}).second) {
                const auto& ring = order[b];
                const auto pos = static_cast<std::size_t>(std::find(ring.begin(), ring.end(), a) - ring.begin());
                const VertexId c = ring[(pos + 1) % ring.size()];
                a = b;
                b = c;
            }
        }
    }
    std::size_t isolated = 0;
    for (VertexId v = 0; v < n; ++v) {
        isolated += L.neighbors(v).empty() ? 1 : 0;
    }
    const long long V = static_cast<long long>(n);
    const long long E = static_cast<long long>(L.faces(1).size());
    const long long F = static_cast<long long>(faces + isolated);
    const long long C = static_cast<long long>(count_components_without(L, {}));
    const bool ok = V - E + F == 1 + C;
    return check("planar", ok,
                 witness("euler-count", {},
                         "V - E + F = " + std::to_string(V - E + F) + ", expected " + std::to_string(1 + C)));
}

} // namespace

CertificationReport certify_planar_sierpinski(const SimplicialComplex& L, const std::optional<RotationSystem>& rotation,
                                              const std::optional<AmbientPair>& ambient, const CertifyOptions& options)
{
    if (L.dimension() > 2) {
        throw PreconditionError("planar criterion needs dimension at most 2, got " + std::to_string(L.dimension()));
    }
    CertificationReport report;
    report.subject = "planar-sierpinski";
    report.n = 1;
    if (rotation) {
        report.checks.push_back(planarity_by_rotation(L, *rotation));
        report.notes.push_back("planarity: supplied rotation system verified on the 1-skeleton");
    } else {
        report.checks.push_back(planarity_by_search(L));
        report.notes.push_back("planarity: decided for the 1-skeleton only");
    }
    const auto clique = find_flag_violation(L);
    report.checks.push_back(
        check("flag", !clique, clique ? std::optional(witness("empty-clique", {names(L, *clique)})) : std::nullopt));
    const auto sep = find_separation(L);
    std::optional<Witness> sw;
    if (sep) {
        std::vector<std::vector<std::string>> items;
        if (!sep->vertices.empty()) {
            items.push_back(names(L, sep->vertices));
        }
        if (!sep->base.empty()) {
            items.push_back(names(L, sep->base));
        }
        sw = witness(to_string(sep->kind), std::move(items));
    }
    report.checks.push_back(check("unseparable", !sep, sw));
    report.checks.push_back(check("not-a-simplex", !is_simplex(L), witness("simplex", {L.vertex_names()})));
    const bool s2 = recognize_sphere(L, 2).ok;
    report.checks.push_back(check("not-a-2-sphere", !s2, witness("2-sphere", {}, "L triangulates the 2-sphere")));
    report.flag_no_square = is_flag_no_square(L);
    if (report.passed()) {
        report.conclusion = "visual boundary is the Sierpinski curve";
    }
    if (ambient) {
        report.other_routes.push_back(certify_sierpinski(*ambient, options));
        if (report.other_routes.back().passed() != report.passed()) {
            report.notes.push_back("routes disagree");
        }
    }
    return report;
}

} // namespace nerve
