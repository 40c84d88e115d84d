#include "nerve/cli.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nerve/certifier.hpp"
#include "nerve/convexity.hpp"
#include "nerve/coxeter.hpp"
#include "nerve/error.hpp"
#include "nerve/homology.hpp"
#include "nerve/io.hpp"
#include "nerve/zoo.hpp"

namespace nerve {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string complex_path;
    std::string ambient_path;
    std::string sub;
    std::string name;
    std::string holes;
    std::string vertex;
    int radius = 1;
    int dim = 3;
    unsigned threads = 0;
    bool json = false;
    bool timing = false;
    bool no_square = false;
    bool skip_dimension_check = false;
};

/// What a command produced: text or JSON plus the exit status.
struct Outcome {
    int code = kExitPass;
    std::string text;
    Json json;
};

std::string names_line(const std::vector<std::string>& names)
{
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += (i ? " " : "") + names[i];
    }
    return out;
}

const VertexSubset& lookup_subset(const ComplexFile& file, const std::string& name, const std::string& path)
{
    auto it = file.subsets.find(name);
    if (it == file.subsets.end()) {
        throw PreconditionError(path + ": no subset named '" + name + "'");
    }
    return it->second;
}

std::vector<std::vector<std::string>> parse_holes(const std::string& text)
{
    std::vector<std::vector<std::string>> out;
    std::stringstream groups(text);
    for (std::string group; std::getline(groups, group, ';');) {
        std::vector<std::string> hole;
        std::stringstream items(group);
        for (std::string v; std::getline(items, v, ',');) {
            v.erase(std::remove_if(v.begin(), v.end(), [](unsigned char c) { return std::isspace(c); }), v.end());
            if (v.empty()) {
                throw MalformedInput("empty vertex name in --holes");
            }
            hole.push_back(v);
        }
        if (hole.empty()) {
            throw MalformedInput("empty hole in --holes");
        }
        out.push_back(std::move(hole));
    }
    if (out.empty()) {
        throw MalformedInput("--holes lists no holes");
    }
    return out;
}

Outcome file_outcome(const ComplexFile& file)
{
    Outcome o;
    o.text = serialize(file);
    o.json["f_vector"] = file.complex.f_vector();
    o.json["file"] = o.text;
    return o;
}

Outcome report_outcome(const CertificationReport& report)
{
    Outcome o;
    o.code = report.passed() ? kExitPass : kExitFail;
    o.text = report.to_text();
    o.json = Json::parse(report.to_json());
    return o;
}

Outcome check_flag(const Options& opt)
{
    const ComplexFile file = read_complex_file(opt.complex_path);
    const SimplicialComplex& K = file.complex;
    Outcome o;
    const auto clique = find_flag_violation(K);
    const auto square = clique ? std::nullopt : find_empty_square(K);
    std::ostringstream os;
    os << "flag: " << (clique ? "FAIL empty-clique: " + names_line(K.names_of(*clique)) : std::string("PASS")) << '\n';
    o.json["flag"] = !clique;
    if (clique) {
        o.json["flag_witness"] = K.names_of(*clique);
    }
    const bool no_square = !clique && !square;
    os << "flag-no-square: ";
    if (clique) {
        os << "FAIL not flag\n";
    } else if (square) {
        const auto& s = *square;
        os << "FAIL empty-square: " << K.name(s[0]) << ' ' << K.name(s[1]) << ' ' << K.name(s[2]) << ' '
           << K.name(s[3]) << '\n';
        o.json["square_witness"] = {K.name(s[0]), K.name(s[1]), K.name(s[2]), K.name(s[3])};
    } else {
        os << "PASS\n";
    }
    o.json["flag_no_square"] = no_square;
    o.text = os.str();
    o.code = (clique || (opt.no_square && !no_square)) ? kExitFail : kExitPass;
    return o;
}

Outcome check_3convex(const Options& opt)
{
    const ComplexFile file = read_complex_file(opt.complex_path);
    const SimplicialComplex& K = file.complex;
    const VertexSubset& J = lookup_subset(file, opt.sub, opt.complex_path);
    Outcome o;
    std::ostringstream os;
    const auto v = find_3_convexity_violation(K, J);
    const bool full = !v || v->kind != ConvexityViolation::Kind::NotFull;
    os << "full: " << (full ? "PASS" : "FAIL chord: " + names_line(K.names_of(v->face))) << '\n';
    os << "3-convex: ";
    if (!v) {
        os << "PASS\n";
    } else if (v->kind == ConvexityViolation::Kind::NotFull) {
        os << "FAIL chord: " << names_line(K.names_of(v->face)) << '\n';
        o.json["witness"] = {{"kind", "chord"}, {"vertices", K.names_of(v->face)}};
    } else {
        const std::vector<std::string> path{K.name(v->path[0]), K.name(v->path[1]), K.name(v->path[2])};
        os << "FAIL path-leaves-subcomplex: " << names_line(path) << '\n';
        o.json["witness"] = {{"kind", "path-leaves-subcomplex"}, {"vertices", path}};
    }
    o.json["full"] = full;
    o.json["3_convex"] = !v;
    if (is_flag(K)) {
        const bool stars = is_3_convex_via_stars(K, J);
        os << "star-criterion: " << (stars ? "PASS" : "FAIL") << '\n';
        o.json["star_criterion"] = stars;
    } else {
        os << "star-criterion: n/a (complex is not flag)\n";
        o.json["star_criterion"] = nullptr;
    }
    o.text = os.str();
    o.code = v ? kExitFail : kExitPass;
    return o;
}

Outcome subdivide(const Options& opt)
{
    const ComplexFile file = read_complex_file(opt.complex_path);
    ComplexFile result;
    if (opt.sub.empty()) {
        result.complex = barycentric_subdivision(file.complex);
    } else {
        const VertexSubset& J = lookup_subset(file, opt.sub, opt.complex_path);
        result.complex = relative_barycentric_subdivision(file.complex, J);
        std::vector<std::string> kept;
        for (VertexId v : J.vertices) {
            kept.push_back(file.complex.name(v));
        }
        result.subsets.emplace(opt.sub, VertexSubset::spanned(result.complex, kept));
    }
    return file_outcome(result);
}

AmbientPair load_pair(const Options& opt)
{
    ComplexFile file = read_complex_file(opt.ambient_path);
    VertexSubset sub = lookup_subset(file, opt.sub, opt.ambient_path);
    return AmbientPair{std::move(file.complex), std::move(sub)};
}

Outcome certify(const Options& opt)
{
    CertifyOptions co;
    co.cross_check_dimension = !opt.skip_dimension_check;
    co.threads = opt.threads;
    return report_outcome(certify_sierpinski(load_pair(opt), co));
}

Outcome certify_planar(const Options& opt)
{
    std::optional<AmbientPair> pair;
    if (!opt.ambient_path.empty()) {
        if (opt.sub.empty()) {
            throw PreconditionError("--ambient needs --sub");
        }
        pair = load_pair(opt);
    }
    SimplicialComplex L;
    if (!opt.complex_path.empty()) {
        L = read_complex_file(opt.complex_path).complex;
    } else if (pair) {
        L = pair->nerve();
    } else {
        throw PreconditionError("certify-planar needs --complex or --ambient with --sub");
    }
    CertifyOptions co;
    co.cross_check_dimension = !opt.skip_dimension_check;
    co.threads = opt.threads;
    return report_outcome(certify_planar_sierpinski(L, std::nullopt, pair, co));
}

Outcome vcd_command(const Options& opt)
{
    const ComplexFile file = read_complex_file(opt.complex_path);
    const int d = vcd(file.complex, opt.threads);
    Outcome o;
    o.text = "vcd: " + std::to_string(d) + "\nboundary-dimension: " + std::to_string(d - 1) + "\n";
    o.json["vcd"] = d;
    o.json["boundary_dimension"] = d - 1;
    return o;
}

Outcome zoo(const Options& opt)
{
    ComplexFile file;
    if (opt.name == "600cell") {
        file.complex = build_600_cell();
        std::vector<VertexId> rest;
        for (VertexId v = 1; v < file.complex.num_vertices(); ++v) {
            rest.push_back(v);
        }
        file.subsets.emplace("L580", VertexSubset::spanned(rest));
    } else if (opt.name == "580disk") {
        Disk d = build_580_disk(opt.vertex.empty() ? std::nullopt : std::optional(opt.vertex));
        file.complex = std::move(d.complex);
        file.subsets.emplace("boundary", VertexSubset::spanned(d.boundary.vertices));
    } else if (opt.name == "icosahedron") {
        const SimplicialComplex X = build_600_cell();
        file.complex = link(X, {X.vertex(opt.vertex.empty() ? cell600_vertex_name(0) : opt.vertex)});
    } else if (opt.name == "boundary-simplex") {
        file.complex = simplex_boundary(opt.dim);
    } else if (opt.name == "punctured-sphere") {
        if (opt.complex_path.empty() || opt.holes.empty()) {
            throw PreconditionError("punctured-sphere needs --complex and --holes");
        }
        const ComplexFile N = read_complex_file(opt.complex_path);
        AmbientPair pair = punctured_sphere(N.complex, parse_holes(opt.holes));
        file.complex = std::move(pair.ambient);
        file.subsets.emplace("L", std::move(pair.sub));
    } else {
        throw PreconditionError("unknown zoo entry '" + opt.name +
                                "' (expected 600cell, 580disk, icosahedron, boundary-simplex, punctured-sphere)");
    }
    return file_outcome(file);
}

Outcome davis_ball_command(const Options& opt)
{
    const ComplexFile file = read_complex_file(opt.complex_path);
    if (auto bad = find_flag_violation(file.complex)) {
        throw PreconditionError("nerve is not flag: " + format_face(file.complex, *bad) + " spans no simplex");
    }
    const RacgPresentation P(file.complex);
    const CubicalBall ball = CubicalBall::davis_ball(P, opt.radius);
    std::vector<std::string> names;
    for (const Word& w : ball.elements()) {
        names.push_back(P.format_word(w));
    }
    ComplexFile out;
    out.complex = SimplicialComplex::from_indexed(names, {});
    for (const Cube& c : ball.cubes()) {
        if (c.gens.empty()) {
            continue;
        }
        std::vector<std::string> corner_names;
        for (const Word& w : cube_vertices(P, c)) {
            corner_names.push_back(P.format_word(w));
        }
        out.cubes.push_back(std::move(corner_names));
    }
    Outcome o = file_outcome(out);
    o.json.erase("f_vector");
    o.json["cube_counts"] = ball.cube_counts();
    return o;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options opt;
    CLI::App app{"Certify nerves of right-angled Coxeter groups with Sierpinski compactum boundaries", "nervecert"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", opt.json, "Emit JSON");
        sub->add_flag("--timing", opt.timing, "Report wall-clock time");
    };
    auto* flag_cmd = app.add_subcommand("check-flag", "Flag and flag-no-square tests");
    flag_cmd->add_option("--complex", opt.complex_path, "Complex file")->required();
    flag_cmd->add_flag("--no-square", opt.no_square, "Fail unless the complex is also square-free");
    add_common(flag_cmd);

    auto* convex_cmd = app.add_subcommand("check-3convex", "3-convexity of a named subset");
    convex_cmd->add_option("--complex", opt.complex_path, "Complex file")->required();
    convex_cmd->add_option("--sub", opt.sub, "Subset name")->required();
    add_common(convex_cmd);

    auto* subdiv_cmd = app.add_subcommand("subdivide", "Barycentric subdivision, relative to --sub if given");
    subdiv_cmd->add_option("--complex", opt.complex_path, "Complex file")->required();
    subdiv_cmd->add_option("--sub", opt.sub, "Subset kept unsubdivided");
    add_common(subdiv_cmd);

    auto* sier_cmd = app.add_subcommand("certify-sierpinski", "Certify a nerve given inside a sphere");
    sier_cmd->add_option("--ambient", opt.ambient_path, "Ambient sphere file")->required();
    sier_cmd->add_option("--sub", opt.sub, "Name of the nerve inside the ambient file")->required();
    sier_cmd->add_flag("--skip-dimension-check", opt.skip_dimension_check, "Skip the vcd cross-check");
    sier_cmd->add_option("--threads", opt.threads, "Worker threads for vcd (0 = all cores)");
    add_common(sier_cmd);

    auto* planar_cmd = app.add_subcommand("certify-planar", "Planar criterion for the Sierpinski curve");
    planar_cmd->add_option("--complex", opt.complex_path, "Nerve file");
    planar_cmd->add_option("--ambient", opt.ambient_path, "Ambient sphere file for the general route");
    planar_cmd->add_option("--sub", opt.sub, "Name of the nerve inside the ambient file");
    planar_cmd->add_flag("--skip-dimension-check", opt.skip_dimension_check, "Skip the vcd cross-check");
    planar_cmd->add_option("--threads", opt.threads, "Worker threads for vcd (0 = all cores)");
    add_common(planar_cmd);

    auto* vcd_cmd = app.add_subcommand("vcd", "Virtual cohomological dimension and boundary dimension");
    vcd_cmd->add_option("--complex", opt.complex_path, "Nerve file")->required();
    vcd_cmd->add_option("--threads", opt.threads, "Worker threads (0 = all cores)");
    add_common(vcd_cmd);

    auto* zoo_cmd = app.add_subcommand("zoo", "Emit a built-in complex");
    zoo_cmd->add_option("--name", opt.name, "600cell | 580disk | icosahedron | boundary-simplex | punctured-sphere")
        ->required();
    zoo_cmd->add_option("--complex", opt.complex_path, "Sphere to puncture (punctured-sphere)");
    zoo_cmd->add_option("--holes", opt.holes, "Top simplices to remove, e.g. \"a,b,c;d,e,f\"");
    zoo_cmd->add_option("--vertex", opt.vertex, "Deleted vertex (580disk) or link centre (icosahedron)");
    zoo_cmd->add_option("--dim", opt.dim, "Simplex dimension (boundary-simplex)");
    add_common(zoo_cmd);

    auto* ball_cmd = app.add_subcommand("davis-ball", "Export a ball of the Davis complex");
    ball_cmd->add_option("--complex", opt.complex_path, "Nerve file")->required();
    ball_cmd->add_option("--radius", opt.radius, "Word-length radius")->required();
    add_common(ball_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        if (*flag_cmd) {
            o = check_flag(opt);
        } else if (*convex_cmd) {
            o = check_3convex(opt);
        } else if (*subdiv_cmd) {
            o = subdivide(opt);
        } else if (*sier_cmd) {
            o = certify(opt);
        } else if (*planar_cmd) {
            o = certify_planar(opt);
        } else if (*vcd_cmd) {
            o = vcd_command(opt);
        } else if (*zoo_cmd) {
            o = zoo(opt);
        } else if (*ball_cmd) {
            o = davis_ball_command(opt);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInputError;
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (opt.json) {
        if (opt.timing) {
            o.json["timing_ms"] = ms;
        }
        out << o.json.dump(2) << '\n';
    } else {
        out << o.text;
        if (opt.timing) {
            out << "timing-ms: " << ms << '\n';
        }
    }
    return o.code;
}

} // namespace nerve
