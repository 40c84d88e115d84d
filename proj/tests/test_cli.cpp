#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "nerve/cli.hpp"
#include "nerve/error.hpp"
#include "nerve/io.hpp"
#include "nerve/zoo.hpp"

using namespace nerve;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() / ("nervecert-test-" + std::to_string(::getpid())))
    {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) const
    {
        const auto path = (dir_ / name).string();
        std::ofstream(path, std::ios::binary) << text;
        return path;
    }

private:
    fs::path dir_;
};

const char* kFourCycle = "simplex a b\nsimplex b c\nsimplex c d\nsimplex a d\n";

} // namespace

TEST_CASE("parsing")
{
    auto tri = parse_complex_string("# a triangle\nsimplex a b c\n");
    CHECK(tri.complex.f_vector() == std::vector<std::size_t>{3, 3, 1});

    auto path = parse_complex_string("simplex a b\nsimplex b c\nsub J: a c\n");
    CHECK(path.complex.f_vector() == std::vector<std::size_t>{3, 2});
    REQUIRE(path.subsets.count("J") == 1);
    CHECK(path.subsets.at("J").vertices == std::vector<VertexId>{0, 2});

    auto lone = parse_complex_string("vertex z\r\nsimplex a b\r\n");
    CHECK(lone.complex.num_vertices() == 3);

    auto cubes = parse_complex_string("vertex x\nvertex y\ncube x y\n");
    CHECK(cubes.cubes == std::vector<std::vector<std::string>>{{"x", "y"}});
}

TEST_CASE("parse errors carry line numbers")
{
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_complex_string(text, "f.cx");
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("simplex a b\nbogus x\n") == 2);
    CHECK(line_of("simplex a b\n\nsub J: a z\n") == 3);
    CHECK(line_of("sub J: a\nsub J: a\nsimplex a\n") == 2);
    CHECK(line_of("simplex a a\n") == 1);
    CHECK(line_of("sub J a\n") == 1);
    CHECK(line_of("vertex\n") == 1);
    CHECK(line_of("simplex\n") == 1);
    CHECK(line_of("cube q\n") == 1);
    CHECK_THROWS_AS(read_complex_file("/nonexistent/file.cx"), ParseError);
}

TEST_CASE("canonical round trip")
{
    const std::string canonical =
        "vertex a\nvertex b\nvertex c\nvertex d\nsimplex a b c\nsimplex c d\nsub J: a d\nsub K: b\n";
    CHECK(serialize(parse_complex_string(canonical)) == canonical);

    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 50; ++trial) {
        auto K = fixtures::random_complex(9, 6, 4, rng);
        const std::string text = serialize(K);
        auto back = parse_complex_string(text);
        CHECK(back.complex == K);
        CHECK(serialize(back) == text);
    }
    auto cell = serialize(build_600_cell());
    CHECK(serialize(parse_complex_string(cell)) == cell);
}

TEST_CASE("exit codes")
{
    Scratch dir;
    const auto c4 = dir.write("c4.cx", kFourCycle);
    const auto c5 = dir.write("c5.cx", "simplex v1 v2\nsimplex v2 v3\nsimplex v3 v4\nsimplex v4 v5\nsimplex v1 v5\n");
    const auto hollow = dir.write("hollow.cx", "simplex a b\nsimplex b c\nsimplex a c\n");
    const auto broken = dir.write("broken.cx", "simplex a b\nnonsense\n");
    const auto path = dir.write("path.cx", "simplex a b\nsimplex b c\nsub J: a c\nsub B: b\n");

    CHECK(run({"check-flag", "--complex", c4}).code == kExitPass);
    CHECK(run({"check-flag", "--complex", c4, "--no-square"}).code == kExitFail);
    CHECK(run({"check-flag", "--complex", c5, "--no-square"}).code == kExitPass);
    CHECK(run({"check-flag", "--complex", hollow}).code == kExitFail);
    CHECK(run({"check-flag", "--complex", broken}).code == kExitInputError);
    CHECK(run({"check-flag", "--complex", dir.write("none.cx", "") + ".missing"}).code == kExitInputError);
    CHECK(run({"check-3convex", "--complex", path, "--sub", "J"}).code == kExitFail);
    CHECK(run({"check-3convex", "--complex", path, "--sub", "B"}).code == kExitPass);
    CHECK(run({"check-3convex", "--complex", path, "--sub", "nope"}).code == kExitInputError);
    CHECK(run({"certify-planar", "--complex", c4}).code == kExitFail);
    CHECK(run({"certify-planar", "--complex", c5}).code == kExitFail);
    CHECK(run({"vcd", "--complex", c4}).code == kExitPass);
    CHECK(run({"vcd", "--complex", hollow}).code == kExitInputError);
    CHECK(run({"zoo", "--name", "dodecahedron"}).code == kExitInputError);
    CHECK(run({"davis-ball", "--complex", c4, "--radius", "0"}).code == kExitInputError);
    CHECK(run({"no-such-command"}).code == kExitInputError);
    CHECK(run({}).code == kExitInputError);
    CHECK(run({"check-flag"}).code == kExitInputError);
}

TEST_CASE("reports")
{
    Scratch dir;
    const auto c4 = dir.write("c4.cx", kFourCycle);
    auto planar = run({"certify-planar", "--complex", c4});
    CHECK(planar.out.find("verdict: FAIL") != std::string::npos);
    CHECK(planar.out.find("check unseparable: FAIL separating nonadjacent pair: a c") != std::string::npos);

    auto js = run({"certify-planar", "--complex", c4, "--json"});
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["verdict"] == "FAIL");

    auto v = run({"vcd", "--complex", c4});
    CHECK(v.out == "vcd: 2\nboundary-dimension: 1\n");

    auto sub = run({"subdivide", "--complex", dir.write("edge.cx", "simplex a b\n")});
    CHECK(sub.code == kExitPass);
    CHECK(parse_complex_string(sub.out).complex.f_vector() == std::vector<std::size_t>{3, 2});

    auto ball = run({"davis-ball", "--complex", dir.write("tri.cx", "simplex a b c\n"), "--radius", "3", "--json"});
    auto bj = nlohmann::json::parse(ball.out);
    CHECK(bj["cube_counts"] == nlohmann::json::array({8, 12, 6, 1}));
}

TEST_CASE("zoo output")
{
    auto cell = run({"zoo", "--name", "600cell"});
    CHECK(cell.code == kExitPass);
    auto parsed = parse_complex_string(cell.out);
    CHECK(parsed.complex.f_vector() == std::vector<std::size_t>{120, 720, 1200, 600});
    REQUIRE(parsed.subsets.count("L580") == 1);
    CHECK(parsed.subsets.at("L580").vertices.size() == 119);
    CHECK(serialize(parsed) == cell.out);

    auto disk = parse_complex_string(run({"zoo", "--name", "580disk"}).out);
    CHECK(disk.complex.f_vector() == std::vector<std::size_t>{119, 708, 1170, 580});
    auto ico = parse_complex_string(run({"zoo", "--name", "icosahedron"}).out);
    CHECK(ico.complex.f_vector() == std::vector<std::size_t>{12, 30, 20});
    auto simplex = parse_complex_string(run({"zoo", "--name", "boundary-simplex", "--dim", "3"}).out);
    CHECK(simplex.complex.f_vector() == std::vector<std::size_t>{4, 6, 4});
}

TEST_CASE("certification through files")
{
    Scratch dir;
    const auto cell = dir.write("600.cx", run({"zoo", "--name", "600cell"}).out);
    auto r = run({"certify-sierpinski", "--ambient", cell, "--sub", "L580", "--threads", "1"});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("verdict: PASS") != std::string::npos);
    CHECK(r.out.find("n: 2") != std::string::npos);
    auto r2 = run({"certify-sierpinski", "--ambient", cell, "--sub", "L580", "--threads", "2"});
    CHECK(r2.out == r.out);

    const auto d3 = dir.write("d3.cx", run({"zoo", "--name", "boundary-simplex", "--dim", "3"}).out);
    auto punct = run({"zoo", "--name", "punctured-sphere", "--complex", d3, "--holes", "v0,v1,v2"});
    REQUIRE(punct.code == kExitPass);
    const auto p1 = dir.write("p1.cx", punct.out);
    auto cert = run({"certify-sierpinski", "--ambient", p1, "--sub", "L"});
    CHECK(cert.code == kExitPass);
    auto planar = run({"certify-planar", "--ambient", p1, "--sub", "L", "--json"});
    CHECK(planar.code == kExitPass);
    auto pj = nlohmann::json::parse(planar.out);
    CHECK(pj["verdict"] == "PASS");

    CHECK(run({"zoo", "--name", "punctured-sphere", "--complex", d3, "--holes", "v0,v1"}).code == kExitInputError);
    CHECK(run({"certify-sierpinski", "--ambient", p1, "--sub", "missing"}).code == kExitInputError);
}
