#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "abeltomo/cli.hpp"
#include "abeltomo/io.hpp"

using namespace abeltomo;
namespace fs = std::filesystem;
using json = io::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("tomoctl_test_" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

void write(const std::string& path, const std::string& text) { io::atomic_write(path, text); }

// Data rows of a tomogram CSV, labels stripped.
std::vector<std::vector<double>> csv_rows(const std::string& path) {
    const auto t = io::read_tomogram(path);
    std::vector<std::vector<double>> rows;
    for (int l = 0; l < t.rows.rows(); ++l) {
        rows.emplace_back();
        for (int j = 0; j < t.rows.cols(); ++j) rows.back().push_back(t.rows(l, j));
    }
    return rows;
}

}  // namespace

TEST_CASE("tomogram command") {
    TempDir dir;
    write(dir / "mixed.json",
          R"({"n": 3, "kind": "mixed", "data": [[[0.3333333333333333,0],[0,0],[0,0]],)"
          R"([[0,0],[0.3333333333333333,0],[0,0]],[[0,0],[0,0],[0.3333333333333334,0]]]})");
    auto r = run({"tomogram", "--in", dir / "mixed.json", "--out", dir / "mm"});
    REQUIRE(r.code == 0);
    for (const auto& row : csv_rows(dir / "mm/tomogram.csv"))
        for (double v : row) CHECK(std::abs(v - 1.0 / 3) < 1e-12);
    const auto text = io::read_file(dir / "mm/tomogram.csv");
    CHECK(text.rfind("# tomoctl tomogram rng=", 0) == 0);
    CHECK(text.find("\nl,j0,j1,j2\n") != std::string::npos);

    write(dir / "e0.json", R"({"n": 3, "kind": "pure", "data": [[1,0],[0,0],[0,0]]})");
    r = run({"tomogram", "--in", dir / "e0.json", "--out", dir / "e0"});
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(dir / "e0/tomogram.csv");
    CHECK(rows[3] == std::vector<double>{1, 0, 0});
    const auto sidecar = json::parse(io::read_file(dir / "e0/tomogram.json"));
    CHECK(sidecar["n"] == 3);
    CHECK(sidecar["bochner_min"].size() == 4);
    CHECK(sidecar["rng"] == "mt19937_64/u53/box-muller");

    // Determinism for a seeded random state.
    REQUIRE(run({"tomogram", "--n", "5", "--seed", "42", "--out", dir / "a"}).code == 0);
    REQUIRE(run({"tomogram", "--n", "5", "--seed", "42", "--out", dir / "b"}).code == 0);
    CHECK(io::read_file(dir / "a/tomogram.csv") == io::read_file(dir / "b/tomogram.csv"));
    CHECK(io::read_file(dir / "a/tomogram.json") == io::read_file(dir / "b/tomogram.json"));
    REQUIRE(run({"tomogram", "--n", "5", "--seed", "43", "--out", dir / "c"}).code == 0);
    CHECK(io::read_file(dir / "a/tomogram.csv") != io::read_file(dir / "c/tomogram.csv"));
}

TEST_CASE("tomogram command errors") {
    TempDir dir;
    CHECK(run({"tomogram", "--n", "4", "--seed", "1", "--out", dir / "x"}).code == 3);
    CHECK(run({"tomogram", "--n", "2", "--seed", "1", "--out", dir / "x"}).code == 3);
    CHECK(run({"tomogram", "--n", "5", "--out", dir / "x"}).code == 2);
    write(dir / "bad.json", "{not json");
    CHECK(run({"tomogram", "--in", dir / "bad.json", "--out", dir / "x"}).code == 2);
    write(dir / "unnorm.json", R"({"n": 3, "kind": "pure", "data": [1, 1, 0]})");
    CHECK(run({"tomogram", "--in", dir / "unnorm.json", "--out", dir / "x"}).code == 2);
    write(dir / "short.json", R"({"n": 3, "kind": "pure", "data": [1, 0]})");
    CHECK(run({"tomogram", "--in", dir / "short.json", "--out", dir / "x"}).code == 2);
    CHECK(run({"tomogram", "--in", dir / "missing.json", "--out", dir / "x"}).code == 2);
    CHECK(run({"tomogram", "--n", "3", "--seed", "1", "--in", dir / "same", "--out", dir / "same"}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"tomogram", "--n", "notanumber"}).code == 2);
}

TEST_CASE("char and reconstruct commands") {
    TempDir dir;
    REQUIRE(run({"char", "--n", "4", "--seed", "3", "--out", dir / "c"}).code == 0);
    const auto doc = json::parse(io::read_file(dir / "c/char.json"));
    CHECK(doc["char_function"]["values"].size() == 4);
    CHECK(std::abs(doc["char_function"]["values"][0][0][0].get<double>() - 1.0) < 1e-12);
    CHECK(doc["parseval_defect"].get<double>() < 1e-10);

    REQUIRE(run({"tomogram", "--n", "7", "--seed", "5", "--out", dir / "t"}).code == 0);
    REQUIRE(run({"reconstruct", "--in", dir / "t/tomogram.csv", "--out", dir / "r"}).code == 0);
    const auto report = json::parse(io::read_file(dir / "r/reconstruct.json"));
    CHECK(report["is_state"] == true);
    // The reconstructed state reproduces the same tomogram.
    REQUIRE(run({"tomogram", "--in", dir / "r/state.json", "--out", dir / "t2"}).code == 0);
    const auto a = csv_rows(dir / "t/tomogram.csv");
    const auto b = csv_rows(dir / "t2/tomogram.csv");
    for (std::size_t l = 0; l < a.size(); ++l)
        for (std::size_t j = 0; j < a[l].size(); ++j) CHECK(std::abs(a[l][j] - b[l][j]) < 1e-8);

    write(dir / "broken.csv", "l,j0,j1,j2\n0,0.5,0.5,0.5\n1,1,0,0\n2,1,0,0\n3,1,0,0\n");
    CHECK(run({"reconstruct", "--in", dir / "broken.csv", "--out", dir / "r2"}).code == 2);
    write(dir / "four.csv", "l,j0,j1,j2,j3\n0,1,0,0,0\n1,1,0,0,0\n2,1,0,0,0\n3,1,0,0,0\n4,1,0,0,0\n");
    CHECK(run({"reconstruct", "--in", dir / "four.csv", "--out", dir / "r3"}).code == 3);
    CHECK(run({"reconstruct", "--out", dir / "r4"}).code == 2);
}

TEST_CASE("channel command") {
    TempDir dir;
    write(dir / "id.json", R"({"n": 3, "q": [[1,0,0],[0,0,0],[0,0,0]]})");
    auto r = run({"channel", "--in", dir / "id.json", "--seed", "9", "--out", dir / "id"});
    REQUIRE(r.code == 0);
    auto rep = json::parse(io::read_file(dir / "id/channel_report.json"));
    CHECK(rep["tomogram_discrepancy"].get<double>() < 1e-8);
    const auto t_in = csv_rows(dir / "id/tomogram_in.csv");
    const auto t_out = csv_rows(dir / "id/tomogram_convolution.csv");
    for (std::size_t l = 0; l < t_in.size(); ++l)
        for (std::size_t j = 0; j < t_in[l].size(); ++j) CHECK(std::abs(t_in[l][j] - t_out[l][j]) < 1e-12);

    const double u = 1.0 / 9;
    json uq{{"n", 3}, {"q", json::array()}};
    for (int a = 0; a < 3; ++a) uq["q"].push_back(json::array({u, u, u}));
    write(dir / "uniform.json", uq.dump());
    REQUIRE(run({"channel", "--in", dir / "uniform.json", "--seed", "9", "--out", dir / "un"}).code == 0);
    for (const auto& row : csv_rows(dir / "un/tomogram_direct.csv"))
        for (double v : row) CHECK(std::abs(v - 1.0 / 3) < 1e-10);
    rep = json::parse(io::read_file(dir / "un/channel_report.json"));
    for (const auto& h : rep["marginal_entropies"]) CHECK(std::abs(h.get<double>() - std::log(3.0)) < 1e-12);

    r = run({"channel", "--n", "5", "--seed", "2024", "--out", dir / "rnd"});
    REQUIRE(r.code == 0);
    rep = json::parse(io::read_file(dir / "rnd/channel_report.json"));
    CHECK(rep["tomogram_discrepancy"].get<double>() < 1e-8);
    CHECK(rep["char_discrepancy"].get<double>() < 1e-10);
    CHECK(rep["marginals"].size() == 5);
    CHECK(rep["marginals"][0].size() == 6);
    CHECK(fs::exists(dir / "rnd/output_state.json"));

    write(dir / "neg.json", R"({"n": 2, "q": [[1.5,0],[0,-0.5]]})");
    CHECK(run({"channel", "--in", dir / "neg.json", "--seed", "1", "--out", dir / "x"}).code == 2);
    write(dir / "sum.json", R"({"n": 3, "q": [[0.5,0,0],[0,0,0],[0,0,0]]})");
    CHECK(run({"channel", "--in", dir / "sum.json", "--seed", "1", "--out", dir / "x"}).code == 2);
    write(dir / "e0.json", R"({"n": 3, "kind": "pure", "data": [1, 0, 0]})");
    CHECK(run({"channel", "--in", dir / "id.json", "--state", dir / "e0.json", "--out", dir / "s"}).code == 0);
    CHECK(run({"channel", "--n", "4", "--seed", "1", "--out", dir / "x"}).code == 3);
}

TEST_CASE("verify command") {
    TempDir dir;
    auto r = run({"verify", "--out", dir / "ok"});
    CHECK(r.code == 0);
    const auto report = json::parse(io::read_file(dir / "ok/verify_report.json"));
    CHECK(report["all_pass"] == true);
    CHECK(report["ensemble"] == 100);
    CHECK(report["dimensions"] == json::array({3, 5, 7}));
    for (const auto& p : report["properties"]) {
        CHECK(p.contains("name"));
        CHECK(p["max_defect"].is_number());
        CHECK(p["pass"] == true);
    }
    CHECK(r.out.find("FAIL") == std::string::npos);

    r = run({"verify", "--ensemble", "5", "--inject-fault", "--out", dir / "bad"});
    CHECK(r.code == 1);
    CHECK(r.err.find("projective-identity") != std::string::npos);
    const auto bad = json::parse(io::read_file(dir / "bad/verify_report.json"));
    CHECK(bad["all_pass"] == false);
    CHECK(bad["fault_injected"] == true);
    for (const auto& p : bad["properties"]) CHECK(p["pass"] == (p["name"] != "projective-identity"));

    // Report is deterministic for a fixed seed.
    REQUIRE(run({"verify", "--ensemble", "3", "--seed", "7", "--out", dir / "d1"}).code == 0);
    REQUIRE(run({"verify", "--ensemble", "3", "--seed", "7", "--out", dir / "d2"}).code == 0);
    CHECK(io::read_file(dir / "d1/verify_report.json") == io::read_file(dir / "d2/verify_report.json"));
}

TEST_CASE("continuum commands") {
    TempDir dir;
    auto r = run({"continuum-optical", "--order", "1", "--phi", "0.5", "--out", dir / "o"});
    REQUIRE(r.code == 0);
    const auto meta = json::parse(io::read_file(dir / "o/optical.json"));
    CHECK(std::abs(meta["mass"].get<double>() - 1.0) < 1e-4);
    CHECK(io::read_file(dir / "o/optical.csv").find("\nX,density\n") != std::string::npos);
    CHECK(run({"continuum-optical", "--tmax", "2", "--grid", "256", "--out", dir / "o2"}).code == 2);

    r = run({"continuum-circle", "--seed", "4", "--theta", "0.3", "--out", dir / "c"});
    REQUIRE(r.code == 0);
    const auto circle = json::parse(io::read_file(dir / "c/circle.json"));
    CHECK(std::abs(circle["line_mass"].get<double>() - 1.0) < 1e-6);
    CHECK(circle["state"]["M"] == 16);
    write(dir / "mode.json", R"({"kind": "circle", "M": 1, "data": [[0,0],[1,0],[0,0]]})");
    REQUIRE(run({"continuum-circle", "--in", dir / "mode.json", "--out", dir / "m"}).code == 0);
    CHECK(run({"continuum-circle", "--out", dir / "x"}).code == 2);
    write(dir / "badcircle.json", R"({"kind": "circle", "M": 1, "data": [1, 1, 1]})");
    CHECK(run({"continuum-circle", "--in", dir / "badcircle.json", "--out", dir / "x"}).code == 2);
}
