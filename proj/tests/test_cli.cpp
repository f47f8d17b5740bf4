#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "leekit/json_io.hpp"

namespace {

namespace fs = std::filesystem;
using leekit::Json;

std::string cli_path() {
    if (const char* env = std::getenv("LEEKIT_CLI")) return env;
    return "./leekit";
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("leekit_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Minimal validator for the JSON-Schema subset the shipped schemas use:
// type, required, properties, items, enum, minimum, minItems.
bool schema_ok(const Json& schema, const Json& doc) {
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        if (t == "object" && !doc.is_object()) return false;
        if (t == "array" && !doc.is_array()) return false;
        if (t == "integer" && !doc.is_number_integer()) return false;
        if (t == "string" && !doc.is_string()) return false;
        if (t == "boolean" && !doc.is_boolean()) return false;
    }
    if (schema.contains("enum")) {
        bool any = false;
        for (const Json& v : schema["enum"]) any = any || v == doc;
        if (!any) return false;
    }
    if (schema.contains("minimum") && doc.is_number_integer() &&
        doc.get<std::int64_t>() < schema["minimum"].get<std::int64_t>())
        return false;
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const Json& k : schema["required"])
                if (!doc.contains(k.get<std::string>())) return false;
        if (schema.contains("properties"))
            for (const auto& [k, sub] : schema["properties"].items())
                if (doc.contains(k) && !schema_ok(sub, doc.at(k))) return false;
    }
    if (doc.is_array()) {
        if (schema.contains("minItems") && doc.size() < schema["minItems"].get<size_t>())
            return false;
        if (schema.contains("items"))
            for (const Json& v : doc)
                if (!schema_ok(schema["items"], v)) return false;
    }
    return true;
}

Json load_schema(const std::string& name) {
    return leekit::load_json_file(std::string(LEEKIT_SCHEMA_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("construct round trips through verify and check-tiling") {
    for (int n : {3, 11}) {
        const fs::path dir = fresh_dir("construct" + std::to_string(n));
        const RunResult c = run("construct --n " + std::to_string(n) + " --out " + dir.string());
        CHECK(c.exit_code == 0);
        const Json report = Json::parse(c.out);
        CHECK(report["verdict"]["ok"] == true);
        CHECK(fs::exists(dir / "witness.json"));
        CHECK(fs::exists(dir / "code.json"));

        CHECK(run("verify " + (dir / "witness.json").string()).exit_code == 0);
        const RunResult t = run("check-tiling " + (dir / "code.json").string());
        CHECK(t.exit_code == 0);
        const Json treport = Json::parse(t.out);
        CHECK(treport["verdict"]["determinant"] == 4 * n * n + 2);

        // byte-identical reports across repeated runs with identical inputs
        const RunResult c2 = run("construct --n " + std::to_string(n) + " --out " + dir.string());
        CHECK(c2.exit_code == 0);
        CHECK(c2.out == c.out);
    }
}

TEST_CASE("construct rejects unsupported dimensions with exit 2") {
    CHECK(run("construct --n 4").exit_code == 2);
    CHECK(run("construct --n 12").exit_code == 2);
    CHECK(run("construct").exit_code == 2);  // missing required flag
}

TEST_CASE("verify flags tampered witnesses with exit 1") {
    const fs::path dir = fresh_dir("verify");
    REQUIRE(run("construct --n 3 --out " + dir.string()).exit_code == 0);
    Json w = leekit::load_json_file((dir / "witness.json").string());

    // remove one element: condition (1)
    Json dropped = w;
    dropped["T"].erase(0);
    leekit::save_json_file((dir / "w1.json").string(), dropped);
    const RunResult r1 = run("verify " + (dir / "w1.json").string());
    CHECK(r1.exit_code == 1);
    CHECK(Json::parse(r1.out)["verdict"]["cardinality"]["passed"] == false);

    // break inverse closure: condition (2)
    Json open = w;
    open["T"][0] = Json::array({2});  // replaces 1; inverse 17 absent
    leekit::save_json_file((dir / "w2.json").string(), open);
    const RunResult r2 = run("verify " + (dir / "w2.json").string());
    CHECK(r2.exit_code == 1);
    CHECK(Json::parse(r2.out)["verdict"]["inverse_closed"]["passed"] == false);

    // malformed file: exit 2
    std::ofstream((dir / "broken.json").string()) << "{not json";
    CHECK(run("verify " + (dir / "broken.json").string()).exit_code == 2);
    CHECK(run("verify " + (dir / "missing.json").string()).exit_code == 2);
}

TEST_CASE("check-tiling flags broken codes with exit 1") {
    const fs::path dir = fresh_dir("tiling");
    REQUIRE(run("construct --n 3 --out " + dir.string()).exit_code == 0);
    Json code = leekit::load_json_file((dir / "code.json").string());

    // all-identity images cannot tile
    Json degenerate = code;
    for (auto& img : degenerate["images"]) img = Json::array({0});
    degenerate.erase("kernel_basis");
    degenerate.erase("determinant");
    leekit::save_json_file((dir / "c1.json").string(), degenerate);
    CHECK(run("check-tiling " + (dir / "c1.json").string()).exit_code == 1);

    // tampered kernel basis row fails re-verification
    Json bad_kernel = code;
    bad_kernel["kernel_basis"][0][0] = bad_kernel["kernel_basis"][0][0].get<std::int64_t>() + 1;
    leekit::save_json_file((dir / "c2.json").string(), bad_kernel);
    const RunResult r2 = run("check-tiling " + (dir / "c2.json").string());
    CHECK(r2.exit_code == 1);
    CHECK(Json::parse(r2.out)["verdict"]["kernel_basis_ok"] == false);
}

TEST_CASE("search exit codes and artifacts") {
    const fs::path dir = fresh_dir("search");
    const RunResult found = run("search --n 3 --out " + dir.string());
    CHECK(found.exit_code == 0);
    CHECK(fs::exists(dir / "witness_n3.json"));
    CHECK(run("verify " + (dir / "witness_n3.json").string()).exit_code == 0);

    const RunResult none = run("search --n 4 --out " + dir.string());
    CHECK(none.exit_code == 1);
    const Json report = Json::parse(none.out);
    CHECK(report["verdict"]["status"] == "exhausted_none");
    CHECK(report["verdict"]["classes"].size() == 1);

    CHECK(run("search --n 2").exit_code == 2);
    CHECK(run("search --n 4 --group 5,7").exit_code == 2);

    // single-class search via --group
    const RunResult single = run("search --n 7 --group 3,33 --out " + dir.string());
    CHECK(single.exit_code == 1);
    const Json sreport = Json::parse(single.out);
    CHECK(sreport["verdict"]["classes"].size() == 1);
    CHECK(sreport["verdict"]["classes"][0]["group"]["invariant_factors"] ==
          Json::array({3, 33}));
}

TEST_CASE("search budget exhaustion and resume") {
    const fs::path dir = fresh_dir("budget");
    const RunResult stopped = run("search --n 5 --budget 0ms --out " + dir.string());
    CHECK(stopped.exit_code == 3);
    const Json report = Json::parse(stopped.out);
    CHECK(report["verdict"]["status"] == "budget_exceeded");
    REQUIRE(!report["artifacts"].empty());
    const std::string token = report["artifacts"][0].get<std::string>();
    CHECK(fs::exists(token));

    const RunResult resumed = run("search --n 5 --resume " + token + " --out " + dir.string());
    CHECK(resumed.exit_code == 1);
    CHECK(Json::parse(resumed.out)["verdict"]["status"] == "exhausted_none");
}

TEST_CASE("obstruct emits certificates on stdout as JSON lines") {
    const RunResult r = run("obstruct --range 3..20");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::vector<Json> rows;
    while (std::getline(lines, line)) {
        if (line.empty() || line == "{") break;  // pretty-printed summary report follows
        rows.push_back(Json::parse(line));
    }
    // certificate lines exactly where the residue/squarefree hypothesis holds
    std::set<std::int64_t> with_cert;
    for (const Json& row : rows)
        if (row.contains("certificate")) with_cert.insert(row["n"].get<std::int64_t>());
    std::set<std::int64_t> expected;
    for (std::int64_t n = 3; n <= 20; ++n)
        if (leekit::quadratic_sum_obstruction(n)) expected.insert(n);
    CHECK(with_cert == expected);
    CHECK(with_cert.count(5) == 1);
    CHECK(with_cert.count(8) == 1);
    CHECK(with_cert.count(14) == 1);

    // every emitted certificate re-verifies
    for (const Json& row : rows) {
        if (!row.contains("certificate")) continue;
        CHECK(leekit::verify_certificate(leekit::certificate_from_json(row["certificate"])));
    }

    // the n = 11 line records the passing 3-power route
    const RunResult r11 = run("obstruct --n 11");
    CHECK(r11.exit_code == 0);
    std::istringstream ls(r11.out);
    std::getline(ls, line);
    const Json row = Json::parse(line);
    CHECK(row["status"] == "open");
    CHECK(row["case5_power_check"]["passes"] == true);
    CHECK(row["case5_power_check"]["group_order_exponent"] == 5);
    CHECK(row["case5_power_check"]["delta_exponent"] == 4);

    CHECK(run("obstruct").exit_code == 2);
    CHECK(run("obstruct --range 5..4").exit_code == 2);
}

TEST_CASE("plot renders a grid") {
    const fs::path dir = fresh_dir("plot");
    REQUIRE(run("construct --n 3 --out " + dir.string()).exit_code == 0);
    const RunResult r =
        run("plot " + (dir / "code.json").string() + " --width 20 --height 5");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(line.size() == 20);
        ++rows;
    }
    CHECK(rows == 5);

    const RunResult svg = run("plot " + (dir / "code.json").string() + " --svg " +
                              (dir / "grid.svg").string());
    CHECK(svg.exit_code == 0);
    CHECK(fs::exists(dir / "grid.svg"));
}

TEST_CASE("every emitted file validates against the shipped schemas") {
    const Json witness_schema = load_schema("witness.schema.json");
    const Json code_schema = load_schema("code.schema.json");
    const Json cert_schema = load_schema("certificate.schema.json");
    const Json report_schema = load_schema("report.schema.json");

    const fs::path dir = fresh_dir("schemas");
    for (int n : {3, 11}) {
        const RunResult c = run("construct --n " + std::to_string(n) + " --out " + dir.string());
        REQUIRE(c.exit_code == 0);
        CHECK(schema_ok(report_schema, Json::parse(c.out)));
        CHECK(schema_ok(witness_schema, leekit::load_json_file((dir / "witness.json").string())));
        CHECK(schema_ok(code_schema, leekit::load_json_file((dir / "code.json").string())));
    }

    const RunResult s = run("search --n 4 --out " + dir.string());
    CHECK(schema_ok(report_schema, Json::parse(s.out)));

    const RunResult o = run("obstruct --range 3..16");
    std::istringstream lines(o.out);
    std::string line;
    int certified = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line == "{") break;
        const Json row = Json::parse(line);
        if (row.contains("certificate")) {
            CHECK(schema_ok(cert_schema, row["certificate"]));
            ++certified;
        }
    }
    CHECK(certified >= 3);
}

TEST_CASE("info") {
    const RunResult r = run("info --n 7");
    CHECK(r.exit_code == 0);
    const Json report = Json::parse(r.out);
    CHECK(report["facts"]["group_order"] == 99);
    CHECK(report["facts"]["group_classes"].size() == 2);
    CHECK(run("badcommand").exit_code == 2);
}
