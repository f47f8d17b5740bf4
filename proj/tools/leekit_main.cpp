// leekit — construct, verify, search for, and refute linear diameter-6
// perfect Lee codes via the group-ring criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "leekit/json_io.hpp"
#include "leekit/lee.hpp"
#include "leekit/obstruct.hpp"
#include "leekit/search.hpp"
#include "leekit/tiling.hpp"
#include "leekit/witness.hpp"

namespace {

using leekit::Json;

constexpr const char* kVersion = "1.0.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitRefuted = 1,
    kExitUsage = 2,
    kExitBudget = 3,
};

void emit_report(const Json& report) { std::cout << report.dump(2) << std::endl; }

std::chrono::milliseconds parse_budget(const std::string& text) {
    static const std::regex pattern(R"(^(\d+)(ms|s|m|h)$)");
    std::smatch m;
    if (!std::regex_match(text, m, pattern))
        throw CLI::ValidationError("--budget", "expected <integer>(ms|s|m|h), e.g. 10s");
    const std::int64_t value = std::stoll(m[1].str());
    const std::string unit = m[2].str();
    if (unit == "ms") return std::chrono::milliseconds(value);
    if (unit == "s") return std::chrono::seconds(value);
    if (unit == "m") return std::chrono::minutes(value);
    return std::chrono::hours(value);
}

std::chrono::milliseconds default_budget() {
    if (const char* env = std::getenv("LEEKIT_BUDGET")) {
        try {
            return parse_budget(env);
        } catch (const CLI::ValidationError&) {
            std::cerr << "warning: ignoring malformed LEEKIT_BUDGET value\n";
        }
    }
    return std::chrono::minutes(30);
}

Json verdict_json(const leekit::WitnessVerdict& v) {
    auto cond = [](const leekit::ConditionReport& c) {
        return Json{{"passed", c.passed}, {"detail", c.detail}};
    };
    return Json{{"cardinality", cond(v.cardinality)},
                {"inverse_closed", cond(v.inverse_closed)},
                {"square_identity", cond(v.square_identity)},
                {"ok", v.ok()}};
}

// ------------------------------------------------------------------ construct

int cmd_construct(std::int64_t n, const std::string& out_dir) {
    if (n != 3 && n != 11) {
        std::cerr << "construct: unsupported dimension " << n
                  << "; linear diameter-6 perfect Lee codes exist only for n = 3 and n = 11\n";
        return kExitUsage;
    }
    leekit::Witness w = n == 3 ? leekit::construct_dpl3() : leekit::construct_dpl11();
    const leekit::WitnessVerdict verdict = leekit::verify_witness(w);
    if (!verdict.ok()) {
        emit_report(Json{{"command", "construct"}, {"verdict", verdict_json(verdict)}});
        return kExitRefuted;
    }
    const leekit::GroupHomomorphism phi = leekit::lift_to_code(w);  // runs the bijection check
    const leekit::LeeShape anticode = leekit::canonical_double_sphere(static_cast<int>(n), 2);
    const bool packing_ok = leekit::packing_crosscheck(phi, anticode);
    const leekit::CodeLattice kernel = leekit::kernel_basis(phi);
    const bool det_ok = kernel.determinant == 4 * n * n + 2;
    if (!packing_ok || !det_ok) {
        emit_report(Json{{"command", "construct"},
                         {"verdict", Json{{"packing_ok", packing_ok}, {"determinant_ok", det_ok}}}});
        return kExitRefuted;
    }

    std::filesystem::create_directories(out_dir);
    const std::string witness_path = (std::filesystem::path(out_dir) / "witness.json").string();
    const std::string code_path = (std::filesystem::path(out_dir) / "code.json").string();
    leekit::save_json_file(witness_path, leekit::witness_to_json(w));
    leekit::save_json_file(code_path, leekit::code_to_json(phi, kernel));

    Json report;
    report["command"] = "construct";
    report["inputs"] = Json{{"n", n}, {"out", out_dir}};
    report["verdict"] = Json{{"witness", verdict_json(verdict)},
                             {"bijection_ok", true},
                             {"packing_ok", packing_ok},
                             {"determinant", kernel.determinant},
                             {"ok", true}};
    report["artifacts"] = Json::array({witness_path, code_path});
    emit_report(report);
    return kExitOk;
}

// --------------------------------------------------------------------- verify

int cmd_verify(const std::string& witness_path) {
    const leekit::Witness w = leekit::witness_from_json(leekit::load_json_file(witness_path));
    const leekit::WitnessVerdict verdict = leekit::verify_witness(w);
    Json report;
    report["command"] = "verify";
    report["inputs"] = Json{{"witness", witness_path}};
    report["verdict"] = verdict_json(verdict);
    emit_report(report);
    return verdict.ok() ? kExitOk : kExitRefuted;
}

// --------------------------------------------------------------- check-tiling

int cmd_check_tiling(const std::string& code_path) {
    const leekit::CodeDocument doc = leekit::code_from_json(leekit::load_json_file(code_path));
    const leekit::GroupHomomorphism phi =
        leekit::make_homomorphism(doc.n, doc.group, doc.images);
    const leekit::LeeShape anticode = leekit::canonical_double_sphere(doc.n, 2);

    Json verdict;
    bool ok = true;
    if (anticode.size() != doc.group.order()) {
        verdict["size_ok"] = false;
        ok = false;
    } else {
        const leekit::BijectionResult bij = leekit::bijection_check(phi, anticode);
        verdict["bijection_ok"] = bij.bijective;
        if (!bij.bijective && bij.collision) {
            verdict["collision"] =
                Json::array({bij.collision->first.coords, bij.collision->second.coords});
        }
        const bool packing = leekit::packing_crosscheck(phi, anticode);
        verdict["packing_ok"] = packing;
        ok = bij.bijective && packing;
    }

    const std::int64_t expected_det = 4 * static_cast<std::int64_t>(doc.n) * doc.n + 2;
    if (leekit::is_surjective(phi)) {
        const leekit::CodeLattice kernel = leekit::kernel_basis(phi);
        verdict["determinant"] = kernel.determinant;
        verdict["determinant_ok"] = kernel.determinant == expected_det;
        ok = ok && kernel.determinant == expected_det;
        if (doc.kernel) {
            // A shipped basis must consist of kernel vectors and span the
            // same lattice (equal HNF).
            bool basis_ok = true;
            for (const auto& row : doc.kernel->basis) {
                if (!(leekit::hom_apply(phi, leekit::LatticePoint{row}) == doc.group.identity())) {
                    basis_ok = false;
                    break;
                }
            }
            if (basis_ok) {
                try {
                    basis_ok = leekit::hermite_normal_form(doc.kernel->basis) == kernel.basis;
                } catch (const std::invalid_argument&) {
                    basis_ok = false;
                }
            }
            verdict["kernel_basis_ok"] = basis_ok;
            ok = ok && basis_ok;
        }
    } else {
        verdict["surjective"] = false;
        verdict["determinant_ok"] = false;
        ok = false;
    }
    verdict["ok"] = ok;

    Json report;
    report["command"] = "check-tiling";
    report["inputs"] = Json{{"code", code_path}};
    report["verdict"] = verdict;
    emit_report(report);
    return ok ? kExitOk : kExitRefuted;
}

// --------------------------------------------------------------------- search

Json outcome_json(const leekit::SearchOutcome& o, bool include_witness) {
    Json j;
    j["status"] = leekit::to_string(o.status);
    j["nodes_explored"] = o.nodes_explored;
    j["witnesses_found"] = o.witnesses_found;
    if (include_witness && o.witness) j["witness"] = leekit::witness_to_json(*o.witness);
    return j;
}

int cmd_search(std::int64_t n, const std::optional<std::string>& group_spec,
               const std::optional<std::string>& resume_path, const std::string& budget_text,
               bool no_canon, int threads, std::int64_t progress_ms, const std::string& out_dir) {
    if (n < 3) {
        std::cerr << "search: n must be >= 3\n";
        return kExitUsage;
    }
    leekit::SearchOptions options;
    options.parallel_width = threads;
    options.time_budget = budget_text.empty() ? default_budget() : parse_budget(budget_text);
    if (no_canon) options.canonicalize = false;
    options.progress_interval_ms = progress_ms;
    if (progress_ms > 0) {
        options.progress = [](const leekit::ProgressEvent& ev) {
            std::cerr << Json{{"nodes", ev.nodes}, {"depth", ev.depth}, {"elapsed_ms", ev.elapsed_ms}}
                             .dump()
                      << '\n';
        };
    }

    Json report;
    report["command"] = "search";
    report["inputs"] = Json{{"n", n},
                            {"group", group_spec ? Json(*group_spec) : Json(nullptr)},
                            {"budget", budget_text.empty() ? "default" : budget_text},
                            {"canonicalize", !no_canon}};

    std::vector<std::pair<leekit::AbelianGroup, leekit::SearchOutcome>> results;
    if (resume_path) {
        const leekit::ResumeToken token =
            leekit::resume_token_from_json(leekit::load_json_file(*resume_path));
        leekit::SearchTask task{token.n, token.group, options};
        task.options.canonicalize = token.canonicalize;
        results.emplace_back(token.group, leekit::search_witness(task, token));
        report["inputs"]["resume"] = *resume_path;
    } else if (group_spec) {
        std::vector<std::int64_t> factors;
        std::string item;
        std::istringstream ss(*group_spec);
        while (std::getline(ss, item, ',')) factors.push_back(std::stoll(item));
        const leekit::AbelianGroup g = leekit::make_group(factors);
        if (g.order() != 2 * n * n + 1) {
            std::cerr << "search: group order " << g.order() << " does not equal 2n^2+1\n";
            return kExitUsage;
        }
        leekit::SearchTask task{n, g, options};
        results.emplace_back(g, leekit::search_witness(task));
    } else {
        results = leekit::search_all_groups(n, options);
    }

    Json classes = Json::array();
    bool any_found = false, any_budget = false;
    std::optional<leekit::Witness> witness;
    std::vector<std::string> artifacts;
    for (const auto& [group, outcome] : results) {
        Json entry;
        entry["group"] = leekit::group_to_json(group);
        entry.update(outcome_json(outcome, false));
        if (outcome.status == leekit::SearchStatus::found && !witness) witness = outcome.witness;
        any_found = any_found || outcome.status == leekit::SearchStatus::found;
        if (outcome.status == leekit::SearchStatus::budget_exceeded && outcome.resume) {
            any_budget = true;
            std::filesystem::create_directories(out_dir);
            const std::string token_path =
                (std::filesystem::path(out_dir) /
                 ("resume_n" + std::to_string(n) + "_" + std::to_string(artifacts.size()) + ".json"))
                    .string();
            leekit::save_json_file(token_path, leekit::resume_token_to_json(*outcome.resume));
            entry["resume_token"] = token_path;
            artifacts.push_back(token_path);
        }
        classes.push_back(entry);
    }

    Json verdict;
    verdict["classes"] = classes;
    if (witness) {
        std::filesystem::create_directories(out_dir);
        const std::string witness_path =
            (std::filesystem::path(out_dir) / ("witness_n" + std::to_string(n) + ".json")).string();
        leekit::save_json_file(witness_path, leekit::witness_to_json(*witness));
        artifacts.push_back(witness_path);
        verdict["witness_file"] = witness_path;
        verdict["status"] = "found";
    } else if (any_budget) {
        verdict["status"] = "budget_exceeded";
    } else {
        verdict["status"] = "exhausted_none";
        verdict["conclusion"] =
            "no linear diameter-6 perfect Lee code in dimension " + std::to_string(n) +
            (group_spec || resume_path ? " within the searched class" : "");
    }
    report["verdict"] = verdict;
    report["artifacts"] = artifacts;
    emit_report(report);
    return witness ? kExitOk : (any_budget ? kExitBudget : kExitRefuted);
}

// ------------------------------------------------------------------- obstruct

int cmd_obstruct(std::optional<std::int64_t> single, const std::optional<std::string>& range_text) {
    std::int64_t lo = 0, hi = 0;
    if (single && range_text) {
        std::cerr << "obstruct: give either --n or --range, not both\n";
        return kExitUsage;
    }
    if (single) {
        lo = hi = *single;
    } else if (range_text) {
        static const std::regex pattern(R"(^(\d+)\.\.(\d+)$)");
        std::smatch m;
        if (!std::regex_match(*range_text, m, pattern)) {
            std::cerr << "obstruct: --range expects a..b\n";
            return kExitUsage;
        }
        lo = std::stoll(m[1].str());
        hi = std::stoll(m[2].str());
    } else {
        std::cerr << "obstruct: --n or --range required\n";
        return kExitUsage;
    }
    if (lo < 3 || hi < lo) {
        std::cerr << "obstruct: range must satisfy 3 <= a <= b\n";
        return kExitUsage;
    }

    std::int64_t certs = 0, open = 0;
    std::vector<std::int64_t> route_passes;
    for (std::int64_t n = lo; n <= hi; ++n) {
        Json line;
        line["n"] = n;
        const std::optional<leekit::ObstructionCertificate> cert =
            leekit::quadratic_sum_obstruction(n);
        if (cert) {
            if (!leekit::verify_certificate(*cert)) {
                std::cerr << "obstruct: internal error: certificate failed re-verification\n";
                return kExitRefuted;
            }
            line["certificate"] = leekit::certificate_to_json(*cert);
            ++certs;
        } else {
            line["status"] = "open";
            ++open;
        }
        const leekit::PowerOf3Route route = leekit::pds_route_check(n);
        if (route.both_powers) {
            line["case5_power_check"] =
                Json{{"passes", true},
                     {"group_order_exponent", route.group_order_exponent},
                     {"delta_exponent", route.delta_exponent}};
            route_passes.push_back(n);
        }
        std::cout << line.dump() << '\n';
    }

    Json report;
    report["command"] = "obstruct";
    report["inputs"] = single ? Json{{"n", *single}} : Json{{"range", *range_text}};
    report["verdict"] = Json{{"counts", Json{{"quadratic_sum_mod3", certs}, {"open", open}}},
                             {"case5_route_passes_at", route_passes}};
    emit_report(report);
    return kExitOk;
}

// ----------------------------------------------------------------------- plot

std::uint64_t point_hash(const leekit::LatticePoint& p) {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t c : p.coords) {
        h ^= static_cast<std::uint64_t>(c) + 0x9e3779b97f4a7c15ULL;
        h *= 1099511628211ULL;
    }
    return h;
}

int cmd_plot(const std::string& code_path, const std::string& axes_text, int width, int height,
             const std::optional<std::string>& svg_path) {
    const leekit::CodeDocument doc = leekit::code_from_json(leekit::load_json_file(code_path));
    const leekit::GroupHomomorphism phi =
        leekit::make_homomorphism(doc.n, doc.group, doc.images);
    const leekit::LeeShape anticode = leekit::canonical_double_sphere(doc.n, 2);
    const leekit::BijectionResult bij = leekit::bijection_check(phi, anticode);
    if (!bij.bijective) {
        std::cerr << "plot: the code does not tile (bijection check failed)\n";
        return kExitRefuted;
    }
    int ax = 0, ay = 1;
    if (std::sscanf(axes_text.c_str(), "%d,%d", &ax, &ay) != 2 || ax == ay || ax < 0 || ay < 0 ||
        ax >= doc.n || ay >= doc.n) {
        std::cerr << "plot: --axes expects two distinct axes below n, e.g. 0,1\n";
        return kExitUsage;
    }

    // Image index -> anticode point, to recover the translate of each cell.
    std::vector<leekit::LatticePoint> cell_of(static_cast<size_t>(doc.group.order()));
    for (const leekit::LatticePoint& p : anticode.points)
        cell_of[static_cast<size_t>(doc.group.index_of(leekit::hom_apply(phi, p)))] = p;

    auto translate_of = [&](std::int64_t x, std::int64_t y) {
        leekit::LatticePoint p = leekit::zero_point(doc.n);
        p.coords[static_cast<size_t>(ax)] = x;
        p.coords[static_cast<size_t>(ay)] = y;
        const leekit::LatticePoint& d =
            cell_of[static_cast<size_t>(doc.group.index_of(leekit::hom_apply(phi, p)))];
        return leekit::point_sub(p, d);
    };

    static const char glyphs[] =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    if (svg_path) {
        std::ostringstream svg;
        const int cell = 12;
        svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width * cell
            << "\" height=\"" << height * cell << "\">\n";
        for (int y = 0; y < height; ++y) {
            for (int x = 0; x < width; ++x) {
                const std::uint64_t h = point_hash(translate_of(x - width / 2, height / 2 - y));
                svg << "<rect x=\"" << x * cell << "\" y=\"" << y * cell << "\" width=\"" << cell
                    << "\" height=\"" << cell << "\" fill=\"hsl(" << h % 360 << ",70%,"
                    << 35 + (h / 360) % 40 << "%)\"/>\n";
            }
        }
        svg << "</svg>\n";
        std::ofstream out(*svg_path);
        out << svg.str();
        Json report;
        report["command"] = "plot";
        report["inputs"] = Json{{"code", code_path}, {"axes", axes_text}};
        report["artifacts"] = Json::array({*svg_path});
        emit_report(report);
    } else {
        for (int y = 0; y < height; ++y) {
            std::string row;
            for (int x = 0; x < width; ++x)
                row += glyphs[point_hash(translate_of(x - width / 2, height / 2 - y)) % 62];
            std::cout << row << '\n';
        }
    }
    return kExitOk;
}

// ----------------------------------------------------------------------- info

int cmd_info(std::optional<std::int64_t> n) {
    Json report;
    report["command"] = "info";
    report["version"] = kVersion;
    report["limits"] = Json{{"enumeration_bound", leekit::kDefaultEnumerationBound},
                            {"mass_multiplier", leekit::kDefaultMassMultiplier}};
    if (n) {
        if (*n < 3) {
            std::cerr << "info: --n must be >= 3\n";
            return kExitUsage;
        }
        Json facts;
        facts["n"] = *n;
        facts["group_order"] = 2 * *n * *n + 1;
        facts["anticode_size"] = leekit::ds_size_formula(*n, 2);
        Json classes = Json::array();
        for (const leekit::AbelianGroup& g : leekit::abelian_groups_of_order(2 * *n * *n + 1))
            classes.push_back(leekit::group_to_json(g));
        facts["group_classes"] = classes;
        facts["anticode_order_squarefree"] = leekit::is_squarefree(4 * *n * *n + 2);
        facts["n_mod_9"] = *n % 9;
        const leekit::PowerOf3Route route = leekit::pds_route_check(*n);
        facts["case5_power_check"] = route.both_powers;
        report["facts"] = facts;
    }
    emit_report(report);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"leekit: linear diameter-6 perfect Lee code toolkit"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "emit a verified witness and code");
    std::int64_t construct_n = 0;
    std::string construct_out = ".";
    construct->add_option("--n", construct_n, "dimension (3 or 11)")->required();
    construct->add_option("--out", construct_out, "output directory");

    // verify
    auto* verify = app.add_subcommand("verify", "check a witness file");
    std::string verify_path;
    verify->add_option("witness", verify_path, "witness JSON path")->required();

    // check-tiling
    auto* tiling = app.add_subcommand("check-tiling", "check a code file tiles Z^n");
    std::string tiling_path;
    tiling->add_option("code", tiling_path, "code JSON path")->required();

    // search
    auto* search = app.add_subcommand("search", "exhaustive witness search");
    std::int64_t search_n = 0;
    std::optional<std::string> search_group, search_resume;
    std::string search_budget;
    bool search_no_canon = false;
    int search_threads = 1;
    std::int64_t search_progress = 0;
    std::string search_out = ".";
    search->add_option("--n", search_n, "dimension")->required();
    search->add_option("--group", search_group, "invariant factors, e.g. 3,33");
    search->add_option("--resume", search_resume, "resume token path");
    search->add_option("--budget", search_budget, "time budget, e.g. 10s, 30m");
    search->add_flag("--no-canon", search_no_canon, "disable the symmetry quotient");
    search->add_option("--threads", search_threads, "worker threads");
    search->add_option("--progress", search_progress, "progress interval in ms (stderr)");
    search->add_option("--out", search_out, "output directory");

    // obstruct
    auto* obstruct = app.add_subcommand("obstruct", "emit nonexistence certificates");
    std::optional<std::int64_t> obstruct_n;
    std::optional<std::string> obstruct_range;
    obstruct->add_option("--n", obstruct_n, "single dimension");
    obstruct->add_option("--range", obstruct_range, "dimension range a..b");

    // plot
    auto* plot = app.add_subcommand("plot", "render a 2D cross-section of a tiling");
    std::string plot_path, plot_axes = "0,1";
    int plot_width = 60, plot_height = 24;
    std::optional<std::string> plot_svg;
    plot->add_option("code", plot_path, "code JSON path")->required();
    plot->add_option("--axes", plot_axes, "two axes, e.g. 0,1");
    plot->add_option("--width", plot_width, "grid width");
    plot->add_option("--height", plot_height, "grid height");
    plot->add_option("--svg", plot_svg, "write an SVG file instead of text");

    // info
    auto* info = app.add_subcommand("info", "toolkit and per-dimension facts");
    std::optional<std::int64_t> info_n;
    info->add_option("--n", info_n, "dimension to describe");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11 prints its own message; fold every usage failure into exit 2,
        // keeping --help at 0.
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (construct->parsed()) return cmd_construct(construct_n, construct_out);
        if (verify->parsed()) return cmd_verify(verify_path);
        if (tiling->parsed()) return cmd_check_tiling(tiling_path);
        if (search->parsed())
            return cmd_search(search_n, search_group, search_resume, search_budget,
                              search_no_canon, search_threads, search_progress, search_out);
        if (obstruct->parsed()) return cmd_obstruct(obstruct_n, obstruct_range);
        if (plot->parsed()) return cmd_plot(plot_path, plot_axes, plot_width, plot_height, plot_svg);
        if (info->parsed()) return cmd_info(info_n);
    } catch (const leekit::JsonFormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRefuted;
    }
    return kExitUsage;
}
