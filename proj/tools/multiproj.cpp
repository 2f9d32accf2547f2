// multiproj: command line front end for multihomogeneous spectra and
// chamber decompositions.
//
//   multiproj relevance|proj|chambers|regrade <spec.json>
//             [--monomial e1,...,ek] [--dot out.dot] [--max-vars N] [--json out.json]
//
// Exit codes: 0 success (an empty spectrum included), 2 input error,
// 3 size limit exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "multiproj/chambers.hpp"
#include "multiproj/io.hpp"
#include "multiproj/proj.hpp"

namespace {

using namespace multiproj;

constexpr int exit_input = 2;
constexpr int exit_limit = 3;

struct Options {
    std::string command;
    std::string spec_path;
    std::string monomial;
    std::string dot_path;
    std::string json_path;
    std::string fan_text_path;
    std::string point;
    std::optional<std::size_t> max_vars;
    bool cliques = false;
};

IntVector parse_list(const std::string& text, const std::string& what) {
    IntVector out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) end = text.size();
        std::string item = text.substr(pos, end - pos);
        if (!io::is_integer_text(item)) throw InputError(what + ": malformed entry '" + item + "'");
        out.emplace_back(item);
        pos = end + 1;
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

void emit(const Options& opt, const io::Json& report) {
    const std::string text = io::dump(report);
    if (opt.json_path.empty()) std::cout << text;
    else write_file(opt.json_path, text);
}

int run(const Options& opt) {
    Limits limits = Limits::from_env();
    if (opt.max_vars) limits.max_vars = *opt.max_vars;
    const io::ProblemSpec spec = io::read_spec(opt.spec_path);
    const GradedPolyRing ring = spec.ring();

    if (opt.command == "relevance") {
        std::optional<Monomial> m;
        if (!opt.monomial.empty()) {
            m = Monomial{parse_list(opt.monomial, "--monomial")};
            check_monomial(ring, *m);
        }
        emit(opt, io::relevance_report(ring, m, limits));
    } else if (opt.command == "proj") {
        emit(opt, io::proj_report(build_proj(ring, limits), opt.cliques, limits));
    } else if (opt.command == "chambers") {
        EmbeddingReport rep = embedding_report(ring, spec.ample_class, spec.all_gen, limits);
        io::Json report = io::chambers_report(ring, rep);
        if (!opt.point.empty()) {
            IntVector w = parse_list(opt.point, "--point");
            ChamberLookup found = chamber_of(ring, w, limits);
            if (const auto* wall = std::get_if<WallPoint>(&found)) {
                report["query"] = io::Json{{"kind", "wall_point"}};
                report["query"].update(io::wall_point_to_json(*wall));
            } else {
                const Chamber& c = std::get<Chamber>(found);
                report["query"] = io::Json{{"kind", "chamber"},
                                           {"point", io::to_json(w)},
                                           {"chamber", *rep.fan.locate(c.sample_point)}};
            }
        }
        if (!opt.dot_path.empty()) write_file(opt.dot_path, io::chamber_dot(rep.fan));
        if (!opt.fan_text_path.empty()) write_file(opt.fan_text_path, io::fan_text(rep.fan));
        emit(opt, report);
    } else if (opt.command == "regrade") {
        emit(opt, io::regrade_report(spec, io::regrade_diff(spec, limits)));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multihomogeneous spectra of monomially graded polynomial rings"};
    app.require_subcommand(1, 1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("spec", opt.spec_path, "Problem specification (JSON, schema multiproj/1)")->required();
        sub->add_option("--json", opt.json_path, "Write the JSON report to this file instead of stdout");
        sub->add_option("--max-vars", opt.max_vars, "Variable limit for square-free enumeration");
    };
    CLI::App* relevance = app.add_subcommand("relevance", "Relevance of a monomial, or all relevant square-free monomials");
    add_common(relevance);
    relevance->add_option("--monomial", opt.monomial, "Exponent vector e1,...,ek");
    CLI::App* proj = app.add_subcommand("proj", "Charts, chart cones and separatedness of Proj");
    add_common(proj);
    proj->add_flag("--cliques", opt.cliques, "Also list the maximal separated chart collections");
    CLI::App* chambers = app.add_subcommand("chambers", "Chamber decomposition of the degree cone");
    add_common(chambers);
    chambers->add_option("--dot", opt.dot_path, "Write the chamber adjacency graph (Graphviz)");
    chambers->add_option("--fan-text", opt.fan_text_path, "Write the chamber model fans as ray and cone lists");
    chambers->add_option("--point", opt.point, "Locate the chamber of a degree w1,...,wr");
    CLI::App* regrade = app.add_subcommand("regrade", "Regrade along the specification's homomorphism and diff");
    add_common(regrade);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }
    opt.command = app.get_subcommands().front()->get_name();

    try {
        return run(opt);
    } catch (const InputError& e) {
        std::cerr << "multiproj: input error: " << e.what() << "\n";
        return exit_input;
    } catch (const LimitExceeded& e) {
        std::cerr << "multiproj: limit exceeded: " << e.what() << "\n";
        return exit_limit;
    }
}
