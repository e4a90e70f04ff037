#include <csignal>
#include <iostream>
#include <random>

#include <CLI11.hpp>

#include "fibarc/error.hpp"
#include "fibarc/io.hpp"
#include "fibarc/oracle.hpp"
#include "fibarc/service.hpp"
#include "fibarc/verify.hpp"

using namespace fibarc;

namespace {

QueryLine parse_line_option(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw PreconditionError("--line expects q,r");
    Rational q, r;
    if (!Rational::try_parse(text.substr(0, comma), q) || !Rational::try_parse(text.substr(comma + 1), r)) {
        throw PreconditionError("--line expects two exact numbers q,r; got '" + text + "'");
    }
    return QueryLine::with_slope(q, r);
}

int run_build(const std::string& in, const std::string& out, bool global) {
    const Presentation p = parse_presentation(read_file(in));
    for (const auto& w : minimality_warnings(p)) std::cerr << "warning: " << w << "\n";
    TemplateOptions options;
    options.strategy = global ? UpdateStrategy::Global : UpdateStrategy::Vineyard;
    const auto aug = AugmentedArrangement::build(p, options);
    write_file(out, save_arrangement(aug));
    std::cout << "wrote " << out << ": " << aug.arrangement().num_faces() << " faces, "
              << aug.arrangement().anchors().size() << " anchors, " << aug.total_template_pairs() << " template pairs\n";
    return 0;
}

int run_query(const std::string& file, const std::string& line_text, const std::string& vertical_text, bool as_json) {
    const auto aug = load_arrangement(read_file(file));
    std::optional<QueryLine> line;
    if (!line_text.empty()) {
        line = parse_line_option(line_text);
    } else {
        Rational c;
        if (!Rational::try_parse(vertical_text, c)) throw PreconditionError("--vertical expects an exact number");
        line = QueryLine::vertical(c);
    }
    QueryStats stats;
    const Barcode b = query_barcode(aug, *line, &stats);
    if (as_json) {
        std::cout << barcode_json(*line, stats.face, b);
    } else {
        for (const Interval& i : b) std::cout << to_string(i) << "\n";
    }
    return 0;
}

int run_verify(const std::string& in, std::size_t count, std::uint64_t seed) {
    const Presentation p = parse_presentation(read_file(in));
    const auto aug = AugmentedArrangement::build(p);
    std::mt19937_64 rng(seed);
    const auto lines = sample_lines(aug, rng, count);
    for (const SampledLine& s : lines) {
        const Barcode fast = query_barcode(aug, s.line);
        const Barcode oracle = oracle_barcode(p, s.line);
        const Barcode ranks = barcode_from_ranks(p, s.line);
        if (fast != oracle || oracle != ranks) {
            std::cout << "mismatch on " << s.line.to_string() << " (" << to_string(s.kind) << ")\n";
            std::cout << "arrangement:\n" << to_string(fast) << "\noracle:\n" << to_string(oracle)
                      << "\nrank invariant:\n" << to_string(ranks) << "\n";
            return 2;
        }
    }
    std::cout << "ok: " << lines.size() << " lines agree (" << aug.arrangement().num_faces() << " faces)\n";
    return 0;
}

int run_info(const std::string& file) {
    const auto aug = load_arrangement(read_file(file));
    for (const auto& [name, value] : arrangement_info(aug)) std::cout << name << ": " << value << "\n";
    return 0;
}

HttpServer* active_server = nullptr;

int run_serve(const std::string& file, const std::string& host, int port, const std::string& static_dir) {
    QueryService service(load_arrangement(read_file(file)));
    HttpServer server(service, static_dir);
    const int bound = server.bind(host, port);
    active_server = &server;
    std::signal(SIGINT, [](int) {
        if (active_server) active_server->stop();
    });
    std::signal(SIGTERM, [](int) {
        if (active_server) active_server->stop();
    });
    std::cout << "serving on http://" << host << ":" << bound << "\n" << std::flush;
    server.listen();
    active_server = nullptr;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Augmented arrangements and fibered barcode queries for bipersistence modules"};
    app.require_subcommand(1);

    std::string in, out, arr_file, line_text, vertical_text, host = "127.0.0.1", static_dir;
    bool global = false, as_json = false;
    std::size_t lines = 100;
    std::uint64_t seed = 1;
    int port = 8080;

    auto* build = app.add_subcommand("build", "Build an augmented arrangement from a presentation file");
    build->add_option("input", in, "Presentation file")->required();
    build->add_option("-o,--output", out, "Arrangement file to write")->required();
    build->add_flag("--global", global, "Use global updates instead of vineyard transpositions");

    auto* query = app.add_subcommand("query", "Print the barcode along one line");
    query->add_option("arrangement", arr_file, "Arrangement file")->required();
    auto* line_opt = query->add_option("--line", line_text, "Line y = q x + r, given as q,r");
    auto* vert_opt = query->add_option("--vertical", vertical_text, "Vertical line x = c");
    line_opt->excludes(vert_opt);
    query->add_flag("--json", as_json, "Print the service JSON payload");

    auto* verify = app.add_subcommand("verify", "Compare arrangement queries with the brute-force oracles");
    verify->add_option("input", in, "Presentation file")->required();
    verify->add_option("--lines", lines, "Number of sampled lines")->capture_default_str();
    verify->add_option("--seed", seed, "Sampling seed")->capture_default_str();

    auto* info = app.add_subcommand("info", "Print size counters of an arrangement");
    info->add_option("arrangement", arr_file, "Arrangement file")->required();

    auto* serve = app.add_subcommand("serve", "Serve queries over HTTP");
    serve->add_option("arrangement", arr_file, "Arrangement file")->required();
    serve->add_option("--port", port, "Port (0 picks a free one)")->capture_default_str();
    serve->add_option("--host", host, "Interface to bind")->capture_default_str();
    serve->add_option("--static", static_dir, "Directory of static assets served at /");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*build) return run_build(in, out, global);
        if (*query) {
            if (line_text.empty() && vertical_text.empty()) throw PreconditionError("give --line q,r or --vertical c");
            return run_query(arr_file, line_text, vertical_text, as_json);
        }
        if (*verify) return run_verify(in, lines, seed);
        if (*info) return run_info(arr_file);
        if (*serve) return run_serve(arr_file, host, port, static_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
