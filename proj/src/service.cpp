#include "fibarc/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include "fibarc/error.hpp"
#include "fibarc/walk.hpp"

namespace fibarc {

namespace {

using nlohmann::ordered_json;

ordered_json num(const Rational& r) { return r.to_string(); }
ordered_json point(const Grade& g) { return ordered_json::array({g.x.to_string(), g.y.to_string()}); }
ordered_json ext_point(const ExtGrade& g) { return g ? point(*g) : ordered_json("inf"); }

HttpResponse json_response(int status, const ordered_json& j) { return {status, "application/json", j.dump() + "\n"}; }

HttpResponse error(int status, const std::string& message) {
    return json_response(status, ordered_json{{"error", message}});
}

std::string arrangement_payload(const AugmentedArrangement& aug) {
    const Presentation& p = aug.presentation();
    const Arrangement& arr = aug.arrangement();
    ordered_json j;
    j["prime"] = p.prime;
    j["generators"] = ordered_json::array();
    for (const Grade& g : p.row_grades) j["generators"].push_back(point(g));
    j["relations"] = ordered_json::array();
    for (const Grade& g : p.col_grades) j["relations"].push_back(point(g));
    j["anchors"] = ordered_json::array();
    for (std::size_t k = 0; k < arr.anchors().size(); ++k) {
        const Anchor& a = arr.anchors()[k];
        j["anchors"].push_back({{"id", k},
                                {"point", point(a.point)},
                                {"generic", a.generic},
                                {"dual_line", {{"slope", num(a.point.x)}, {"intercept", num(-a.point.y)}}}});
    }
    const auto& pts = aug.support().points;
    Rational x_min(0), x_max(1), y_min(0), y_max(1);
    if (!pts.empty()) {
        x_min = x_max = pts.front().x;
        y_min = y_max = pts.front().y;
        for (const Grade& g : pts) {
            x_min = min(x_min, g.x);
            x_max = max(x_max, g.x);
            y_min = min(y_min, g.y);
            y_max = max(y_max, g.y);
        }
    }
    j["grade_bounds"] = {{"x_min", num(x_min)}, {"x_max", num(x_max)}, {"y_min", num(y_min)}, {"y_max", num(y_max)}};
    j["box"] = {{"x_min", "0"}, {"x_max", num(arr.box().x_max)}, {"y_min", num(arr.box().y_min)}, {"y_max", num(arr.box().y_max)}};
    j["vertices"] = ordered_json::array();
    for (std::size_t v = 0; v < arr.vertices().size(); ++v) {
        const Vertex& vx = arr.vertices()[v];
        if (vx.artificial) continue;
        j["vertices"].push_back({{"id", v}, {"point", point({vx.x, vx.y})}});
    }
    j["edges"] = ordered_json::array();
    for (std::size_t e = 0; e < arr.edges().size(); ++e) {
        const Edge& ed = arr.edges()[e];
        const HalfEdge& h = arr.half_edges()[static_cast<std::size_t>(ed.half_edge)];
        const Vertex& a = arr.vertices()[static_cast<std::size_t>(h.origin)];
        const Vertex& b = arr.vertices()[static_cast<std::size_t>(arr.half_edges()[static_cast<std::size_t>(h.twin)].origin)];
        j["edges"].push_back({{"id", e},
                              {"line", ed.line < 0 ? ordered_json("boundary") : ordered_json(ed.line)},
                              {"from", point({a.x, a.y})},
                              {"to", point({b.x, b.y})},
                              {"faces", ordered_json::array({ed.face_a, ed.face_b})}});
    }
    j["faces"] = ordered_json::array();
    for (std::size_t f = 0; f < arr.faces().size(); ++f) {
        ordered_json poly = ordered_json::array();
        for (const Grade& c : face_polygon(arr, static_cast<int>(f))) poly.push_back(point(c));
        j["faces"].push_back({{"id", f},
                              {"rep", point(arr.faces()[f].rep)},
                              {"unbounded", arr.faces()[f].unbounded},
                              {"polygon", poly},
                              {"template_size", aug.templates()[f].size()}});
    }
    return j.dump() + "\n";
}

std::string info_payload(const AugmentedArrangement& aug) {
    ordered_json j = ordered_json::object();
    for (const auto& [name, value] : arrangement_info(aug)) j[name] = value;
    return j.dump() + "\n";
}

// Single value of a query parameter; empty when absent.
std::optional<std::string> param(const QueryParams& params, const std::string& key) {
    const auto [lo, hi] = params.equal_range(key);
    if (lo == hi) return std::nullopt;
    if (std::next(lo) != hi) throw PreconditionError("parameter '" + key + "' given more than once");
    return lo->second;
}

bool is_infinite(const std::string& s) { return s == "inf" || s == "+inf" || s == "-inf" || s == "infinity"; }

}  // namespace

std::vector<std::pair<std::string, std::uint64_t>> arrangement_info(const AugmentedArrangement& aug) {
    const Arrangement& arr = aug.arrangement();
    const GridSize grid = grid_size(aug.support().points);
    return {
        {"prime", aug.presentation().prime},
        {"generators", aug.presentation().num_rows()},
        {"relations", aug.presentation().num_cols()},
        {"support_points", aug.support().points.size()},
        {"kappa_x", grid.kx},
        {"kappa_y", grid.ky},
        {"kappa", grid.kappa()},
        {"anchors", arr.anchors().size()},
        {"lines", arr.num_lines()},
        {"vertices", arr.num_vertices()},
        {"edges", arr.num_edges()},
        {"faces", arr.num_faces()},
        {"template_pairs", aug.total_template_pairs()},
        {"max_template_size", aug.max_template_size()},
        {"walk_length", aug.walk().steps.size()},
        {"walk_weight", walk_weight(aug.dual_graph(), aug.walk())},
    };
}

std::string barcode_json(const QueryLine& line, int face, const Barcode& barcode) {
    ordered_json j;
    if (line.is_vertical()) {
        j["line"] = {{"kind", "vertical"}, {"x", num(line.x())}};
    } else {
        j["line"] = {{"kind", "sloped"}, {"q", num(line.slope())}, {"r", num(line.intercept())}};
    }
    j["parameter"] = line.is_vertical() ? "y" : "x";
    j["face"] = face;
    j["intervals"] = ordered_json::array();
    for (const Interval& i : barcode) {
        j["intervals"].push_back({{"birth", point(i.birth)},
                                  {"death", ext_point(i.death)},
                                  {"birth_param", num(line.parameter(i.birth))},
                                  {"death_param", i.death ? num(line.parameter(*i.death)) : ordered_json("inf")}});
    }
    return j.dump() + "\n";
}

QueryService::QueryService(AugmentedArrangement aug)
    : aug_(std::move(aug)), arrangement_body_(arrangement_payload(aug_)), info_body_(info_payload(aug_)) {}

HttpResponse QueryService::handle(const std::string& path, const QueryParams& params) const {
    if (path == "/v1/arrangement") return {200, "application/json", arrangement_body_};
    if (path == "/v1/info") return {200, "application/json", info_body_};
    if (path == "/v1/barcode") return barcode(params);
    return error(404, "no such endpoint: " + path);
}

HttpResponse QueryService::barcode(const QueryParams& params) const {
    std::optional<std::string> q, r, vertical;
    try {
        q = param(params, "q");
        r = param(params, "r");
        vertical = param(params, "vertical");
    } catch (const PreconditionError& e) {
        return error(400, e.what());
    }
    for (const auto& [key, value] : params) {
        if (key != "q" && key != "r" && key != "vertical") return error(400, "unknown parameter '" + key + "'");
    }
    if (vertical && (q || r)) return error(400, "give either q and r, or vertical");
    if (!vertical && !(q && r)) return error(400, "give q and r, or vertical");

    auto number = [](const std::string& s, Rational& out) { return Rational::try_parse(s, out); };
    std::optional<QueryLine> line;
    if (vertical) {
        if (is_infinite(*vertical)) return error(422, "vertical position must be finite");
        Rational c;
        if (!number(*vertical, c)) return error(400, "vertical is not an exact number: '" + *vertical + "'");
        line = QueryLine::vertical(c);
    } else {
        if (is_infinite(*q)) return error(422, "infinite slope: use vertical=<x> instead");
        if (is_infinite(*r)) return error(422, "intercept must be finite");
        Rational qv, rv;
        if (!number(*q, qv)) return error(400, "q is not an exact number: '" + *q + "'");
        if (!number(*r, rv)) return error(400, "r is not an exact number: '" + *r + "'");
        if (qv.sign() < 0) return error(400, "slope must be nonnegative");
        line = QueryLine::with_slope(qv, rv);
    }
    try {
        QueryStats stats;
        const Barcode b = query_barcode(aug_, *line, &stats);
        return {200, "application/json", barcode_json(*line, stats.face, b)};
    } catch (const DomainError& e) {
        return error(422, e.what());
    }
}

struct HttpServer::Impl {
    const QueryService& service;
    httplib::Server server;
};

namespace {

constexpr const char* kIndexPage =
    "<!doctype html>\n<title>fibarc</title>\n<h1>fibarc query service</h1>\n<ul>\n"
    "<li><a href=\"/v1/info\">/v1/info</a></li>\n<li><a href=\"/v1/arrangement\">/v1/arrangement</a></li>\n"
    "<li><a href=\"/v1/barcode?q=1&amp;r=0\">/v1/barcode?q=1&amp;r=0</a></li>\n</ul>\n";

}  // namespace

HttpServer::HttpServer(const QueryService& service, std::string static_dir) : impl_(new Impl{service, {}}) {
    auto& svr = impl_->server;
    svr.Get(R"(/v1/.*)", [this](const httplib::Request& req, httplib::Response& res) {
        QueryParams params(req.params.begin(), req.params.end());
        const HttpResponse out = impl_->service.handle(req.path, params);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
    });
    if (!static_dir.empty()) {
        if (!svr.set_mount_point("/", static_dir)) throw Error("static directory '" + static_dir + "' does not exist");
    } else {
        svr.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_content(kIndexPage, "text/html"); });
    }
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) {
        const int bound = impl_->server.bind_to_any_port(host);
        if (bound < 0) throw Error("cannot bind to " + host);
        return bound;
    }
    if (!impl_->server.bind_to_port(host, port)) throw Error("cannot bind to " + host + ":" + std::to_string(port));
    return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace fibarc
