#include "fibarc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fibarc/error.hpp"

namespace fibarc {

namespace {

using nlohmann::json;

constexpr std::string_view kMagic = "FIBARC-PRESENTATION v1";
constexpr const char* kFormat = "fibarc-arrangement";
constexpr int kVersion = 1;

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(start, end - start);
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            const std::size_t b = i;
            while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
            if (i > b) line.tokens.push_back({raw.substr(b, i - b), b + 1});
        }
        if (!line.tokens.empty()) out.push_back(std::move(line));
        if (end == text.size()) break;
        start = end + 1;
    }
    return out;
}

template <class Int>
Int parse_int(const Line& line, const Token& t, std::string_view what) {
    Int v{};
    std::string_view s = t.text;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(line.number, t.column, "expected " + std::string(what) + ", found '" + std::string(t.text) + "'");
    }
    return v;
}

Rational parse_rational(const Line& line, const Token& t) {
    Rational r;
    if (!Rational::try_parse(t.text, r)) {
        throw ParseError(line.number, t.column, "expected an exact number, found '" + std::string(t.text) + "'");
    }
    return r;
}

const Line& expect_keyword(const std::vector<Line>& lines, std::size_t& at, std::string_view keyword, std::size_t last_line) {
    if (at >= lines.size()) throw ParseError(last_line + 1, 1, "expected '" + std::string(keyword) + "'");
    const Line& l = lines[at++];
    if (l.tokens[0].text != keyword || l.tokens.size() != 2) {
        throw ParseError(l.number, l.tokens[0].column, "expected '" + std::string(keyword) + " <n>'");
    }
    return l;
}

Grade parse_grade(const Line& line) {
    if (line.tokens.size() < 2) throw ParseError(line.number, line.tokens[0].column, "expected a grade '<x> <y>'");
    return {parse_rational(line, line.tokens[0]), parse_rational(line, line.tokens[1])};
}

json rational_json(const Rational& r) { return r.to_string(); }

json grade_json(const Grade& g) { return json::array({g.x.to_string(), g.y.to_string()}); }

json ext_grade_json(const ExtGrade& g) { return g ? grade_json(*g) : json("inf"); }

Rational rational_from(const json& j) {
    if (!j.is_string()) throw PreconditionError("expected a number string, found " + j.dump());
    return Rational::parse(j.get<std::string>());
}

Grade grade_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw PreconditionError("expected a grade [x, y], found " + j.dump());
    return {rational_from(j[0]), rational_from(j[1])};
}

ExtGrade ext_grade_from(const json& j) {
    if (j.is_string() && j.get<std::string>() == "inf") return std::nullopt;
    return grade_from(j);
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
    const auto lines = significant_lines(text);
    const std::size_t last_line = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
    std::size_t at = 0;
    if (lines.empty()) throw ParseError(1, 1, "empty input; expected '" + std::string(kMagic) + "'");
    {
        const Line& l = lines[at++];
        std::string joined;
        for (const Token& t : l.tokens) joined += (joined.empty() ? "" : " ") + std::string(t.text);
        if (joined != kMagic) throw ParseError(l.number, 1, "expected header '" + std::string(kMagic) + "'");
    }

    Presentation p;
    {
        const Line& l = expect_keyword(lines, at, "field", last_line);
        const auto prime = parse_int<std::uint32_t>(l, l.tokens[1], "a prime");
        if (prime > PrimeField::kMaxPrime || !is_prime(prime)) {
            throw ParseError(l.number, l.tokens[1].column, "field modulus " + std::string(l.tokens[1].text) + " is not a prime below 2^16");
        }
        p.prime = prime;
    }
    const PrimeField field(p.prime);

    std::vector<std::size_t> row_line, col_line;
    {
        const Line& l = expect_keyword(lines, at, "generators", last_line);
        const auto n0 = parse_int<std::size_t>(l, l.tokens[1], "a generator count");
        for (std::size_t i = 0; i < n0; ++i) {
            if (at >= lines.size()) throw ParseError(last_line + 1, 1, "missing generator lines");
            const Line& g = lines[at++];
            if (g.tokens.size() != 2) throw ParseError(g.number, g.tokens[0].column, "expected a generator grade '<x> <y>'");
            p.row_grades.push_back(parse_grade(g));
            row_line.push_back(g.number);
        }
    }
    {
        const Line& l = expect_keyword(lines, at, "relations", last_line);
        const auto n1 = parse_int<std::size_t>(l, l.tokens[1], "a relation count");
        for (std::size_t j = 0; j < n1; ++j) {
            if (at >= lines.size()) throw ParseError(last_line + 1, 1, "missing relation lines");
            const Line& r = lines[at++];
            if (r.tokens.size() < 3 || r.tokens[2].text != ":") {
                throw ParseError(r.number, r.tokens[0].column, "expected a relation '<x> <y> : <row>:<coef> ...'");
            }
            p.col_grades.push_back(parse_grade(r));
            SparseVec col;
            for (std::size_t k = 3; k < r.tokens.size(); ++k) {
                const Token& t = r.tokens[k];
                const auto colon = t.text.find(':');
                if (colon == std::string_view::npos) throw ParseError(r.number, t.column, "expected '<row>:<coef>'");
                const Token row_tok{t.text.substr(0, colon), t.column};
                const Token coef_tok{t.text.substr(colon + 1), t.column + colon + 1};
                const auto row = parse_int<long long>(r, row_tok, "a generator index");
                if (row < 0 || static_cast<std::size_t>(row) >= p.row_grades.size()) {
                    throw ParseError(r.number, t.column, "generator index " + std::string(row_tok.text) + " out of range");
                }
                const auto coef = parse_int<long long>(r, coef_tok, "an integer coefficient");
                const FieldElem c = field.from_int(coef);
                if (c.is_zero()) throw ParseError(r.number, coef_tok.column, "coefficient is zero in GF(" + std::to_string(p.prime) + ")");
                col.push_back({static_cast<int>(row), c});
            }
            std::stable_sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
            p.columns.push_back(std::move(col));
            col_line.push_back(r.number);
        }
    }
    if (at < lines.size()) throw ParseError(lines[at].number, lines[at].tokens[0].column, "unexpected content after relations");

    const auto violations = validate_presentation(p);
    if (!violations.empty()) {
        const Violation& v = violations.front();
        std::size_t line = 1;
        if (v.col >= 0) {
            line = col_line[static_cast<std::size_t>(v.col)];
        } else if (v.row >= 0) {
            line = row_line[static_cast<std::size_t>(v.row)];
        }
        throw ParseError(line, 1, v.message);
    }
    return p;
}

std::string format_presentation(const Presentation& p) {
    std::ostringstream out;
    out << kMagic << "\nfield " << p.prime << "\ngenerators " << p.num_rows() << "\n";
    for (const Grade& g : p.row_grades) out << g.x.to_string() << ' ' << g.y.to_string() << "\n";
    out << "relations " << p.num_cols() << "\n";
    for (std::size_t j = 0; j < p.num_cols(); ++j) {
        out << p.col_grades[j].x.to_string() << ' ' << p.col_grades[j].y.to_string() << " :";
        for (const Entry& e : p.columns[j]) out << ' ' << e.index << ':' << e.coef.value;
        out << "\n";
    }
    return out.str();
}

std::string save_arrangement(const AugmentedArrangement& aug) {
    const Presentation& p = aug.presentation();
    const Arrangement& arr = aug.arrangement();
    json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["prime"] = p.prime;
    j["generators"] = json::array();
    for (const Grade& g : p.row_grades) j["generators"].push_back(grade_json(g));
    j["relations"] = json::array();
    for (std::size_t c = 0; c < p.num_cols(); ++c) {
        json entries = json::array();
        for (const Entry& e : p.columns[c]) entries.push_back(json::array({e.index, e.coef.value}));
        j["relations"].push_back({{"grade", grade_json(p.col_grades[c])}, {"entries", entries}});
    }
    j["anchors"] = json::array();
    for (const Anchor& a : arr.anchors()) j["anchors"].push_back({{"point", grade_json(a.point)}, {"generic", a.generic}});
    j["box"] = {{"x_max", rational_json(arr.box().x_max)},
                {"y_min", rational_json(arr.box().y_min)},
                {"y_max", rational_json(arr.box().y_max)}};
    j["vertices"] = json::array();
    for (const Vertex& v : arr.vertices()) {
        j["vertices"].push_back(json::array({rational_json(v.x), rational_json(v.y), v.half_edge, v.artificial}));
    }
    j["half_edges"] = json::array();
    for (const HalfEdge& h : arr.half_edges()) j["half_edges"].push_back(json::array({h.origin, h.twin, h.next, h.prev, h.face, h.tag}));
    j["faces"] = json::array();
    for (const Face& f : arr.faces()) {
        j["faces"].push_back({{"half_edge", f.half_edge}, {"unbounded", f.unbounded}, {"rep", grade_json(f.rep)}});
    }
    j["dual_graph"] = json::array();
    for (const DualEdge& e : aug.dual_graph().edges) j["dual_graph"].push_back(json::array({e.a, e.b, e.line, e.weight}));
    j["walk"] = {{"faces", aug.walk().faces}, {"steps", aug.walk().steps}};
    j["templates"] = json::array();
    for (const BarcodeTemplate& t : aug.templates()) {
        json pairs = json::array();
        for (const TemplatePair& pair : t) pairs.push_back(json::array({grade_json(pair.birth), ext_grade_json(pair.death)}));
        j["templates"].push_back(pairs);
    }
    return j.dump(1) + "\n";
}

AugmentedArrangement load_arrangement(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; convert it to a line and column.
        const std::size_t offset = std::min(e.byte, text.size());
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
        const std::size_t nl = text.rfind('\n', offset == 0 ? 0 : offset - 1);
        const std::size_t column = nl == std::string_view::npos ? offset : offset - nl - 1;
        throw ParseError(line, std::max<std::size_t>(column, 1), "malformed JSON");
    }
    try {
        if (j.value("format", "") != kFormat) throw PreconditionError("not a fibarc arrangement file");
        if (j.value("version", 0) != kVersion) throw PreconditionError("unsupported arrangement version");

        Presentation p;
        p.prime = j.at("prime").get<std::uint32_t>();
        (void)PrimeField(p.prime);
        for (const json& g : j.at("generators")) p.row_grades.push_back(grade_from(g));
        for (const json& r : j.at("relations")) {
            p.col_grades.push_back(grade_from(r.at("grade")));
            SparseVec col;
            for (const json& e : r.at("entries")) col.push_back({e.at(0).get<int>(), {e.at(1).get<std::uint32_t>()}});
            p.columns.push_back(std::move(col));
        }

        std::vector<Anchor> anchors;
        for (const json& a : j.at("anchors")) anchors.push_back({grade_from(a.at("point")), a.at("generic").get<bool>()});
        const json& b = j.at("box");
        Box box{rational_from(b.at("x_max")), rational_from(b.at("y_min")), rational_from(b.at("y_max"))};
        std::vector<Vertex> vertices;
        for (const json& v : j.at("vertices")) {
            vertices.push_back({rational_from(v.at(0)), rational_from(v.at(1)), v.at(2).get<int>(), v.at(3).get<bool>()});
        }
        std::vector<HalfEdge> half_edges;
        for (const json& h : j.at("half_edges")) {
            if (h.size() != 6) throw PreconditionError("half-edge records have six fields");
            half_edges.push_back({h[0].get<int>(), h[1].get<int>(), h[2].get<int>(), h[3].get<int>(), h[4].get<int>(), h[5].get<int>()});
        }
        std::vector<Face> faces;
        for (const json& f : j.at("faces")) {
            faces.push_back({f.at("half_edge").get<int>(), f.at("unbounded").get<bool>(), grade_from(f.at("rep"))});
        }
        Arrangement arr = Arrangement::from_parts(std::move(anchors), box, std::move(vertices), std::move(half_edges), std::move(faces));

        DualGraph graph;
        graph.num_faces = static_cast<int>(arr.num_faces());
        for (const json& e : j.at("dual_graph")) {
            graph.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<std::uint64_t>()});
        }
        Walk walk{j.at("walk").at("faces").get<std::vector<int>>(), j.at("walk").at("steps").get<std::vector<int>>()};
        std::vector<BarcodeTemplate> templates;
        for (const json& t : j.at("templates")) {
            BarcodeTemplate bt;
            for (const json& pair : t) bt.push_back({grade_from(pair.at(0)), ext_grade_from(pair.at(1))});
            templates.push_back(std::move(bt));
        }
        return AugmentedArrangement::from_parts(std::move(p), std::move(arr), std::move(graph), std::move(walk),
                                                std::move(templates));
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("arrangement file has the wrong shape: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << contents;
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace fibarc
