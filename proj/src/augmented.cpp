#include "fibarc/augmented.hpp"

#include <algorithm>

#include "fibarc/error.hpp"

namespace fibarc {

AugmentedArrangement AugmentedArrangement::build(const Presentation& p, const TemplateOptions& options) {
    const auto violations = validate_presentation(p);
    if (!violations.empty()) throw PreconditionError("invalid presentation: " + violations.front().message);
    AugmentedArrangement aug;
    aug.presentation_ = p;
    aug.support_ = graded_support(p);
    aug.arr_ = Arrangement::build(compute_anchors(aug.support_.points));
    aug.graph_ = weighted_dual_graph(aug.support_, aug.arr_);
    aug.walk_ = mst_walk(aug.graph_, initial_face(aug.support_, aug.arr_));
    auto result = compute_templates(aug.support_, aug.arr_, aug.graph_, aug.walk_, options);
    aug.templates_ = std::move(result.templates);
    aug.stats_ = result.stats;
    return aug;
}

AugmentedArrangement AugmentedArrangement::from_parts(Presentation p, Arrangement arr, DualGraph graph, Walk walk,
                                                      std::vector<BarcodeTemplate> templates) {
    const auto violations = validate_presentation(p);
    if (!violations.empty()) throw PreconditionError("invalid presentation: " + violations.front().message);
    AugmentedArrangement aug;
    aug.support_ = graded_support(p);
    aug.presentation_ = std::move(p);

    const auto anchors = compute_anchors(aug.support_.points);
    if (anchors.size() != arr.anchors().size() ||
        !std::equal(anchors.begin(), anchors.end(), arr.anchors().begin(),
                    [](const Anchor& a, const Anchor& b) { return a.point == b.point && a.generic == b.generic; })) {
        throw PreconditionError("stored anchors do not match the presentation");
    }
    if (templates.size() != arr.num_faces()) throw PreconditionError("one template per face is required");
    if (graph.num_faces != static_cast<int>(arr.num_faces())) throw PreconditionError("dual graph does not match faces");
    for (const DualEdge& e : graph.edges) {
        if (e.a < 0 || e.b < 0 || e.a >= graph.num_faces || e.b >= graph.num_faces || e.line < 0 ||
            static_cast<std::size_t>(e.line) >= anchors.size()) {
            throw PreconditionError("dual graph edge out of range");
        }
    }
    for (const auto& msg : audit_walk(graph, walk, initial_face(aug.support_, arr))) {
        throw PreconditionError("stored walk is invalid: " + msg);
    }
    const std::size_t m = aug.presentation_.num_rows();
    const auto& pts = aug.support_.points;
    for (std::size_t f = 0; f < templates.size(); ++f) {
        const BarcodeTemplate& t = templates[f];
        if (t.size() > m) throw PreconditionError("template has more pairs than generators");
        const auto lift = LiftState::from_partition(pts, partition_along_line(pts, line_dual_to(arr.faces()[f].rep)));
        const auto& tp = lift.template_points();
        auto on_template = [&](const Grade& g) { return std::find(tp.begin(), tp.end(), g) != tp.end(); };
        for (const TemplatePair& pair : t) {
            if (pair.death && !pair.birth.less(*pair.death)) throw PreconditionError("template pair is not increasing");
            if (!on_template(pair.birth) || (pair.death && !on_template(*pair.death))) {
                throw PreconditionError("template of face " + std::to_string(f) + " uses a grade that is not a template point");
            }
        }
    }
    aug.arr_ = std::move(arr);
    aug.graph_ = std::move(graph);
    aug.walk_ = std::move(walk);
    aug.templates_ = std::move(templates);
    return aug;
}

std::size_t AugmentedArrangement::total_template_pairs() const {
    std::size_t n = 0;
    for (const auto& t : templates_) n += t.size();
    return n;
}

std::size_t AugmentedArrangement::max_template_size() const {
    std::size_t n = 0;
    for (const auto& t : templates_) n = std::max(n, t.size());
    return n;
}

namespace {

int lowest_rep_face(const Arrangement& arr, const std::vector<int>& faces) {
    if (faces.empty()) throw InternalError("cell without cofaces");
    return *std::min_element(faces.begin(), faces.end(), [&](int a, int b) {
        return LexLess{}(arr.faces()[static_cast<std::size_t>(a)].rep, arr.faces()[static_cast<std::size_t>(b)].rep);
    });
}

}  // namespace

int select_face(const AugmentedArrangement& aug, const QueryLine& line, std::size_t* comparisons) {
    const Arrangement& arr = aug.arrangement();
    if (line.is_vertical()) return arr.vertical_face(line.x(), comparisons);
    if (line.is_horizontal()) {
        const Cell c = arr.locate({Rational(0), -line.intercept()}, comparisons);
        switch (c.kind) {
            case Cell::Kind::Face: return c.id;
            case Cell::Kind::Edge: return arr.edges()[static_cast<std::size_t>(c.id)].face_a;
            case Cell::Kind::Vertex: return arr.edges()[static_cast<std::size_t>(arr.boundary_edge_below(c.id))].face_a;
        }
    }
    const Cell c = arr.locate(dual_point(line), comparisons);
    if (c.kind == Cell::Kind::Face) return c.id;
    return lowest_rep_face(arr, arr.cofaces(c));
}

Barcode query_barcode(const AugmentedArrangement& aug, const QueryLine& line, QueryStats* stats) {
    QueryStats local;
    local.face = select_face(aug, line, &local.comparisons);
    const BarcodeTemplate& t = aug.templates().at(static_cast<std::size_t>(local.face));
    Barcode out;
    for (const TemplatePair& pair : t) {
        ++local.pairs_pushed;
        ExtGrade a = push(line, pair.birth);
        ExtGrade b = pair.death ? push(line, *pair.death) : kInfinity;
        if (ext_lex_less(a, b)) out.push_back({*a, b});
    }
    canonicalize(out);
    if (stats) *stats = local;
    return out;
}

QueryStats query_stats(const AugmentedArrangement& aug, const QueryLine& line) {
    QueryStats s;
    query_barcode(aug, line, &s);
    return s;
}

}  // namespace fibarc
