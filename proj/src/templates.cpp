#include "fibarc/templates.hpp"

#include <algorithm>
#include <numeric>

#include "fibarc/error.hpp"

namespace fibarc {

int GradedSupport::index_of(const Grade& g) const {
    auto it = std::lower_bound(points.begin(), points.end(), g, ColexLess{});
    if (it == points.end() || !(*it == g)) return -1;
    return static_cast<int>(it - points.begin());
}

GradedSupport graded_support(const Presentation& p) {
    GradedSupport s;
    s.points = support_grades(p);
    s.sorted.prime = p.prime;
    const auto row_order = colex_sort(p.row_grades);
    const auto col_order = colex_sort(p.col_grades);
    std::vector<int> new_row(row_order.size());
    for (std::size_t k = 0; k < row_order.size(); ++k) {
        new_row[row_order[k]] = static_cast<int>(k);
        s.sorted.row_grades.push_back(p.row_grades[row_order[k]]);
    }
    for (std::size_t k : col_order) {
        s.sorted.col_grades.push_back(p.col_grades[k]);
        SparseVec col;
        for (const Entry& e : p.columns[k]) col.push_back({new_row[static_cast<std::size_t>(e.index)], e.coef});
        std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
        s.sorted.columns.push_back(std::move(col));
    }
    s.row_count.assign(s.points.size(), 0);
    s.col_count.assign(s.points.size(), 0);
    for (const Grade& g : s.sorted.row_grades) {
        int i = s.index_of(g);
        s.row_point.push_back(i);
        ++s.row_count[static_cast<std::size_t>(i)];
    }
    for (const Grade& g : s.sorted.col_grades) {
        int i = s.index_of(g);
        s.col_point.push_back(i);
        ++s.col_count[static_cast<std::size_t>(i)];
    }
    return s;
}

Partition partition_along_line(std::span<const Grade> points, const QueryLine& line) {
    if (line.is_vertical() || line.slope().sign() <= 0) {
        throw PreconditionError("partitions are defined for lines of positive finite slope");
    }
    std::vector<Grade> pushed;
    for (const Grade& p : points) pushed.push_back(*push(line, p));
    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return LexLess{}(pushed[static_cast<std::size_t>(a)], pushed[static_cast<std::size_t>(b)]);
    });
    Partition out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || !(pushed[static_cast<std::size_t>(order[k])] == pushed[static_cast<std::size_t>(order[k - 1])])) {
            out.emplace_back();
        }
        out.back().push_back(order[k]);
    }
    return out;
}

QueryLine line_dual_to(const Grade& p) { return QueryLine::with_slope(p.x, -p.y); }

const char* to_string(Crossing c) {
    switch (c) {
        case Crossing::Generic: return "generic";
        case Crossing::Merge: return "merge";
        case Crossing::Split: return "split";
    }
    return "?";
}

LiftState LiftState::initial(std::vector<Grade> points) {
    LiftState st;
    const auto order = colex_sort(points);
    st.points_ = std::move(points);
    std::optional<Rational> running;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const Grade& p = st.points_[order[k]];
        const bool new_level = k == 0 || st.points_[order[k - 1]].y != p.y;
        if (new_level) st.level_sets_.emplace_back();
        st.level_sets_.back().push_back(static_cast<int>(order[k]));
        running = running ? max(*running, p.x) : p.x;
        const bool last_of_level = k + 1 == order.size() || st.points_[order[k + 1]].y != p.y;
        if (last_of_level) st.template_points_.push_back({*running, p.y});
    }
    st.lift_of_.assign(st.points_.size(), -1);
    st.reindex(0);
    return st;
}

LiftState LiftState::from_partition(std::vector<Grade> points, Partition level_sets) {
    LiftState st;
    st.points_ = std::move(points);
    st.level_sets_ = std::move(level_sets);
    std::optional<Grade> prefix;
    for (const auto& level : st.level_sets_) {
        if (level.empty()) throw PreconditionError("empty level set");
        for (int s : level) {
            const Grade& p = st.points_.at(static_cast<std::size_t>(s));
            prefix = prefix ? join(*prefix, p) : p;
        }
        st.template_points_.push_back(*prefix);
    }
    st.lift_of_.assign(st.points_.size(), -1);
    st.reindex(0);
    if (std::count(st.lift_of_.begin(), st.lift_of_.end(), -1) != 0) {
        throw PreconditionError("level sets do not cover every point");
    }
    return st;
}

void LiftState::reindex(std::size_t from) {
    for (std::size_t k = from; k < level_sets_.size(); ++k) {
        for (int s : level_sets_[k]) lift_of_[static_cast<std::size_t>(s)] = static_cast<int>(k);
    }
}

int LiftState::template_index(const Grade& alpha) const {
    for (std::size_t k = 0; k < template_points_.size(); ++k) {
        if (template_points_[k] == alpha) return static_cast<int>(k);
    }
    return -1;
}

Partition LiftState::normalized() const {
    Partition out = level_sets_;
    for (auto& level : out) std::sort(level.begin(), level.end());
    return out;
}

Crossing LiftState::classify(const Anchor& alpha) const {
    const int j = template_index(alpha.point);
    if (j < 0) throw InternalError("anchor " + alpha.point.to_string() + " is not a template point");
    if (alpha.generic) return Crossing::Generic;
    const auto& level = level_sets_[static_cast<std::size_t>(j)];
    if (level.size() == 1 && points_[static_cast<std::size_t>(level.front())] == alpha.point) return Crossing::Merge;
    return Crossing::Split;
}

LiftState::Update LiftState::cross(const Anchor& alpha) {
    const Crossing kind = classify(alpha);
    const int j = template_index(alpha.point);
    const auto ju = static_cast<std::size_t>(j);
    Update up{kind, j, {}, {}};

    // α, when in S, is the maximum of S_j and therefore its last element.
    auto& at_j = level_sets_[ju];
    const bool alpha_in_level = points_[static_cast<std::size_t>(at_j.back())] == alpha.point;
    std::vector<int> rest(at_j.begin(), alpha_in_level ? at_j.end() - 1 : at_j.end());
    for (int s : rest) {
        if (points_[static_cast<std::size_t>(s)] == alpha.point) throw InternalError("anchor not last in its level set");
    }

    auto join_of = [&](const std::vector<int>& level, const Grade* below) {
        Grade out = below ? *below : points_[static_cast<std::size_t>(level.front())];
        for (int s : level) out = join(out, points_[static_cast<std::size_t>(s)]);
        return out;
    };

    switch (kind) {
        case Crossing::Generic: {
            if (j == 0 || rest.empty()) throw InternalError("generic crossing without two blocks");
            up.lower = level_sets_[ju - 1];
            up.upper = rest;
            std::vector<int> merged = up.lower;
            if (alpha_in_level) merged.push_back(at_j.back());
            level_sets_[ju - 1] = rest;
            level_sets_[ju] = std::move(merged);
            template_points_[ju - 1] = join_of(rest, j >= 2 ? &template_points_[ju - 2] : nullptr);
            reindex(ju - 1);
            break;
        }
        case Crossing::Merge: {
            if (j == 0) throw InternalError("merge crossing at the first level set");
            level_sets_[ju - 1].push_back(at_j.front());
            level_sets_.erase(level_sets_.begin() + j);
            template_points_.erase(template_points_.begin() + (j - 1));
            reindex(ju - 1);
            break;
        }
        case Crossing::Split: {
            if (!alpha_in_level || rest.empty()) throw InternalError("split crossing without the anchor in its level set");
            const int a = at_j.back();
            level_sets_[ju] = rest;
            level_sets_.insert(level_sets_.begin() + j + 1, std::vector<int>{a});
            Grade p = join_of(rest, j >= 1 ? &template_points_[ju - 1] : nullptr);
            template_points_.insert(template_points_.begin() + j, std::move(p));
            reindex(ju);
            break;
        }
    }
    return up;
}

bool template_pair_less(const TemplatePair& a, const TemplatePair& b) {
    if (!(a.birth == b.birth)) return LexLess{}(a.birth, b.birth);
    return ext_lex_less(a.death, b.death);
}

BarcodeTemplate read_template(const GradedSupport& support, const LiftState& lift, const RUState& ru) {
    std::vector<Grade> rows, cols;
    rows.reserve(static_cast<std::size_t>(ru.rows()));
    cols.reserve(static_cast<std::size_t>(ru.cols()));
    for (int i = 0; i < ru.rows(); ++i) rows.push_back(lift.lift(support.row_point[static_cast<std::size_t>(ru.row_at(i))]));
    for (int j = 0; j < ru.cols(); ++j) cols.push_back(lift.lift(support.col_point[static_cast<std::size_t>(ru.col_at(j))]));
    auto bars = barcode_from_ru(ru, std::span<const Grade>(rows), std::span<const Grade>(cols),
                                [](const Grade& a, const Grade& b) { return a.leq(b); });
    BarcodeTemplate out;
    for (auto& b : bars) out.push_back({b.birth, b.death});
    std::sort(out.begin(), out.end(), template_pair_less);
    return out;
}

SparseMatrix induced_matrix(const GradedSupport& support, const RUState& ru) {
    SparseMatrix m(ru.rows(), ru.cols());
    for (int c = 0; c < ru.cols(); ++c) {
        SparseVec col;
        for (const Entry& e : support.sorted.columns[static_cast<std::size_t>(c)]) col.push_back({ru.row_position(e.index), e.coef});
        std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
        m.columns[static_cast<std::size_t>(ru.col_position(c))] = std::move(col);
    }
    return m;
}

namespace {

bool ordered_side(const LiftState& lift, const std::vector<int>& point_of, const std::vector<Grade>& grades, int n,
                  auto physical_at) {
    for (int a = 0; a < n; ++a) {
        const int pa = physical_at(a);
        const int la = lift.position_of(point_of[static_cast<std::size_t>(pa)]);
        if (a > 0 && la < lift.position_of(point_of[static_cast<std::size_t>(physical_at(a - 1))])) return false;
        for (int b = a + 1; b < n; ++b) {
            const int pb = physical_at(b);
            if (lift.position_of(point_of[static_cast<std::size_t>(pb)]) != la) break;
            if (grades[static_cast<std::size_t>(pb)].less(grades[static_cast<std::size_t>(pa)])) return false;
        }
    }
    return true;
}

}  // namespace

bool strongly_ordered(const GradedSupport& support, const LiftState& lift, const RUState& ru) {
    return ordered_side(lift, support.row_point, support.sorted.row_grades, ru.rows(), [&](int i) { return ru.row_at(i); }) &&
           ordered_side(lift, support.col_point, support.sorted.col_grades, ru.cols(), [&](int j) { return ru.col_at(j); });
}

std::uint64_t crossing_weight(const GradedSupport& support, const LiftState& lift, const Anchor& alpha) {
    if (!alpha.generic) return 0;
    const int j = lift.template_index(alpha.point);
    if (j < 1) throw InternalError("generic anchor is not an upper template point");
    std::uint64_t w0a = 0, w1a = 0, w0b = 0, w1b = 0;
    for (int s : lift.level_sets()[static_cast<std::size_t>(j - 1)]) {
        w0a += support.row_count[static_cast<std::size_t>(s)];
        w1a += support.col_count[static_cast<std::size_t>(s)];
    }
    for (int s : lift.level_sets()[static_cast<std::size_t>(j)]) {
        if (support.points[static_cast<std::size_t>(s)] == alpha.point) continue;
        w0b += support.row_count[static_cast<std::size_t>(s)];
        w1b += support.col_count[static_cast<std::size_t>(s)];
    }
    return w0a * w0b + w1a * w1b;
}

namespace {

// First row/column position of each level set.
std::vector<int> block_starts(const LiftState& lift, const std::vector<std::size_t>& counts) {
    std::vector<int> starts;
    int pos = 0;
    for (const auto& level : lift.level_sets()) {
        starts.push_back(pos);
        for (int s : level) pos += static_cast<int>(counts[static_cast<std::size_t>(s)]);
    }
    starts.push_back(pos);
    return starts;
}

int block_size(const std::vector<int>& level, const std::vector<std::size_t>& counts) {
    int n = 0;
    for (int s : level) n += static_cast<int>(counts[static_cast<std::size_t>(s)]);
    return n;
}

}  // namespace

TemplateResult compute_templates(const GradedSupport& support, const Arrangement& arr, const DualGraph& graph,
                                 const Walk& walk, const TemplateOptions& options) {
    if (walk.faces.empty() || walk.steps.size() + 1 != walk.faces.size()) throw PreconditionError("malformed walk");
    const int start = initial_face(support, arr);
    if (walk.faces.front() != start) throw PreconditionError("walk does not start at the initial face");

    const PrimeField field = support.sorted.field();
    LiftState lift = LiftState::initial(support.points);
    RUState ru = RUState::standard_reduce(support.sorted.matrix(), field);
    const std::size_t dims = static_cast<std::size_t>(ru.rows() + ru.cols());

    TemplateResult result;
    std::vector<std::optional<BarcodeTemplate>> stored(arr.num_faces());
    auto visit = [&](std::size_t index, int face, std::optional<Crossing> crossing, std::size_t transpositions) {
        BarcodeTemplate t = read_template(support, lift, ru);
        auto& slot = stored[static_cast<std::size_t>(face)];
        const bool first = !slot.has_value();
        if (first) {
            slot = std::move(t);
        } else if (*slot != t) {
            throw InternalError("revisiting face " + std::to_string(face) + " produced a different template");
        }
        if (options.on_step) options.on_step({index, face, first, crossing, transpositions, lift, ru});
    };
    visit(0, start, std::nullopt, 0);

    auto& stats = result.stats;
    for (std::size_t k = 0; k < walk.steps.size(); ++k) {
        const DualEdge& edge = graph.edges.at(static_cast<std::size_t>(walk.steps[k]));
        const int from = walk.faces[k];
        const int to = walk.faces[k + 1];
        if (!((edge.a == from && edge.b == to) || (edge.a == to && edge.b == from))) {
            throw PreconditionError("walk step does not follow its dual edge");
        }
        const Anchor& alpha = arr.anchors().at(static_cast<std::size_t>(edge.line));

        std::vector<int> row_starts, col_starts;
        const int j = lift.template_index(alpha.point);
        if (alpha.generic && j >= 1) {
            row_starts = block_starts(lift, support.row_count);
            col_starts = block_starts(lift, support.col_count);
        }
        const LiftState::Update up = lift.cross(alpha);
        ++stats.crossings;
        std::size_t transpositions = 0;
        switch (up.kind) {
            case Crossing::Merge: ++stats.merges; break;
            case Crossing::Split: ++stats.splits; break;
            case Crossing::Generic: {
                ++stats.generic;
                const auto ju = static_cast<std::size_t>(up.j);
                const int row_a = block_size(up.lower, support.row_count);
                const int row_b = block_size(up.upper, support.row_count);
                const int col_a = block_size(up.lower, support.col_count);
                const int col_b = block_size(up.upper, support.col_count);
                const int row0 = row_starts[ju - 1];
                const int col0 = col_starts[ju - 1];
                transpositions = static_cast<std::size_t>(row_a * row_b + col_a * col_b);
                if (options.strategy == UpdateStrategy::Vineyard) {
                    auto bubble = [&](int first, int na, int nb, bool rows) {
                        for (int t = 0; t < nb; ++t) {
                            for (int pos = first + na + t - 1; pos >= first + t; --pos) {
                                ru.reset_touched();
                                if (rows) {
                                    ru.transpose_rows(pos);
                                } else {
                                    ru.transpose_cols(pos);
                                }
                                stats.touched += ru.touched();
                                stats.max_touched_per_transposition =
                                    std::max(stats.max_touched_per_transposition, ru.touched());
                            }
                        }
                    };
                    bubble(row0, row_a, row_b, true);
                    bubble(col0, col_a, col_b, false);
                } else if (transpositions > 0) {
                    auto block_perm = [](int n, int first, int na, int nb) {
                        std::vector<int> perm(static_cast<std::size_t>(n));
                        std::iota(perm.begin(), perm.end(), 0);
                        for (int i = first; i < first + na; ++i) perm[static_cast<std::size_t>(i)] = i + nb;
                        for (int i = first + na; i < first + na + nb; ++i) perm[static_cast<std::size_t>(i)] = i - na;
                        return perm;
                    };
                    ru.reset_touched();
                    ru.global_update(block_perm(ru.rows(), row0, row_a, row_b), block_perm(ru.cols(), col0, col_a, col_b));
                    stats.touched += ru.touched();
                }
                stats.transpositions += transpositions;
                break;
            }
        }
        visit(k + 1, to, up.kind, transpositions);
    }
    (void)dims;

    for (std::size_t f = 0; f < stored.size(); ++f) {
        if (!stored[f]) throw InternalError("walk never reached face " + std::to_string(f));
        result.templates.push_back(std::move(*stored[f]));
    }
    return result;
}

DualGraph weighted_dual_graph(const GradedSupport& support, const Arrangement& arr) {
    DualGraph g = dual_graph(arr);
    std::vector<std::optional<LiftState>> states(arr.num_faces());
    for (DualEdge& e : g.edges) {
        auto& st = states[static_cast<std::size_t>(e.a)];
        if (!st) {
            const Grade& rep = arr.faces()[static_cast<std::size_t>(e.a)].rep;
            st = LiftState::from_partition(support.points, partition_along_line(support.points, line_dual_to(rep)));
        }
        e.weight = crossing_weight(support, *st, arr.anchors()[static_cast<std::size_t>(e.line)]);
    }
    return g;
}

int initial_face(const GradedSupport& support, const Arrangement& arr) {
    Rational k(0);
    for (const Grade& s : support.points) k = max(k, s.x - s.y);
    k += Rational(1);
    const Cell c = arr.locate({Rational(1), k});
    if (c.kind != Cell::Kind::Face || c.id != arr.top_face()) throw InternalError("initial face is not the top face");
    return c.id;
}

}  // namespace fibarc
