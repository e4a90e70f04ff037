#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fibarc/anchors.hpp"
#include "fibarc/arrangement.hpp"
#include "fibarc/line.hpp"
#include "fibarc/presentation.hpp"
#include "fibarc/reduction.hpp"
#include "fibarc/walk.hpp"

namespace fibarc {

/// S = supp β₀ ∪ supp β₁ together with a copy of the presentation whose rows
/// and columns are stably sorted colexicographically by grade. All template
/// computations index rows and columns of `sorted`.
struct GradedSupport {
    std::vector<Grade> points;              // distinct, colex-sorted
    std::vector<int> row_point;             // S index of each row of `sorted`
    std::vector<int> col_point;             // S index of each column of `sorted`
    std::vector<std::size_t> row_count;     // rows per S point (β₀ multiplicity)
    std::vector<std::size_t> col_count;     // columns per S point (β₁ multiplicity)
    Presentation sorted;

    /// S index of a grade, or -1.
    int index_of(const Grade& g) const;
};

GradedSupport graded_support(const Presentation& p);

/// Level sets of push along a line of positive finite slope, ordered along
/// the line. Each level set lists S indices in increasing order.
using Partition = std::vector<std::vector<int>>;
Partition partition_along_line(std::span<const Grade> points, const QueryLine& line);

/// The line dual to a point of the open half-plane x > 0.
QueryLine line_dual_to(const Grade& p);

enum class Crossing { Generic, Merge, Split };
const char* to_string(Crossing c);

/// Ordered partition S^Δ, template points P^Δ and the lift map of one face.
/// Level sets keep their elements in a linear extension of the partial order;
/// this is the order of the corresponding row and column blocks.
class LiftState {
  public:
    LiftState() = default;

    /// State of the face above every line: lift(s) = (max{t.x : t.y ≤ s.y}, s.y).
    static LiftState initial(std::vector<Grade> points);
    /// State read off a partition (template points are prefix joins).
    static LiftState from_partition(std::vector<Grade> points, Partition level_sets);

    const std::vector<Grade>& points() const { return points_; }
    const Partition& level_sets() const { return level_sets_; }
    const std::vector<Grade>& template_points() const { return template_points_; }
    int position_of(int s) const { return lift_of_[static_cast<std::size_t>(s)]; }
    const Grade& lift(int s) const { return template_points_[static_cast<std::size_t>(position_of(s))]; }

    /// Index j with P_j = α, or -1.
    int template_index(const Grade& alpha) const;

    Crossing classify(const Anchor& alpha) const;

    struct Update {
        Crossing kind;
        int j;  // index of α among the template points before the crossing
        // Generic case only: the blocks that trade places, in their old order.
        std::vector<int> lower;  // S_{j-1}
        std::vector<int> upper;  // S_j minus α
    };

    /// Moves the state across the line dual to α.
    Update cross(const Anchor& alpha);

    /// Level sets with their elements sorted, for comparison with partitions.
    Partition normalized() const;

  private:
    void reindex(std::size_t from);

    std::vector<Grade> points_;
    Partition level_sets_;
    std::vector<Grade> template_points_;
    std::vector<int> lift_of_;
};

struct TemplatePair {
    Grade birth;
    ExtGrade death;

    friend bool operator==(const TemplatePair&, const TemplatePair&) = default;
};

/// Canonical order: lexicographic by birth, then death with infinity last.
bool template_pair_less(const TemplatePair& a, const TemplatePair& b);

using BarcodeTemplate = std::vector<TemplatePair>;

/// Template read off an RU-decomposition whose logical rows and columns are
/// the rows and columns of `support.sorted` in the order recorded by `ru`.
BarcodeTemplate read_template(const GradedSupport& support, const LiftState& lift, const RUState& ru);

/// Matrix of the induced presentation in the current row/column order.
SparseMatrix induced_matrix(const GradedSupport& support, const RUState& ru);

/// True iff row and column labels are nondecreasing along the lift and
/// equally lifted blocks respect the partial order of the original grades.
bool strongly_ordered(const GradedSupport& support, const LiftState& lift, const RUState& ru);

/// Product of block multiplicities for a generic crossing, zero otherwise.
std::uint64_t crossing_weight(const GradedSupport& support, const LiftState& lift, const Anchor& alpha);

enum class UpdateStrategy { Vineyard, Global };

struct TemplateStep {
    std::size_t index;  // position along the walk
    int face;
    bool first_visit;
    std::optional<Crossing> crossing;  // empty at the initial face
    std::size_t transpositions;
    const LiftState& lift;
    const RUState& ru;
};

struct TemplateOptions {
    UpdateStrategy strategy = UpdateStrategy::Vineyard;
    /// Called once per walk position after the state reaches that face.
    std::function<void(const TemplateStep&)> on_step;
};

struct TemplateStats {
    std::size_t crossings = 0;
    std::size_t generic = 0;
    std::size_t merges = 0;
    std::size_t splits = 0;
    std::size_t transpositions = 0;
    std::size_t touched = 0;
    std::size_t max_touched_per_transposition = 0;
};

struct TemplateResult {
    std::vector<BarcodeTemplate> templates;  // indexed by face
    TemplateStats stats;
};

/// Walks the arrangement, updating lift state and RU-decomposition at each
/// crossing, and records each face's template on first visit. Revisits must
/// reproduce the stored template (InternalError otherwise).
TemplateResult compute_templates(const GradedSupport& support, const Arrangement& arr, const DualGraph& graph,
                                 const Walk& walk, const TemplateOptions& options = {});

/// Dual graph with the transposition-count weights of each crossing.
DualGraph weighted_dual_graph(const GradedSupport& support, const Arrangement& arr);

/// Face containing the dual of y = x - K for K beyond every point of S.
int initial_face(const GradedSupport& support, const Arrangement& arr);

}  // namespace fibarc
