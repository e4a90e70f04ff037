#pragma once

#include <cstddef>
#include <vector>

#include "fibarc/arrangement.hpp"
#include "fibarc/barcode.hpp"
#include "fibarc/presentation.hpp"
#include "fibarc/templates.hpp"
#include "fibarc/walk.hpp"

namespace fibarc {

/// Line arrangement, point locator and one barcode template per face.
/// Immutable once built; all queries are const.
class AugmentedArrangement {
  public:
    AugmentedArrangement() = default;

    /// Throws PreconditionError when the presentation is invalid.
    static AugmentedArrangement build(const Presentation& p, const TemplateOptions& options = {});

    /// Reassembles stored data. Anchors are recomputed from the presentation
    /// and must match the arrangement; templates must lie on template points.
    static AugmentedArrangement from_parts(Presentation p, Arrangement arr, DualGraph graph, Walk walk,
                                           std::vector<BarcodeTemplate> templates);

    const Presentation& presentation() const { return presentation_; }
    const GradedSupport& support() const { return support_; }
    const Arrangement& arrangement() const { return arr_; }
    const DualGraph& dual_graph() const { return graph_; }
    const Walk& walk() const { return walk_; }
    const std::vector<BarcodeTemplate>& templates() const { return templates_; }
    /// Counters from the template computation; zero after from_parts.
    const TemplateStats& stats() const { return stats_; }

    std::size_t total_template_pairs() const;
    std::size_t max_template_size() const;

  private:
    Presentation presentation_;
    GradedSupport support_;
    Arrangement arr_;
    DualGraph graph_;
    Walk walk_;
    std::vector<BarcodeTemplate> templates_;
    TemplateStats stats_;
};

struct QueryStats {
    int face = -1;
    std::size_t comparisons = 0;
    std::size_t pairs_pushed = 0;
};

/// Face whose template answers queries along `line`.
int select_face(const AugmentedArrangement& aug, const QueryLine& line, std::size_t* comparisons = nullptr);

/// Barcode of the module restricted to `line`, canonically sorted.
Barcode query_barcode(const AugmentedArrangement& aug, const QueryLine& line, QueryStats* stats = nullptr);

QueryStats query_stats(const AugmentedArrangement& aug, const QueryLine& line);

}  // namespace fibarc
