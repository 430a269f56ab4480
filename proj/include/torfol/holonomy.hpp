#ifndef TORFOL_HOLONOMY_HPP
#define TORFOL_HOLONOMY_HPP

#include <optional>
#include <vector>

#include "torfol/circle_map.hpp"
#include "torfol/section.hpp"

namespace torfol {

/// Error thrown when a leaf fails to reach the target section within the
/// arclength budget; carries the start point (a compact-leaf signal).
struct TrappedLeafError : Error {
    TrappedLeafError(const Vec2& start_, const std::string& where)
        : Error("trapped leaf from (" + std::to_string(start_.x) + "," +
                    std::to_string(start_.y) + "): a compact leaf blocks the strip",
                where),
          start(start_) {}
    Vec2 start;
};

/// A foliation and a section moved to standard position: the section is the
/// horizontal circle {y=0}, its class the x-generator. All holonomy
/// computations run in these coordinates.
struct SectionChart {
    CrossSection section;
    TorusDiffeo to_chart;
    TorusDiffeo from_chart;
    DirectionField F;       // chart image of the foliation
    int leaf_sign = +1;     // integration sign making leaves cross {y=0} upward
};

SectionChart make_section_chart(const DirectionField& F, const CrossSection& s,
                                int res = kDefaultGridRes);

struct StripHolonomy {
    CircleMapLift map;            // lift acting on the section parameter
    CrossSection source, target;
    int leaf_sign = +1;
};

/// Holonomy from s0 to s1 along leaves of F (both sections in the same class,
/// no compact leaf between them). Monotone lift sampled at n points; exact
/// commutation with the unit translation by construction. Throws
/// TrappedLeafError when a leaf cannot reach s1.
StripHolonomy compute_holonomy(const DirectionField& F, const CrossSection& s0,
                               const CrossSection& s1, int n = 256,
                               const IntegOptions& opts = {});

/// First-return map of F on the section (a complete transversal).
StripHolonomy return_map(const DirectionField& F, const CrossSection& s, int n = 256,
                         const IntegOptions& opts = {});

struct CompactLeaf {
    double root = 0.0;        // section parameter of the leaf crossing
    long long k = 0;          // lift offset: leaf class = frame * (k, sign)
    HomotopyClass cls;
    std::vector<Vec2> chart_polyline;  // traced leaf in chart coordinates
};

struct CompactLeafSet {
    std::vector<CompactLeaf> leaves;   // sorted by root
    std::vector<double> degenerate;    // tangential root candidates
    CrossSection section;
    bool empty() const { return leaves.empty(); }
    HomotopyClass common_class() const;
};

/// Fixed points of the lifted return map, polished and traced. Empty result is
/// valid ("no compact leaf found at this resolution" for irrational holonomy).
CompactLeafSet compact_leaf_set(const DirectionField& F, const CrossSection& s,
                                int n = 256, const IntegOptions& opts = {});

struct CompactLeafSummary {
    bool found = false;
    HomotopyClass cls;
    CompactLeafSet set;
    std::string note;
};

/// Locates the compact leaves of a single foliation by searching small-class
/// complete transversals. Not finding any is a resolution-limited statement.
CompactLeafSummary detect_compact_leaves(const DirectionField& F, int max_den = 8,
                                         std::uint64_t seed = 1,
                                         const IntegOptions& opts = {});

/// Oriented bisector field: transverse to both F and G wherever they are
/// transverse (margin at least |sin(dtheta/2)|).
DirectionField bisector_field(const DirectionField& F, const DirectionField& G,
                              int res = kDefaultGridRes);

struct TransversalOptions {
    int max_denominator = 8;
    double delta_sec = 1e-2;
    int seeds = 1000;
    std::uint64_t seed = 1;
    int offsets = 16;
    double tilt = 0.15;       // strategy-3 leaf tilt toward the partner field
    double r_fillet = 1e-2;   // corner rounding radius
    IntegOptions integ;
};

struct TransversalSearchResult {
    CrossSection section;
    int strategy = 0;  // 1 = straight line, 2 = bisector orbit, 3 = leaf surgery
    double margin_f = 0.0, margin_g = 0.0;
    std::string diagnostics;
};

/// Straight rational lines, then a closed orbit of the bisector field, then
/// the one-leaf-one-arc surgery. Every candidate is verified: margins above
/// delta_sec and statistical completeness for both foliations.
TransversalSearchResult find_common_transversal(const DirectionField& F,
                                                const DirectionField& G,
                                                const TransversalOptions& opts = {});

/// The individual strategies, exposed for targeted tests.
std::optional<TransversalSearchResult> transversal_from_lines(
    const DirectionField& F, const DirectionField& G, const TransversalOptions& opts,
    std::string* diag = nullptr);
std::optional<TransversalSearchResult> transversal_from_bisector_orbit(
    const DirectionField& F, const DirectionField& G, const TransversalOptions& opts,
    std::string* diag = nullptr);
std::optional<TransversalSearchResult> transversal_from_leaf_surgery(
    const DirectionField& F, const DirectionField& G, const CrossSection& partial,
    const TransversalOptions& opts, std::string* diag = nullptr);

/// A closed curve x = w(y) in section-chart coordinates (graph over the
/// crossing direction), used for annulus boundaries.
struct ChartCurve {
    Periodic1D w;
    double margin = 0.0;  // min transversality to both chart fields
};

struct AnnulusCluster {
    bool is_f = true;
    std::vector<double> roots;  // section parameters, increasing within the cluster
    double lo = 0.0, hi = 0.0;  // first and last root
};

/// The cyclic normal-form scaffolding: alternating maximal F- and G-annuli
/// located by root interleaving on a common transversal, with band boundaries
/// transverse to both foliations placed in the gaps.
struct MaximalAnnuli {
    CrossSection section;
    TorusDiffeo chart, chart_inv;
    DirectionField Fc, Gc;          // chart fields
    int k = 0;                      // number of maximal F-annuli
    std::vector<AnnulusCluster> clusters;       // 2k, alternating, F first
    std::vector<ChartCurve> cluster_left;       // per cluster: left band boundary
    std::vector<ChartCurve> cluster_right;      // per cluster: right band boundary
};

MaximalAnnuli maximal_annuli(const DirectionField& F, const DirectionField& G,
                             const CrossSection& s, int n = 256,
                             double delta_sec = 1e-2, const IntegOptions& opts = {});

}  // namespace torfol

#endif  // TORFOL_HOLONOMY_HPP
