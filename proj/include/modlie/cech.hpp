#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modlie/groupoid.hpp"
#include "modlie/quadrature.hpp"
#include "modlie/ratexpr.hpp"

namespace modlie {

// --- covers and parity graphs --------------------------------------------------
//
// The sign (orientation) data of a groupoid model is reduced to a finite graph:
// one node per declared connected component of a cover piece, one +-1 edge per
// arrow family restricted to a component pair. Triviality of the resulting
// Z/2 class is decided exactly on the graph, and every verdict carries a
// certificate that is re-checked independently of the decision procedure.

// Closed box constraint for one coordinate; a missing bound is unbounded.
struct CoverBound {
    std::optional<mpq_class> lo;
    std::optional<mpq_class> hi;
};

// A piece of a cover: an optional box region (absent = whole chart) together
// with one rational base point per declared connected component. Connectivity
// is the caller's declaration; every sign is evaluated at the base points, so
// certificates stay sound even if the declaration is too coarse.
struct CoverPiece {
    std::string name;
    std::optional<std::vector<CoverBound>> box; // sized dim when present
    std::vector<std::vector<mpq_class>> basePoints;
};

struct CoverDecl {
    std::vector<CoverPiece> pieces;
};

// Throws DomainError on shape mismatches or base points outside their region.
void validateCover(const ChartPtr& chart, const CoverDecl& cover);

bool pieceContains(const CoverPiece& piece, const std::vector<mpq_class>& point);

struct ParityNode {
    std::string name;
    int piece = -1;     // -1 for explicit graphs without cover provenance
    int component = -1;
    std::vector<mpq_class> basePoint;
};

struct ParityEdge {
    int from = 0;
    int to = 0;
    int sign = 1; // +1 or -1
};

struct ParityGraph {
    std::vector<ParityNode> nodes;
    std::vector<ParityEdge> edges;
};

ParityGraph makeExplicitGraph(const std::vector<std::string>& nodeNames,
                              const std::vector<std::tuple<int, int, int>>& edges);

// Edgewise product of the parities of two graphs over the same node and edge
// skeleton (tensor product of the underlying lines).
ParityGraph tensorParityGraph(const ParityGraph& a, const ParityGraph& b);

// One sign-labeled edge per arrow family and component pair, evaluated at the
// base points. signData holds one sign-carrying expression per arrow family
// (over the base chart for DiscreteAction; ignored for Pair and LieAction,
// whose families are sign-constant +1 across each component). Overlap edges
// (+1) connect components whose base point lies in another piece's region.
// Throws DomainError when a sign evaluates to zero at a base point or a
// generator image cannot be resolved to a node of the cover.
ParityGraph buildParityGraph(const GroupoidModel& model, const CoverDecl& cover,
                             const std::vector<RatExpr>& signData);

// --- parity decision -----------------------------------------------------------

struct OrientationAssignment {
    std::vector<int> sign; // +1 or -1 per node
};

struct ViolatingCycle {
    std::vector<int> edgeIndices; // closed walk whose parity product is -1
};

struct OrientationDecision {
    bool trivial = false;
    OrientationAssignment assignment; // filled when trivial
    ViolatingCycle cycle;             // filled when not
};

// Union-find with parity; the returned certificate is rebuilt from a BFS
// forest and re-verified before it is handed out.
OrientationDecision decideTrivial(const ParityGraph& graph);

bool verifyAssignment(const ParityGraph& graph, const OrientationAssignment& a);
bool verifyCycle(const ParityGraph& graph, const ViolatingCycle& c);

// Restriction of a node assignment along a cover refinement: fine node i lies
// inside coarse node parentNode[i].
OrientationAssignment restrictAssignment(const OrientationAssignment& coarse,
                                         const std::vector<int>& parentNode);

// --- transverse orientability and the volume form criterion ---------------------

struct W1Result {
    ParityGraph graph;
    OrientationDecision decision;
};

// Transverse orientability: parity graph of the sign of the transverse
// Jacobian, decided on the given cover.
W1Result w1tr(const GroupoidModel& model, const CoverDecl& cover);

// Evidence about the vanishing of the modular class of a model.
enum class ModEvidenceKind { DensityWitness, FixedPointObstruction, Inconclusive };

struct ModEvidence {
    ModEvidenceKind kind = ModEvidenceKind::Inconclusive;
    RatExpr sigma;                                    // DensityWitness: invariant positive density
    std::optional<FixedPointCertificate> obstruction; // FixedPointObstruction
};

// Tries sigmaCandidate as an invariant everywhere-positive density; failing
// that, scans the isotropy candidates for a provably nonzero cocycle value.
// Every returned certificate is re-verified before it is returned.
ModEvidence gatherModEvidence(const GroupoidModel& model, const RatExpr& sigmaCandidate,
                              const std::vector<IsotropyArrow>& candidates);

enum class VolumeFormVerdict { Yes, NoOrientation, NoModular, Unknown };

const char* verdictLabel(VolumeFormVerdict v);

struct VolumeFormReport {
    VolumeFormVerdict verdict = VolumeFormVerdict::Unknown;
    W1Result w1;
    ModEvidence mod;
    std::vector<RatExpr> volumeForms; // Yes only: per-node form epsilon_i * sigma
};

// Invariant transverse volume forms exist iff an invariant positive density
// exists and the transverse orientation class is trivial. NoOrientation beats
// NoModular when both obstructions are present.
VolumeFormReport transverseVolumeFormCriterion(const GroupoidModel& model, const CoverDecl& cover,
                                               const ModEvidence& mod);

// Same combination on an explicitly given parity graph (used for unit-groupoid
// style models whose sign data is declared rather than computed).
VolumeFormReport volumeFormCriterionFromGraph(const ParityGraph& graph, const ModEvidence& mod);

// Exact positivity certificate for the density witness: num and den of the
// canonical form have all-even exponents, coefficients of one sign and a
// nonzero constant term, so the value is bounded away from zero on all of the
// chart. Sufficient, not necessary.
bool strictlyPositive(const RatExpr& e);

} // namespace modlie
