#include "modlie/cech.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "modlie/errors.hpp"

namespace modlie {

namespace {

std::string pointStr(const std::vector<mpq_class>& p) {
    std::string out = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) out += ", ";
        out += p[i].get_str();
    }
    return out + ")";
}

} // namespace

void validateCover(const ChartPtr& chart, const CoverDecl& cover) {
    if (!chart) throw DomainError("cover validation needs a chart");
    const size_t dim = static_cast<size_t>(chart->dim());
    if (cover.pieces.empty()) throw DomainError("cover has no pieces");
    std::set<std::string> names;
    for (const CoverPiece& piece : cover.pieces) {
        if (piece.name.empty()) throw DomainError("cover piece with empty name");
        if (!names.insert(piece.name).second)
            throw DomainError("duplicate cover piece name: " + piece.name);
        if (piece.box && piece.box->size() != dim)
            throw DomainError("box of piece " + piece.name + " has wrong dimension");
        if (piece.box) {
            for (const CoverBound& b : *piece.box)
                if (b.lo && b.hi && *b.lo > *b.hi)
                    throw DomainError("empty box interval in piece " + piece.name);
        }
        if (piece.basePoints.empty())
            throw DomainError("piece " + piece.name + " declares no components");
        for (const auto& p : piece.basePoints) {
            if (p.size() != dim)
                throw DomainError("base point of piece " + piece.name + " has wrong dimension");
            if (!pieceContains(piece, p))
                throw DomainError("base point " + pointStr(p) + " outside piece " + piece.name);
        }
    }
}

bool pieceContains(const CoverPiece& piece, const std::vector<mpq_class>& point) {
    if (!piece.box) return true;
    if (piece.box->size() != point.size()) return false;
    for (size_t j = 0; j < point.size(); ++j) {
        const CoverBound& b = (*piece.box)[j];
        if (b.lo && point[j] < *b.lo) return false;
        if (b.hi && point[j] > *b.hi) return false;
    }
    return true;
}

ParityGraph makeExplicitGraph(const std::vector<std::string>& nodeNames,
                              const std::vector<std::tuple<int, int, int>>& edges) {
    ParityGraph g;
    for (const std::string& name : nodeNames) {
        ParityNode n;
        n.name = name;
        g.nodes.push_back(std::move(n));
    }
    const int n = static_cast<int>(g.nodes.size());
    for (const auto& [from, to, sign] : edges) {
        if (from < 0 || from >= n || to < 0 || to >= n)
            throw DomainError("edge endpoint out of range");
        if (sign != 1 && sign != -1) throw DomainError("edge parity must be +1 or -1");
        g.edges.push_back(ParityEdge{from, to, sign});
    }
    return g;
}

ParityGraph tensorParityGraph(const ParityGraph& a, const ParityGraph& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size())
        throw DomainError("tensor of parity graphs needs a common skeleton");
    ParityGraph g;
    g.nodes = a.nodes;
    for (size_t i = 0; i < a.edges.size(); ++i) {
        const ParityEdge& ea = a.edges[i];
        const ParityEdge& eb = b.edges[i];
        if (ea.from != eb.from || ea.to != eb.to)
            throw DomainError("tensor of parity graphs needs matching edge endpoints");
        g.edges.push_back(ParityEdge{ea.from, ea.to, ea.sign * eb.sign});
    }
    return g;
}

namespace {

struct NodeIndex {
    // node id for (piece, component); resolution of points to nodes
    const CoverDecl& cover;
    std::vector<std::vector<int>> byPiece;

    explicit NodeIndex(const CoverDecl& c, ParityGraph& g) : cover(c) {
        for (size_t pi = 0; pi < c.pieces.size(); ++pi) {
            const CoverPiece& piece = c.pieces[pi];
            byPiece.emplace_back();
            for (size_t k = 0; k < piece.basePoints.size(); ++k) {
                ParityNode node;
                node.name = piece.basePoints.size() == 1
                                ? piece.name
                                : piece.name + "#" + std::to_string(k + 1);
                node.piece = static_cast<int>(pi);
                node.component = static_cast<int>(k);
                node.basePoint = piece.basePoints[k];
                byPiece.back().push_back(static_cast<int>(g.nodes.size()));
                g.nodes.push_back(std::move(node));
            }
        }
    }

    // The node of piece pi holding the point: unique component, or exact base
    // point match. -1 when the declaration cannot resolve it.
    int resolve(const std::vector<mpq_class>& point, size_t pi) const {
        const CoverPiece& piece = cover.pieces[pi];
        if (!pieceContains(piece, point)) return -1;
        if (piece.basePoints.size() == 1) return byPiece[pi][0];
        for (size_t k = 0; k < piece.basePoints.size(); ++k)
            if (piece.basePoints[k] == point) return byPiece[pi][k];
        return -1;
    }
};

using EdgeKey = std::tuple<int, int, int>;

EdgeKey edgeKey(int a, int b, int sign) { return {std::min(a, b), std::max(a, b), sign}; }

std::vector<mpq_class> evalMap(const std::vector<RatExpr>& map,
                               const std::vector<mpq_class>& point) {
    std::vector<mpq_class> out;
    out.reserve(map.size());
    for (const RatExpr& e : map) out.push_back(e.evalAt(point));
    return out;
}

} // namespace

ParityGraph buildParityGraph(const GroupoidModel& model, const CoverDecl& cover,
                             const std::vector<RatExpr>& signData) {
    validateCover(baseChart(model), cover);
    ParityGraph g;
    NodeIndex index(cover, g);

    std::set<EdgeKey> seen;
    auto addOnce = [&](int a, int b, int sign) {
        if (seen.insert(edgeKey(a, b, sign)).second) g.edges.push_back(ParityEdge{a, b, sign});
    };

    if (std::holds_alternative<PairModel>(model)) {
        // every two points are connected by an arrow with positive transverse sign
        for (size_t i = 0; i < g.nodes.size(); ++i)
            for (size_t j = i + 1; j < g.nodes.size(); ++j)
                addOnce(static_cast<int>(i), static_cast<int>(j), 1);
    } else if (const auto* da = std::get_if<DiscreteActionModel>(&model)) {
        if (signData.size() != da->generators.size())
            throw DomainError("sign data must hold one expression per generator");
        for (size_t gi = 0; gi < da->generators.size(); ++gi) {
            const DiscreteGenerator& gen = da->generators[gi];
            for (size_t ni = 0; ni < g.nodes.size(); ++ni) {
                const ParityNode& node = g.nodes[ni];
                mpq_class sv = signData[gi].evalAt(node.basePoint);
                if (sgn(sv) == 0)
                    throw DomainError("sign of generator " + gen.name + " vanishes at " +
                                      pointStr(node.basePoint) +
                                      "; declare finer components");
                std::vector<mpq_class> image = evalMap(gen.map, node.basePoint);
                std::set<int> targets;
                for (size_t pi = 0; pi < cover.pieces.size(); ++pi) {
                    int t = index.resolve(image, pi);
                    if (t >= 0) targets.insert(t);
                }
                if (targets.empty())
                    throw DomainError("image " + pointStr(image) + " of generator " + gen.name +
                                      " leaves the cover");
                for (int t : targets) g.edges.push_back(ParityEdge{static_cast<int>(ni), t,
                                                                   sgn(sv) > 0 ? 1 : -1});
            }
        }
        for (const ParityEdge& e : g.edges) seen.insert(edgeKey(e.from, e.to, e.sign));
    } else {
        // connected group of a LieAction model: sign is +1 at units, hence on
        // every arrow component reachable from them
        for (size_t i = 0; i < g.nodes.size(); ++i)
            addOnce(static_cast<int>(i), static_cast<int>(i), 1);
    }

    // identity transitions on overlaps
    for (size_t ni = 0; ni < g.nodes.size(); ++ni) {
        const ParityNode& node = g.nodes[ni];
        for (size_t pi = 0; pi < cover.pieces.size(); ++pi) {
            if (static_cast<int>(pi) == node.piece) continue;
            int t = index.resolve(node.basePoint, pi);
            if (t >= 0) addOnce(static_cast<int>(ni), t, 1);
        }
    }
    return g;
}

// --- parity decision -----------------------------------------------------------

namespace {

// union-find with parity, iterative find without path compression (graphs are
// small; certificates come from the BFS forest anyway)
class ParityUnion {
  public:
    explicit ParityUnion(int n) : parent_(n), par_(n, 1) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }

    std::pair<int, int> find(int x) const {
        int p = 1;
        while (parent_[x] != x) {
            p *= par_[x];
            x = parent_[x];
        }
        return {x, p};
    }

    // returns false when the edge contradicts the current parities
    bool unite(int a, int b, int sign) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) return pa * pb == sign;
        parent_[ra] = rb;
        par_[ra] = pa * pb * sign; // so that parity(a->rb) * parity(b->rb) == sign
        return true;
    }

  private:
    std::vector<int> parent_;
    std::vector<int> par_;
};

} // namespace

bool verifyAssignment(const ParityGraph& graph, const OrientationAssignment& a) {
    if (a.sign.size() != graph.nodes.size()) return false;
    for (int s : a.sign)
        if (s != 1 && s != -1) return false;
    for (const ParityEdge& e : graph.edges)
        if (a.sign[e.from] * a.sign[e.to] != e.sign) return false;
    return true;
}

bool verifyCycle(const ParityGraph& graph, const ViolatingCycle& c) {
    if (c.edgeIndices.empty()) return false;
    for (int idx : c.edgeIndices)
        if (idx < 0 || idx >= static_cast<int>(graph.edges.size())) return false;
    int product = 1;
    for (int idx : c.edgeIndices) product *= graph.edges[idx].sign;
    if (product != -1) return false;
    const ParityEdge& first = graph.edges[c.edgeIndices[0]];
    for (int start : {first.from, first.to}) {
        int head = start == first.from ? first.to : first.from;
        bool ok = true;
        for (size_t i = 1; i < c.edgeIndices.size(); ++i) {
            const ParityEdge& e = graph.edges[c.edgeIndices[i]];
            if (e.from == head) {
                head = e.to;
            } else if (e.to == head) {
                head = e.from;
            } else {
                ok = false;
                break;
            }
        }
        if (ok && head == start) return true;
    }
    return false;
}

OrientationDecision decideTrivial(const ParityGraph& graph) {
    const int n = static_cast<int>(graph.nodes.size());
    ParityUnion dsu(n);
    bool consistent = true;
    for (const ParityEdge& e : graph.edges)
        if (!dsu.unite(e.from, e.to, e.sign)) {
            consistent = false;
            break;
        }

    // BFS forest for the certificate
    std::vector<int> parity(n, 0), parentNode(n, -1), parentEdge(n, -1), depth(n, 0);
    std::vector<std::vector<std::pair<int, int>>> adj(n); // (neighbor, edge index)
    for (size_t i = 0; i < graph.edges.size(); ++i) {
        const ParityEdge& e = graph.edges[i];
        adj[e.from].push_back({e.to, static_cast<int>(i)});
        if (e.to != e.from) adj[e.to].push_back({e.from, static_cast<int>(i)});
    }
    for (int root = 0; root < n; ++root) {
        if (parity[root] != 0) continue;
        parity[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (auto [v, ei] : adj[u]) {
                if (parity[v] != 0) continue;
                parity[v] = parity[u] * graph.edges[ei].sign;
                parentNode[v] = u;
                parentEdge[v] = ei;
                depth[v] = depth[u] + 1;
                q.push(v);
            }
        }
    }

    int bad = -1;
    for (size_t i = 0; i < graph.edges.size(); ++i) {
        const ParityEdge& e = graph.edges[i];
        if (parity[e.from] * parity[e.to] != e.sign) {
            bad = static_cast<int>(i);
            break;
        }
    }

    OrientationDecision out;
    if (bad < 0) {
        if (!consistent) throw Error("parity decision disagrees with its certificate");
        out.trivial = true;
        out.assignment.sign = parity;
        if (!verifyAssignment(graph, out.assignment))
            throw Error("parity assignment failed re-verification");
        return out;
    }
    if (consistent) throw Error("parity decision disagrees with its certificate");
    out.trivial = false;
    // closed walk: bad edge, then the tree paths from its endpoints to their
    // lowest common ancestor
    int u = graph.edges[bad].from;
    int v = graph.edges[bad].to;
    std::vector<int> upU, upV;
    while (u != v) {
        if (depth[u] >= depth[v]) {
            upU.push_back(parentEdge[u]);
            u = parentNode[u];
        } else {
            upV.push_back(parentEdge[v]);
            v = parentNode[v];
        }
    }
    out.cycle.edgeIndices.push_back(bad);
    out.cycle.edgeIndices.insert(out.cycle.edgeIndices.end(), upV.begin(), upV.end());
    out.cycle.edgeIndices.insert(out.cycle.edgeIndices.end(), upU.rbegin(), upU.rend());
    if (!verifyCycle(graph, out.cycle)) throw Error("violating cycle failed re-verification");
    return out;
}

OrientationAssignment restrictAssignment(const OrientationAssignment& coarse,
                                         const std::vector<int>& parentNode) {
    OrientationAssignment fine;
    fine.sign.reserve(parentNode.size());
    for (int p : parentNode) {
        if (p < 0 || p >= static_cast<int>(coarse.sign.size()))
            throw DomainError("refinement parent index out of range");
        fine.sign.push_back(coarse.sign[p]);
    }
    return fine;
}

// --- orientability and the volume form criterion --------------------------------

W1Result w1tr(const GroupoidModel& model, const CoverDecl& cover) {
    std::vector<RatExpr> signData;
    if (const auto* da = std::get_if<DiscreteActionModel>(&model)) {
        for (int gi = 0; gi < static_cast<int>(da->generators.size()); ++gi)
            signData.push_back(tildeJacobian(*da, gi));
    }
    W1Result out;
    out.graph = buildParityGraph(model, cover, signData);
    out.decision = decideTrivial(out.graph);
    return out;
}

bool strictlyPositive(const RatExpr& e) {
    auto polyOk = [](const Poly& p) {
        if (p.isZero()) return false;
        bool hasConstant = false;
        for (const Term& t : p.terms()) {
            if (t.coeff <= 0) return false;
            bool constant = true;
            for (Exp k : t.mono) {
                if (k % 2 != 0) return false;
                if (k != 0) constant = false;
            }
            if (constant) hasConstant = true;
        }
        return hasConstant;
    };
    return polyOk(e.num()) && polyOk(e.den());
}

ModEvidence gatherModEvidence(const GroupoidModel& model, const RatExpr& sigmaCandidate,
                              const std::vector<IsotropyArrow>& candidates) {
    ModEvidence out;
    GpdLineRep dens = canonicalGroupoidRep(model, kDensityChar);
    if (strictlyPositive(sigmaCandidate) &&
        invariantDensityCheck(model, dens, sigmaCandidate) == Trilean::True) {
        out.kind = ModEvidenceKind::DensityWitness;
        out.sigma = sigmaCandidate;
        return out;
    }
    const ChartPtr& base = baseChart(model);
    AdditiveCocycle c = additivePart(tildeCocycle(model, dens, RatExpr::one(base)));
    auto cert = fixedPointObstruction(model, c, candidates);
    if (cert && verifyFixedPointCertificate(model, c, *cert)) {
        out.kind = ModEvidenceKind::FixedPointObstruction;
        out.obstruction = *cert;
        return out;
    }
    out.kind = ModEvidenceKind::Inconclusive;
    return out;
}

const char* verdictLabel(VolumeFormVerdict v) {
    switch (v) {
        case VolumeFormVerdict::Yes: return "yes";
        case VolumeFormVerdict::NoOrientation: return "no (w1)";
        case VolumeFormVerdict::NoModular: return "no (mod)";
        case VolumeFormVerdict::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

VolumeFormReport combineCriterion(W1Result w1, const ModEvidence& mod) {
    VolumeFormReport out;
    out.w1 = std::move(w1);
    out.mod = mod;
    if (!out.w1.decision.trivial) {
        out.verdict = VolumeFormVerdict::NoOrientation;
        return out;
    }
    if (mod.kind == ModEvidenceKind::DensityWitness) {
        out.verdict = VolumeFormVerdict::Yes;
        for (int s : out.w1.decision.assignment.sign) {
            RatExpr form = mod.sigma;
            if (s < 0) form = -form;
            out.volumeForms.push_back(form);
        }
        return out;
    }
    out.verdict = mod.kind == ModEvidenceKind::FixedPointObstruction
                      ? VolumeFormVerdict::NoModular
                      : VolumeFormVerdict::Unknown;
    return out;
}

} // namespace

VolumeFormReport transverseVolumeFormCriterion(const GroupoidModel& model, const CoverDecl& cover,
                                               const ModEvidence& mod) {
    return combineCriterion(w1tr(model, cover), mod);
}

VolumeFormReport volumeFormCriterionFromGraph(const ParityGraph& graph, const ModEvidence& mod) {
    W1Result w1;
    w1.graph = graph;
    w1.decision = decideTrivial(graph);
    return combineCriterion(std::move(w1), mod);
}

} // namespace modlie
