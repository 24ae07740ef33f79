#include "modlie/json_io.hpp"

#include <fstream>

#include "modlie/errors.hpp"
#include "modlie/expr_io.hpp"

namespace modlie {

namespace {

DomainError schemaError(const std::string& msg) { return DomainError("schema: " + msg); }

} // namespace

const Json& jsonField(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw schemaError(std::string("missing field '") + name + "'");
    return j.at(name);
}

Json loadJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what(), e.byte);
    }
}

mpq_class rationalFromJson(const Json& j) {
    if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<long long>()));
    if (!j.is_string()) throw schemaError("rational must be an integer or a \"p/q\" string");
    const std::string s = j.get<std::string>();
    size_t i = 0;
    auto digits = [&](size_t from) {
        size_t k = from;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        return k;
    };
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t numEnd = digits(i);
    if (numEnd == i) throw ParseError("bad rational literal: " + s, i);
    mpz_class num(s.substr(0, numEnd));
    mpz_class den(1);
    if (numEnd < s.size()) {
        if (s[numEnd] != '/') throw ParseError("bad rational literal: " + s, numEnd);
        size_t denEnd = digits(numEnd + 1);
        if (denEnd == numEnd + 1 || denEnd != s.size())
            throw ParseError("bad rational literal: " + s, numEnd + 1);
        den = mpz_class(s.substr(numEnd + 1));
        if (den == 0) throw ParseError("zero denominator in rational: " + s, numEnd + 1);
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

Json rationalToJson(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
    return Json(q.get_str());
}

std::vector<mpq_class> pointFromJson(const Json& j) {
    if (!j.is_array()) throw schemaError("point must be an array of rationals");
    std::vector<mpq_class> out;
    for (const Json& c : j) out.push_back(rationalFromJson(c));
    return out;
}

ChartPtr chartFromJson(const Json& j) {
    if (!j.is_array()) throw schemaError("chart must be an array of variable names");
    std::vector<std::string> names;
    for (const Json& n : j) {
        if (!n.is_string()) throw schemaError("chart entries must be strings");
        names.push_back(n.get<std::string>());
    }
    return makeChart(names);
}

RatExpr exprFromJson(const ChartPtr& chart, const Json& j) {
    if (j.is_number_integer())
        return RatExpr::constant(chart, mpq_class(static_cast<long>(j.get<long long>())));
    if (!j.is_string()) throw schemaError("expression must be a string");
    return parseRatExpr(chart, j.get<std::string>());
}

std::vector<RatExpr> exprListFromJson(const ChartPtr& chart, const Json& j) {
    if (!j.is_array()) throw schemaError("expected an array of expressions");
    std::vector<RatExpr> out;
    for (const Json& e : j) out.push_back(exprFromJson(chart, e));
    return out;
}

LieAlgebroid algebroidFromJson(const Json& j) {
    if (!j.is_object()) throw schemaError("algebroid must be an object");
    LieAlgebroid A;
    A.chart = chartFromJson(jsonField(j, "chart"));
    const Json& rk = jsonField(j, "rank");
    if (!rk.is_number_integer() || rk.get<long long>() < 0)
        throw schemaError("rank must be a nonnegative integer");
    A.rank = rk.get<int>();
    const Json& anchor = jsonField(j, "anchor");
    if (!anchor.is_array() || static_cast<int>(anchor.size()) != A.rank)
        throw schemaError("anchor must hold one row per frame section");
    for (const Json& row : anchor) {
        A.anchor.push_back(exprListFromJson(A.chart, row));
        if (static_cast<int>(A.anchor.back().size()) != A.chart->dim())
            throw schemaError("anchor row must hold one entry per coordinate");
    }
    const RatExpr zero = RatExpr::zero(A.chart);
    A.bracket.assign(A.rank, std::vector<std::vector<RatExpr>>(
                                 A.rank, std::vector<RatExpr>(A.rank, zero)));
    if (j.contains("brackets")) {
        const Json& brackets = j.at("brackets");
        if (!brackets.is_object()) throw schemaError("brackets must map \"a,b\" keys to rows");
        std::vector<std::vector<bool>> given(A.rank, std::vector<bool>(A.rank, false));
        for (auto it = brackets.begin(); it != brackets.end(); ++it) {
            const std::string& key = it.key();
            size_t comma = key.find(',');
            if (comma == std::string::npos)
                throw schemaError("bracket key must look like \"a,b\": " + key);
            int a = 0, b = 0;
            try {
                a = std::stoi(key.substr(0, comma));
                b = std::stoi(key.substr(comma + 1));
            } catch (const std::exception&) {
                throw schemaError("bracket key must hold two integers: " + key);
            }
            if (a < 1 || a > A.rank || b < 1 || b > A.rank)
                throw schemaError("bracket key out of range: " + key);
            std::vector<RatExpr> row = exprListFromJson(A.chart, it.value());
            if (static_cast<int>(row.size()) != A.rank)
                throw schemaError("bracket row must hold one entry per frame section");
            A.bracket[a - 1][b - 1] = row;
            given[a - 1][b - 1] = true;
        }
        for (int a = 0; a < A.rank; ++a)
            for (int b = 0; b < A.rank; ++b) {
                if (!given[a][b] || a == b || given[b][a]) continue;
                for (int c = 0; c < A.rank; ++c) A.bracket[b][a][c] = -A.bracket[a][b][c];
            }
    }
    validateShapes(A);
    return A;
}

GroupoidModel modelFromJson(const Json& j) {
    if (!j.is_object()) throw schemaError("model must be an object");
    const Json& kindField = jsonField(j, "kind");
    if (!kindField.is_string()) throw schemaError("model kind must be a string");
    const std::string kind = kindField.get<std::string>();
    ChartPtr chart = chartFromJson(jsonField(j, "chart"));
    if (kind == "pair") return GroupoidModel{makePairModel(chart)};
    if (kind == "discrete-action") {
        const Json& gens = jsonField(j, "generators");
        if (!gens.is_array() || gens.empty())
            throw schemaError("discrete-action needs a nonempty generator array");
        std::vector<DiscreteGenerator> out;
        for (const Json& g : gens) {
            DiscreteGenerator gen;
            const Json& name = jsonField(g, "name");
            if (!name.is_string()) throw schemaError("generator name must be a string");
            gen.name = name.get<std::string>();
            gen.map = exprListFromJson(chart, jsonField(g, "map"));
            gen.inverseMap = exprListFromJson(chart, jsonField(g, "inverse"));
            out.push_back(std::move(gen));
        }
        return GroupoidModel{makeDiscreteActionModel(chart, std::move(out))};
    }
    if (kind == "lie-action") {
        const Json& group = jsonField(j, "group");
        ChartPtr grp = chartFromJson(jsonField(group, "coords"));
        ChartPtr mulChart = concatCharts(grp, suffixChart(grp, "_r"));
        ChartPtr arrowChart = concatCharts(grp, chart);
        std::vector<RatExpr> mul = exprListFromJson(mulChart, jsonField(group, "mul"));
        std::vector<RatExpr> inv = exprListFromJson(grp, jsonField(group, "inv"));
        std::vector<RatExpr> action = exprListFromJson(arrowChart, jsonField(j, "action"));
        return GroupoidModel{makeLieActionModel(chart, grp, std::move(mul), std::move(inv),
                                                std::move(action))};
    }
    throw schemaError("unknown model kind: " + kind);
}

CoverDecl coverFromJson(const ChartPtr& chart, const Json& j) {
    if (!j.is_object()) throw schemaError("cover must be an object");
    const Json& pieces = jsonField(j, "pieces");
    if (!pieces.is_array() || pieces.empty()) throw schemaError("cover needs a piece array");
    CoverDecl out;
    for (const Json& p : pieces) {
        CoverPiece piece;
        const Json& name = jsonField(p, "name");
        if (!name.is_string()) throw schemaError("piece name must be a string");
        piece.name = name.get<std::string>();
        if (p.contains("box") && !p.at("box").is_null()) {
            const Json& box = p.at("box");
            if (!box.is_array()) throw schemaError("piece box must be an array of [lo, hi] pairs");
            std::vector<CoverBound> bounds;
            for (const Json& b : box) {
                if (!b.is_array() || b.size() != 2)
                    throw schemaError("box entries must be [lo, hi] pairs (null = unbounded)");
                CoverBound bound;
                if (!b[0].is_null()) bound.lo = rationalFromJson(b[0]);
                if (!b[1].is_null()) bound.hi = rationalFromJson(b[1]);
                bounds.push_back(std::move(bound));
            }
            piece.box = std::move(bounds);
        }
        const Json& basePoints = jsonField(p, "basePoints");
        if (!basePoints.is_array() || basePoints.empty())
            throw schemaError("piece " + piece.name + " needs base points");
        for (const Json& bp : basePoints) piece.basePoints.push_back(pointFromJson(bp));
        out.pieces.push_back(std::move(piece));
    }
    validateCover(chart, out);
    return out;
}

ParityGraph graphFromJson(const Json& j) {
    if (!j.is_object()) throw schemaError("graph must be an object");
    const Json& nodes = jsonField(j, "nodes");
    if (!nodes.is_array()) throw schemaError("graph nodes must be an array of names");
    std::vector<std::string> names;
    for (const Json& n : nodes) {
        if (!n.is_string()) throw schemaError("graph node names must be strings");
        names.push_back(n.get<std::string>());
    }
    std::vector<std::tuple<int, int, int>> edges;
    const Json& es = jsonField(j, "edges");
    if (!es.is_array()) throw schemaError("graph edges must be an array");
    for (const Json& e : es) {
        if (!e.is_array() || e.size() != 3) throw schemaError("edges must be [from, to, parity]");
        edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    }
    return makeExplicitGraph(names, edges);
}

Character characterFromJson(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "density") return kDensityChar;
        if (s == "orientation") return kOrientationChar;
        if (s == "top-dual") return kTopDualChar;
        throw schemaError("unknown character name: " + s);
    }
    if (!j.is_object()) throw schemaError("character must be a name or an {m, eps} object");
    const Json& m = jsonField(j, "m");
    const Json& eps = jsonField(j, "eps");
    if (!m.is_number_integer() || !eps.is_number_integer())
        throw schemaError("character fields m and eps must be integers");
    int e = eps.get<int>();
    if (e != 0 && e != 1) throw schemaError("character eps must be 0 or 1");
    return Character{m.get<long>(), e};
}

std::vector<IsotropyArrow> candidatesFromJson(const GroupoidModel& model, const Json& j) {
    if (!j.is_array()) throw schemaError("candidates must be an array");
    std::vector<IsotropyArrow> out;
    for (const Json& c : j) {
        IsotropyArrow arrow;
        if (c.contains("generator")) {
            const Json& g = c.at("generator");
            if (g.is_number_integer()) {
                arrow.generator = g.get<int>() - 1;
            } else if (g.is_string()) {
                const auto* da = std::get_if<DiscreteActionModel>(&model);
                if (!da) throw schemaError("named generators need a discrete-action model");
                arrow.generator = -1;
                for (size_t i = 0; i < da->generators.size(); ++i)
                    if (da->generators[i].name == g.get<std::string>())
                        arrow.generator = static_cast<int>(i);
                if (arrow.generator < 0)
                    throw schemaError("unknown generator: " + g.get<std::string>());
            } else {
                throw schemaError("generator must be a name or a 1-based index");
            }
        }
        if (c.contains("groupPoint")) arrow.groupPoint = pointFromJson(c.at("groupPoint"));
        arrow.basePoint = pointFromJson(jsonField(c, "basePoint"));
        out.push_back(std::move(arrow));
    }
    return out;
}

std::vector<Interval> boxFromJson(const Json& j) {
    if (!j.is_array()) throw schemaError("box must be an array of [lo, hi] pairs");
    std::vector<Interval> out;
    for (const Json& b : j) {
        if (!b.is_array() || b.size() != 2) throw schemaError("box entries must be [lo, hi]");
        out.push_back(Interval{rationalFromJson(b[0]), rationalFromJson(b[1])});
    }
    return out;
}

// --- report serialization -------------------------------------------------------

Json toJson(const AlgebroidReport& r) {
    Json issues = Json::array();
    for (const AlgebroidIssue& issue : r.issues)
        issues.push_back({{"kind", issue.kind},
                          {"index", issue.index},
                          {"residual", issue.residual.str()}});
    return Json{{"ok", r.ok}, {"issues", issues}};
}

Json toJson(const Cochain1& omega) {
    Json out = Json::array();
    for (const RatExpr& e : omega) out.push_back(e.str());
    return out;
}

Json toJson(const LogSum& s) {
    Json out = Json::array();
    for (const LogTerm& t : s.terms())
        out.push_back({{"coeff", rationalToJson(t.coeff)}, {"arg", t.arg.str()}});
    return out;
}

Json toJson(const AdditiveValue& v) {
    return Json{{"log", toJson(v.logPart)}, {"rat", v.ratPart.str()}};
}

Json toJson(const FormalScalar& s) {
    return Json{{"logAbs", toJson(s.absPart)}, {"sign", s.signPart.str()}};
}

Json toJson(const FixedPointCertificate& c) {
    Json logValue = Json::array();
    for (const auto& [coeff, arg] : c.logValue)
        logValue.push_back({rationalToJson(coeff), rationalToJson(arg)});
    Json arrow{{"basePoint", Json::array()}};
    for (const mpq_class& q : c.arrow.basePoint) arrow["basePoint"].push_back(rationalToJson(q));
    if (c.arrow.generator >= 0) arrow["generator"] = c.arrow.generator + 1;
    if (!c.arrow.groupPoint.empty()) {
        arrow["groupPoint"] = Json::array();
        for (const mpq_class& q : c.arrow.groupPoint) arrow["groupPoint"].push_back(rationalToJson(q));
    }
    return Json{{"arrow", arrow}, {"logValue", logValue}, {"ratValue", rationalToJson(c.ratValue)}};
}

Json toJson(const ParityGraph& g) {
    Json nodes = Json::array();
    for (const ParityNode& n : g.nodes) nodes.push_back(n.name);
    Json edges = Json::array();
    for (const ParityEdge& e : g.edges) edges.push_back({e.from, e.to, e.sign});
    return Json{{"nodes", nodes}, {"edges", edges}};
}

Json toJson(const OrientationDecision& d) {
    Json out{{"trivial", d.trivial}};
    if (d.trivial)
        out["assignment"] = d.assignment.sign;
    else
        out["cycle"] = d.cycle.edgeIndices;
    return out;
}

Json toJson(const ModEvidence& e) {
    switch (e.kind) {
        case ModEvidenceKind::DensityWitness:
            return Json{{"kind", "density-witness"}, {"sigma", e.sigma.str()}};
        case ModEvidenceKind::FixedPointObstruction:
            return Json{{"kind", "fixed-point"}, {"certificate", toJson(*e.obstruction)}};
        case ModEvidenceKind::Inconclusive: break;
    }
    return Json{{"kind", "inconclusive"}};
}

Json toJson(const VolumeFormReport& r) {
    Json forms = Json::array();
    for (const RatExpr& f : r.volumeForms) forms.push_back(f.str());
    return Json{{"verdict", verdictLabel(r.verdict)},
                {"w1", Json{{"graph", toJson(r.w1.graph)}, {"decision", toJson(r.w1.decision)}}},
                {"mod", toJson(r.mod)},
                {"volumeForms", forms}};
}

const char* trileanLabel(Trilean t) {
    switch (t) {
        case Trilean::True: return "true";
        case Trilean::False: return "false";
        case Trilean::Unknown: break;
    }
    return "unknown";
}

} // namespace modlie
