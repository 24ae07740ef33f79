#include "modlie/cli.hpp"

#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "modlie/errors.hpp"
#include "modlie/expr_io.hpp"
#include "modlie/vanest.hpp"

namespace modlie {

namespace {

std::string formalScalarStr(const FormalScalar& s) {
    std::string abs = s.absPart.empty() ? "0" : s.absPart.str();
    return "exp(" + abs + ") * sign(" + s.signPart.str() + ")";
}

std::string additiveStr(const AdditiveValue& v) {
    std::string out;
    if (!v.logPart.empty()) out = v.logPart.str();
    if (!v.ratPart.isZero()) {
        if (!out.empty()) out += " + ";
        out += v.ratPart.str();
    }
    return out.empty() ? "0" : out;
}

std::vector<std::string> familyNames(const GroupoidModel& model) {
    if (const auto* da = std::get_if<DiscreteActionModel>(&model)) {
        std::vector<std::string> out;
        for (const DiscreteGenerator& g : da->generators) out.push_back(g.name);
        return out;
    }
    return {std::holds_alternative<PairModel>(model) ? "pair" : "action"};
}

RatExpr randomPolyExpr(std::mt19937& rng, const ChartPtr& chart, int maxDegree) {
    auto coeff = [&](int span, int shift) {
        return mpq_class(static_cast<long>(rng() % span) - shift);
    };
    RatExpr out = RatExpr::constant(chart, coeff(5, 2));
    for (int t = 0; t < 3; ++t) {
        RatExpr mono = RatExpr::constant(chart, coeff(7, 3));
        unsigned deg = rng() % static_cast<unsigned>(maxDegree + 1);
        for (unsigned d = 0; d < deg && chart->dim() > 0; ++d)
            mono = mono * RatExpr::variable(chart, static_cast<int>(rng() % chart->dim()));
        out = out + mono;
    }
    return out;
}

// --- commands --------------------------------------------------------------------

RunResult runCheckAlgebroid(const Json& input, const CliOptions&) {
    LieAlgebroid A = algebroidFromJson(jsonField(input, "algebroid"));
    AlgebroidReport rep = checkAlgebroid(A);
    RunResult out;
    out.exitCode = rep.ok ? 0 : 1;
    out.report = Json{{"command", "check-algebroid"},
                      {"verdict", rep.ok ? "pass" : "fail"},
                      {"structure", toJson(rep)}};
    std::ostringstream text;
    if (rep.ok) {
        text << "check-algebroid: ok\n";
    } else {
        text << "check-algebroid: " << rep.issues.size() << " violated identities\n";
        for (const AlgebroidIssue& issue : rep.issues) {
            text << "  " << issue.kind << " at (";
            for (size_t i = 0; i < issue.index.size(); ++i)
                text << (i ? "," : "") << issue.index[i];
            text << "): residual " << issue.residual.str() << "\n";
        }
    }
    out.text = text.str();
    return out;
}

RunResult runModularClass(const Json& input, const CliOptions&) {
    LieAlgebroid A = algebroidFromJson(jsonField(input, "algebroid"));
    RunResult out;
    AlgebroidReport rep = checkAlgebroid(A);
    if (!rep.ok) {
        out.exitCode = 1;
        out.report = Json{{"command", "modular-class"},
                          {"verdict", "invalid algebroid"},
                          {"structure", toJson(rep)}};
        out.text = "modular-class: input fails the algebroid identities\n";
        return out;
    }
    Cochain1 mod = modularCocycle(A);
    std::string verdict;
    int code = 1;
    if (input.contains("witness")) {
        RatExpr f = exprFromJson(A.chart, input.at("witness"));
        if (isCoboundaryWitness(A, mod, f)) {
            verdict = "trivial (witnessed)";
            code = 0;
        } else {
            verdict = "witness rejected";
        }
    } else if (isZeroCochain(mod)) {
        verdict = "trivial (zero cocycle)";
        code = 0;
    } else {
        bool anchorZero = true;
        for (const auto& row : A.anchor)
            for (const RatExpr& e : row) anchorZero = anchorZero && e.isZero();
        // with a zero anchor every exact cocycle d_A f = rho(e_a) f vanishes,
        // so a nonzero cocycle is a nonzero class
        verdict = anchorZero ? "nontrivial (constant-coboundary test)"
                             : "nonzero cocycle, class undecided";
    }
    out.exitCode = code;
    out.report = Json{{"command", "modular-class"},
                      {"verdict", verdict},
                      {"cocycle", toJson(mod)}};
    std::ostringstream text;
    text << "modular cocycle = [";
    for (size_t i = 0; i < mod.size(); ++i) text << (i ? ", " : "") << mod[i].str();
    text << "]\nverdict: " << verdict << "\n";
    out.text = text.str();
    return out;
}

Json modelIssuesJson(const ModelReport& rep) {
    Json issues = Json::array();
    for (const ModelIssue& issue : rep.issues)
        issues.push_back({{"kind", issue.kind},
                          {"where", issue.where},
                          {"residual", issue.residual.str()}});
    return issues;
}

bool rejectBrokenModel(const char* command, const ModelReport& rep, RunResult& out) {
    if (rep.ok) return false;
    out.exitCode = 1;
    out.report = Json{{"command", command},
                      {"verdict", "invalid model"},
                      {"issues", modelIssuesJson(rep)}};
    out.text = std::string(command) + ": input fails the groupoid identities\n";
    return true;
}

RunResult runGroupoidCocycle(const Json& input, const CliOptions& opts) {
    GroupoidModel model = modelFromJson(jsonField(input, "model"));
    RunResult out;
    if (rejectBrokenModel("groupoid-cocycle", checkModel(model), out)) return out;
    Character chi = input.contains("character") ? characterFromJson(input.at("character"))
                                                : kDensityChar;
    const ChartPtr& base = baseChart(model);
    RatExpr sigma = input.contains("sigma") ? exprFromJson(base, input.at("sigma"))
                                            : RatExpr::one(base);
    MultCocycle c = tildeCocycle(model, canonicalGroupoidRep(model, chi), sigma);
    AdditiveCocycle add = additivePart(c);
    Trilean law = cocycleLawHolds(model, c);
    Trilean unit = unitValueIsOne(model, c);

    int liftTrials = 0, liftOk = 0;
    if (const auto* la = std::get_if<LieActionModel>(&model)) {
        std::mt19937 rng(opts.seed);
        RatExpr jac = tildeJacobian(*la);
        for (int t = 0; t < 3; ++t) {
            for (int attempt = 0; attempt < 10; ++attempt) {
                std::vector<RatExpr> beta;
                for (int k = 0; k < la->groupChart->dim(); ++k)
                    beta.push_back(randomPolyExpr(rng, base, opts.maxDegree));
                try {
                    RatExpr viaSection = tildeJacobianAlongSection(*la, beta);
                    std::vector<RatExpr> images = beta;
                    for (int jdx = 0; jdx < base->dim(); ++jdx)
                        images.push_back(RatExpr::variable(base, jdx));
                    RatExpr direct = jac.substitute(base, images);
                    ++liftTrials;
                    if (viaSection == direct) ++liftOk;
                } catch (const PoleError&) {
                    continue; // section hits a pole of the structure maps; redraw
                }
                break;
            }
        }
    }

    bool pass = law == Trilean::True && unit == Trilean::True && liftTrials == liftOk;
    out.exitCode = pass ? 0 : 1;
    Json families = Json::array();
    std::vector<std::string> names = familyNames(model);
    for (size_t i = 0; i < c.value.size(); ++i)
        families.push_back({{"family", names[i]},
                            {"value", toJson(c.value[i])},
                            {"additive", toJson(add.value[i])}});
    out.report = Json{{"command", "groupoid-cocycle"},
                      {"verdict", pass ? "pass" : "fail"},
                      {"character", Json{{"m", chi.m}, {"eps", chi.eps}}},
                      {"sigma", sigma.str()},
                      {"families", families},
                      {"cocycleLaw", trileanLabel(law)},
                      {"unitValue", trileanLabel(unit)}};
    std::ostringstream text;
    for (size_t i = 0; i < c.value.size(); ++i)
        text << "family " << names[i] << ": value = " << formalScalarStr(c.value[i])
             << "; additive = " << additiveStr(add.value[i]) << "\n";
    text << "cocycle law: " << trileanLabel(law) << "\nunit value: " << trileanLabel(unit)
         << "\n";
    if (std::holds_alternative<LieActionModel>(model)) {
        out.report["liftPerturbation"] = Json{{"trials", liftTrials}, {"agreed", liftOk}};
        text << "lift perturbation: " << liftOk << "/" << liftTrials << " sections agree\n";
    }
    text << "verdict: " << (pass ? "pass" : "fail") << "\n";
    out.text = text.str();
    return out;
}

RunResult runInvariantDensity(const Json& input, const CliOptions&) {
    GroupoidModel model = modelFromJson(jsonField(input, "model"));
    RunResult out;
    if (rejectBrokenModel("invariant-density", checkModel(model), out)) return out;
    Character chi = input.contains("character") ? characterFromJson(input.at("character"))
                                                : kDensityChar;
    const ChartPtr& base = baseChart(model);
    RatExpr sigma = exprFromJson(base, jsonField(input, "sigma"));
    GpdLineRep rep = canonicalGroupoidRep(model, chi);
    Trilean inv = invariantDensityCheck(model, rep, sigma);
    MultCocycle c = tildeCocycle(model, rep, sigma);
    Json families = Json::array();
    std::vector<std::string> names = familyNames(model);
    for (size_t i = 0; i < c.value.size(); ++i)
        families.push_back({{"family", names[i]}, {"value", toJson(c.value[i])}});
    out.exitCode = inv == Trilean::True ? 0 : 1;
    out.report = Json{{"command", "invariant-density"},
                      {"verdict", trileanLabel(inv)},
                      {"sigma", sigma.str()},
                      {"families", families}};
    out.text = "invariant-density: " + std::string(trileanLabel(inv)) + " for sigma = " +
               sigma.str() + "\n";
    return out;
}

RunResult runVanEst(const Json& input, const CliOptions& opts) {
    GroupoidModel model = modelFromJson(jsonField(input, "model"));
    const auto* la = std::get_if<LieActionModel>(&model);
    if (!la) throw DomainError("vanest needs a lie-action model");
    RunResult out;
    if (rejectBrokenModel("vanest", checkModel(model), out)) return out;
    LieAlgebroid induced = inducedAlgebroid(*la);
    AlgebroidReport arep = checkAlgebroid(induced);
    Cochain1 mod = modularCocycle(induced);
    MultCocycle c = tildeCocycle(model, canonicalGroupoidRep(model, kDensityChar),
                                 RatExpr::one(la->chart));
    Cochain1 ve = vanEst1(*la, additivePart(c));
    bool match = ve == mod;

    std::mt19937 rng(opts.seed);
    int chainTrials = 5, chainOk = 0;
    for (int t = 0; t < chainTrials; ++t) {
        RatExpr f = randomPolyExpr(rng, la->chart, opts.maxDegree);
        Cochain1 lhs = vanEst1(*la, differential0(model, f));
        if (lhs == dA0(induced, f)) ++chainOk;
    }

    bool pass = match && arep.ok && chainOk == chainTrials;
    out.exitCode = pass ? 0 : 1;
    out.report = Json{{"command", "vanest"},
                      {"verdict", pass ? "pass" : "fail"},
                      {"inducedStructure", toJson(arep)},
                      {"inducedModularCocycle", toJson(mod)},
                      {"vanEstOfGroupoidCocycle", toJson(ve)},
                      {"cocyclesMatch", match},
                      {"chainMap", Json{{"trials", chainTrials}, {"agreed", chainOk}}}};
    std::ostringstream text;
    text << "induced algebroid: " << (arep.ok ? "ok" : "fails identities") << "\n";
    text << "modular cocycle of induced algebroid = [";
    for (size_t i = 0; i < mod.size(); ++i) text << (i ? ", " : "") << mod[i].str();
    text << "]\ndifferentiated groupoid cocycle     = [";
    for (size_t i = 0; i < ve.size(); ++i) text << (i ? ", " : "") << ve[i].str();
    text << "]\nchain map on random coboundaries: " << chainOk << "/" << chainTrials
         << "\nverdict: " << (pass ? "pass" : "fail") << "\n";
    out.text = text.str();
    return out;
}

RunResult runOrientability(const Json& input, const CliOptions&) {
    RunResult out;
    ParityGraph graph;
    if (input.contains("graph")) {
        graph = graphFromJson(input.at("graph"));
    } else {
        GroupoidModel model = modelFromJson(jsonField(input, "model"));
        if (rejectBrokenModel("orientability", checkModel(model), out)) return out;
        CoverDecl cover = coverFromJson(baseChart(model), jsonField(input, "cover"));
        graph = w1tr(model, cover).graph;
    }
    OrientationDecision d = decideTrivial(graph);
    bool certified = d.trivial ? verifyAssignment(graph, d.assignment) : verifyCycle(graph, d.cycle);
    if (!certified) throw DomainError("orientation certificate failed re-verification");
    out.exitCode = d.trivial ? 0 : 1;
    out.report = Json{{"command", "orientability"},
                      {"verdict", d.trivial ? "trivial" : "nontrivial"},
                      {"graph", toJson(graph)},
                      {"decision", toJson(d)}};
    std::ostringstream text;
    if (d.trivial) {
        text << "orientability: trivial; orientation signs = [";
        for (size_t i = 0; i < d.assignment.sign.size(); ++i)
            text << (i ? ", " : "") << (d.assignment.sign[i] > 0 ? "+1" : "-1");
        text << "]\n";
    } else {
        text << "orientability: nontrivial; violating cycle through edges [";
        for (size_t i = 0; i < d.cycle.edgeIndices.size(); ++i)
            text << (i ? ", " : "") << d.cycle.edgeIndices[i];
        text << "]\n";
    }
    out.text = text.str();
    return out;
}

ModEvidence declaredModEvidence(const Json& input) {
    ModEvidence out;
    if (!input.contains("mod")) return out;
    const Json& m = input.at("mod");
    const Json& kind = jsonField(m, "kind");
    if (!kind.is_string()) throw DomainError("schema: mod kind must be a string");
    const std::string k = kind.get<std::string>();
    ChartPtr chart = m.contains("chart") ? chartFromJson(m.at("chart"))
                                         : makeChart(std::vector<std::string>{});
    if (k == "density-witness") {
        out.kind = ModEvidenceKind::DensityWitness;
        out.sigma = m.contains("sigma") ? exprFromJson(chart, m.at("sigma"))
                                        : RatExpr::one(chart);
    } else if (k == "fixed-point") {
        out.kind = ModEvidenceKind::FixedPointObstruction;
    } else if (k == "inconclusive") {
        out.kind = ModEvidenceKind::Inconclusive;
    } else {
        throw DomainError("schema: unknown mod evidence kind: " + k);
    }
    return out;
}

RunResult runVolumeFormCriterion(const Json& input, const CliOptions&) {
    RunResult out;
    VolumeFormReport rep;
    if (input.contains("graph")) {
        // explicit parity data with declared modular evidence
        rep = volumeFormCriterionFromGraph(graphFromJson(input.at("graph")),
                                           declaredModEvidence(input));
    } else {
        GroupoidModel model = modelFromJson(jsonField(input, "model"));
        if (rejectBrokenModel("volume-form-criterion", checkModel(model), out)) return out;
        const ChartPtr& base = baseChart(model);
        CoverDecl cover = coverFromJson(base, jsonField(input, "cover"));
        RatExpr sigma = input.contains("sigma") ? exprFromJson(base, input.at("sigma"))
                                                : RatExpr::one(base);
        std::vector<IsotropyArrow> candidates;
        if (input.contains("candidates"))
            candidates = candidatesFromJson(model, input.at("candidates"));
        ModEvidence ev = gatherModEvidence(model, sigma, candidates);
        rep = transverseVolumeFormCriterion(model, cover, ev);
    }
    out.exitCode = rep.verdict == VolumeFormVerdict::Yes ? 0 : 1;
    out.report = toJson(rep);
    out.report["command"] = "volume-form-criterion";
    std::ostringstream text;
    text << "volume-form-criterion: " << verdictLabel(rep.verdict) << "\n";
    if (rep.verdict == VolumeFormVerdict::Yes) {
        for (size_t i = 0; i < rep.volumeForms.size(); ++i)
            text << "  " << rep.w1.graph.nodes[i].name << ": " << rep.volumeForms[i].str()
                 << " |dx|\n";
    }
    out.text = text.str();
    return out;
}

RunResult runIntegrateDensity(const Json& input, const CliOptions&) {
    ChartPtr chart = chartFromJson(jsonField(input, "chart"));
    RatExpr density = exprFromJson(chart, jsonField(input, "density"));
    std::vector<Interval> box = boxFromJson(jsonField(input, "box"));
    const Json& res = jsonField(input, "resolution");
    if (!res.is_number_integer() || res.get<long long>() < 1)
        throw DomainError("schema: resolution must be a positive integer");
    mpq_class value = integrateDensity(density, box, res.get<int>());
    RunResult out;
    out.exitCode = 0;
    out.report = Json{{"command", "integrate-density"},
                      {"value", rationalToJson(value)},
                      {"approx", value.get_d()}};
    std::ostringstream text;
    text << "integral = " << value.get_str() << " (~" << value.get_d() << ")\n";
    out.text = text.str();
    return out;
}

} // namespace

RunResult runCommand(const std::string& command, const std::string& inputPath,
                     const CliOptions& opts) {
    try {
        Json input = loadJsonFile(inputPath);
        if (command == "check-algebroid") return runCheckAlgebroid(input, opts);
        if (command == "modular-class") return runModularClass(input, opts);
        if (command == "groupoid-cocycle") return runGroupoidCocycle(input, opts);
        if (command == "invariant-density") return runInvariantDensity(input, opts);
        if (command == "vanest") return runVanEst(input, opts);
        if (command == "orientability") return runOrientability(input, opts);
        if (command == "volume-form-criterion") return runVolumeFormCriterion(input, opts);
        if (command == "integrate-density") return runIntegrateDensity(input, opts);
        RunResult out;
        out.exitCode = 2;
        out.report = Json{{"error", "unknown command: " + command}};
        out.text = "unknown command: " + command + "\n";
        return out;
    } catch (const ParseError& e) {
        RunResult out;
        out.exitCode = 2;
        out.report = Json{{"error", e.what()}};
        out.text = std::string("input error: ") + e.what() + "\n";
        return out;
    } catch (const PoleError& e) {
        RunResult out;
        out.exitCode = 1;
        out.report = Json{{"error", e.what()}};
        out.text = std::string("evaluation hit a pole: ") + e.what() + "\n";
        return out;
    } catch (const Error& e) {
        RunResult out;
        out.exitCode = 2;
        out.report = Json{{"error", e.what()}};
        out.text = std::string("input error: ") + e.what() + "\n";
        return out;
    }
}

int cliMain(int argc, const char* const* argv) {
    CLI::App app{"Exact modular cocycles, transverse characteristic classes and "
                 "orientability certificates for algebroid and groupoid models"};
    app.require_subcommand(1);
    CliOptions opts;
    app.add_flag("--json", opts.json, "emit the machine-readable report");
    app.add_option("--seed", opts.seed, "seed for the randomized property checks");
    app.add_option("--max-degree", opts.maxDegree, "degree bound for random polynomials")
        ->check(CLI::Range(0, 8));

    const std::pair<const char*, const char*> commands[] = {
        {"check-algebroid", "verify the anchor, antisymmetry and Jacobi identities"},
        {"modular-class", "modular cocycle of an algebroid with a triviality verdict"},
        {"groupoid-cocycle", "transverse density cocycle of a groupoid model"},
        {"invariant-density", "does the given density span an invariant section"},
        {"vanest", "compare the differentiated groupoid cocycle with the induced "
                   "algebroid cocycle"},
        {"orientability", "transverse orientation class on a cover"},
        {"volume-form-criterion", "combine orientability and modular evidence"},
        {"integrate-density", "exact midpoint integral of a density over a box"},
    };
    std::map<std::string, std::string> inputs;
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("input", inputs[name], "JSON problem file")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    for (const auto& [name, desc] : commands) {
        if (!app.get_subcommand(name)->parsed()) continue;
        RunResult result = runCommand(name, inputs[name], opts);
        if (opts.json) {
            result.report["exitCode"] = result.exitCode;
            std::cout << result.report.dump(2) << "\n";
        } else {
            std::cout << result.text;
        }
        return result.exitCode;
    }
    return 2;
}

} // namespace modlie
