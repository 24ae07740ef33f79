#include "modlie/algebroid.hpp"

#include "modlie/errors.hpp"

namespace modlie {

void validateShapes(const LieAlgebroid& A) {
    if (!A.chart) throw DomainError("algebroid without a chart");
    if (A.rank < 0) throw DomainError("negative rank");
    const std::size_t r = static_cast<std::size_t>(A.rank);
    const std::size_t n = static_cast<std::size_t>(A.dim());
    if (A.anchor.size() != r) throw DomainError("anchor must have one row per frame section");
    for (const auto& row : A.anchor) {
        if (row.size() != n) throw DomainError("anchor row length must match chart dimension");
        for (const auto& e : row) requireChart(e, A.chart);
    }
    if (A.bracket.size() != r) throw DomainError("bracket tensor must be rank^3");
    for (const auto& plane : A.bracket) {
        if (plane.size() != r) throw DomainError("bracket tensor must be rank^3");
        for (const auto& row : plane) {
            if (row.size() != r) throw DomainError("bracket tensor must be rank^3");
            for (const auto& e : row) requireChart(e, A.chart);
        }
    }
}

AlgebroidReport checkAlgebroid(const LieAlgebroid& A) {
    validateShapes(A);
    AlgebroidReport rep;
    const int r = A.rank;
    const int n = A.dim();
    auto flag = [&](const char* kind, std::vector<int> idx, RatExpr residual) {
        rep.ok = false;
        rep.issues.push_back({kind, std::move(idx), std::move(residual)});
    };

    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b)
            for (int c = 0; c < r; ++c) {
                RatExpr s = A.bracket[a][b][c] + A.bracket[b][a][c];
                if (!s.isZero()) flag("antisymmetry", {a + 1, b + 1, c + 1}, std::move(s));
            }

    // rho([e_a, e_b]) = [rho(e_a), rho(e_b)]  componentwise in d/dx_j
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b)
            for (int j = 0; j < n; ++j) {
                RatExpr lhs = RatExpr::zero(A.chart);
                for (int c = 0; c < r; ++c) lhs = lhs + A.bracket[a][b][c] * A.anchor[c][j];
                RatExpr rhs = RatExpr::zero(A.chart);
                for (int k = 0; k < n; ++k)
                    rhs = rhs + A.anchor[a][k] * A.anchor[b][j].derivative(k) -
                          A.anchor[b][k] * A.anchor[a][j].derivative(k);
                RatExpr res = lhs - rhs;
                if (!res.isZero()) flag("anchor", {a + 1, b + 1, j + 1}, std::move(res));
            }

    // sum over cyclic rotations of (a,b,c) of  [e_a, [e_b, e_c]]  in the frame
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b)
            for (int c = b + 1; c < r; ++c)
                for (int e = 0; e < r; ++e) {
                    RatExpr res = RatExpr::zero(A.chart);
                    int rot[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
                    for (auto& t : rot) {
                        int x = t[0], y = t[1], z = t[2];
                        for (int d = 0; d < r; ++d)
                            res = res + A.bracket[y][z][d] * A.bracket[x][d][e];
                        for (int k = 0; k < n; ++k)
                            res = res + A.anchor[x][k] * A.bracket[y][z][e].derivative(k);
                    }
                    if (!res.isZero()) flag("jacobi", {a + 1, b + 1, c + 1, e + 1}, std::move(res));
                }

    return rep;
}

Cochain1 dA0(const LieAlgebroid& A, const RatExpr& f) {
    requireChart(f, A.chart);
    Cochain1 out(static_cast<std::size_t>(A.rank), RatExpr::zero(A.chart));
    for (int a = 0; a < A.rank; ++a)
        for (int j = 0; j < A.dim(); ++j)
            out[static_cast<std::size_t>(a)] =
                out[static_cast<std::size_t>(a)] + A.anchor[a][j] * f.derivative(j);
    return out;
}

Cochain2 dA1(const LieAlgebroid& A, const Cochain1& omega) {
    if (static_cast<int>(omega.size()) != A.rank) throw DomainError("cochain size must match rank");
    const int r = A.rank;
    Cochain2 out(static_cast<std::size_t>(r),
                 std::vector<RatExpr>(static_cast<std::size_t>(r), RatExpr::zero(A.chart)));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            RatExpr v = RatExpr::zero(A.chart);
            for (int j = 0; j < A.dim(); ++j)
                v = v + A.anchor[a][j] * omega[static_cast<std::size_t>(b)].derivative(j) -
                    A.anchor[b][j] * omega[static_cast<std::size_t>(a)].derivative(j);
            for (int c = 0; c < r; ++c)
                v = v - A.bracket[a][b][c] * omega[static_cast<std::size_t>(c)];
            out[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::move(v);
        }
    return out;
}

bool isClosed(const LieAlgebroid& A, const Cochain1& omega) {
    for (const auto& row : dA1(A, omega))
        for (const auto& e : row)
            if (!e.isZero()) return false;
    return true;
}

bool isCoboundaryWitness(const LieAlgebroid& A, const Cochain1& omega, const RatExpr& f) {
    Cochain1 d = dA0(A, f);
    if (d.size() != omega.size()) return false;
    for (std::size_t a = 0; a < d.size(); ++a)
        if (omega[a] != d[a]) return false;
    return true;
}

AlgLineRep tensorRep(const AlgLineRep& a, const AlgLineRep& b) {
    if (a.omega.size() != b.omega.size()) throw DomainError("tensor of reps over different ranks");
    AlgLineRep out;
    out.omega.reserve(a.omega.size());
    for (std::size_t i = 0; i < a.omega.size(); ++i) out.omega.push_back(a.omega[i] + b.omega[i]);
    return out;
}

AlgLineRep canonicalRep(const LieAlgebroid& A, const Character& chi) {
    validateShapes(A);
    AlgLineRep rep;
    rep.omega.assign(static_cast<std::size_t>(A.rank), RatExpr::zero(A.chart));
    for (int a = 0; a < A.rank; ++a) {
        RatExpr s = RatExpr::zero(A.chart);
        for (int b = 0; b < A.rank; ++b) s = s + A.bracket[a][b][b];
        for (int j = 0; j < A.dim(); ++j) s = s + A.anchor[a][j].derivative(j);
        rep.omega[static_cast<std::size_t>(a)] = RatExpr::constant(A.chart, mpq_class(-chi.m)) * s;
    }
    if (!isClosed(A, rep.omega))
        throw DomainError("canonical cochain is not closed; structure data is not a Lie algebroid");
    return rep;
}

Cochain1 thetaCocycle(const LieAlgebroid& A, const AlgLineRep& rep) {
    if (static_cast<int>(rep.omega.size()) != A.rank)
        throw DomainError("representation rank mismatch");
    if (!isClosed(A, rep.omega)) throw DomainError("representation is not flat");
    return rep.omega;
}

Cochain1 modularCocycle(const LieAlgebroid& A) { return canonicalRep(A, kDensityChar).omega; }

bool isZeroCochain(const Cochain1& omega) {
    for (const auto& e : omega)
        if (!e.isZero()) return false;
    return true;
}

LieAlgebroid tangentAlgebroid(const ChartPtr& chart) {
    LieAlgebroid A;
    A.chart = chart;
    A.rank = chart->dim();
    const std::size_t n = static_cast<std::size_t>(A.rank);
    A.anchor.assign(n, std::vector<RatExpr>(n, RatExpr::zero(chart)));
    for (std::size_t i = 0; i < n; ++i) A.anchor[i][i] = RatExpr::one(chart);
    A.bracket.assign(n, std::vector<std::vector<RatExpr>>(
                            n, std::vector<RatExpr>(n, RatExpr::zero(chart))));
    return A;
}

LieAlgebroid lieAlgebraAlgebroid(int rank,
                                 const std::vector<std::vector<std::vector<mpq_class>>>& c) {
    LieAlgebroid A;
    A.chart = makeChart({});
    A.rank = rank;
    const std::size_t r = static_cast<std::size_t>(rank);
    A.anchor.assign(r, std::vector<RatExpr>{});
    if (c.size() != r) throw DomainError("structure constant tensor must be rank^3");
    A.bracket.assign(r, std::vector<std::vector<RatExpr>>(
                            r, std::vector<RatExpr>(r, RatExpr::zero(A.chart))));
    for (std::size_t a = 0; a < r; ++a) {
        if (c[a].size() != r) throw DomainError("structure constant tensor must be rank^3");
        for (std::size_t b = 0; b < r; ++b) {
            if (c[a][b].size() != r) throw DomainError("structure constant tensor must be rank^3");
            for (std::size_t k = 0; k < r; ++k)
                A.bracket[a][b][k] = RatExpr::constant(A.chart, c[a][b][k]);
        }
    }
    return A;
}

LieAlgebroid poissonAlgebroid(const ChartPtr& chart,
                              const std::vector<std::vector<RatExpr>>& pi) {
    const int n = chart->dim();
    const std::size_t un = static_cast<std::size_t>(n);
    if (pi.size() != un) throw DomainError("bivector must be dim x dim");
    for (const auto& row : pi) {
        if (row.size() != un) throw DomainError("bivector must be dim x dim");
        for (const auto& e : row) requireChart(e, chart);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (!(pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                  pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                     .isZero())
                throw DomainError("bivector is not antisymmetric");
    // Jacobi identity for the induced bracket {x_i, x_j} = pi[i][j]
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                RatExpr s = RatExpr::zero(chart);
                for (int l = 0; l < n; ++l) {
                    const auto ul = static_cast<std::size_t>(l);
                    s = s + pi[ul][static_cast<std::size_t>(i)] *
                                pi[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)].derivative(l) +
                        pi[ul][static_cast<std::size_t>(j)] *
                            pi[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].derivative(l) +
                        pi[ul][static_cast<std::size_t>(k)] *
                            pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].derivative(l);
                }
                if (!s.isZero())
                    throw DomainError("bivector fails the Jacobi identity at coordinates (" +
                                      std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                                      std::to_string(k + 1) + ")");
            }

    LieAlgebroid A;
    A.chart = chart;
    A.rank = n;
    A.anchor = pi;
    A.bracket.assign(un, std::vector<std::vector<RatExpr>>(
                             un, std::vector<RatExpr>(un, RatExpr::zero(chart))));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                A.bracket[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                         [static_cast<std::size_t>(k)] =
                    pi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].derivative(k);
    return A;
}

LieAlgebroid actionAlgebroid(const ChartPtr& chart,
                             const std::vector<std::vector<std::vector<mpq_class>>>& c,
                             const std::vector<std::vector<RatExpr>>& fields) {
    LieAlgebroid A = lieAlgebraAlgebroid(static_cast<int>(fields.size()), c);
    A.chart = chart;
    const std::size_t r = fields.size();
    A.anchor.assign(r, std::vector<RatExpr>(static_cast<std::size_t>(chart->dim()),
                                            RatExpr::zero(chart)));
    for (std::size_t a = 0; a < r; ++a) {
        if (static_cast<int>(fields[a].size()) != chart->dim())
            throw DomainError("action field length must match chart dimension");
        for (std::size_t j = 0; j < fields[a].size(); ++j) {
            requireChart(fields[a][j], chart);
            A.anchor[a][j] = fields[a][j];
        }
    }
    for (auto& plane : A.bracket)
        for (auto& row : plane)
            for (auto& e : row) {
                mpq_class v = e.isZero() ? mpq_class(0) : e.constantValue();
                e = RatExpr::constant(chart, v);
            }
    validateShapes(A);
    return A;
}

} // namespace modlie
