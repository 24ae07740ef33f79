#include "modlie/expr_io.hpp"

#include <cctype>
#include <sstream>

#include "modlie/errors.hpp"

namespace modlie {

namespace {

constexpr unsigned kMaxExponent = 512;

class Parser {
public:
    Parser(const ChartPtr& chart, std::string_view text) : chart_(chart), text_(text) {}

    RatExpr parse() {
        RatExpr e = expr();
        skipSpace();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    void skipSpace() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skipSpace();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    RatExpr expr() {
        RatExpr acc = term();
        while (true) {
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    RatExpr term() {
        RatExpr acc = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = acc * factor();
            } else if (c == '/') {
                std::size_t at = pos_;
                ++pos_;
                RatExpr d = factor();
                if (d.isZero()) throw ParseError("division by zero", at);
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    RatExpr factor() {
        RatExpr b = base();
        if (peek() == '^') {
            std::size_t at = pos_;
            ++pos_;
            unsigned long e = uintLiteral();
            if (e > kMaxExponent) throw ParseError("exponent too large", at);
            b = b.pow(static_cast<long>(e));
        }
        return b;
    }

    RatExpr base() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatExpr e = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t at = pos_;
            bool neg = false;
            if (c == '-') {
                neg = true;
                ++pos_;
            }
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected digits after '-'", at);
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits += text_[pos_++];
            mpq_class v(digits, 10);
            if (neg) v = -v;
            return RatExpr::constant(chart_, v);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                name += text_[pos_++];
            auto idx = chart_->indexOf(name);
            if (!idx) throw ParseError("unknown variable '" + name + "'", at);
            return RatExpr::variable(chart_, *idx);
        }
        throw ParseError("expected a number, variable, or '('", pos_);
    }

    unsigned long uintLiteral() {
        skipSpace();
        std::size_t at = pos_;
        std::string digits;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        if (digits.empty()) throw ParseError("expected an unsigned integer", at);
        if (digits.size() > 9) throw ParseError("exponent too large", at);
        return std::stoul(digits);
    }

    const ChartPtr& chart_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

// Renders one term without a leading sign; coeff must be positive.
std::string termBody(const Chart& chart, const Mono& mono, const mpz_class& coeff) {
    std::ostringstream out;
    bool haveVars = false;
    for (Exp e : mono)
        if (e != 0) haveVars = true;
    if (!haveVars) return coeff.get_str();
    bool first = true;
    if (coeff != 1) {
        out << coeff.get_str();
        first = false;
    }
    for (std::size_t i = 0; i < mono.size(); ++i) {
        if (mono[i] == 0) continue;
        if (!first) out << '*';
        first = false;
        out << chart.name(static_cast<int>(i));
        if (mono[i] > 1) out << '^' << mono[i];
    }
    return out.str();
}

std::string polyToString(const Chart& chart, const Poly& p) {
    if (p.isZero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& t : p.terms()) {
        if (first) {
            if (t.coeff < 0) {
                // no unary minus in the grammar: a leading negative term keeps
                // its sign inside the integer literal, e.g. "-1*x", "-3"
                bool haveVars = false;
                for (Exp e : t.mono)
                    if (e != 0) haveVars = true;
                if (haveVars)
                    out << t.coeff.get_str() << '*' << termBody(chart, t.mono, mpz_class(1));
                else
                    out << t.coeff.get_str();
            } else {
                out << termBody(chart, t.mono, t.coeff);
            }
            first = false;
        } else if (t.coeff < 0) {
            out << '-' << termBody(chart, t.mono, mpz_class(-t.coeff));
        } else {
            out << '+' << termBody(chart, t.mono, t.coeff);
        }
    }
    return out.str();
}

bool denIsAtomic(const Poly& den) {
    if (den.isConstant()) return true; // canonical form keeps it positive
    if (den.terms().size() != 1) return false;
    const auto& t = den.terms().front();
    if (t.coeff != 1) return false;
    int varsUsed = 0;
    for (Exp e : t.mono)
        if (e != 0) ++varsUsed;
    return varsUsed == 1;
}

} // namespace

RatExpr parseRatExpr(const ChartPtr& chart, std::string_view text) {
    if (!chart) throw DomainError("parse requires a chart");
    return Parser(chart, text).parse();
}

std::string toString(const RatExpr& e) { return e.str(); }

std::string RatExpr::str() const {
    std::string numStr = polyToString(*chart_, num_);
    if (den_.isConstant() && den_.constantValue() == 1) return numStr;
    std::string out;
    if (num_.terms().size() >= 2)
        out = "(" + numStr + ")";
    else
        out = numStr;
    out += '/';
    std::string denStr = polyToString(*chart_, den_);
    if (denIsAtomic(den_))
        out += denStr;
    else
        out += "(" + denStr + ")";
    return out;
}

} // namespace modlie
