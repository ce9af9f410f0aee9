#pragma once

#include <cctype>
#include <map>
#include <memory>

#include "wemv/core_ops.hpp"

namespace wemv {

// Terms over the signature {v, ^, (+), (-), 0} plus the derived forms:
// top constant, odot, scalars n.t, powers t^n, and lambda_a (programmatic
// only; it abbreviates a (-) t).
struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    enum class Kind {
        Var, Const0, Const1, Join, Meet, Oplus, Ominus, Odot, Scalar, Power, Lambda
    };
    Kind kind;
    std::string var;       // Var
    std::size_t num = 0;   // Scalar / Power
    TermPtr a, b;          // children (Lambda: a = idempotent-valued term, b = argument)

    static TermPtr mkvar(std::string n) { return node(Kind::Var, std::move(n), 0, nullptr, nullptr); }
    static TermPtr zero() { return node(Kind::Const0, "", 0, nullptr, nullptr); }
    static TermPtr one() { return node(Kind::Const1, "", 0, nullptr, nullptr); }
    static TermPtr join(TermPtr x, TermPtr y) { return node(Kind::Join, "", 0, x, y); }
    static TermPtr meet(TermPtr x, TermPtr y) { return node(Kind::Meet, "", 0, x, y); }
    static TermPtr oplus(TermPtr x, TermPtr y) { return node(Kind::Oplus, "", 0, x, y); }
    static TermPtr ominus(TermPtr x, TermPtr y) { return node(Kind::Ominus, "", 0, x, y); }
    static TermPtr odot(TermPtr x, TermPtr y) { return node(Kind::Odot, "", 0, x, y); }
    static TermPtr scalar(std::size_t n, TermPtr x) { return node(Kind::Scalar, "", n, x, nullptr); }
    static TermPtr power(TermPtr x, std::size_t n) { return node(Kind::Power, "", n, x, nullptr); }
    static TermPtr lambda(TermPtr at, TermPtr x) { return node(Kind::Lambda, "", 0, at, x); }

    void variables(std::vector<std::string>& out) const {
        if (kind == Kind::Var) {
            if (std::find(out.begin(), out.end(), var) == out.end()) out.push_back(var);
            return;
        }
        if (a) a->variables(out);
        if (b) b->variables(out);
    }

    // True when evaluation needs a top element somewhere in the algebra.
    bool needs_top() const {
        if (kind == Kind::Const1 || (kind == Kind::Power && num == 0)) return true;
        return (a && a->needs_top()) || (b && b->needs_top());
    }

    std::string str() const {
        switch (kind) {
            case Kind::Var: return var;
            case Kind::Const0: return "0";
            case Kind::Const1: return "1";
            case Kind::Join: return "(" + a->str() + " \\/ " + b->str() + ")";
            case Kind::Meet: return "(" + a->str() + " /\\ " + b->str() + ")";
            case Kind::Oplus: return "(" + a->str() + " (+) " + b->str() + ")";
            case Kind::Ominus: return "(" + a->str() + " (-) " + b->str() + ")";
            case Kind::Odot: return "(" + a->str() + " (.) " + b->str() + ")";
            case Kind::Scalar: return std::to_string(num) + "." + a->str();
            case Kind::Power:
                // A scalar base binds looser than ^ and needs parentheses.
                if (a->kind == Kind::Scalar) return "(" + a->str() + ")^" + std::to_string(num);
                return a->str() + "^" + std::to_string(num);
            case Kind::Lambda: return "lambda[" + a->str() + "](" + b->str() + ")";
        }
        return "?";
    }

private:
    static TermPtr node(Kind k, std::string v, std::size_t n, TermPtr a, TermPtr b) {
        auto t = std::make_shared<Term>();
        t->kind = k;
        t->var = std::move(v);
        t->num = n;
        t->a = std::move(a);
        t->b = std::move(b);
        return t;
    }
};

using Assignment = std::map<std::string, Element>;

inline Element evaluate(const Term& t, const Algebra& A, const Assignment& env) {
    switch (t.kind) {
        case Term::Kind::Var: {
            auto it = env.find(t.var);
            if (it == env.end()) throw InputError("unbound variable " + t.var);
            return it->second;
        }
        case Term::Kind::Const0: return A.bottom();
        case Term::Kind::Const1:
            if (!A.has_top()) throw InputError("constant 1 needs a top element");
            return A.top();
        case Term::Kind::Join: return A.join(evaluate(*t.a, A, env), evaluate(*t.b, A, env));
        case Term::Kind::Meet: return A.meet(evaluate(*t.a, A, env), evaluate(*t.b, A, env));
        case Term::Kind::Oplus: return A.oplus(evaluate(*t.a, A, env), evaluate(*t.b, A, env));
        case Term::Kind::Ominus: return A.ominus(evaluate(*t.a, A, env), evaluate(*t.b, A, env));
        case Term::Kind::Odot: return odot(A, evaluate(*t.a, A, env), evaluate(*t.b, A, env));
        case Term::Kind::Scalar: return scalar(A, t.num, evaluate(*t.a, A, env));
        case Term::Kind::Power: return power(A, evaluate(*t.a, A, env), t.num);
        case Term::Kind::Lambda: {
            Element av = evaluate(*t.a, A, env);
            return A.ominus(av, evaluate(*t.b, A, env));
        }
    }
    throw InputError("malformed term");
}

class ParseError : public InputError {
public:
    ParseError(std::size_t pos, const std::string& what)
        : InputError("syntax error at position " + std::to_string(pos) + ": " + what), pos_(pos) {}
    std::size_t position() const { return pos_; }  // 1-based

private:
    std::size_t pos_;
};

namespace detail {

constexpr std::size_t kNumericCap = 16;  // scalar / power literals

// Recursive-descent parser for the ASCII grammar. Precedence, tightest
// first: ^n, n., (.), (+) and (-), /\, \/.
class TermParser {
public:
    explicit TermParser(std::string text) : s_(std::move(text)) {}

    TermPtr parse() {
        auto t = parse_join();
        skip_ws();
        if (i_ < s_.size()) throw ParseError(i_ + 1, "unexpected input");
        return t;
    }

private:
    TermPtr parse_join() {
        auto t = parse_meet();
        while (eat("\\/")) t = Term::join(t, parse_meet());
        return t;
    }
    TermPtr parse_meet() {
        auto t = parse_add();
        while (eat("/\\")) t = Term::meet(t, parse_add());
        return t;
    }
    TermPtr parse_add() {
        auto t = parse_odot();
        for (;;) {
            if (eat("(+)")) t = Term::oplus(t, parse_odot());
            else if (eat("(-)")) t = Term::ominus(t, parse_odot());
            else return t;
        }
    }
    TermPtr parse_odot() {
        auto t = parse_prefix();
        while (eat("(.)")) t = Term::odot(t, parse_prefix());
        return t;
    }
    TermPtr parse_prefix() {
        skip_ws();
        // n. scalar prefix: a numeral directly followed by '.'
        std::size_t save = i_;
        if (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) {
            std::size_t n = read_number();
            if (i_ < s_.size() && s_[i_] == '.') {
                ++i_;
                return Term::scalar(n, parse_prefix());
            }
            i_ = save;  // plain numeral: handled as a constant in primary
        }
        return parse_postfix();
    }
    TermPtr parse_postfix() {
        auto t = parse_primary();
        for (;;) {
            skip_ws();
            if (i_ < s_.size() && s_[i_] == '^') {
                std::size_t at = ++i_;
                skip_ws();
                if (i_ >= s_.size() || !std::isdigit((unsigned char)s_[i_]))
                    throw ParseError(std::max(at, i_) + 1, "expected exponent");
                t = Term::power(t, read_number());
            } else {
                return t;
            }
        }
    }
    TermPtr parse_primary() {
        skip_ws();
        if (i_ >= s_.size()) throw ParseError(i_ + 1, "expected a term");
        char c = s_[i_];
        if (c == '(') {
            // '(' could still start an operator glyph; operators are only
            // consumed by eat(), so here it is a grouping paren.
            ++i_;
            auto t = parse_join();
            skip_ws();
            if (i_ >= s_.size() || s_[i_] != ')') throw ParseError(i_ + 1, "expected ')'");
            ++i_;
            return t;
        }
        if (std::isdigit((unsigned char)c)) {
            std::size_t at = i_;
            std::size_t n = read_number();
            if (n == 0) return Term::zero();
            if (n == 1) return Term::one();
            throw ParseError(at + 1, "numeral must be 0, 1, or a scalar prefix n.");
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   ((s_[i_] >= 'a' && s_[i_] <= 'z') || std::isdigit((unsigned char)s_[i_])))
                ++i_;
            return Term::mkvar(s_.substr(start, i_ - start));
        }
        throw ParseError(i_ + 1, "expected a term");
    }

    std::size_t read_number() {
        std::size_t start = i_;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) ++i_;
        unsigned long long v = std::stoull(s_.substr(start, i_ - start));
        if (v > kNumericCap)
            throw ParseError(start + 1,
                             "numeral exceeds the cap " + std::to_string(kNumericCap));
        return (std::size_t)v;
    }

    void skip_ws() {
        while (i_ < s_.size() && std::isspace((unsigned char)s_[i_])) ++i_;
    }

    bool eat(const std::string& op) {
        skip_ws();
        if (s_.compare(i_, op.size(), op) == 0) {
            i_ += op.size();
            return true;
        }
        return false;
    }

    std::string s_;
    std::size_t i_ = 0;
};

}  // namespace detail

inline TermPtr parse_term(const std::string& text) { return detail::TermParser(text).parse(); }

// "lhs = rhs" identity lines; '#' starts a comment.
inline std::pair<TermPtr, TermPtr> parse_identity(const std::string& line) {
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line.size() + 1, "expected '='");
    return {parse_term(line.substr(0, eq)), parse_term(line.substr(eq + 1))};
}

}  // namespace wemv
