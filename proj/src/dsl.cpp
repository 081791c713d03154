#include "tsc/dsl.hpp"

#include <cctype>
#include <sstream>
#include <unordered_set>

#include "tsc/error.hpp"

namespace tsc {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            Token tok;
            tok.line = line_;
            tok.column = column_;
            if (pos_ >= src_.size()) {
                tok.kind = Tok::End;
                out.push_back(tok);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                tok.kind = Tok::Ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                    tok.text += advance();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                tok.kind = Tok::Number;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) tok.text += advance();
                if (pos_ < src_.size() && src_[pos_] == '.') {
                    tok.text += advance();
                    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
                        throw SyntaxError(Errc::SyntaxError, line_, column_, "malformed decimal", "digit");
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                        tok.text += advance();
                }
            } else if (std::string_view("()=,;|+-*/^").find(c) != std::string_view::npos) {
                tok.kind = Tok::Punct;
                tok.text = std::string(1, advance());
            } else {
                throw SyntaxError(Errc::SyntaxError, line_, column_, std::string("unexpected character '") + c + "'");
            }
            out.push_back(std::move(tok));
        }
    }

private:
    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        return c;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, GrammarCoverage* coverage)
        : toks_(std::move(tokens)), coverage_(coverage) {}

    ScaleScript run() {
        ScaleScript script;
        while (peek().kind != Tok::End) {
            if (is_ident("scale")) {
                script.scales.push_back(scale_decl(script));
            } else if (is_ident("fn")) {
                script.functions.push_back(fn_decl());
            } else {
                fail("expected a declaration", "'scale' or 'fn'");
            }
        }
        return script;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool is_ident(std::string_view word) const { return peek().kind == Tok::Ident && peek().text == word; }
    bool is_punct(char c) const { return peek().kind == Tok::Punct && peek().text[0] == c; }

    void hit(const char* production) {
        if (coverage_) coverage_->insert(production);
    }

    [[noreturn]] void fail(const std::string& msg, const std::string& expected, Errc code = Errc::SyntaxError) const {
        const Token& t = peek();
        const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(code, t.line, t.column, msg + ", found " + found, expected);
    }

    void expect(char c) {
        if (!is_punct(c)) fail("unexpected token", std::string("'") + c + "'");
        ++pos_;
    }

    std::string name() {
        if (peek().kind != Tok::Ident) fail("expected a name", "identifier");
        return next().text;
    }

    void declare(const std::string& n, const Token& at) {
        if (!names_.insert(n).second)
            throw SyntaxError(Errc::DuplicateName, at.line, at.column, "duplicate name '" + n + "'");
    }

    Rat rat() {
        const Token& start = peek();
        bool negative = false;
        if (is_punct('-')) {
            ++pos_;
            negative = true;
            hit("rat.negative");
        }
        if (peek().kind != Tok::Number) fail("expected a rational literal", "number");
        std::string text = next().text;
        if (text.find('.') != std::string::npos) {
            hit("rat.decimal");
        } else if (is_punct('/')) {
            ++pos_;
            if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
                fail("expected an integer denominator", "integer");
            text += "/" + next().text;
            hit("rat.fraction");
        } else {
            hit("rat.integer");
        }
        auto r = Rat::parse(text);
        if (!r) throw SyntaxError(Errc::SyntaxError, start.line, start.column, "invalid rational '" + text + "'");
        return negative ? -*r : *r;
    }

    std::pair<Rat, Rat> rat_pair() {
        expect('(');
        Rat a = rat();
        expect(',');
        Rat b = rat();
        expect(')');
        return {a, b};
    }

    template <class F>
    Component build(const Token& at, F&& f) {
        try {
            return f();
        } catch (const SyntaxError&) {
            throw;
        } catch (const Error& e) {
            throw SyntaxError(e.code(), at.line, at.column, e.what());
        }
    }

    void component(const ScaleScript& script, std::vector<Component>& out) {
        const Token at = peek();
        const std::string kw = name();
        if (kw == "interval") {
            hit("comp.interval");
            auto [a, b] = rat_pair();
            out.push_back(build(at, [&] { return make_interval(a, b); }));
        } else if (kw == "points") {
            hit("comp.points");
            expect('(');
            std::vector<Rat> pts{rat()};
            while (is_punct(',')) {
                ++pos_;
                pts.push_back(rat());
            }
            expect(')');
            out.push_back(build(at, [&] { return make_points(pts); }));
        } else if (kw == "latticeZ") {
            hit("comp.latticeZ");
            auto [o, s] = rat_pair();
            out.push_back(build(at, [&] { return make_lattice_z(o, s); }));
        } else if (kw == "latticeRight") {
            hit("comp.latticeRight");
            auto [o, s] = rat_pair();
            out.push_back(build(at, [&] { return make_lattice_right(o, s); }));
        } else if (kw == "latticeLeft") {
            hit("comp.latticeLeft");
            auto [o, s] = rat_pair();
            out.push_back(build(at, [&] { return make_lattice_left(o, s); }));
        } else if (kw == "pattern") {
            hit("comp.pattern");
            expect('(');
            const Rat period = rat();
            expect(';');
            std::vector<Atom> cell{pattern_atom()};
            while (is_punct(',')) {
                ++pos_;
                cell.push_back(pattern_atom());
            }
            expect(')');
            out.push_back(build(at, [&] { return make_pattern(period, cell); }));
        } else if (const TimeScaleDesc* ref = script.find_scale(kw)) {
            hit("comp.reference");
            out.insert(out.end(), ref->components().begin(), ref->components().end());
        } else {
            throw SyntaxError(Errc::UnknownName, at.line, at.column, "unknown scale or component '" + kw + "'",
                              "component keyword or declared scale");
        }
    }

    Atom pattern_atom() {
        if (is_ident("interval")) {
            ++pos_;
            hit("atom.interval");
            const Token at = toks_[pos_ - 1];
            auto [a, b] = rat_pair();
            if (b < a) throw SyntaxError(Errc::InvalidInterval, at.line, at.column, "interval requires a <= b");
            return Atom::interval(a, b);
        }
        hit("atom.point");
        return Atom::point(rat());
    }

    TimeScaleDesc scale_decl(const ScaleScript& script) {
        ++pos_;
        hit("decl.scale");
        const Token at = peek();
        std::string n = name();
        declare(n, at);
        expect('=');
        std::vector<Component> comps;
        component(script, comps);
        while (is_punct('|')) {
            ++pos_;
            hit("comp.union");
            component(script, comps);
        }
        return TimeScaleDesc(std::move(n), std::move(comps));
    }

    FunctionDecl fn_decl() {
        ++pos_;
        hit("decl.fn");
        const Token at = peek();
        std::string n = name();
        declare(n, at);
        expect('(');
        if (!is_ident("t")) fail("function parameter must be 't'", "'t'");
        ++pos_;
        expect(')');
        expect('=');
        return {std::move(n), expr()};
    }

    static ExprPtr fold(ExprPtr e) {
        if (e->op == ExprOp::Neg && e->args[0]->op == ExprOp::Const) return Expr::make_const(-e->args[0]->constant);
        if (e->op == ExprOp::Div && e->args[0]->op == ExprOp::Const && e->args[1]->op == ExprOp::Const &&
            e->args[1]->constant.sign() != 0)
            return Expr::make_const(e->args[0]->constant / e->args[1]->constant);
        return e;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (is_punct('+') || is_punct('-')) {
            const bool add = next().text[0] == '+';
            hit(add ? "expr.add" : "expr.sub");
            lhs = Expr::make(add ? ExprOp::Add : ExprOp::Sub, {lhs, term()});
        }
        return lhs;
    }

    ExprPtr term() {
        ExprPtr lhs = unary();
        while (is_punct('*') || is_punct('/')) {
            const bool mul = next().text[0] == '*';
            hit(mul ? "expr.mul" : "expr.div");
            lhs = fold(Expr::make(mul ? ExprOp::Mul : ExprOp::Div, {lhs, unary()}));
        }
        return lhs;
    }

    ExprPtr unary() {
        if (is_punct('-')) {
            ++pos_;
            hit("expr.neg");
            return fold(Expr::make(ExprOp::Neg, {unary()}));
        }
        return postfix();
    }

    ExprPtr postfix() {
        ExprPtr base = primary();
        if (!is_punct('^')) return base;
        ++pos_;
        hit("expr.pow");
        if (peek().kind != Tok::Number || peek().text.find('.') != std::string::npos)
            fail("exponent must be a non-negative integer literal", "integer");
        const Token at = peek();
        const auto n = Rat::parse(next().text);
        if (!n || n->num() > 64)
            throw SyntaxError(Errc::SyntaxError, at.line, at.column, "exponent must be at most 64");
        if (n->num() == 0) return Expr::make_const(Rat(1));
        ExprPtr out = base;
        for (std::int64_t i = 1; i < n->num(); ++i) out = Expr::make(ExprOp::Mul, {out, base});
        return out;
    }

    ExprPtr primary() {
        if (peek().kind == Tok::Number) {
            hit("expr.const");
            const Token at = peek();
            auto r = Rat::parse(next().text);
            if (!r) throw SyntaxError(Errc::SyntaxError, at.line, at.column, "invalid number");
            return Expr::make_const(*r);
        }
        if (is_punct('(')) {
            ++pos_;
            hit("expr.paren");
            ExprPtr inner = expr();
            expect(')');
            return inner;
        }
        if (peek().kind != Tok::Ident) fail("expected an expression", "number, 't', 'pi', function or '('");
        const Token at = peek();
        const std::string id = next().text;
        if (id == "t") {
            hit("expr.var");
            return Expr::make_var();
        }
        if (id == "pi") {
            hit("expr.pi");
            return Expr::make_pi();
        }
        struct Fn {
            const char* name;
            ExprOp op;
            std::size_t arity;
        };
        static constexpr Fn kFns[] = {{"sin", ExprOp::Sin, 1}, {"cos", ExprOp::Cos, 1}, {"exp", ExprOp::Exp, 1},
                                      {"abs", ExprOp::Abs, 1}, {"min", ExprOp::Min, 2}, {"max", ExprOp::Max, 2}};
        for (const Fn& f : kFns) {
            if (id != f.name) continue;
            hit((std::string("fn.") + f.name).c_str());
            expect('(');
            std::vector<ExprPtr> args{expr()};
            while (is_punct(',')) {
                ++pos_;
                args.push_back(expr());
            }
            if (args.size() != f.arity)
                throw SyntaxError(Errc::SyntaxError, at.line, at.column,
                                  id + " takes " + std::to_string(f.arity) + " argument(s)");
            expect(')');
            return Expr::make(f.op, std::move(args));
        }
        throw SyntaxError(Errc::UnknownName, at.line, at.column, "unknown identifier '" + id + "'",
                          "'t', 'pi' or a function name");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    GrammarCoverage* coverage_;
    std::unordered_set<std::string> names_;
};

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string serialize_component(const Component& c) {
    return std::visit(
        overloaded{
            [](const ClosedInterval& i) { return "interval(" + i.a.str() + ", " + i.b.str() + ")"; },
            [](const PointSet& p) {
                std::string out = "points(";
                for (std::size_t i = 0; i < p.points.size(); ++i) out += (i ? ", " : "") + p.points[i].str();
                return out + ")";
            },
            [](const LatticeZ& l) { return "latticeZ(" + l.offset.str() + ", " + l.step.str() + ")"; },
            [](const LatticeRight& l) { return "latticeRight(" + l.start.str() + ", " + l.step.str() + ")"; },
            [](const LatticeLeft& l) { return "latticeLeft(" + l.start.str() + ", " + l.step.str() + ")"; },
            [](const PeriodicPattern& p) {
                std::string out = "pattern(" + p.period.str() + ";";
                for (std::size_t i = 0; i < p.cell.size(); ++i) {
                    const Atom& a = p.cell[i];
                    out += i ? ", " : " ";
                    out += a.is_point() ? a.lo.str() : "interval(" + a.lo.str() + ", " + a.hi.str() + ")";
                }
                return out + ")";
            },
        },
        c);
}

void render(const nlohmann::ordered_json& j, int indent, std::ostringstream& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto scalar = [](const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto is_flat = [](const nlohmann::ordered_json& v) {
        if (!v.is_array()) return !v.is_object();
        for (const auto& x : v)
            if (x.is_array() || x.is_object()) return false;
        return true;
    };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& v = it.value();
        if (v.is_array() && is_flat(v)) {
            out << pad << it.key() << ": [";
            bool first = true;
            for (const auto& x : v) {
                out << (first ? "" : ", ") << scalar(x);
                first = false;
            }
            out << "]\n";
        } else if (v.is_array()) {
            out << pad << it.key() << ":\n";
            for (const auto& x : v) {
                if (x.is_object()) {
                    out << pad << "  -\n";
                    render(x, indent + 2, out);
                } else {
                    out << pad << "  - " << scalar(x) << "\n";
                }
            }
        } else if (v.is_object()) {
            out << pad << it.key() << ":\n";
            render(v, indent + 1, out);
        } else {
            out << pad << it.key() << ": " << scalar(v) << "\n";
        }
    }
}

}  // namespace

const TimeScaleDesc* ScaleScript::find_scale(std::string_view name) const {
    for (const auto& s : scales)
        if (s.name() == name) return &s;
    return nullptr;
}

const FunctionDecl* ScaleScript::find_function(std::string_view name) const {
    for (const auto& f : functions)
        if (f.name == name) return &f;
    return nullptr;
}

const GrammarCoverage& grammar_productions() {
    static const GrammarCoverage all = {
        "decl.scale",  "decl.fn",       "comp.interval", "comp.points",   "comp.latticeZ", "comp.latticeRight",
        "comp.latticeLeft", "comp.pattern", "comp.reference", "comp.union", "atom.point",    "atom.interval",
        "rat.negative", "rat.decimal",  "rat.fraction",  "rat.integer",   "expr.add",      "expr.sub",
        "expr.mul",    "expr.div",      "expr.neg",      "expr.pow",      "expr.const",    "expr.paren",
        "expr.var",    "expr.pi",       "fn.sin",        "fn.cos",        "fn.exp",        "fn.abs",
        "fn.min",      "fn.max",
    };
    return all;
}

ScaleScript parse(std::string_view text, GrammarCoverage* coverage) {
    Parser parser(Lexer(text).run(), coverage);
    return parser.run();
}

std::string serialize(const TimeScaleDesc& t) {
    std::string out = "scale " + t.name() + " =";
    for (std::size_t i = 0; i < t.components().size(); ++i) {
        out += i ? " | " : " ";
        out += serialize_component(t.components()[i]);
    }
    return out;
}

std::string serialize(const ScaleScript& s) {
    std::string out;
    for (const auto& t : s.scales) out += serialize(t) + "\n";
    if (!s.functions.empty()) {
        if (!out.empty()) out += "\n";
        for (const auto& f : s.functions) out += "fn " + f.name + "(t) = " + to_string(*f.body) + "\n";
    }
    return out;
}

std::string render_text(const nlohmann::ordered_json& report) {
    std::ostringstream out;
    if (report.is_object()) {
        render(report, 0, out);
    } else {
        out << report.dump() << "\n";
    }
    return out.str();
}

}  // namespace tsc
