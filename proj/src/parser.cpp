#include "macell/parser.hpp"

#include <cctype>
#include <optional>

#include "macell/errors.hpp"

namespace macell {

namespace {

struct Token {
    enum class Kind { Ident, Int, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    std::size_t pos = 0;
};

// Copyable so the parser can snapshot/restore for quantifier lookahead.
class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(&src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        const std::string& s = *src_;
        while (i_ < s.size() && std::isspace(static_cast<unsigned char>(s[i_]))) ++i_;
        tok_.pos = i_;
        if (i_ >= s.size()) {
            tok_ = {Token::Kind::End, "", i_};
            return;
        }
        char c = s[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i_])) || s[i_] == '_'))
                ++i_;
            tok_ = {Token::Kind::Ident, s.substr(start, i_ - start), start};
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = i_;
            while (i_ < s.size() && std::isdigit(static_cast<unsigned char>(s[i_]))) ++i_;
            tok_ = {Token::Kind::Int, s.substr(start, i_ - start), start};
            return;
        }
        static const std::string punct = "()!&|=.,#[]<";
        if (punct.find(c) != std::string::npos) {
            tok_ = {Token::Kind::Punct, std::string(1, c), i_};
            ++i_;
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }

    const std::string* src_;
    Token tok_;
    std::size_t i_ = 0;
};

class Parser {
  public:
    Parser(const std::string& src, const Signature& sig) : lex_(src), sig_(sig) {}

    FormulaPtr parse() {
        FormulaPtr f = disj();
        if (lex_.peek().kind != Token::Kind::End)
            throw ParseError("trailing input", lex_.peek().pos);
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lex_.peek().pos); }

    bool at_punct(const char* p) const {
        return lex_.peek().kind == Token::Kind::Punct && lex_.peek().text == p;
    }

    void expect_punct(const char* p) {
        if (!at_punct(p)) fail(std::string("expected '") + p + "'");
        lex_.take();
    }

    FormulaPtr disj() {
        std::vector<FormulaPtr> parts{conj()};
        while (at_punct("|")) {
            lex_.take();
            parts.push_back(conj());
        }
        return parts.size() == 1 ? parts[0] : f_or(std::move(parts));
    }

    FormulaPtr conj() {
        std::vector<FormulaPtr> parts{unary()};
        while (at_punct("&")) {
            lex_.take();
            parts.push_back(unary());
        }
        return parts.size() == 1 ? parts[0] : f_and(std::move(parts));
    }

    FormulaPtr unary() {
        if (at_punct("!")) {
            lex_.take();
            return f_not(unary());
        }
        if (at_punct("(")) {
            lex_.take();
            FormulaPtr f = disj();
            expect_punct(")");
            return f;
        }
        if (at_punct("#")) return equality_from(term());
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::Ident) fail("expected formula");
        if (t.text == "true") {
            lex_.take();
            return f_true();
        }
        if (t.text == "false") {
            lex_.take();
            return f_false();
        }
        if (auto q = try_quantifier()) return *q;
        // Plain atom or bare-variable equality.
        Token name = lex_.take();
        if (at_punct("(")) return rel_atom(name);
        return equality_from(Term::var(name.text));
    }

    // Recognizes the quantifier forms. A leading identifier starting with
    // 'E'/'A' is a quantifier when it is followed by '[' (counting), or when
    // the variable (inline as in `Ex.` or as the next identifier) is followed
    // by '.'. Everything else falls through to atom parsing, so a relation
    // named E can still be applied as E(x,y).
    std::optional<FormulaPtr> try_quantifier() {
        Lexer saved = lex_;
        Token head = lex_.take();
        char q = head.text[0];
        if (q != 'E' && q != 'A') {
            lex_ = saved;
            return std::nullopt;
        }

        std::optional<CountOp> op;
        int bound = 0;
        std::string var;
        if (head.text == "E" && at_punct("[")) {
            lex_.take();
            if (at_punct("<")) {
                lex_.take();
                if (at_punct("=")) {
                    lex_.take();
                    op = CountOp::LessEq;
                } else {
                    op = CountOp::Less;
                }
            } else if (at_punct("=")) {
                lex_.take();
                op = CountOp::Eq;
            } else {
                fail("expected '<=', '<' or '=' in counting quantifier");
            }
            if (lex_.peek().kind != Token::Kind::Int) fail("expected count");
            bound = std::stoi(lex_.take().text);
            expect_punct("]");
            if (lex_.peek().kind != Token::Kind::Ident) fail("expected variable");
            var = lex_.take().text;
        } else if (head.text.size() > 1) {
            var = head.text.substr(1);  // inline form: Ex. / Ay.
        } else if (lex_.peek().kind == Token::Kind::Ident) {
            var = lex_.take().text;  // spaced form: E x.
        } else {
            lex_ = saved;
            return std::nullopt;
        }
        if (!at_punct(".")) {
            lex_ = saved;
            return std::nullopt;
        }
        lex_.take();
        FormulaPtr body = unary();
        if (op) return f_count(*op, bound, var, std::move(body));
        if (q == 'E') return f_exists(var, std::move(body));
        return f_forall(var, std::move(body));
    }

    FormulaPtr rel_atom(const Token& name) {
        const RelationInfo* info = sig_.find_relation(name.text);
        if (!info) throw InputError("unknown relation symbol: " + name.text);
        expect_punct("(");
        std::vector<Term> args{term()};
        while (at_punct(",")) {
            lex_.take();
            args.push_back(term());
        }
        expect_punct(")");
        if (static_cast<int>(args.size()) != info->arity)
            throw InputError("arity mismatch: " + name.text + " expects " +
                             std::to_string(info->arity) + " arguments, got " +
                             std::to_string(args.size()));
        return f_rel(name.text, std::move(args));
    }

    FormulaPtr equality_from(Term lhs) {
        expect_punct("=");
        return f_eq(std::move(lhs), term());
    }

    Term term() {
        if (at_punct("#")) {
            lex_.take();
            if (lex_.peek().kind != Token::Kind::Ident && lex_.peek().kind != Token::Kind::Int)
                fail("expected element id after '#'");
            return Term::param(lex_.take().text);
        }
        if (lex_.peek().kind != Token::Kind::Ident) fail("expected term");
        return Term::var(lex_.take().text);
    }

    Lexer lex_;
    const Signature& sig_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
    return Parser(text, sig).parse();
}

}  // namespace macell
