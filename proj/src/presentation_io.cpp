#include "ocat/presentation_io.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace ocat {

namespace {

struct Token {
    enum Kind { LParen, RParen, Plus, Minus, Number, Name, End } kind;
    std::string text;
};

class Lexer {
  public:
    Lexer(const std::string& s, int line) : s_(s), line_(line) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(line_, msg + " near '" + (tok_.kind == Token::End ? "<end>" : tok_.text) + "'");
    }

  private:
    std::string s_;
    std::size_t pos_ = 0;
    int line_;
    Token tok_;

    void advance() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) {
            tok_ = {Token::End, ""};
            return;
        }
        char c = s_[pos_];
        if (c == '(') {
            tok_ = {Token::LParen, "("};
            ++pos_;
        } else if (c == ')') {
            tok_ = {Token::RParen, ")"};
            ++pos_;
        } else if (c == '+') {
            tok_ = {Token::Plus, "+"};
            ++pos_;
        } else if (c == '-') {
            tok_ = {Token::Minus, "-"};
            ++pos_;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/'))
                ++pos_;
            tok_ = {Token::Number, s_.substr(start, pos_ - start)};
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                        s_[pos_] == '_'))
                ++pos_;
            tok_ = {Token::Name, s_.substr(start, pos_ - start)};
        } else {
            throw ParseError(line_, std::string("unexpected character '") + c + "'");
        }
    }
};

struct RelParser {
    Lexer& lex;
    TreeArena& arena;
    const std::map<std::string, int>& gen_ids;
    const std::vector<GeneratorSym>& gens;

    // tree := '(' name tree* ')' | leafnumber
    TreeId tree() {
        Token t = lex.take();
        if (t.kind == Token::Number) {
            if (t.text.find('/') != std::string::npos) lex.fail("leaf label cannot be a fraction");
            int label = std::stoi(t.text);
            if (label < 1) lex.fail("leaf labels are 1-based");
            return arena.leaf(label - 1);
        }
        if (t.kind != Token::LParen) lex.fail("expected a tree");
        Token name = lex.take();
        if (name.kind != Token::Name) lex.fail("expected a generator name");
        auto it = gen_ids.find(name.text);
        if (it == gen_ids.end()) lex.fail("unknown generator '" + name.text + "'");
        std::vector<TreeId> kids;
        while (lex.peek().kind != Token::RParen) {
            if (lex.peek().kind == Token::End) lex.fail("unbalanced '('");
            kids.push_back(tree());
        }
        lex.take();  // ')'
        if (static_cast<int>(kids.size()) != gens[it->second].arity)
            lex.fail("generator '" + name.text + "' expects " +
                     std::to_string(gens[it->second].arity) + " arguments");
        return arena.node(it->second, kids);
    }

    // term := [rational] tree  (the sign is handled by the caller)
    std::pair<Rat, TreeId> term() {
        Rat coef(1);
        if (lex.peek().kind == Token::Number) {
            // lookahead: a number followed by '(' or another number is a
            // coefficient; a number followed by +/-/end is a bare leaf
            Lexer probe = lex;
            Token num = probe.take();
            if (probe.peek().kind == Token::LParen || probe.peek().kind == Token::Number ||
                num.text.find('/') != std::string::npos) {
                lex.take();
                coef = rat_parse(num.text);
            }
        }
        return {coef, tree()};
    }

    TreePoly poly() {
        TreePoly p;
        Rat sign(1);
        if (lex.peek().kind == Token::Minus) {
            lex.take();
            sign = -1;
        } else if (lex.peek().kind == Token::Plus) {
            lex.take();
        }
        while (true) {
            auto [c, t] = term();
            p.terms.emplace_back(sign * c, t);
            if (lex.peek().kind == Token::End) break;
            Token op = lex.take();
            if (op.kind == Token::Plus)
                sign = 1;
            else if (op.kind == Token::Minus)
                sign = -1;
            else
                lex.fail("expected '+' or '-'");
        }
        p.arity = arena.arity(p.terms.front().second);
        // leaf labels of every term must be a permutation of 1..arity
        for (const auto& [c, t] : p.terms) {
            auto ll = arena.leaf_labels(t);
            std::vector<char> seen(ll.size(), 0);
            bool ok = arena.arity(t) == p.arity;
            for (int l : ll) {
                if (l < 0 || l >= static_cast<int>(ll.size()) || seen[l]) ok = false;
                if (ok) seen[l] = 1;
            }
            if (!ok) lex.fail("leaf labels must form a permutation of 1..arity, uniformly per relation");
        }
        return p;
    }
};

}  // namespace

OperadPresentation parse_presentation(const std::string& text, const std::string& name) {
    OperadPresentation pres;
    pres.name = name;
    std::map<std::string, int> gen_ids;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw == "gen") {
            std::string gname;
            int arity;
            if (!(ls >> gname >> arity)) throw ParseError(lineno, "usage: gen <name> <arity>");
            if (gen_ids.count(gname)) throw ParseError(lineno, "duplicate generator '" + gname + "'");
            gen_ids[gname] = static_cast<int>(pres.gens.size());
            pres.gens.push_back({gname, arity});
        } else if (kw == "rel") {
            std::string rest;
            std::getline(ls, rest);
            Lexer lex(rest, lineno);
            RelParser rp{lex, *pres.arena, gen_ids, pres.gens};
            pres.relations.push_back(rp.poly());
        } else {
            throw ParseError(lineno, "unknown directive '" + kw + "'");
        }
    }
    return pres;
}

TreePoly parse_tree_poly(const std::string& text, const OperadPresentation& pres) {
    std::map<std::string, int> gen_ids;
    for (std::size_t i = 0; i < pres.gens.size(); ++i) gen_ids[pres.gens[i].name] = static_cast<int>(i);
    Lexer lex(text, 1);
    RelParser rp{lex, *pres.arena, gen_ids, pres.gens};
    return rp.poly();
}

}  // namespace ocat
