#include "varcount/parser.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace varcount {

namespace {

struct Token {
    enum Kind { Int, Ident, Caret, Star, Plus, Equals, LBracket, RBracket, Comma, Minus, End };
    Kind kind;
    unsigned long long value = 0;  // Int
    std::string text;              // Ident
    int line = 0, col = 0;
};

class LineLexer {
public:
    LineLexer(const std::string& line, int lineno) : s_(line), line_(lineno) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r')) ++i_;
        tok_.line = line_;
        tok_.col = int(i_) + 1;
        if (i_ >= s_.size() || s_[i_] == '#') {
            tok_.kind = Token::End;
            return;
        }
        char c = s_[i_];
        if (std::isdigit((unsigned char)c)) {
            unsigned long long v = 0;
            while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_])) {
                unsigned d = unsigned(s_[i_] - '0');
                if (v > (1000000000000000000ULL - d) / 10)
                    throw error(errc::syntax_error, "integer literal too large", line_, tok_.col);
                v = v * 10 + d;
                ++i_;
            }
            tok_.kind = Token::Int;
            tok_.value = v;
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum((unsigned char)s_[i_]) || s_[i_] == '_'))
                ++i_;
            tok_.kind = Token::Ident;
            tok_.text = s_.substr(start, i_ - start);
            return;
        }
        ++i_;
        switch (c) {
            case '^': tok_.kind = Token::Caret; return;
            case '*': tok_.kind = Token::Star; return;
            case '+': tok_.kind = Token::Plus; return;
            case '=': tok_.kind = Token::Equals; return;
            case '[': tok_.kind = Token::LBracket; return;
            case ']': tok_.kind = Token::RBracket; return;
            case ',': tok_.kind = Token::Comma; return;
            case '-': tok_.kind = Token::Minus; return;
        }
        throw error(errc::syntax_error, std::string("unexpected character '") + c + "'", line_,
                    tok_.col);
    }

    const std::string& s_;
    size_t i_ = 0;
    int line_;
    Token tok_;
};

[[noreturn]] void fail(const Token& t, const std::string& what) {
    throw error(errc::syntax_error, what, t.line, t.col);
}

long long expect_int(LineLexer& lx, const char* what) {
    bool neg = false;
    if (lx.peek().kind == Token::Minus) {
        lx.take();
        neg = true;
    }
    if (lx.peek().kind != Token::Int) fail(lx.peek(), std::string("expected ") + what);
    Token t = lx.take();
    long long v = (long long)t.value;
    return neg ? -v : v;
}

// integer or bracketed coefficient tuple
Element parse_scalar(LineLexer& lx, const Field& F) {
    if (lx.peek().kind == Token::LBracket) {
        Token open = lx.take();
        std::vector<long long> c;
        if (lx.peek().kind == Token::RBracket) {
            lx.take();
        } else {
            for (;;) {
                c.push_back(expect_int(lx, "tuple entry"));
                if (lx.peek().kind == Token::Comma) {
                    lx.take();
                    continue;
                }
                if (lx.peek().kind == Token::RBracket) {
                    lx.take();
                    break;
                }
                fail(lx.peek(), "expected ',' or ']' in coefficient tuple");
            }
        }
        try {
            return F.from_coeffs(c);
        } catch (const error& e) {
            throw error(e.code(), e.message(), open.line, open.col);
        }
    }
    return F.from_int(expect_int(lx, "integer"));
}

// "x<k>", k >= 1
int parse_var(const Token& t) {
    if (t.kind != Token::Ident) fail(t, "expected variable");
    const std::string& s = t.text;
    if (s.size() < 2 || s[0] != 'x')
        throw error(errc::unknown_variable, "unknown variable '" + s + "'", t.line, t.col);
    unsigned long long idx = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        if (!std::isdigit((unsigned char)s[i]))
            throw error(errc::unknown_variable, "unknown variable '" + s + "'", t.line, t.col);
        idx = idx * 10 + unsigned(s[i] - '0');
        if (idx > 100000)
            throw error(errc::unknown_variable, "variable index too large in '" + s + "'", t.line,
                        t.col);
    }
    if (idx == 0)
        throw error(errc::unknown_variable, "variable indices start at x1", t.line, t.col);
    return int(idx);
}

struct ParsedTerm {
    uint32_t coeff;
    std::vector<long long> exps;  // dense over x1..xw
    int line = 0, col = 0;
};

ParsedTerm parse_term(LineLexer& lx, const Field& F) {
    ParsedTerm term;
    term.line = lx.peek().line;
    term.col = lx.peek().col;
    term.coeff = 1;

    Token::Kind k = lx.peek().kind;
    if (k == Token::Int || k == Token::Minus || k == Token::LBracket) {
        term.coeff = parse_scalar(lx, F).code();
        if (lx.peek().kind != Token::Star) fail(lx.peek(), "expected '*' after coefficient");
        lx.take();
    }

    // variables, strictly ascending, no gaps
    std::vector<std::pair<int, long long>> vars;
    for (;;) {
        Token vt = lx.take();
        int idx = parse_var(vt);
        long long exp = 1;
        if (lx.peek().kind == Token::Caret) {
            lx.take();
            if (lx.peek().kind != Token::Int) fail(lx.peek(), "expected exponent");
            exp = (long long)lx.take().value;
        }
        if (!vars.empty()) {
            if (idx == vars.back().first)
                throw error(errc::syntax_error, "duplicate variable x" + std::to_string(idx),
                            vt.line, vt.col);
            if (idx < vars.back().first)
                throw error(errc::syntax_error,
                            "variables must appear in ascending order (x" + std::to_string(idx) +
                                " after x" + std::to_string(vars.back().first) + ")",
                            vt.line, vt.col);
        }
        vars.emplace_back(idx, exp);
        if (lx.peek().kind == Token::Star) {
            lx.take();
            continue;
        }
        break;
    }
    const int w = int(vars.size());
    if (vars.back().first != w)
        throw error(errc::block_shape_violation,
                    "monomial must use exactly the variables x1..x" +
                        std::to_string(vars.back().first) + " with no gaps",
                    term.line, term.col);
    term.exps.resize(size_t(w));
    for (int j = 0; j < w; ++j) term.exps[size_t(j)] = vars[size_t(j)].second;
    return term;
}

struct ParsedEquation {
    std::vector<ParsedTerm> terms;
    uint32_t constant;
    int line = 0;
};

ParsedEquation parse_equation(LineLexer& lx, const Field& F, int lineno) {
    ParsedEquation eq;
    eq.line = lineno;
    for (;;) {
        eq.terms.push_back(parse_term(lx, F));
        if (lx.peek().kind == Token::Plus) {
            lx.take();
            continue;
        }
        break;
    }
    if (lx.peek().kind != Token::Equals) fail(lx.peek(), "expected '+' or '='");
    lx.take();
    eq.constant = parse_scalar(lx, F).code();
    if (lx.peek().kind != Token::End) fail(lx.peek(), "unexpected trailing tokens");
    return eq;
}

// Derive (r, n) from the term widths of one equation. Widths must be
// non-decreasing; each strict increase opens a block.
void infer_blocks(const ParsedEquation& eq, std::vector<int>& r, std::vector<int>& n) {
    r.clear();
    n.clear();
    int prev_w = 0;
    for (size_t i = 0; i < eq.terms.size(); ++i) {
        const int w = int(eq.terms[i].exps.size());
        if (w < prev_w) {
            std::string msg = "monomial widths must not decrease (x1..x" + std::to_string(w) +
                              " after x1..x" + std::to_string(prev_w) + ")";
            if (eq.terms[i].line > 0)
                throw error(errc::block_shape_violation, msg, eq.terms[i].line, eq.terms[i].col);
            throw error(errc::block_shape_violation, msg);
        }
        if (w > prev_w) {
            n.push_back(w);
            r.push_back(int(i));  // closes the previous block
        }
        r.back() = int(i) + 1;
        prev_w = w;
    }
}

VarietyInput assemble(std::shared_ptr<const Field> field, const std::vector<ParsedEquation>& eqs) {
    VarietyInput in;
    in.field = std::move(field);
    in.m = int(eqs.size());

    infer_blocks(eqs[0], in.r, in.nvar);
    in.t = int(in.r.size());
    for (size_t k = 1; k < eqs.size(); ++k) {
        std::vector<int> r2, n2;
        infer_blocks(eqs[k], r2, n2);
        if (r2 != in.r || n2 != in.nvar) {
            std::string msg = "equation " + std::to_string(k + 1) +
                              " induces a different block structure than equation 1";
            if (eqs[k].line > 0) throw error(errc::inconsistent_structure, msg, eqs[k].line, 1);
            throw error(errc::inconsistent_structure, msg);
        }
    }

    for (const auto& eq : eqs) {
        in.a.emplace_back();
        in.e.emplace_back();
        for (const auto& t : eq.terms) {
            in.a.back().push_back(t.coeff);
            in.e.back().push_back(t.exps);
        }
        in.b.push_back(eq.constant);
    }
    return in;
}

}  // namespace

VarietyInput parse_system(const std::string& text, const ParseOptions& opts) {
    std::istringstream stream(text);
    std::string line;
    int lineno = 0;

    std::shared_ptr<const Field> field;
    std::vector<ParsedEquation> eqs;

    while (std::getline(stream, line)) {
        ++lineno;
        LineLexer lx(line, lineno);
        if (lx.peek().kind == Token::End) continue;

        if (!field) {
            Token t = lx.take();
            if (t.kind != Token::Ident || t.text != "field")
                fail(t, "expected 'field' header before equations");
            long long p = expect_int(lx, "characteristic");
            if (p < 0) fail(lx.peek(), "characteristic must be positive");
            int n = 1;
            std::optional<std::vector<long long>> modulus;
            if (lx.peek().kind == Token::Caret) {
                lx.take();
                long long deg = expect_int(lx, "extension degree");
                if (deg < 1 || deg > 64) fail(lx.peek(), "unreasonable extension degree");
                n = int(deg);
                Token mt = lx.take();
                if (mt.kind != Token::Ident || mt.text != "mod")
                    fail(mt, "expected 'mod' and a modulus polynomial");
                if (lx.peek().kind != Token::LBracket)
                    fail(lx.peek(), "expected '[' starting the modulus coefficients");
                lx.take();
                std::vector<long long> coeffs;
                for (;;) {
                    coeffs.push_back(expect_int(lx, "modulus coefficient"));
                    if (lx.peek().kind == Token::Comma) {
                        lx.take();
                        continue;
                    }
                    if (lx.peek().kind == Token::RBracket) {
                        lx.take();
                        break;
                    }
                    fail(lx.peek(), "expected ',' or ']' in modulus");
                }
                modulus = std::move(coeffs);
            }
            if (lx.peek().kind != Token::End) fail(lx.peek(), "unexpected trailing tokens");
            field = std::make_shared<const Field>(
                uint64_t(p), n, std::move(modulus),
                Field::Options{opts.allow_even, opts.cardinality_cap});
            continue;
        }
        eqs.push_back(parse_equation(lx, *field, lineno));
    }

    if (!field) throw error(errc::syntax_error, "missing 'field' header", lineno, 1);
    if (eqs.empty()) throw error(errc::syntax_error, "no equations", lineno, 1);
    return assemble(std::move(field), eqs);
}

std::string serialize_system(const Variety& v) {
    const Field& F = v.field();
    std::string out = "field " + std::to_string(F.p());
    if (F.n() > 1) {
        out += "^" + std::to_string(F.n()) + " mod [";
        for (int i = 0; i <= F.n(); ++i) {
            if (i) out += ',';
            out += std::to_string(F.modulus()[size_t(i)]);
        }
        out += ']';
    }
    out += '\n';
    for (int k = 1; k <= v.m(); ++k) {
        for (int i = 1; i <= v.rt(); ++i) {
            if (i > 1) out += " + ";
            Element c = v.a(k, i);
            if (c != F.one()) out += c.str() + "*";
            const auto& exps = v.exponents(k, i);
            for (size_t j = 0; j < exps.size(); ++j) {
                if (j) out += '*';
                out += "x" + std::to_string(j + 1);
                if (exps[j] != 1) out += "^" + std::to_string(exps[j]);
            }
        }
        out += " = " + v.b(k).str() + "\n";
    }
    return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

Element scalar_from_json(const ordered_json& j, const Field& F, const char* what) {
    if (j.is_number_integer()) return F.from_int(j.get<long long>());
    if (j.is_array()) {
        std::vector<long long> c;
        for (const auto& x : j) {
            if (!x.is_number_integer())
                throw error(errc::syntax_error, std::string(what) + " tuple entries must be integers");
            c.push_back(x.get<long long>());
        }
        return F.from_coeffs(c);
    }
    throw error(errc::syntax_error, std::string(what) + " must be an integer or coefficient array");
}

ordered_json scalar_to_json(const Element& e) {
    const Field& F = e.field();
    if (F.n() == 1) return ordered_json(e.code());
    ordered_json arr = ordered_json::array();
    for (uint32_t c : e.coeffs()) arr.push_back(c);
    return arr;
}

}  // namespace

VarietyInput system_from_json(const std::string& text, const ParseOptions& opts) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::syntax_error, e.what());
    }
    if (!j.is_object() || !j.contains("field") || !j.contains("equations"))
        throw error(errc::syntax_error, "expected object with 'field' and 'equations'");

    const auto& jf = j["field"];
    if (!jf.is_object() || !jf.contains("p") || !jf["p"].is_number_integer())
        throw error(errc::syntax_error, "field.p must be an integer");
    long long p = jf["p"].get<long long>();
    if (p < 0) throw error(errc::syntax_error, "field.p must be positive");
    int n = 1;
    if (jf.contains("n")) {
        if (!jf["n"].is_number_integer()) throw error(errc::syntax_error, "field.n must be an integer");
        long long deg = jf["n"].get<long long>();
        if (deg < 1 || deg > 64) throw error(errc::syntax_error, "unreasonable extension degree");
        n = int(deg);
    }
    std::optional<std::vector<long long>> modulus;
    if (jf.contains("modulus") && !jf["modulus"].is_null()) {
        if (!jf["modulus"].is_array()) throw error(errc::syntax_error, "field.modulus must be an array");
        std::vector<long long> c;
        for (const auto& x : jf["modulus"]) {
            if (!x.is_number_integer())
                throw error(errc::syntax_error, "modulus coefficients must be integers");
            c.push_back(x.get<long long>());
        }
        modulus = std::move(c);
    }
    auto field = std::make_shared<const Field>(uint64_t(p), n, std::move(modulus),
                                               Field::Options{opts.allow_even, opts.cardinality_cap});

    if (!j["equations"].is_array() || j["equations"].empty())
        throw error(errc::syntax_error, "equations must be a non-empty array");

    std::vector<ParsedEquation> eqs;
    for (const auto& je : j["equations"]) {
        if (!je.is_object() || !je.contains("terms") || !je.contains("constant"))
            throw error(errc::syntax_error, "each equation needs 'terms' and 'constant'");
        if (!je["terms"].is_array() || je["terms"].empty())
            throw error(errc::syntax_error, "terms must be a non-empty array");
        ParsedEquation eq;
        for (const auto& jt : je["terms"]) {
            if (!jt.is_object() || !jt.contains("exponents") || !jt["exponents"].is_array())
                throw error(errc::syntax_error, "each term needs an 'exponents' array");
            ParsedTerm term;
            term.coeff = jt.contains("coeff")
                             ? scalar_from_json(jt["coeff"], *field, "coeff").code()
                             : field->one().code();
            for (const auto& x : jt["exponents"]) {
                if (!x.is_number_integer())
                    throw error(errc::syntax_error, "exponents must be integers");
                term.exps.push_back(x.get<long long>());
            }
            if (term.exps.empty())
                throw error(errc::block_shape_violation, "monomial must use at least x1");
            eq.terms.push_back(std::move(term));
        }
        eq.constant = scalar_from_json(je["constant"], *field, "constant").code();
        eqs.push_back(std::move(eq));
    }
    return assemble(std::move(field), eqs);
}

std::string system_to_json(const Variety& v) {
    const Field& F = v.field();
    ordered_json j;
    j["field"]["p"] = F.p();
    j["field"]["n"] = F.n();
    if (F.n() > 1) {
        ordered_json mod = ordered_json::array();
        for (uint32_t c : F.modulus()) mod.push_back(c);
        j["field"]["modulus"] = mod;
    }
    j["equations"] = ordered_json::array();
    for (int k = 1; k <= v.m(); ++k) {
        ordered_json je;
        je["terms"] = ordered_json::array();
        for (int i = 1; i <= v.rt(); ++i) {
            ordered_json jt;
            jt["coeff"] = scalar_to_json(v.a(k, i));
            jt["exponents"] = v.exponents(k, i);
            je["terms"].push_back(std::move(jt));
        }
        je["constant"] = scalar_to_json(v.b(k));
        j["equations"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

VarietyInput load_system_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io_error, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return system_from_json(buf.str(), opts);
    return parse_system(buf.str(), opts);
}

}  // namespace varcount
