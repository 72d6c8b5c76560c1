#include "pinchcert/germ_parser.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pinchcert/errors.hpp"

namespace pinchcert::series {

namespace {

namespace mp = boost::multiprecision;

constexpr std::uint64_t kMaxVariable = 100000;
constexpr std::uint64_t kMaxExponent = 1000000;
constexpr long kMaxDecimalExponent = 4000;

enum class Kind { Number, Var, Caret, Star, Plus, Minus, Slash, End };

struct Token {
    Kind kind;
    std::string text;
    int line;
    int col;
    bool natural = false;  // Number made of digits only
};

std::string describe(const Token& t) { return t.kind == Kind::End ? "end of input" : "'" + t.text + "'"; }

[[noreturn]] void fail(const Token& at, const std::string& msg) { throw ParseError(msg, at.line, at.col, at.text); }

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            if (pos_ >= src_.size()) {
                out.push_back({Kind::End, "", line_, col_});
                return out;
            }
            const char ch = src_[pos_];
            const int line = line_;
            const int col = col_;
            auto single = [&](Kind k) {
                advance();
                out.push_back({k, std::string(1, ch), line, col});
            };
            switch (ch) {
                case 't': single(Kind::Var); break;
                case '^': single(Kind::Caret); break;
                case '*': single(Kind::Star); break;
                case '+': single(Kind::Plus); break;
                case '-': single(Kind::Minus); break;
                case '/': single(Kind::Slash); break;
                default:
                    if (std::isdigit(static_cast<unsigned char>(ch))) {
                        out.push_back(number(line, col));
                    } else {
                        throw ParseError("unexpected character '" + std::string(1, ch) + "'", line, col,
                                         std::string(1, ch));
                    }
            }
        }
    }

  private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }

    bool digit_at(std::size_t p) const {
        return p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]));
    }

    Token number(int line, int col) {
        const std::size_t start = pos_;
        bool natural = true;
        while (digit_at(pos_)) advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            if (!digit_at(pos_ + 1)) {
                throw ParseError("expected digits after the decimal point", line_, col_, ".");
            }
            natural = false;
            advance();
            while (digit_at(pos_)) advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
            if (digit_at(p)) {
                natural = false;
                while (pos_ < p) advance();
                while (digit_at(pos_)) advance();
            }
        }
        Token t{Kind::Number, std::string(src_.substr(start, pos_ - start)), line, col};
        t.natural = natural;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

std::uint64_t to_natural(const Token& t, std::uint64_t limit, const char* what) {
    std::uint64_t v = 0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last || v > limit) {
        fail(t, std::string(what) + " " + describe(t) + " is out of range (max " + std::to_string(limit) + ")");
    }
    return v;
}

struct Monomial {
    Coefficient coeff{1};
    std::map<std::uint64_t, std::uint64_t> powers;  // variable index -> exponent
};

class Parser {
  public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    std::vector<Monomial> parse_expr() {
        std::vector<Monomial> terms;
        int sign = +1;
        if (peek().kind == Kind::Plus || peek().kind == Kind::Minus) sign = take().kind == Kind::Minus ? -1 : +1;
        terms.push_back(parse_term(sign));
        while (true) {
            const Token& t = peek();
            if (t.kind == Kind::End) return terms;
            if (t.kind != Kind::Plus && t.kind != Kind::Minus) {
                fail(t, "expected '+', '-', '*' or end of input, found " + describe(t));
            }
            sign = take().kind == Kind::Minus ? -1 : +1;
            terms.push_back(parse_term(sign));
        }
    }

  private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    Monomial parse_term(int sign) {
        Monomial m;
        const Token& t = peek();
        if (t.kind == Kind::Number) {
            m.coeff = parse_coeff();
        } else if (t.kind == Kind::Var) {
            parse_factor(m);
        } else {
            fail(t, "expected a coefficient or a variable t<k>, found " + describe(t));
        }
        while (peek().kind == Kind::Star) {
            take();
            parse_factor(m);
        }
        if (sign < 0) m.coeff = -m.coeff;
        return m;
    }

    Coefficient parse_coeff() {
        const Token num = take();
        if (peek().kind != Kind::Slash) return parse_decimal_token(num);
        const Token slash = take();
        if (!num.natural) fail(num, "a fraction numerator must be a natural number, found " + describe(num));
        const Token den = take();
        if (den.kind != Kind::Number || !den.natural) {
            fail(den.kind == Kind::End ? slash : den,
                 "expected a natural-number denominator after '/', found " + describe(den));
        }
        const mp::cpp_int d(den.text);
        if (d.is_zero()) fail(den, "division by zero in coefficient");
        return Coefficient(mp::cpp_int(num.text), d);
    }

    void parse_factor(Monomial& m) {
        const Token var = take();
        if (var.kind != Kind::Var) fail(var, "expected a variable t<k>, found " + describe(var));
        const Token idx = take();
        if (idx.kind != Kind::Number || !idx.natural) {
            fail(idx.kind == Kind::End ? var : idx, "expected a variable index after 't', found " + describe(idx));
        }
        const std::uint64_t k = to_natural(idx, kMaxVariable, "variable index");
        if (k == 0) fail(idx, "variable indices start at 1");
        std::uint64_t e = 1;
        if (peek().kind == Kind::Caret) {
            const Token caret = take();
            const Token ex = take();
            if (ex.kind != Kind::Number || !ex.natural) {
                fail(caret, "dangling '^': expected a natural-number exponent, found " + describe(ex));
            }
            e = to_natural(ex, kMaxExponent, "exponent");
        }
        auto& slot = m.powers[k];
        slot += e;
        if (slot > kMaxExponent) fail(var, "combined exponent of t" + std::to_string(k) + " is too large");
    }

    static Coefficient parse_decimal_token(const Token& t) {
        try {
            return parse_decimal(t.text);
        } catch (const ParseError& e) {
            throw ParseError(e.message(), t.line, t.col, t.text);
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Coefficient parse_decimal(std::string_view text) {
    auto bad = [&](const std::string& why) -> Coefficient {
        throw ParseError("invalid decimal '" + std::string(text) + "': " + why, 1, 1, std::string(text));
    };
    std::size_t p = 0;
    std::string digits;
    long frac_len = 0;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) digits += text[p++];
    if (digits.empty()) return bad("expected digits");
    if (p < text.size() && text[p] == '.') {
        ++p;
        const std::size_t before = digits.size();
        while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) digits += text[p++];
        frac_len = static_cast<long>(digits.size() - before);
        if (frac_len == 0) return bad("expected digits after the decimal point");
    }
    long exp10 = 0;
    if (p < text.size() && (text[p] == 'e' || text[p] == 'E')) {
        ++p;
        const auto* first = text.data() + p;
        if (p < text.size() && text[p] == '+') ++first;
        auto [q, ec] = std::from_chars(first, text.data() + text.size(), exp10);
        if (ec != std::errc() || q != text.data() + text.size()) return bad("malformed exponent");
        p = text.size();
    }
    if (p != text.size()) return bad("trailing characters");
    const long scale = exp10 - frac_len;
    if (scale > kMaxDecimalExponent || scale < -kMaxDecimalExponent) return bad("exponent out of range");

    const mp::cpp_int mantissa(digits);
    const mp::cpp_int ten_pow = mp::pow(mp::cpp_int(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    if (scale >= 0) return Coefficient(mantissa * ten_pow);
    return Coefficient(mantissa, ten_pow);
}

AnalyticGerm parse_germ(std::string_view text, std::optional<int> arity) {
    Parser parser(Lexer(text).run());
    const std::vector<Monomial> terms = parser.parse_expr();

    std::uint64_t top = 1;
    for (const auto& m : terms) {
        for (const auto& [k, e] : m.powers) top = std::max(top, k);
    }
    if (arity && static_cast<std::uint64_t>(*arity) < top) {
        throw ValidationError("expression uses t" + std::to_string(top) + " but the arity is " +
                              std::to_string(*arity));
    }
    const int n = arity ? *arity : static_cast<int>(top);
    AnalyticGerm f(n);
    for (const auto& m : terms) {
        std::vector<MultiIndex::value_type> e(static_cast<std::size_t>(n), 0);
        for (const auto& [k, pw] : m.powers) e[k - 1] = static_cast<MultiIndex::value_type>(pw);
        f.add_term(MultiIndex(std::move(e)), m.coeff);
    }
    return f;
}

CauchyEnvelope parse_envelope(std::string_view text) {
    // Tolerates whitespace around names, '=' and ','.
    std::string s;
    std::vector<int> cols;
    for (std::size_t k = 0; k < text.size(); ++k) {
        if (!std::isspace(static_cast<unsigned char>(text[k]))) {
            s += text[k];
            cols.push_back(static_cast<int>(k) + 1);
        }
    }
    auto col_at = [&](std::size_t k) { return k < cols.size() ? cols[k] : static_cast<int>(text.size()) + 1; };

    double M = 0.0;
    double r = 0.0;
    bool have_M = false;
    bool have_r = false;
    std::size_t p = 0;
    while (p < s.size()) {
        const std::size_t eq = s.find('=', p);
        if (eq == std::string::npos) {
            throw ParseError("expected '<name>=<value>' in envelope", 1, col_at(p), s.substr(p));
        }
        const std::string name = s.substr(p, eq - p);
        std::size_t end = s.find(',', eq + 1);
        if (end == std::string::npos) end = s.size();
        const std::string value = s.substr(eq + 1, end - eq - 1);
        double v = 0.0;
        auto [q, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (value.empty() || ec != std::errc() || q != value.data() + value.size()) {
            throw ParseError("invalid number '" + value + "' in envelope", 1, col_at(eq + 1), value);
        }
        if (name == "M" && !have_M) {
            M = v;
            have_M = true;
        } else if (name == "r" && !have_r) {
            r = v;
            have_r = true;
        } else {
            throw ParseError("unexpected envelope field '" + name + "' (expected M and r once each)", 1, col_at(p),
                             name);
        }
        p = end + 1;
    }
    if (!have_M || !have_r) {
        throw ParseError("envelope needs both M and r", 1, col_at(s.size()), "");
    }
    CauchyEnvelope env{M, r};
    env.validate();
    return env;
}

}  // namespace pinchcert::series
