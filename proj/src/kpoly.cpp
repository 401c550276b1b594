#include "maclane/kpoly.hpp"

#include <cctype>

#include "maclane/errors.hpp"

namespace maclane {

NewtonPolygon newton_polygon(const std::vector<Val>& vals) {
    NewtonPolygon np;
    int n = static_cast<int>(vals.size());
    while (np.zmult < n && vals[np.zmult].is_inf()) ++np.zmult;
    std::vector<std::pair<int, mpq_class>> hull;
    for (int i = np.zmult; i < n; ++i) {
        if (vals[i].is_inf()) continue;
        mpq_class y = vals[i].q();
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            mpq_class cross = mpq_class(b.first - a.first) * (y - a.second) - (b.second - a.second) * mpq_class(i - a.first);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back({i, y});
    }
    for (auto& [x, y] : hull) np.vertices.push_back({x, Val(y)});
    for (size_t k = 1; k < hull.size(); ++k) {
        Segment s;
        s.start = hull[k - 1].first;
        s.length = hull[k].first - hull[k - 1].first;
        s.slope = (hull[k].second - hull[k - 1].second) / mpq_class(s.length);
        s.slope.canonicalize();
        np.segments.push_back(s);
    }
    return np;
}

NewtonPolygon newton_polygon(const BaseField& K, const KPoly& f) {
    if (f.empty()) fail("ZeroPolynomial", "Newton polygon of zero");
    std::vector<Val> vals;
    for (auto& c : f) vals.push_back(K.val(c));
    return newton_polygon(vals);
}

Val content_val(const BaseField& K, const KPoly& f) {
    Val m = Val::inf();
    for (auto& c : f) m = vmin(m, K.val(c));
    return m;
}

KElem resultant(const BaseField& K, const KPoly& f, const KPoly& g) {
    return poly::resultant(KRing{K}, f, g);
}

KElem sylvester_resultant(const BaseField& K, const KPoly& f, const KPoly& g) {
    return poly::sylvester_det(KRing{K}, f, g);
}

// ---- parsing ----

namespace {

struct Parser {
    const BaseField& K;
    KRing R;
    std::string s;
    std::string var;
    size_t i = 0;

    Parser(const BaseField& k, std::string text, std::string v) : K(k), R{k}, s(std::move(text)), var(std::move(v)) {}

    [[noreturn]] void error(const std::string& msg) {
        fail("ParseError", msg + " at position " + std::to_string(i) + " in '" + s + "'");
    }
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
    bool starts_base() {
        skip();
        if (i >= s.size()) return false;
        char c = s[i];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
    }

    KPoly expr() {
        KPoly acc = term();
        while (true) {
            if (peek('+')) {
                ++i;
                acc = poly::add(R, acc, term());
            } else if (peek('-')) {
                ++i;
                acc = poly::sub(R, acc, term());
            } else
                break;
        }
        return acc;
    }

    KPoly term() {
        KPoly acc = unary();
        while (true) {
            if (peek('*')) {
                ++i;
                acc = poly::mul(R, acc, unary());
            } else if (peek('/')) {
                ++i;
                KPoly d = unary();
                if (poly::deg<KRing>(d) != 0) error("division by a non-constant");
                acc = poly::scale(R, acc, K.one() / d[0]);
            } else if (starts_base()) {
                acc = poly::mul(R, acc, unary());
            } else
                break;
        }
        return acc;
    }

    KPoly unary() {
        if (peek('-')) {
            ++i;
            return poly::neg(R, unary());
        }
        if (peek('+')) {
            ++i;
            return unary();
        }
        KPoly b = base();
        if (peek('^')) {
            ++i;
            skip();
            size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (st == i) error("expected exponent");
            unsigned long e = std::stoul(s.substr(st, i - st));
            b = poly::pow(R, b, e);
        }
        return b;
    }

    KPoly base() {
        skip();
        if (i >= s.size()) error("unexpected end");
        char c = s[i];
        if (c == '(') {
            ++i;
            KPoly e = expr();
            if (!peek(')')) error("expected ')'");
            ++i;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            return poly::constant(R, K.from_mpz(mpz_class(s.substr(st, i - st))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t st = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            std::string name = s.substr(st, i - st);
            if (name == var) return poly::variable(R);
            if (name == "t") return poly::constant(R, K.t());
            if (name == "p" || name == "pi") return poly::constant(R, K.uniformizer());
            error("unknown symbol '" + name + "'");
        }
        error(std::string("unexpected character '") + c + "'");
    }
};

std::vector<std::string> split_list(const std::string& body) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(cur);
    return out;
}

}  // namespace

KElem parse_kelem(const BaseField& K, const std::string& text) {
    Parser P(K, text, "\x01");
    KPoly f = P.expr();
    P.skip();
    if (P.i != P.s.size()) P.error("trailing input");
    if (f.empty()) return K.zero();
    return f[0];
}

KPoly parse_kpoly(const BaseField& K, const std::string& text0, const std::string& var) {
    std::string text = text0;
    size_t a = text.find_first_not_of(" \t");
    if (a != std::string::npos && text[a] == '[') {
        size_t b = text.rfind(']');
        if (b == std::string::npos || b < a) fail("ParseError", "unterminated coefficient list");
        KPoly f;
        std::string body = text.substr(a + 1, b - a - 1);
        if (body.find_first_not_of(" \t") == std::string::npos) return f;
        for (auto& item : split_list(body)) f.push_back(parse_kelem(K, item));
        poly::trim(KRing{K}, f);
        return f;
    }
    Parser P(K, text, var);
    KPoly f = P.expr();
    P.skip();
    if (P.i != P.s.size()) P.error("trailing input");
    return f;
}

std::string kpoly_str(const BaseField& K, const KPoly& f, const std::string& var) {
    if (f.empty()) return "0";
    std::string out;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
        if (f[i].is_zero()) continue;
        std::string c = K.str(f[i]);
        bool neg = false;
        if (!c.empty() && c[0] == '-' && c.find_first_of("+-", 1) == std::string::npos) {
            neg = true;
            c = c.substr(1);
        }
        bool compound = c.find_first_of("+-") != std::string::npos && c[0] != '(';
        if (compound) c = "(" + c + ")";
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0) {
            out += c;
            continue;
        }
        if (c != "1") out += c + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
}

std::vector<std::string> kpoly_coeff_strs(const BaseField& K, const KPoly& f) {
    std::vector<std::string> out;
    for (auto& c : f) out.push_back(K.str(c));
    return out;
}

}  // namespace maclane
