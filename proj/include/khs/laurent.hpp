#pragma once

// Laurent polynomials with integer coefficients: one variable (q) and two
// variables (q, t).  TwoVarPoly is the container for graded ranks of the
// homology; coefficients are kept as long long so that intermediate
// subtractions during decomposition searches stay representable.

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace khs {

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& m) : std::runtime_error(m) {}
};

// ---------------------------------------------------------------------------
// One variable: sum of c * q^e

class LaurentPoly {
public:
    std::map<int, long long> c;  // exponent -> coefficient, no zero entries

    LaurentPoly() = default;

    static LaurentPoly mono(int e, long long coeff) {
        LaurentPoly p;
        if (coeff != 0) p.c[e] = coeff;
        return p;
    }

    bool is_zero() const { return c.empty(); }

    long long coeff(int e) const {
        auto it = c.find(e);
        return it == c.end() ? 0 : it->second;
    }

    void add_term(int e, long long coeff) {
        if (coeff == 0) return;
        auto it = c.find(e);
        if (it == c.end()) c[e] = coeff;
        else {
            it->second += coeff;
            if (it->second == 0) c.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (auto& [e, k] : o.c) add_term(e, k);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (auto& [e, k] : o.c) add_term(e, -k);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { a += b; return a; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { a -= b; return a; }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c == b.c; }

    LaurentPoly shifted(int de) const {
        LaurentPoly r;
        for (auto& [e, k] : c) r.c[e + de] = k;
        return r;
    }

    bool nonneg() const {
        for (auto& [e, k] : c) { (void)e; if (k < 0) return false; }
        return true;
    }

    long long eval1() const {  // value at q = 1
        long long s = 0;
        for (auto& [e, k] : c) { (void)e; s += k; }
        return s;
    }

    // Exact division by (q + q^-1); throws if the division is not exact.
    LaurentPoly div_q_plus_qinv() const {
        LaurentPoly rem = *this, quo;
        while (!rem.is_zero()) {
            auto it = rem.c.begin();  // lowest exponent
            int e = it->first;
            long long k = it->second;
            quo.add_term(e + 1, k);       // (q + q^-1) * q^(e+1) has lowest term q^e
            rem.add_term(e, -k);
            rem.add_term(e + 2, -k);
        }
        return quo;
    }

    std::string str() const {
        if (c.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, k] : c) {
            long long a = k;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            if (a != 1 || e == 0) os << a;
            if (e != 0) {
                if (a != 1) os << " ";
                os << "q";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Two variables: sum of c * q^j t^r.  Keys ordered by (r, j), which is also
// the canonical term order for printing.

struct QtKey {
    int r = 0;  // homological (t) degree
    int j = 0;  // quantum (q) degree
    friend bool operator<(const QtKey& a, const QtKey& b) {
        return a.r != b.r ? a.r < b.r : a.j < b.j;
    }
    friend bool operator==(const QtKey& a, const QtKey& b) {
        return a.r == b.r && a.j == b.j;
    }
};

class TwoVarPoly {
public:
    std::map<QtKey, long long> c;  // no zero entries

    TwoVarPoly() = default;

    static TwoVarPoly mono(int j, int r, long long coeff) {
        TwoVarPoly p;
        if (coeff != 0) p.c[{r, j}] = coeff;
        return p;
    }

    bool is_zero() const { return c.empty(); }

    long long coeff(int j, int r) const {
        auto it = c.find({r, j});
        return it == c.end() ? 0 : it->second;
    }

    void add_term(int j, int r, long long coeff) {
        if (coeff == 0) return;
        QtKey k{r, j};
        auto it = c.find(k);
        if (it == c.end()) c[k] = coeff;
        else {
            it->second += coeff;
            if (it->second == 0) c.erase(it);
        }
    }

    TwoVarPoly& operator+=(const TwoVarPoly& o) {
        for (auto& [k, v] : o.c) add_term(k.j, k.r, v);
        return *this;
    }
    TwoVarPoly& operator-=(const TwoVarPoly& o) {
        for (auto& [k, v] : o.c) add_term(k.j, k.r, -v);
        return *this;
    }
    friend TwoVarPoly operator+(TwoVarPoly a, const TwoVarPoly& b) { a += b; return a; }
    friend TwoVarPoly operator-(TwoVarPoly a, const TwoVarPoly& b) { a -= b; return a; }
    friend bool operator==(const TwoVarPoly& a, const TwoVarPoly& b) { return a.c == b.c; }

    // multiply by q^dj t^dr
    TwoVarPoly shifted(int dj, int dr) const {
        TwoVarPoly p;
        for (auto& [k, v] : c) p.c[{k.r + dr, k.j + dj}] = v;
        return p;
    }

    bool nonneg() const {
        for (auto& [k, v] : c) { (void)k; if (v < 0) return false; }
        return true;
    }

    int r_min() const { return c.empty() ? 0 : c.begin()->first.r; }
    int r_max() const { return c.empty() ? 0 : c.rbegin()->first.r; }

    // coefficients of a fixed t-level as a one-variable polynomial in q
    LaurentPoly level(int r) const {
        LaurentPoly p;
        for (auto it = c.lower_bound({r, INT32_MIN}); it != c.end() && it->first.r == r; ++it)
            p.c[it->first.j] = it->second;
        return p;
    }

    long long eval11() const {  // total rank: value at q = t = 1
        long long s = 0;
        for (auto& [k, v] : c) { (void)k; s += v; }
        return s;
    }

    // substitute t = -q^-4, yielding a one-variable Laurent polynomial
    LaurentPoly subst_t_minus_qinv4() const {
        LaurentPoly p;
        for (auto& [k, v] : c)
            p.add_term(k.j - 4 * k.r, (k.r % 2 == 0 ? v : -v));
        return p;
    }

    // mirror: q -> q^-1, t -> t^-1
    TwoVarPoly mirrored() const {
        TwoVarPoly p;
        for (auto& [k, v] : c) p.c[{-k.r, -k.j}] = v;
        return p;
    }

    // Exact division by (1 + q^(2k) t); returns false if not exact or the
    // quotient has a negative coefficient.
    bool divide_by_one_plus_q2kt(int k, TwoVarPoly& quotient) const {
        TwoVarPoly quo;
        TwoVarPoly rem = *this;
        while (!rem.is_zero()) {
            auto it = rem.c.begin();  // lowest (r, j)
            QtKey key = it->first;
            long long v = it->second;
            if (v < 0) return false;
            quo.add_term(key.j, key.r, v);
            rem.add_term(key.j, key.r, -v);
            rem.add_term(key.j + 2 * k, key.r + 1, -v);
        }
        quotient = std::move(quo);
        return quotient.nonneg();
    }

    std::string str() const {
        if (c.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, v] : c) {
            long long a = v;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            first = false;
            bool hasq = (k.j != 0), hast = (k.r != 0);
            if (a != 1 || (!hasq && !hast)) os << a;
            if (hasq) {
                if (a != 1) os << " ";
                os << "q";
                if (k.j != 1) os << "^" << k.j;
            }
            if (hast) {
                if (a != 1 || hasq) os << " ";
                os << "t";
                if (k.r != 1) os << "^" << k.r;
            }
        }
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Text parsing.  Accepts the canonical form produced by str() plus common
// variants: optional '*' between factors, LaTeX-style braced exponents
// (q^{-23}), arbitrary whitespace and newlines.

namespace detail {

class TermLexer {
public:
    explicit TermLexer(const std::string& s) : s_(s) {}

    bool done() { skip_ws(); return i_ >= s_.size(); }

    char peek() { skip_ws(); return i_ < s_.size() ? s_[i_] : '\0'; }

    char get() { skip_ws(); return s_[i_++]; }

    long long integer() {
        skip_ws();
        bool neg = false;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = (s_[i_++] == '-');
        if (i_ >= s_.size() || !std::isdigit((unsigned char)s_[i_]))
            throw parse_error("expected integer in polynomial at offset " + std::to_string(i_));
        long long v = 0;
        while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_]))
            v = v * 10 + (s_[i_++] - '0');
        return neg ? -v : v;
    }

private:
    void skip_ws() {
        while (i_ < s_.size() && (std::isspace((unsigned char)s_[i_]) || s_[i_] == '*')) ++i_;
    }
    const std::string& s_;
    size_t i_ = 0;
};

} // namespace detail

inline TwoVarPoly parse_two_var_poly(const std::string& text) {
    detail::TermLexer lx(text);
    TwoVarPoly p;
    bool first = true;
    while (!lx.done()) {
        long long sign = 1;
        char ch = lx.peek();
        if (ch == '+' || ch == '-') {
            lx.get();
            sign = (ch == '-') ? -1 : 1;
        } else if (!first) {
            throw parse_error("expected '+' or '-' between polynomial terms");
        }
        first = false;

        long long coeff = 1;
        bool have_any = false;
        if (std::isdigit((unsigned char)lx.peek())) {
            coeff = lx.integer();
            have_any = true;
        }
        int j = 0, r = 0;
        while (lx.peek() == 'q' || lx.peek() == 't') {
            char var = lx.get();
            long long e = 1;
            if (lx.peek() == '^') {
                lx.get();
                bool braced = (lx.peek() == '{');
                if (braced) lx.get();
                e = lx.integer();
                if (braced) {
                    if (lx.peek() != '}') throw parse_error("unbalanced '}' in exponent");
                    lx.get();
                }
            }
            if (var == 'q') j += (int)e; else r += (int)e;
            have_any = true;
        }
        if (!have_any) throw parse_error("empty term in polynomial");
        p.add_term(j, r, sign * coeff);
    }
    return p;
}

inline LaurentPoly parse_laurent_poly(const std::string& text) {
    TwoVarPoly p = parse_two_var_poly(text);
    LaurentPoly q;
    for (auto& [k, v] : p.c) {
        if (k.r != 0) throw parse_error("unexpected t in one-variable polynomial");
        q.c[k.j] = v;
    }
    return q;
}

// ---------------------------------------------------------------------------
// Coefficient-table CSV: header "l,r,coefficient" with l = j - 2r.

inline std::string two_var_poly_csv(const TwoVarPoly& p) {
    std::ostringstream os;
    os << "l,r,coefficient\n";
    for (auto& [k, v] : p.c)
        os << (k.j - 2 * k.r) << "," << k.r << "," << v << "\n";
    return os.str();
}

inline TwoVarPoly parse_two_var_poly_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    TwoVarPoly p;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        if (header) {
            header = false;
            if (line.find("l,") == 0 || line.find("l ,") == 0) continue;  // header row
        }
        std::istringstream ls(line);
        long long l, r, a;
        char c1, c2;
        if (!(ls >> l >> c1 >> r >> c2 >> a) || c1 != ',' || c2 != ',')
            throw parse_error("bad CSV row: " + line);
        p.add_term((int)(l + 2 * r), (int)r, a);
    }
    return p;
}

} // namespace khs
