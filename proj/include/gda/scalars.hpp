#pragma once

#include "gda/numeric.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace gda {

enum class Kind { R, C, H };

inline char kind_letter(Kind k) {
    switch (k) {
        case Kind::R: return 'R';
        case Kind::C: return 'C';
        case Kind::H: return 'H';
    }
    return '?';
}

inline std::optional<Kind> kind_from_letter(char c) {
    switch (c) {
        case 'R': return Kind::R;
        case 'C': return Kind::C;
        case 'H': return Kind::H;
        default: return std::nullopt;
    }
}

/// Element a + b*sqrt(2) of the real quadratic field Q(sqrt 2).
struct RealQuad {
    Rational a{0};
    Rational b{0};

    RealQuad() = default;
    RealQuad(Rational a_, Rational b_ = Rational(0)) : a(std::move(a_)), b(std::move(b_)) {}
    RealQuad(int v) : a(v) {}

    static RealQuad sqrt2() { return RealQuad(Rational(0), Rational(1)); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    friend RealQuad operator+(const RealQuad& x, const RealQuad& y) {
        return RealQuad(x.a + y.a, x.b + y.b);
    }
    friend RealQuad operator-(const RealQuad& x, const RealQuad& y) {
        return RealQuad(x.a - y.a, x.b - y.b);
    }
    RealQuad operator-() const { return RealQuad(-a, -b); }
    friend RealQuad operator*(const RealQuad& x, const RealQuad& y) {
        if (x.b.is_zero()) {
            if (x.a.is_zero()) return RealQuad();
            return RealQuad(x.a * y.a, x.a * y.b);
        }
        if (y.b.is_zero()) return RealQuad(x.a * y.a, x.b * y.a);
        return RealQuad(x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a);
    }
    friend bool operator==(const RealQuad& x, const RealQuad& y) {
        return x.a == y.a && x.b == y.b;
    }

    /// Field automorphism sqrt2 -> -sqrt2.
    RealQuad conj_sqrt2() const { return RealQuad(a, -b); }

    /// Field norm a^2 - 2 b^2 (rational; zero iff the element is zero).
    Rational norm() const { return a * a - 2 * b * b; }

    RealQuad inverse() const {
        if (is_zero()) throw GdaError("E_ZERO_DIVISION", "inverse of zero in Q(sqrt2)");
        Rational n = norm();
        return RealQuad(a / n, -b / n);
    }

    /// Exact sign of the real number a + b*sqrt(2). When a and b disagree in
    /// sign, the comparison of a^2 against 2 b^2 decides which term dominates.
    int sign() const {
        int sa = sign_of(a), sb = sign_of(b);
        if (sa == 0 && sb == 0) throw GdaError("E_ZERO_SIGN", "sign of zero requested");
        if (sa == 0) return sb;
        if (sb == 0) return sa;
        if (sa == sb) return sa;
        Rational lhs = a * a, rhs = 2 * b * b;
        if (lhs == rhs) throw GdaError("E_INTERNAL", "a + b*sqrt2 = 0 with nonzero a,b is impossible");
        return lhs > rhs ? sa : sb;
    }
};

/// Element c0 + c1*w + c2*w^2 + c3*w^3 of Q(w), w a primitive 8th root of
/// unity (w^4 = -1). The imaginary unit is w^2; sqrt(2) = w - w^3.
struct Cyclo8 {
    std::array<Rational, 4> c{Rational(0), Rational(0), Rational(0), Rational(0)};

    Cyclo8() = default;
    Cyclo8(Rational c0, Rational c1 = Rational(0), Rational c2 = Rational(0),
           Rational c3 = Rational(0))
        : c{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}
    Cyclo8(int v) : c{Rational(v), Rational(0), Rational(0), Rational(0)} {}

    static Cyclo8 omega(int power = 1) {
        power = ((power % 8) + 8) % 8;
        Cyclo8 r;
        if (power < 4)
            r.c[power] = 1;
        else
            r.c[power - 4] = -1;
        return r;
    }
    static Cyclo8 i() { return omega(2); }
    static Cyclo8 from_quad(const RealQuad& q) {
        // sqrt2 = w - w^3
        return Cyclo8(q.a, q.b, Rational(0), -q.b);
    }

    bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0; }

    friend Cyclo8 operator+(const Cyclo8& x, const Cyclo8& y) {
        Cyclo8 r;
        for (int k = 0; k < 4; ++k) r.c[k] = x.c[k] + y.c[k];
        return r;
    }
    friend Cyclo8 operator-(const Cyclo8& x, const Cyclo8& y) {
        Cyclo8 r;
        for (int k = 0; k < 4; ++k) r.c[k] = x.c[k] - y.c[k];
        return r;
    }
    Cyclo8 operator-() const {
        Cyclo8 r;
        for (int k = 0; k < 4; ++k) r.c[k] = -c[k];
        return r;
    }
    friend Cyclo8 operator*(const Cyclo8& x, const Cyclo8& y) {
        Cyclo8 r;
        for (int p = 0; p < 4; ++p) {
            if (x.c[p].is_zero()) continue;
            for (int q = 0; q < 4; ++q) {
                if (y.c[q].is_zero()) continue;
                int idx = p + q;
                Rational prod = x.c[p] * y.c[q];
                if (idx < 4)
                    r.c[idx] += prod;
                else
                    r.c[idx - 4] -= prod;
            }
        }
        return r;
    }
    friend bool operator==(const Cyclo8& x, const Cyclo8& y) { return x.c == y.c; }

    /// Complex conjugation: w -> w^{-1} = -w^3 (so w^2 -> -w^2, w^3 -> -w).
    Cyclo8 conj() const { return Cyclo8(c[0], -c[3], -c[2], -c[1]); }

    /// Real part, an element of Q(sqrt2): Re(w) = -Re(w^3) = sqrt2/2.
    RealQuad real_part() const { return RealQuad(c[0], (c[1] - c[3]) / 2); }
    /// Imaginary part: Im(w) = Im(w^3) = sqrt2/2, Im(w^2) = 1.
    RealQuad imag_part() const { return RealQuad(c[2], (c[1] + c[3]) / 2); }

    std::optional<RealQuad> as_real() const {
        if (c[2] == 0 && c[3] == -c[1]) return RealQuad(c[0], c[1]);
        return std::nullopt;
    }
    /// If this equals r*i with r in Q(sqrt2), return r.
    std::optional<RealQuad> as_imaginary() const {
        if (c[0] == 0 && c[3] == c[1]) return RealQuad(c[2], c[1]);
        return std::nullopt;
    }

    /// Inverse by solving the 4x4 rational system M(x) y = 1, where M(x) is
    /// the multiplication-by-x matrix in the basis 1, w, w^2, w^3.
    Cyclo8 inverse() const {
        if (is_zero()) throw GdaError("E_ZERO_DIVISION", "inverse of zero in Q(w)");
        // Column j of M is x * w^j.
        std::array<std::array<Rational, 5>, 4> m{};
        for (int j = 0; j < 4; ++j) {
            Cyclo8 col = *this * omega(j);
            for (int r = 0; r < 4; ++r) m[r][j] = col.c[r];
        }
        m[0][4] = 1;
        // Gaussian elimination with partial (first nonzero) pivoting.
        int row = 0;
        for (int col = 0; col < 4; ++col) {
            int piv = -1;
            for (int r = row; r < 4; ++r)
                if (m[r][col] != 0) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(m[piv], m[row]);
            Rational p = m[row][col];
            for (int k = col; k < 5; ++k) m[row][k] /= p;
            for (int r = 0; r < 4; ++r) {
                if (r == row || m[r][col] == 0) continue;
                Rational f = m[r][col];
                for (int k = col; k < 5; ++k) m[r][k] -= f * m[row][k];
            }
            ++row;
        }
        if (row < 4) throw GdaError("E_INTERNAL", "singular multiplication matrix in Q(w)");
        Cyclo8 y;
        for (int r = 0; r < 4; ++r) {
            int lead = -1;
            for (int k = 0; k < 4; ++k)
                if (m[r][k] != 0) { lead = k; break; }
            if (lead >= 0) y.c[lead] = m[r][4];
        }
        return y;
    }
};

/// Quaternion w + x*i + y*j + z*k with coefficients in Q(sqrt2).
struct QuaternionQ2 {
    RealQuad w, x, y, z;

    QuaternionQ2() = default;
    QuaternionQ2(RealQuad w_, RealQuad x_ = RealQuad(), RealQuad y_ = RealQuad(),
                 RealQuad z_ = RealQuad())
        : w(std::move(w_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}
    QuaternionQ2(int v) : w(v) {}

    static QuaternionQ2 i() { return QuaternionQ2(RealQuad(0), RealQuad(1)); }
    static QuaternionQ2 j() { return QuaternionQ2(RealQuad(0), RealQuad(0), RealQuad(1)); }
    static QuaternionQ2 k() {
        return QuaternionQ2(RealQuad(0), RealQuad(0), RealQuad(0), RealQuad(1));
    }
    static QuaternionQ2 from_quad(const RealQuad& q) { return QuaternionQ2(q); }

    bool is_zero() const { return w.is_zero() && x.is_zero() && y.is_zero() && z.is_zero(); }

    friend QuaternionQ2 operator+(const QuaternionQ2& p, const QuaternionQ2& q) {
        return QuaternionQ2(p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z);
    }
    friend QuaternionQ2 operator-(const QuaternionQ2& p, const QuaternionQ2& q) {
        return QuaternionQ2(p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z);
    }
    QuaternionQ2 operator-() const { return QuaternionQ2(-w, -x, -y, -z); }
    friend QuaternionQ2 operator*(const QuaternionQ2& p, const QuaternionQ2& q) {
        // Hamilton product accumulated over nonzero basis components.
        static constexpr int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
        static constexpr int sgn[4][4] = {{1, 1, 1, 1},
                                          {1, -1, 1, -1},
                                          {1, -1, -1, 1},
                                          {1, 1, -1, -1}};
        const RealQuad* pc[4] = {&p.w, &p.x, &p.y, &p.z};
        const RealQuad* qc[4] = {&q.w, &q.x, &q.y, &q.z};
        RealQuad acc[4];
        for (int i = 0; i < 4; ++i) {
            if (pc[i]->is_zero()) continue;
            for (int j = 0; j < 4; ++j) {
                if (qc[j]->is_zero()) continue;
                RealQuad prod = *pc[i] * *qc[j];
                if (sgn[i][j] < 0) prod = -prod;
                acc[idx[i][j]] = acc[idx[i][j]] + prod;
            }
        }
        return QuaternionQ2(acc[0], acc[1], acc[2], acc[3]);
    }
    friend bool operator==(const QuaternionQ2& p, const QuaternionQ2& q) {
        return p.w == q.w && p.x == q.x && p.y == q.y && p.z == q.z;
    }

    QuaternionQ2 conj() const { return QuaternionQ2(w, -x, -y, -z); }

    /// Reduced norm w^2 + x^2 + y^2 + z^2; zero iff the quaternion is zero.
    RealQuad norm() const { return w * w + x * x + y * y + z * z; }

    QuaternionQ2 inverse() const {
        if (is_zero()) throw GdaError("E_ZERO_DIVISION", "inverse of zero quaternion");
        RealQuad n_inv = norm().inverse();
        QuaternionQ2 c = conj();
        return QuaternionQ2(c.w * n_inv, c.x * n_inv, c.y * n_inv, c.z * n_inv);
    }

    std::optional<RealQuad> as_real() const {
        if (x.is_zero() && y.is_zero() && z.is_zero()) return w;
        return std::nullopt;
    }
};

// ---------------------------------------------------------------------------
// Scalar traits: coordinates over Q(sqrt2) and kind tags.

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<RealQuad> {
    static constexpr Kind kind = Kind::R;
    static constexpr std::size_t real_dim = 1;
    static void flatten(const RealQuad& s, RealQuad* out) { out[0] = s; }
    static std::optional<RealQuad> as_real(const RealQuad& s) { return s; }
    static RealQuad conj(const RealQuad& s) { return s; }
    static RealQuad scale(const RealQuad& s, const RealQuad& by) { return s * by; }
};

template <>
struct scalar_traits<Cyclo8> {
    static constexpr Kind kind = Kind::C;
    static constexpr std::size_t real_dim = 2;
    static void flatten(const Cyclo8& s, RealQuad* out) {
        out[0] = s.real_part();
        out[1] = s.imag_part();
    }
    static std::optional<RealQuad> as_real(const Cyclo8& s) { return s.as_real(); }
    static Cyclo8 conj(const Cyclo8& s) { return s.conj(); }
    static Cyclo8 scale(const Cyclo8& s, const RealQuad& by) { return s * Cyclo8::from_quad(by); }
};

template <>
struct scalar_traits<QuaternionQ2> {
    static constexpr Kind kind = Kind::H;
    static constexpr std::size_t real_dim = 4;
    static void flatten(const QuaternionQ2& s, RealQuad* out) {
        out[0] = s.w;
        out[1] = s.x;
        out[2] = s.y;
        out[3] = s.z;
    }
    static std::optional<RealQuad> as_real(const QuaternionQ2& s) { return s.as_real(); }
    static QuaternionQ2 conj(const QuaternionQ2& s) { return s.conj(); }
    static QuaternionQ2 scale(const QuaternionQ2& s, const RealQuad& by) {
        return s * QuaternionQ2::from_quad(by);
    }
};

template <class S>
concept ScalarRing = requires(const S& a, const S& b) {
    { a + b } -> std::convertible_to<S>;
    { a - b } -> std::convertible_to<S>;
    { a * b } -> std::convertible_to<S>;
    { a == b } -> std::convertible_to<bool>;
    { scalar_traits<S>::kind };
};

// ---------------------------------------------------------------------------
// Scalar literal grammar (shared with the document format):
//   scalar   := ['-'] term (('+' | '-') term)*
//   term     := rational | [coef '*'] symbol
//   coef     := rational | '(' realquad ')'
//   rational := integer ['/' positive-integer]
//   symbol   := r2 | w | w2 | w3 | i | j | k
// Symbols valid per kind: R accepts r2; C accepts w, w2, w3; H accepts
// i, j, k (with optionally parenthesized Q(sqrt2) coefficients) and r2 for
// the real coordinate. A bare symbol carries coefficient 1.

namespace detail {

struct ScalarParser {
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw GdaError("E_PARSE", "scalar literal, offset " + std::to_string(pos) + ": " + msg);
    }
    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool eat(char ch) {
        skip_ws();
        if (pos < text.size() && text[pos] == ch) {
            ++pos;
            return true;
        }
        return false;
    }
    bool peek_digit() {
        skip_ws();
        return pos < text.size() && text[pos] >= '0' && text[pos] <= '9';
    }

    Rational parse_rational_digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) fail("expected digits");
        Int num(std::string(text.substr(start, pos - start)));
        if (eat('/')) {
            std::size_t dstart = pos;
            while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
            if (pos == dstart) fail("expected denominator digits");
            Int den(std::string(text.substr(dstart, pos - dstart)));
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    // symbol id: 0 none, 1 r2, 2 w, 3 w2, 4 w3, 5 i, 6 j, 7 k
    int parse_symbol() {
        skip_ws();
        if (pos >= text.size()) return 0;
        char ch = text[pos];
        if (ch == 'r') {
            if (pos + 1 < text.size() && text[pos + 1] == '2') {
                pos += 2;
                return 1;
            }
            fail("unknown symbol");
        }
        if (ch == 'w') {
            ++pos;
            if (pos < text.size() && text[pos] == '2') {
                ++pos;
                return 3;
            }
            if (pos < text.size() && text[pos] == '3') {
                ++pos;
                return 4;
            }
            return 2;
        }
        if (ch == 'i') {
            ++pos;
            return 5;
        }
        if (ch == 'j') {
            ++pos;
            return 6;
        }
        if (ch == 'k') {
            ++pos;
            return 7;
        }
        return 0;
    }

    struct Term {
        RealQuad coef;   // rational or parenthesized Q(sqrt2) value
        int symbol = 0;  // see parse_symbol
    };

    // realquad := ['-'] rq_term (('+'|'-') rq_term)*, rq_term := rational ['*' r2] | r2
    RealQuad parse_realquad_body(char terminator) {
        RealQuad acc;
        bool first = true;
        for (;;) {
            skip_ws();
            if (pos >= text.size() || text[pos] == terminator) break;
            int sgn = 1;
            if (eat('-'))
                sgn = -1;
            else if (eat('+')) {
                if (first) fail("unexpected '+'");
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            Rational r(1);
            bool have_coef = false;
            if (peek_digit()) {
                r = parse_rational_digits();
                have_coef = true;
            }
            bool is_r2 = false;
            skip_ws();
            if (have_coef) {
                if (eat('*')) {
                    if (parse_symbol() != 1)
                        fail("only r2 is allowed inside a quaternion coefficient");
                    is_r2 = true;
                }
            } else {
                if (parse_symbol() != 1) fail("expected term");
                is_r2 = true;
            }
            if (sgn < 0) r = -r;
            if (is_r2)
                acc.b += r;
            else
                acc.a += r;
            first = false;
        }
        if (first) fail("empty coefficient");
        return acc;
    }

    std::vector<Term> parse_terms() {
        std::vector<Term> terms;
        bool first = true;
        for (;;) {
            skip_ws();
            if (pos >= text.size()) break;
            int sgn = 1;
            if (eat('-'))
                sgn = -1;
            else if (eat('+')) {
                if (first) fail("unexpected '+'");
            } else if (!first) {
                fail("expected '+' or '-' between terms");
            }
            Term t;
            skip_ws();
            if (pos < text.size() && text[pos] == '(') {
                ++pos;
                t.coef = parse_realquad_body(')');
                if (!eat(')')) fail("expected ')'");
                if (!eat('*')) fail("expected '*' after parenthesized coefficient");
                t.symbol = parse_symbol();
                if (t.symbol == 0) fail("expected symbol after coefficient");
            } else if (peek_digit()) {
                t.coef = RealQuad(parse_rational_digits());
                skip_ws();
                if (eat('*')) {
                    t.symbol = parse_symbol();
                    if (t.symbol == 0) fail("expected symbol after '*'");
                }
            } else {
                t.symbol = parse_symbol();
                if (t.symbol == 0) fail("expected term");
                t.coef = RealQuad(Rational(1));
            }
            if (sgn < 0) t.coef = -t.coef;
            terms.push_back(t);
            first = false;
        }
        return terms;
    }
};

inline void append_rational_term(std::string& out, const Rational& r, const char* symbol,
                                 bool& first) {
    if (r == 0) return;
    Rational v = r;
    if (first) {
        if (v < 0) {
            out += '-';
            v = -v;
        }
    } else {
        out += (v < 0) ? '-' : '+';
        if (v < 0) v = -v;
    }
    if (symbol == nullptr) {
        out += to_string(v);
    } else if (v == 1) {
        out += symbol;
    } else {
        out += to_string(v);
        out += '*';
        out += symbol;
    }
    first = false;
}

} // namespace detail

inline std::string format_scalar(const RealQuad& s) {
    std::string out;
    bool first = true;
    detail::append_rational_term(out, s.a, nullptr, first);
    detail::append_rational_term(out, s.b, "r2", first);
    if (first) out = "0";
    return out;
}

inline std::string format_scalar(const Cyclo8& s) {
    static const char* syms[4] = {nullptr, "w", "w2", "w3"};
    std::string out;
    bool first = true;
    for (int k = 0; k < 4; ++k) detail::append_rational_term(out, s.c[k], syms[k], first);
    if (first) out = "0";
    return out;
}

inline std::string format_scalar(const QuaternionQ2& s) {
    std::string out;
    bool first = true;
    detail::append_rational_term(out, s.w.a, nullptr, first);
    detail::append_rational_term(out, s.w.b, "r2", first);
    const RealQuad* coefs[3] = {&s.x, &s.y, &s.z};
    static const char* syms[3] = {"i", "j", "k"};
    for (int u = 0; u < 3; ++u) {
        const RealQuad& q = *coefs[u];
        if (q.is_zero()) continue;
        if (q.is_rational()) {
            detail::append_rational_term(out, q.a, syms[u], first);
        } else if (q.a == 0) {
            // pure sqrt2 multiple: (b*r2)*i
            std::string inner = "(" + format_scalar(q) + ")*" + syms[u];
            if (!first) out += '+';
            out += inner;
            first = false;
        } else {
            if (!first) out += '+';
            out += "(" + format_scalar(q) + ")*" + syms[u];
            first = false;
        }
    }
    if (first) out = "0";
    return out;
}

template <class S>
S parse_scalar(std::string_view text);

template <>
inline RealQuad parse_scalar<RealQuad>(std::string_view text) {
    detail::ScalarParser p{text};
    auto terms = p.parse_terms();
    RealQuad acc;
    for (auto& t : terms) {
        if (t.symbol == 0) {
            acc = acc + t.coef;
        } else if (t.symbol == 1) {
            if (!t.coef.is_rational())
                throw GdaError("E_PARSE", "nested r2 coefficient on r2 term");
            acc.b += t.coef.a;
        } else {
            throw GdaError("E_PARSE", "symbol not valid for kind R");
        }
    }
    return acc;
}

template <>
inline Cyclo8 parse_scalar<Cyclo8>(std::string_view text) {
    detail::ScalarParser p{text};
    auto terms = p.parse_terms();
    Cyclo8 acc;
    for (auto& t : terms) {
        if (!t.coef.is_rational())
            throw GdaError("E_PARSE", "parenthesized coefficients are only valid for kind H");
        const Rational& r = t.coef.a;
        switch (t.symbol) {
            case 0: acc.c[0] += r; break;
            case 2: acc.c[1] += r; break;
            case 3: acc.c[2] += r; break;
            case 4: acc.c[3] += r; break;
            default: throw GdaError("E_PARSE", "symbol not valid for kind C");
        }
    }
    return acc;
}

template <>
inline QuaternionQ2 parse_scalar<QuaternionQ2>(std::string_view text) {
    detail::ScalarParser p{text};
    auto terms = p.parse_terms();
    QuaternionQ2 acc;
    for (auto& t : terms) {
        switch (t.symbol) {
            case 0: acc.w = acc.w + t.coef; break;
            case 1:
                if (!t.coef.is_rational())
                    throw GdaError("E_PARSE", "nested r2 coefficient on r2 term");
                acc.w.b += t.coef.a;
                break;
            case 5: acc.x = acc.x + t.coef; break;
            case 6: acc.y = acc.y + t.coef; break;
            case 7: acc.z = acc.z + t.coef; break;
            default: throw GdaError("E_PARSE", "symbol not valid for kind H");
        }
    }
    return acc;
}

inline std::ostream& operator<<(std::ostream& os, const RealQuad& s) {
    return os << format_scalar(s);
}
inline std::ostream& operator<<(std::ostream& os, const Cyclo8& s) {
    return os << format_scalar(s);
}
inline std::ostream& operator<<(std::ostream& os, const QuaternionQ2& s) {
    return os << format_scalar(s);
}

} // namespace gda
