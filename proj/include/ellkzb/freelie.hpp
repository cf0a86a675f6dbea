#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ellkzb/curvefun.hpp"
#include "ellkzb/rational.hpp"

namespace ellkzb {

// Words over the alphabet {S, T} with S < T.
using Word = std::string;

bool is_lyndon(const Word& w);
// All Lyndon words of length n, lexicographically sorted.
const std::vector<Word>& lyndon_words(int n);
long witt_dimension(int n);
// w = uv with v the longest proper Lyndon suffix.
std::pair<Word, Word> standard_factorization(const Word& w);
// Nested bracket string of the standard bracketing, e.g. "[S,[S,T]]".
std::string bracket_string(const Word& w);
// Integer expansion of the standard bracketing in the free associative
// algebra. Leading (lex-least) word of the expansion is w itself, coeff 1.
const std::map<Word, long>& lyndon_expansion(const Word& w);
// Shuffle product with multiplicities.
std::map<Word, long> shuffle_product(const Word& a, const Word& b);

// --- coefficient-ring glue -------------------------------------------------

inline bool ring_is_zero(const Rat& r) { return r == 0; }
inline bool ring_is_zero(const CurveFun& f) { return f.is_zero(); }
template <class R>
R ring_from_rat(const Rat& q);
template <>
inline Rat ring_from_rat<Rat>(const Rat& q) { return q; }
template <>
inline CurveFun ring_from_rat<CurveFun>(const Rat& q) { return CurveFun(q); }
inline std::string ring_str(const Rat& r) { return rat_str(r); }
inline std::string ring_str(const CurveFun& f) { return f.to_string(); }

// --- truncated tensor algebra ----------------------------------------------

// Element of the free associative algebra on S, T truncated in word length.
template <class R>
class AssocElt {
  public:
    explicit AssocElt(int trunc = 6) : trunc_(trunc) {}

    int trunc() const { return trunc_; }
    const std::map<Word, R>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    R coeff(const Word& w) const {
        auto it = c_.find(w);
        return it == c_.end() ? ring_from_rat<R>(Rat(0)) : it->second;
    }
    void add(const Word& w, const R& co) {
        if ((int)w.size() > trunc_ || ring_is_zero(co)) return;
        auto [it, ins] = c_.emplace(w, co);
        if (!ins) {
            it->second = it->second + co;
            if (ring_is_zero(it->second)) c_.erase(it);
        }
    }

    static AssocElt one(int trunc) {
        AssocElt a(trunc);
        a.add("", ring_from_rat<R>(Rat(1)));
        return a;
    }

    AssocElt operator-() const {
        AssocElt out(trunc_);
        for (const auto& [w, co] : c_) out.c_[w] = -co;
        return out;
    }
    AssocElt operator+(const AssocElt& o) const {
        AssocElt out = *this;
        out.trunc_ = std::min(trunc_, o.trunc_);
        for (const auto& [w, co] : o.c_) out.add(w, co);
        return out;
    }
    AssocElt operator-(const AssocElt& o) const { return *this + (-o); }
    AssocElt operator*(const AssocElt& o) const {
        AssocElt out(std::min(trunc_, o.trunc_));
        for (const auto& [w1, c1] : c_)
            for (const auto& [w2, c2] : o.c_) {
                if ((int)(w1.size() + w2.size()) > out.trunc_) continue;
                out.add(w1 + w2, c1 * c2);
            }
        return out;
    }
    AssocElt scale(const R& co) const {
        AssocElt out(trunc_);
        if (ring_is_zero(co)) return out;
        for (const auto& [w, c] : c_) out.add(w, c * co);
        return out;
    }
    AssocElt scale_rat(const Rat& q) const { return scale(ring_from_rat<R>(q)); }
    friend bool operator==(const AssocElt& a, const AssocElt& b) { return a.c_ == b.c_; }

    // Lowest word length present; trunc+1 when zero.
    int min_degree() const {
        int d = trunc_ + 1;
        for (const auto& [w, co] : c_) d = std::min<int>(d, w.size());
        return d;
    }

  private:
    std::map<Word, R> c_;
    int trunc_;
};

// exp of an element with zero constant term.
template <class R>
AssocElt<R> assoc_exp(const AssocElt<R>& a) {
    if (!ring_is_zero(a.coeff(""))) throw std::invalid_argument("assoc_exp: nonzero constant term");
    AssocElt<R> out = AssocElt<R>::one(a.trunc());
    AssocElt<R> pw = AssocElt<R>::one(a.trunc());
    Rat fact(1);
    for (int k = 1; k <= a.trunc(); ++k) {
        pw = pw * a;
        if (pw.is_zero()) break;
        fact *= Rat(k);
        out = out + pw.scale_rat(Rat(1) / fact);
    }
    return out;
}

// log of an element with constant term 1.
template <class R>
AssocElt<R> assoc_log(const AssocElt<R>& g) {
    if (!(g.coeff("") == ring_from_rat<R>(Rat(1))))
        throw std::invalid_argument("assoc_log: constant term must be 1");
    AssocElt<R> z = g;
    z.add("", ring_from_rat<R>(Rat(-1)));
    AssocElt<R> out(g.trunc());
    AssocElt<R> pw = AssocElt<R>::one(g.trunc());
    int sign = 1;
    for (int k = 1; k <= g.trunc(); ++k) {
        pw = pw * z;
        if (pw.is_zero()) break;
        out = out + pw.scale_rat(Rat(sign) / Rat(k));
        sign = -sign;
    }
    return out;
}

// Shuffle-relation test for group-like elements: c(I)c(J) = sum over
// shuffles, for all nonempty pairs within the truncation.
template <class R>
bool is_grouplike(const AssocElt<R>& g) {
    if (!(g.coeff("") == ring_from_rat<R>(Rat(1)))) return false;
    std::vector<Word> words;
    words.push_back("");
    for (size_t i = 0; i < words.size(); ++i) {
        Word w = words[i];
        if ((int)w.size() >= g.trunc()) continue;
        words.push_back(w + 'S');
        words.push_back(w + 'T');
    }
    for (const Word& a : words) {
        if (a.empty()) continue;
        for (const Word& b : words) {
            if (b.empty() || (int)(a.size() + b.size()) > g.trunc()) continue;
            R lhs = g.coeff(a) * g.coeff(b);
            R rhs = ring_from_rat<R>(Rat(0));
            for (const auto& [w, mult] : shuffle_product(a, b)) rhs = rhs + g.coeff(w) * ring_from_rat<R>(Rat(mult));
            if (!ring_is_zero(lhs - rhs)) return false;
        }
    }
    return true;
}

// --- truncated free Lie algebra ----------------------------------------------

// Element of the free Lie algebra on S, T in the Lyndon basis (standard
// bracketing), truncated in degree. Equality and bracketing route through
// the associative expansion, which is the unambiguous form.
template <class R>
class LieElt {
  public:
    explicit LieElt(int trunc = 6) : trunc_(trunc) {}

    static LieElt generator(char g, int trunc) {
        LieElt e(trunc);
        e.add(Word(1, g), ring_from_rat<R>(Rat(1)));
        return e;
    }

    int trunc() const { return trunc_; }
    const std::map<Word, R>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    R coeff(const Word& w) const {
        auto it = c_.find(w);
        return it == c_.end() ? ring_from_rat<R>(Rat(0)) : it->second;
    }
    void add(const Word& w, const R& co) {
        if ((int)w.size() > trunc_ || ring_is_zero(co)) return;
        if (!is_lyndon(w)) throw std::invalid_argument("LieElt::add: not a Lyndon word: " + w);
        auto [it, ins] = c_.emplace(w, co);
        if (!ins) {
            it->second = it->second + co;
            if (ring_is_zero(it->second)) c_.erase(it);
        }
    }

    LieElt operator-() const {
        LieElt out(trunc_);
        for (const auto& [w, co] : c_) out.c_[w] = -co;
        return out;
    }
    LieElt operator+(const LieElt& o) const {
        LieElt out = *this;
        out.trunc_ = std::min(trunc_, o.trunc_);
        std::erase_if(out.c_, [&](const auto& p) { return (int)p.first.size() > out.trunc_; });
        for (const auto& [w, co] : o.c_) out.add(w, co);
        return out;
    }
    LieElt operator-(const LieElt& o) const { return *this + (-o); }
    LieElt scale(const R& co) const {
        LieElt out(trunc_);
        if (ring_is_zero(co)) return out;
        for (const auto& [w, c] : c_) out.add(w, c * co);
        return out;
    }
    LieElt scale_rat(const Rat& q) const { return scale(ring_from_rat<R>(q)); }
    friend bool operator==(const LieElt& a, const LieElt& b) { return a.c_ == b.c_; }

    LieElt truncate(int t) const {
        LieElt out(t);
        for (const auto& [w, co] : c_)
            if ((int)w.size() <= t) out.c_[w] = co;
        return out;
    }
    LieElt degree_part(int n) const {
        LieElt out(trunc_);
        for (const auto& [w, co] : c_)
            if ((int)w.size() == n) out.c_[w] = co;
        return out;
    }
    int min_degree() const {
        int d = trunc_ + 1;
        for (const auto& [w, co] : c_) d = std::min<int>(d, w.size());
        return d;
    }

    AssocElt<R> to_assoc() const {
        AssocElt<R> out(trunc_);
        for (const auto& [w, co] : c_)
            for (const auto& [aw, m] : lyndon_expansion(w)) out.add(aw, co * ring_from_rat<R>(Rat(m)));
        return out;
    }

    // Decompose a Lie element given in associative form. Uses the
    // triangularity of Lyndon expansions (lex-least word has coefficient 1).
    static LieElt from_assoc(const AssocElt<R>& a) {
        LieElt out(a.trunc());
        AssocElt<R> rem = a;
        for (int n = 1; n <= a.trunc(); ++n) {
            for (const Word& w : lyndon_words(n)) {
                R co = rem.coeff(w);
                if (ring_is_zero(co)) continue;
                out.add(w, co);
                for (const auto& [aw, m] : lyndon_expansion(w)) rem.add(aw, -(co * ring_from_rat<R>(Rat(m))));
            }
        }
        if (!rem.is_zero()) throw std::invalid_argument("LieElt::from_assoc: input is not a Lie element");
        return out;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string out;
        for (const auto& [w, co] : c_) {
            if (!out.empty()) out += " + ";
            out += "(" + ring_str(co) + ")*" + bracket_string(w);
        }
        return out;
    }

  private:
    std::map<Word, R> c_;
    int trunc_;
};

template <class R>
LieElt<R> bracket(const LieElt<R>& a, const LieElt<R>& b) {
    AssocElt<R> ae = a.to_assoc(), be = b.to_assoc();
    return LieElt<R>::from_assoc(ae * be - be * ae);
}

// Iterated adjoint action ad_T^n(target).
template <class R>
LieElt<R> ad_pow(int n, const LieElt<R>& target) {
    if (n < 0) throw std::invalid_argument("ad_pow: negative n");
    LieElt<R> t = LieElt<R>::generator('T', target.trunc());
    LieElt<R> out = target;
    for (int i = 0; i < n; ++i) out = bracket(t, out);
    return out;
}

// A derivation is determined by its values on the generators.
template <class R>
struct Derivation {
    LieElt<R> on_s, on_t;

    explicit Derivation(int trunc = 6) : on_s(trunc), on_t(trunc) {}
    Derivation(const LieElt<R>& s, const LieElt<R>& t) : on_s(s), on_t(t) {}

    int trunc() const { return on_s.trunc(); }
    bool is_zero() const { return on_s.is_zero() && on_t.is_zero(); }
    Derivation operator-() const { return {-on_s, -on_t}; }
    Derivation operator+(const Derivation& o) const { return {on_s + o.on_s, on_t + o.on_t}; }
    Derivation operator-(const Derivation& o) const { return {on_s - o.on_s, on_t - o.on_t}; }
    Derivation scale(const R& c) const { return {on_s.scale(c), on_t.scale(c)}; }
    Derivation scale_rat(const Rat& q) const { return {on_s.scale_rat(q), on_t.scale_rat(q)}; }
    friend bool operator==(const Derivation& a, const Derivation& b) = default;

    // Apply to a Lie element through the associative expansion (a derivation
    // of the tensor algebra restricts to the Lie algebra).
    LieElt<R> apply(const LieElt<R>& a) const {
        AssocElt<R> sa = on_s.to_assoc(), ta = on_t.to_assoc();
        AssocElt<R> acc(a.trunc());
        for (const auto& [w, co] : a.coeffs()) {
            for (const auto& [aw, m] : lyndon_expansion(w)) {
                for (size_t i = 0; i < aw.size(); ++i) {
                    const AssocElt<R>& img = (aw[i] == 'S') ? sa : ta;
                    if (img.is_zero()) continue;
                    Word pre = aw.substr(0, i), post = aw.substr(i + 1);
                    for (const auto& [iw, ic] : img.coeffs()) {
                        if ((int)(pre.size() + iw.size() + post.size()) > acc.trunc()) continue;
                        acc.add(pre + iw + post, co * ic * ring_from_rat<R>(Rat(m)));
                    }
                }
            }
        }
        return LieElt<R>::from_assoc(acc);
    }
};

template <class R>
Derivation<R> inner_derivation(const LieElt<R>& u) {
    int t = u.trunc();
    return {bracket(u, LieElt<R>::generator('S', t)), bracket(u, LieElt<R>::generator('T', t))};
}

template <class R>
Derivation<R> dbracket(const Derivation<R>& d1, const Derivation<R>& d2) {
    return {d1.apply(d2.on_s) - d2.apply(d1.on_s), d1.apply(d2.on_t) - d2.apply(d1.on_t)};
}

// exp(D) applied to a Lie element (D of positive degree, nilpotent at
// the truncation).
template <class R>
LieElt<R> exp_apply(const Derivation<R>& d, const LieElt<R>& a) {
    LieElt<R> out = a;
    LieElt<R> term = a;
    Rat fact(1);
    for (int k = 1; k <= a.trunc(); ++k) {
        term = d.apply(term);
        if (term.is_zero()) break;
        fact *= Rat(k);
        out = out + term.scale_rat(Rat(1) / fact);
    }
    return out;
}

}  // namespace ellkzb
