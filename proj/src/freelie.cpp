#include "ellkzb/freelie.hpp"

#include <mutex>

namespace ellkzb {

bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (size_t i = 1; i < w.size(); ++i) {
        if (!(w < w.substr(i))) return false;
    }
    return true;
}

const std::vector<Word>& lyndon_words(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Word>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n < 1) throw std::invalid_argument("lyndon_words: n must be >= 1");
    // Duval's generation over the two-letter alphabet.
    std::vector<Word> out;
    std::string w = "S";
    const std::string alphabet = "ST";
    while (true) {
        if ((int)w.size() == n) out.push_back(w);
        // extend periodically to length n, then increment
        std::string t = w;
        while ((int)t.size() < n) t += t[t.size() % w.size()];
        while (!t.empty() && t.back() == 'T') t.pop_back();
        if (t.empty()) break;
        t.back() = 'T';
        w = t;
    }
    std::sort(out.begin(), out.end());
    return cache.emplace(n, std::move(out)).first->second;
}

long witt_dimension(int n) {
    if (n < 1) throw std::invalid_argument("witt_dimension: n must be >= 1");
    // (1/n) sum_{d|n} mu(d) 2^(n/d)
    auto mobius = [](int m) {
        int result = 1;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                result = -result;
            }
        }
        if (m > 1) result = -result;
        return result;
    };
    long total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        total += mobius(d) * (1L << (n / d));
    }
    return total / n;
}

std::pair<Word, Word> standard_factorization(const Word& w) {
    if (w.size() < 2) throw std::invalid_argument("standard_factorization: word too short");
    // v = the longest proper suffix that is Lyndon.
    for (size_t i = 1; i < w.size(); ++i) {
        Word v = w.substr(i);
        if (is_lyndon(v)) return {w.substr(0, i), v};
    }
    throw std::logic_error("standard_factorization: no Lyndon suffix");
}

std::string bracket_string(const Word& w) {
    if (w.size() == 1) return w;
    auto [l, r] = standard_factorization(w);
    return "[" + bracket_string(l) + "," + bracket_string(r) + "]";
}

namespace {

using ExpansionCache = std::map<Word, std::map<Word, long>>;

const std::map<Word, long>& expansion_locked(ExpansionCache& cache, const Word& w) {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    std::map<Word, long> out;
    if (w.size() == 1) {
        out[w] = 1;
    } else {
        auto [l, r] = standard_factorization(w);
        const auto& le = expansion_locked(cache, l);
        const auto& re = expansion_locked(cache, r);
        for (const auto& [wl, cl] : le)
            for (const auto& [wr, cr] : re) {
                out[wl + wr] += cl * cr;
                out[wr + wl] -= cl * cr;
            }
        std::erase_if(out, [](const auto& p) { return p.second == 0; });
    }
    return cache.emplace(w, std::move(out)).first->second;
}

}  // namespace

const std::map<Word, long>& lyndon_expansion(const Word& w) {
    static std::mutex mu;
    static ExpansionCache cache;
    if (!is_lyndon(w)) throw std::invalid_argument("lyndon_expansion: not a Lyndon word: " + w);
    std::lock_guard<std::mutex> lock(mu);
    return expansion_locked(cache, w);
}

std::map<Word, long> shuffle_product(const Word& a, const Word& b) {
    if (a.empty()) return {{b, 1}};
    if (b.empty()) return {{a, 1}};
    std::map<Word, long> out;
    for (const auto& [w, m] : shuffle_product(a.substr(1), b)) out[a[0] + w] += m;
    for (const auto& [w, m] : shuffle_product(a, b.substr(1))) out[b[0] + w] += m;
    return out;
}

}  // namespace ellkzb
