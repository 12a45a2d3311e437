#pragma once

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace operad {

// p[i-1] = p(i), values in 1..n
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    return p;
}

inline bool is_identity(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != static_cast<int>(i) + 1) return false;
    return true;
}

inline bool is_perm(const Perm& p) {
    std::vector<char> seen(p.size() + 1, 0);
    for (int x : p) {
        if (x < 1 || x > static_cast<int>(p.size()) || seen[static_cast<std::size_t>(x)]) return false;
        seen[static_cast<std::size_t>(x)] = 1;
    }
    return true;
}

// (a*b)(i) = a(b(i))
inline Perm compose(const Perm& a, const Perm& b) {
    if (a.size() != b.size()) throw std::invalid_argument("compose: degree mismatch");
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i] - 1)];
    return c;
}

inline Perm inverse(const Perm& p) {
    Perm q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[static_cast<std::size_t>(p[i] - 1)] = static_cast<int>(i) + 1;
    return q;
}

inline int perm_sign(const Perm& p) {
    int s = 1;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j] - 1)) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) s = -s;
    }
    return s;
}

// all of S_n in lexicographic order of the image word
inline std::vector<Perm> all_perms(int n) {
    std::vector<Perm> out;
    Perm p = identity_perm(n);
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

inline Perm transposition(int n, int a, int b) {
    Perm p = identity_perm(n);
    std::swap(p[static_cast<std::size_t>(a - 1)], p[static_cast<std::size_t>(b - 1)]);
    return p;
}

inline std::string cycle_string(const Perm& p) {
    std::string out;
    std::vector<char> seen(p.size(), 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i) + 1) continue;
        out += '(';
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j] - 1)) {
            seen[j] = 1;
            out += std::to_string(j + 1);
            if (p.size() > 9 && p[j] - 1 != static_cast<int>(i)) out += ' ';
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

// "e", "(12)", "(123)(45)"; digits are single labels unless separated by spaces
inline Perm parse_cycles(const std::string& s, int n) {
    Perm p = identity_perm(n);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip();
    if (i < s.size() && (s[i] == 'e' || s[i] == '1') && s.find('(') == std::string::npos) return p;
    while (i < s.size()) {
        skip();
        if (i >= s.size()) break;
        if (s[i] != '(') throw std::invalid_argument("bad cycle notation: " + s);
        ++i;
        std::vector<int> cyc;
        while (true) {
            skip();
            if (i >= s.size()) throw std::invalid_argument("unterminated cycle: " + s);
            if (s[i] == ')') {
                ++i;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw std::invalid_argument("bad cycle notation: " + s);
            int v = 0;
            if (n > 9) {
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
            } else {
                v = s[i++] - '0';
            }
            if (v < 1 || v > n) throw std::invalid_argument("cycle entry out of range: " + s);
            cyc.push_back(v);
        }
        Perm c = identity_perm(n);
        for (std::size_t k = 0; k < cyc.size(); ++k) c[static_cast<std::size_t>(cyc[k] - 1)] = cyc[(k + 1) % cyc.size()];
        if (!is_perm(c)) throw std::invalid_argument("repeated entry in cycle: " + s);
        p = compose(p, c);
    }
    return p;
}

inline long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace operad
