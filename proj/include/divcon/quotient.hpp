#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "divcon/errors.hpp"
#include "divcon/rational.hpp"

namespace divcon {

/// Cyclic quotient datum 1/n(a_1, ..., a_m), weights reduced mod n.
struct QuotientType {
    long long n = 1;
    std::vector<long long> weights;

    QuotientType() = default;

    QuotientType(long long order, std::vector<long long> w) : n(order), weights(std::move(w)) {
        if (n <= 0) {
            throw PreconditionError("quotient order must be positive");
        }
        for (auto& a : weights) {
            a = mod_floor(a, n);
        }
    }

    std::size_t arity() const { return weights.size(); }

    /// Sum of weights is 0 mod n, i.e. the generator acts in SL.
    bool is_gorenstein() const {
        long long s = 0;
        for (auto a : weights) {
            s = mod_floor(s + a, n);
        }
        return s == 0;
    }

    std::string str() const {
        std::string out = "1/" + std::to_string(n) + "(";
        for (std::size_t k = 0; k < weights.size(); ++k) {
            out += (k ? "," : "") + std::to_string(weights[k]);
        }
        return out + ")";
    }

    friend auto operator<=>(const QuotientType&, const QuotientType&) = default;
};

/// Parses "1/n(a1,a2,...)"; whitespace anywhere is ignored and negative
/// weights are reduced mod n.
inline QuotientType parse_quotient_type(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += c;
        }
    }
    auto fail = [&]() -> QuotientType {
        throw ParseError("malformed quotient type '" + std::string(text) + "', expected 1/n(a1,...)");
    };
    if (s.size() < 5 || s.rfind("1/", 0) != 0 || s.back() != ')') {
        return fail();
    }
    auto open = s.find('(');
    if (open == std::string::npos) {
        return fail();
    }
    auto parse_ll = [&](const std::string& tok) -> long long {
        if (tok.empty()) {
            fail();
        }
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            fail();
        }
        if (used != tok.size()) {
            fail();
        }
        return v;
    };
    const long long n = parse_ll(s.substr(2, open - 2));
    if (n <= 0) {
        return fail();
    }
    std::vector<long long> w;
    std::string body = s.substr(open + 1, s.size() - open - 2);
    if (!body.empty()) {
        std::size_t start = 0;
        for (;;) {
            auto comma = body.find(',', start);
            w.push_back(parse_ll(body.substr(start, comma - start)));
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
    }
    return QuotientType(n, std::move(w));
}

/// Lexicographically least weight sequence over coordinate permutations and
/// multiplication by units mod n.
inline QuotientType normalize_quotient_type(const QuotientType& q) {
    std::vector<long long> best;
    for (long long u = 1; u <= std::max<long long>(q.n - 1, 1); ++u) {
        if (std::gcd(u, q.n) != 1) {
            continue;
        }
        std::vector<long long> w;
        w.reserve(q.arity());
        for (auto a : q.weights) {
            w.push_back(mod_floor(a * u, q.n));
        }
        std::sort(w.begin(), w.end());
        if (best.empty() || w < best) {
            best = std::move(w);
        }
    }
    return QuotientType(q.n, best);
}

/// Age of the k-th power of the generator: sum of fractional parts k*a_i/n.
inline Rational age(const QuotientType& q, long long k) {
    long long total = 0;
    for (auto a : q.weights) {
        total += mod_floor(k * a, q.n);
    }
    return Rational(total, q.n);
}

/// Reid-Tai: every non-identity element has age > 1 (strict).
inline bool reid_tai_is_terminal(const QuotientType& q) {
    for (long long k = 1; k < q.n; ++k) {
        if (age(q, k) <= 1) {
            return false;
        }
    }
    return true;
}

/// Companion flag: every non-identity element has age >= 1.
inline bool reid_tai_is_canonical(const QuotientType& q) {
    for (long long k = 1; k < q.n; ++k) {
        if (age(q, k) < 1) {
            return false;
        }
    }
    return true;
}

}  // namespace divcon
