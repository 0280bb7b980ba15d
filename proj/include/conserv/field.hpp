#pragma once

// Exact scalar arithmetic: the rationals (GMP-backed) and prime fields F_p.
// Every computation in this library is exact; there is no floating point
// anywhere.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace conserv {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Runtime description of the ground field: Q or F_p with p prime.
struct FieldSpec {
    enum class Kind { rationals, prime_field };
    Kind kind = Kind::rationals;
    long long p = 0;

    static FieldSpec rationals() { return {Kind::rationals, 0}; }
    static FieldSpec prime(long long p) {
        if (!is_prime(p)) throw error("FieldSpec: " + std::to_string(p) + " is not prime");
        return {Kind::prime_field, p};
    }

    bool operator==(const FieldSpec&) const = default;
    long long characteristic() const { return kind == Kind::rationals ? 0 : p; }

    std::string name() const {
        return kind == Kind::rationals ? "Q" : "F" + std::to_string(p);
    }

    // Accepts "Q" or "F<p>". Composite or non-prime-field orders are rejected
    // (v1 restriction: prime fields only).
    static std::optional<FieldSpec> parse(std::string_view s) {
        if (s == "Q") return rationals();
        if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f')) {
            long long p = 0;
            for (char c : s.substr(1)) {
                if (c < '0' || c > '9') return std::nullopt;
                p = p * 10 + (c - '0');
                if (p > (1LL << 31)) return std::nullopt;
            }
            if (!is_prime(p)) return std::nullopt;
            return prime(p);
        }
        return std::nullopt;
    }
};

namespace detail {
// "-3", "2/7": an optional sign, digits, an optional /denominator. Anything
// else (decimals, exponents, whitespace) is rejected as non-exact.
inline bool exact_token(std::string_view s, std::string& num, std::string& den) {
    size_t i = 0;
    auto digits = [&](std::string& out) {
        size_t start = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') out += s[i++];
        return i > start;
    };
    num.clear();
    den = "1";
    if (i < s.size() && s[i] == '-') num += s[i++];
    if (!digits(num)) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    den.clear();
    if (!digits(den) || i != s.size()) return false;
    return den != "0";
}
} // namespace detail

// The field Q. Elements are reduced fractions with positive denominator
// (mpq_class canonical form).
struct Rationals {
    using Elem = mpq_class;

    FieldSpec spec() const { return FieldSpec::rationals(); }
    long long characteristic() const { return 0; }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem inv(const Elem& a) const {
        if (a == 0) throw error("division by zero in Q");
        return 1 / a;
    }
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    // total order used for deterministic pivoting and sorting
    int cmp(const Elem& a, const Elem& b) const { return ::cmp(a, b); }

    std::string to_string(const Elem& a) const { return a.get_str(); }

    std::optional<Elem> parse(std::string_view s) const {
        std::string num, den;
        if (!detail::exact_token(s, num, den)) return std::nullopt;
        Elem q(num + "/" + den);
        q.canonicalize();
        return q;
    }
};

// The prime field F_p. Elements are canonical residues in [0, p).
struct PrimeField {
    using Elem = long long;
    long long p;

    explicit PrimeField(long long p_) : p(p_) {
        if (!is_prime(p)) throw error("PrimeField: modulus must be prime");
    }

    FieldSpec spec() const { return FieldSpec::prime(p); }
    long long characteristic() const { return p; }

    Elem zero() const { return 0; }
    Elem one() const { return p == 1 ? 0 : 1; }
    Elem from_int(long long v) const {
        Elem r = v % p;
        return r < 0 ? r + p : r;
    }

    Elem add(Elem a, Elem b) const {
        Elem r = a + b;
        return r >= p ? r - p : r;
    }
    Elem sub(Elem a, Elem b) const {
        Elem r = a - b;
        return r < 0 ? r + p : r;
    }
    Elem mul(Elem a, Elem b) const { return (a * b) % p; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }

    Elem inv(Elem a) const {
        if (a == 0) throw error("division by zero in F_" + std::to_string(p));
        // extended Euclid
        long long t = 0, nt = 1, r = p, nr = a;
        while (nr != 0) {
            long long q = r / nr;
            t -= q * nt; std::swap(t, nt);
            r -= q * nr; std::swap(r, nr);
        }
        return t < 0 ? t + p : t;
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    bool is_zero(Elem a) const { return a == 0; }
    bool eq(Elem a, Elem b) const { return a == b; }
    int cmp(Elem a, Elem b) const { return a < b ? -1 : (a > b ? 1 : 0); }

    std::string to_string(Elem a) const { return std::to_string(a); }

    std::optional<Elem> parse(std::string_view s) const {
        std::string num, den;
        if (!detail::exact_token(s, num, den)) return std::nullopt;
        mpz_class n(num), d(den), m(static_cast<long>(p));
        Elem nv = from_int(mpz_class(n % m).get_si());
        Elem dv = from_int(mpz_class(d % m).get_si());
        if (dv == 0) return std::nullopt; // denominator vanishes in F_p
        return div(nv, dv);
    }
};

template <class F>
concept Field = requires(const F f, const typename F::Elem& a) {
    { f.zero() } -> std::same_as<typename F::Elem>;
    { f.add(a, a) } -> std::same_as<typename F::Elem>;
    { f.mul(a, a) } -> std::same_as<typename F::Elem>;
    { f.is_zero(a) } -> std::same_as<bool>;
    { f.characteristic() } -> std::same_as<long long>;
};

} // namespace conserv
